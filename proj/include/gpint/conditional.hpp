#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "gpint/covariance.hpp"
#include "gpint/sampling.hpp"
#include "gpint/time_grid.hpp"

namespace gpint {

/// A scalar target xi built from the process at finitely many times.
struct TargetSpec {
    enum class Kind { Linear, CallPayoff, Smooth };

    Kind kind = Kind::Linear;
    std::vector<double> times;   // evaluation times, each must be a grid point
    std::vector<double> coeffs;  // Linear: one coefficient per time
    double intercept = 0.0;      // Linear
    double strike = 0.0;         // CallPayoff (single time)
    std::function<double(const std::vector<double>&)> h;  // Smooth, at most 2 times

    static TargetSpec linear(std::vector<double> times, std::vector<double> coeffs,
                             double intercept = 0.0) {
        if (times.empty() || times.size() != coeffs.size())
            throw std::invalid_argument("TargetSpec: one coefficient per time");
        TargetSpec s;
        s.kind = Kind::Linear;
        s.times = std::move(times);
        s.coeffs = std::move(coeffs);
        s.intercept = intercept;
        return s;
    }

    static TargetSpec call(double time, double strike) {
        TargetSpec s;
        s.kind = Kind::CallPayoff;
        s.times = {time};
        s.strike = strike;
        return s;
    }

    static TargetSpec smooth(std::vector<double> times,
                             std::function<double(const std::vector<double>&)> h) {
        if (times.empty() || times.size() > 2)
            throw std::invalid_argument("TargetSpec: smooth targets take 1 or 2 times");
        TargetSpec s;
        s.kind = Kind::Smooth;
        s.times = std::move(times);
        s.h = std::move(h);
        return s;
    }

    /// xi as a function of the process values at `times` (same order).
    double evaluate(const std::vector<double>& xs) const;

    /// xi along a realized path; the times must be grid points of X.
    double evaluate_path(const SamplePath& X) const;
};

/// Evaluates t -> E[arctan xi | X_s, s <= t a grid point] for one model/grid.
/// Conditioning uses every grid observation up to t; the solve weights and the
/// conditional covariance depend only on (model, grid, t) and are cached, so
/// repeated calls across paths reuse them. Expectations over the conditional
/// Gaussian law use Gauss-Hermite quadrature.
class ConditionalArctanEvaluator {
public:
    ConditionalArctanEvaluator(const CovarianceModel& model, const TimeGrid& grid,
                               TargetSpec spec, std::size_t quad_nodes = 64);

    double expected_arctan(const SamplePath& X, double t) const;

    const TargetSpec& spec() const { return spec_; }

private:
    struct Prep {
        std::size_t obs_begin = 0;  // first conditioning grid index
        std::size_t obs_end = 0;    // one past the last conditioning grid index
        std::vector<std::size_t> unobserved;  // positions into spec.times
        Eigen::MatrixXd weights;    // (n_unobs x n_obs): cond mean = weights * x_obs
        Eigen::MatrixXd cond_cov;   // n_unobs x n_unobs
    };

    const Prep& prep_for(std::size_t m) const;

    CovarianceModel model_;
    TimeGrid grid_;
    TargetSpec spec_;
    std::vector<std::size_t> time_indices_;  // grid index of each spec time
    std::vector<double> quad_nodes_;
    std::vector<double> quad_weights_;
    mutable std::mutex mutex_;
    mutable std::map<std::size_t, std::unique_ptr<Prep>> cache_;
};

}  // namespace gpint
