#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gpint/covariance.hpp"
#include "gpint/grid_function.hpp"
#include "gpint/replicate.hpp"
#include "gpint/sampling.hpp"
#include "gpint/schedule.hpp"
#include "gpint/stats.hpp"

namespace gpint {

/// Fraction of paths whose grid supremum of |X_u - X_s| over [s, t] stays
/// within eps; the increment vector is sampled exactly from its joint
/// Gaussian law on a subgrid of `subgrid_steps` cells.
EstimateWithCI smallball_estimate(const CovarianceModel& model, double s, double t, double eps,
                                  std::size_t subgrid_steps, std::size_t count,
                                  std::uint64_t seed);

struct SmallballPoint {
    double eps = 0.0;
    EstimateWithCI prob;
};

/// Shape check of the exponential small-deviation decay: regression of the
/// log-probability against eps^{-1/alpha}, repeated at twice the subgrid
/// resolution to expose discretization bias.
struct SmallballSweepReport {
    double s = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    std::size_t count = 0;
    std::size_t subgrid_steps = 0;
    std::vector<SmallballPoint> points;
    std::vector<SmallballPoint> points_fine;
    OlsFit fit;       // log p vs eps^{-1/alpha}, coarse subgrid
    OlsFit fit_fine;  // same at doubled subgrid resolution

    bool shape_ok() const { return fit.slope < 0.0 && std::abs(fit.t_stat) > 3.0; }
    bool stable() const {
        const double joint = 1.96 * (fit.slope_std_error + fit_fine.slope_std_error);
        return std::abs(fit.slope - fit_fine.slope) <= joint;
    }
};

SmallballSweepReport smallball_sweep(const CovarianceModel& model, double s, double delta,
                                     const std::vector<double>& eps_list,
                                     std::size_t subgrid_steps, std::size_t count,
                                     std::uint64_t seed);

/// Empirical sign-straddling probability for the pair (X_s, X_t) against the
/// shape sqrt(W(t,s)/V(s)) (1 + R(s,s)/R(t,s)) whose prefactor the bound
/// leaves free; implied_C is the ratio of the two.
struct CrossingReport {
    double s = 0.0;
    double t = 0.0;
    EstimateWithCI straddle_up;    // P(X_s < 0 < X_t)
    EstimateWithCI straddle_down;  // P(X_s > 0 > X_t)
    double bound_shape = 0.0;
    double implied_C = 0.0;
    bool symmetry_ok = false;
};

CrossingReport crossing_check(const CovarianceModel& model, double s, double t,
                              std::size_t count, std::uint64_t seed);

struct KsResult {
    double d = 0.0;
    double p = 0.0;
};

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF, with the
/// standard asymptotic p-value series. Needs at least 50 samples.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// The exponential-kernel forward integral along a path: the grid recursion of
/// U_t = int_0^t e^{-theta (t - s)} dX_s with left-point increments.
GridFunction exp_kernel_integral(const SamplePath& X, double theta);

/// Two adapted integrands with (nearly) the same pathwise integral over [0,1]:
/// u1 replicates Z = (X - K)^+ via the Holder construction (zero on [0, t_1]),
/// u2 = 1_{X > K} integrates to (X_T - K)^+ exactly. Their integral gap per
/// path is |achieved - (X_T - K)^+|, while u2 occupies a positive fraction of
/// [0, t_1] where u1 vanishes.
struct ZeroIntegralReport {
    double strike = 0.0;
    double t1 = 0.0;            // end of the integrand-free first block
    std::size_t paths = 0;
    std::size_t degenerate = 0;  // paths that never cross the strike
    std::vector<double> gaps;
    std::vector<double> occupations;  // Lebesgue measure of {X > K} on [0, t_1]
    double median_gap = 0.0;
    double mean_occupation = 0.0;
};

ZeroIntegralReport zero_integral_demo(const CovarianceModel& model, double strike,
                                      const TimeGrid& grid, const HolderParams& params,
                                      const PartitionSchedule& schedule, std::size_t count,
                                      std::uint64_t seed, const HolderOptions& opts = {});

}  // namespace gpint
