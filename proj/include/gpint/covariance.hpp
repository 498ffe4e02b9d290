#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gpint {

/// Centered Gaussian law on [0, T] given by its covariance function.
///
/// Variants:
///  - fbm(H):             stationary increments, V(t) = t^{2H}
///  - stationary_exp(a):  stationary, r(t) = exp(-|t|^{2a})
///  - stationary(r, a):   stationary with a user covariance function r
///  - generic(R, a):      arbitrary kernel R(t, s)
///
/// `alpha` is the Holder-class regularity exponent attached to the model.
class CovarianceModel {
public:
    enum class Kind { Fbm, StationaryExp, StationaryGeneric, GenericKernel };

    static CovarianceModel fbm(double hurst) {
        require_in_unit(hurst, "H");
        CovarianceModel m;
        m.kind_ = Kind::Fbm;
        m.alpha_ = hurst;
        m.tag_ = "fbm(H=" + std::to_string(hurst) + ")";
        return m;
    }

    static CovarianceModel stationary_exp(double alpha) {
        require_in_unit(alpha, "alpha");
        CovarianceModel m;
        m.kind_ = Kind::StationaryExp;
        m.alpha_ = alpha;
        m.tag_ = "stationary_exp(alpha=" + std::to_string(alpha) + ")";
        return m;
    }

    static CovarianceModel stationary(std::function<double(double)> r, double alpha,
                                      std::string name = "stationary") {
        require_in_unit(alpha, "alpha");
        CovarianceModel m;
        m.kind_ = Kind::StationaryGeneric;
        m.alpha_ = alpha;
        m.r_ = std::move(r);
        m.tag_ = std::move(name);
        return m;
    }

    static CovarianceModel generic(std::function<double(double, double)> R, double alpha,
                                   std::string name = "generic") {
        require_in_unit(alpha, "alpha");
        CovarianceModel m;
        m.kind_ = Kind::GenericKernel;
        m.alpha_ = alpha;
        m.R_ = std::move(R);
        m.tag_ = std::move(name);
        return m;
    }

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const std::string& tag() const { return tag_; }

    bool is_stationary() const {
        return kind_ == Kind::StationaryExp || kind_ == Kind::StationaryGeneric;
    }
    bool has_stationary_increments() const { return kind_ == Kind::Fbm || is_stationary(); }

    /// R_X(t, s); symmetric in its arguments.
    double covariance(double t, double s) const {
        if (t < 0.0 || s < 0.0)
            throw std::invalid_argument("covariance: arguments must be nonnegative");
        switch (kind_) {
            case Kind::Fbm: {
                const double h2 = 2.0 * alpha_;
                return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
            }
            case Kind::StationaryExp:
                return std::exp(-std::pow(std::abs(t - s), 2.0 * alpha_));
            case Kind::StationaryGeneric:
                return r_(std::abs(t - s));
            case Kind::GenericKernel:
                return R_(t, s);
        }
        return 0.0;
    }

    double variance(double t) const { return covariance(t, t); }

    /// W_X(t, s) = E (X_t - X_s)^2, clamped at 0 against roundoff.
    double incremental_variance(double t, double s) const {
        double w;
        switch (kind_) {
            case Kind::Fbm:
                w = std::pow(std::abs(t - s), 2.0 * alpha_);
                break;
            case Kind::StationaryExp:
            case Kind::StationaryGeneric:
                w = 2.0 * (stationary_r(0.0) - stationary_r(std::abs(t - s)));
                break;
            default:
                w = variance(t) + variance(s) - 2.0 * covariance(t, s);
        }
        return w < 0.0 ? 0.0 : w;
    }

    /// W(0, x) as a function of the lag, defined for stationary or
    /// stationary-increment models only.
    double stationary_increment_variance(double x) const {
        if (!has_stationary_increments())
            throw std::invalid_argument(
                "stationary_increment_variance: model is neither stationary nor of "
                "stationary increments");
        if (kind_ == Kind::Fbm) return std::pow(std::abs(x), 2.0 * alpha_);
        return 2.0 * (stationary_r(0.0) - stationary_r(std::abs(x)));
    }

    double stationary_r(double x) const {
        switch (kind_) {
            case Kind::StationaryExp:
                return std::exp(-std::pow(std::abs(x), 2.0 * alpha_));
            case Kind::StationaryGeneric:
                return r_(std::abs(x));
            default:
                throw std::invalid_argument("stationary_r: model is not stationary");
        }
    }

private:
    CovarianceModel() = default;

    static void require_in_unit(double v, const char* name) {
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
    }

    Kind kind_ = Kind::Fbm;
    double alpha_ = 0.75;
    std::function<double(double)> r_;
    std::function<double(double, double)> R_;
    std::string tag_;
};

}  // namespace gpint
