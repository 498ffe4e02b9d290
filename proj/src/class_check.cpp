#include "gpint/class_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpint/stats.hpp"

namespace gpint {

namespace {

constexpr std::size_t kShiftCount = 8;
constexpr std::size_t kLatticeCap = 96;  // per-shift subsampling of (s, t) pairs
constexpr double kRatioCap = 1e6;

double cov_Y(const CovarianceModel& m, double u, double t, double s) {
    return m.covariance(t + u, s + u) - m.covariance(t + u, u) - m.covariance(u, s + u) +
           m.covariance(u, u);
}

double var_Y(const CovarianceModel& m, double u, double s) {
    return m.incremental_variance(s + u, u);
}

double incr_var_Y(const CovarianceModel& m, double u, double t, double s) {
    return m.incremental_variance(t + u, s + u);
}

std::vector<double> subsampled_offsets(const TimeGrid& grid, double limit, std::size_t cap) {
    std::vector<double> out;
    const double h = grid.step(0);
    std::size_t n = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= limit + 1e-12) ++n;
    const std::size_t stride = std::max<std::size_t>(1, n / cap);
    for (std::size_t i = 1; i < grid.size(); i += stride)
        if (grid[i] <= limit + 1e-12) out.push_back(grid[i]);
    if (out.empty() && h <= limit) out.push_back(h);
    return out;
}

}  // namespace

ClassReport check_class_membership(const CovarianceModel& model, double alpha, double delta,
                                   const TimeGrid& grid, double delta_hat) {
    const double T = grid.horizon();
    if (!(delta > 0.0 && delta < T))
        throw std::invalid_argument("check_class_membership: delta must lie in (0, T)");
    if (delta_hat <= 0.0) delta_hat = delta / 2.0;
    const double h = grid.step(0);
    if (delta < kShiftCount * h)
        throw std::invalid_argument(
            "check_class_membership: grid too coarse for 8 shifts in [T - delta, T)");

    ClassReport rep;
    rep.delta = delta;
    rep.delta_hat = delta_hat;
    rep.grid_size = grid.size();

    double min_cov = 1e300;
    double max_C = 0.0;
    double min_c = 1e300;
    double max_ratio = 0.0;
    double min_slope = 1e300;
    bool ratio_positive = true;

    for (std::size_t k = 0; k < kShiftCount; ++k) {
        const double u = (T - delta) + delta * static_cast<double>(k) /
                                           static_cast<double>(kShiftCount);
        const double span = T - u;
        if (span <= h) continue;
        ++rep.shifts;

        const auto offs = subsampled_offsets(grid, span, kLatticeCap);

        // (1) positive covariance of the shifted increments
        for (std::size_t i = 0; i < offs.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                min_cov = std::min(min_cov, cov_Y(model, u, offs[i], offs[j]));

        // (2) worst-case incremental variance against C t^{2 alpha}
        std::vector<double> log_t, log_w;
        for (double t : offs) {
            double w_star = 0.0;
            for (double s : offs) {
                if (s + t > span + 1e-12) break;
                w_star = std::max(w_star, incr_var_Y(model, u, t + s, s));
            }
            w_star = std::max(w_star, var_Y(model, u, t));  // s = 0 term
            if (w_star > 0.0 && t > 0.0) {
                max_C = std::max(max_C, w_star / std::pow(t, 2.0 * alpha));
                if (t <= span / 2.0) {
                    log_t.push_back(std::log(t));
                    log_w.push_back(std::log(w_star));
                }
            }
        }
        if (log_t.size() >= 3) min_slope = std::min(min_slope, ols_fit(log_t, log_w).slope);

        // (3) quadratic lower bound on the variance for s <= delta_hat
        for (double s : offs) {
            if (s > std::min(delta_hat, span)) break;
            min_c = std::min(min_c, var_Y(model, u, s) / (s * s));
        }

        // (4) covariance-ratio supremum on {t < 2 delta_hat, t/2 <= s <= t}
        for (double t : offs) {
            if (t >= 2.0 * delta_hat || t > span) break;
            for (double s : offs) {
                if (s < t / 2.0 - 1e-12) continue;
                if (s > t + 1e-12) break;
                const double denom = cov_Y(model, u, t, s);
                const double numer = cov_Y(model, u, s, s);
                if (denom <= 0.0) {
                    ratio_positive = false;
                    continue;
                }
                max_ratio = std::max(max_ratio, numer / denom);
            }
        }
    }

    rep.worst_min_covariance = min_cov;
    rep.fitted_C = max_C;
    rep.fitted_exponent = (min_slope == 1e300) ? 0.0 : min_slope;
    rep.fitted_c = (min_c == 1e300) ? 0.0 : min_c;
    rep.ratio_supremum = max_ratio;

    rep.cond1_positive_covariance = min_cov > 0.0;
    rep.cond2_incremental_bound = rep.fitted_exponent >= 2.0 * alpha - 0.1 && max_C > 0.0;
    rep.cond3_variance_lower = rep.fitted_c > 0.0;
    rep.cond4_ratio_bounded = ratio_positive && max_ratio > 0.0 && max_ratio <= kRatioCap;
    return rep;
}

SmallballConditionReport check_smallball_conditions(const std::function<double(double)>& W) {
    SmallballConditionReport rep;

    double ratio = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double x = 0.5 * std::pow(10.0, -3.0 * static_cast<double>(i) / 63.0);
        const double w = W(x);
        if (w <= 0.0) {
            rep.doubling_ok = false;
            return rep;
        }
        ratio = std::max(ratio, W(2.0 * x) / w);
    }
    rep.doubling_ratio = ratio;
    rep.doubling_ok = ratio > 0.0 && ratio < 4.0;

    double worst = 1e300;
    double scale = std::max(std::abs(W(1.0)), 1e-30);
    for (int xi = 1; xi <= 20; ++xi) {
        const double x = 0.01 * static_cast<double>(xi);
        const int j_max = static_cast<int>(1.0 / x) - 2;
        for (int j = 2; j <= std::min(j_max, 20); ++j) {
            const double lhs = 6.0 * W(j * x) + W((j + 2) * x) + W((j - 2) * x);
            const double rhs = 4.0 * W((j + 1) * x) + 4.0 * W((j - 1) * x);
            const double margin = lhs - rhs;
            if (margin < worst) {
                worst = margin;
                rep.worst_x = x;
                rep.worst_j = j;
            }
        }
    }
    rep.worst_margin = worst;
    rep.convexity_ok = worst >= -1e-12 * scale;
    return rep;
}

SmallballConditionReport check_smallball_conditions(const CovarianceModel& model) {
    if (!model.has_stationary_increments())
        throw std::invalid_argument(
            "check_smallball_conditions: requires a stationary or stationary-increment "
            "model; the covariance structure matters for other models");
    return check_smallball_conditions(
        [&](double x) { return model.stationary_increment_variance(x); });
}

}  // namespace gpint
