#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpint/covariance.hpp"
#include "gpint/time_grid.hpp"

namespace gpint {

/// Result of the four-condition membership check for the Holder class.
/// The checks run on the shifted increment process Y_t = X_{t+u} - X_u for
/// several shifts u in [T - delta, T).
struct ClassReport {
    bool cond1_positive_covariance = false;
    bool cond2_incremental_bound = false;
    bool cond3_variance_lower = false;
    bool cond4_ratio_bounded = false;

    double worst_min_covariance = 0.0;  // min R_Y(s, t) over shifts and pairs
    double fitted_C = 0.0;              // max w*_Y(t) / t^{2 alpha}
    double fitted_exponent = 0.0;       // log-log slope of w*_Y(t)
    double fitted_c = 0.0;              // min V_Y(s) / s^2 for s <= delta_hat
    double ratio_supremum = 0.0;        // sup R_Y(s,s) / R_Y(t,s) on the lattice

    double delta = 0.0;
    double delta_hat = 0.0;
    std::size_t shifts = 0;
    std::size_t grid_size = 0;

    bool pass() const {
        return cond1_positive_covariance && cond2_incremental_bound && cond3_variance_lower &&
               cond4_ratio_bounded;
    }
};

/// Numerical membership check against the class conditions. `delta_hat`
/// defaults to delta / 2. The exponent check passes when the fitted log-log
/// slope of the worst-case incremental variance is >= 2 alpha - 0.1; the
/// ratio supremum passes when it stays below 1e6.
ClassReport check_class_membership(const CovarianceModel& model, double alpha, double delta,
                                   const TimeGrid& grid, double delta_hat = 0.0);

/// Sufficient-condition check for the small-ball upper bound, applied to the
/// lag function W(0, x) of a stationary or stationary-increment model.
struct SmallballConditionReport {
    bool doubling_ok = false;   // sup_x W(0,2x)/W(0,x) in (0, 4)
    bool convexity_ok = false;  // the 6/1/1 vs 4/4 lattice inequality
    double doubling_ratio = 0.0;
    double worst_margin = 0.0;  // min over the lattice of LHS - RHS
    double worst_x = 0.0;
    int worst_j = 0;

    bool pass() const { return doubling_ok && convexity_ok; }
};

SmallballConditionReport check_smallball_conditions(const CovarianceModel& model);

/// Same check for a caller-supplied lag function W(0, x).
SmallballConditionReport check_smallball_conditions(const std::function<double(double)>& W);

}  // namespace gpint
