#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace gpint {

/// Point estimate with its Monte Carlo standard error.
struct EstimateWithCI {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
    double confidence = 0.95;

    double lower() const { return estimate - z() * std_error; }
    double upper() const { return estimate + z() * std_error; }
    double z() const { return confidence >= 0.99 ? 2.5758 : 1.9600; }
};

inline EstimateWithCI mean_with_ci(std::span<const double> xs, double confidence = 0.95) {
    if (xs.empty()) throw std::invalid_argument("mean_with_ci: empty sample");
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double s2 = 0.0;
    for (double x : xs) s2 += (x - m) * (x - m);
    s2 /= std::max<std::size_t>(1, xs.size() - 1);
    return {m, std::sqrt(s2 / static_cast<double>(xs.size())), xs.size(), confidence};
}

/// Binomial proportion with normal-approximation standard error. Zero (or
/// full) success counts get the one-sided rule-of-three width instead of 0.
inline EstimateWithCI proportion_with_ci(std::size_t successes, std::size_t trials,
                                         double confidence = 0.95) {
    if (trials == 0) throw std::invalid_argument("proportion_with_ci: no trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    double se = std::sqrt(p * (1.0 - p) / n);
    if (successes == 0 || successes == trials) se = 3.0 / n / 1.96;
    return {p, se, trials, confidence};
}

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
    double t_stat = 0.0;  // slope / slope_std_error
};

inline OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) throw std::invalid_argument("ols_fit: need >= 3 paired points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("ols_fit: degenerate abscissae");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        sse += r * r;
    }
    const double sigma2 = sse / static_cast<double>(n - 2);
    fit.slope_std_error = std::sqrt(sigma2 / sxx);
    fit.t_stat = fit.slope_std_error > 0.0 ? fit.slope / fit.slope_std_error
                                           : (fit.slope == 0.0 ? 0.0 : 1e30);
    return fit;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Acklam's rational approximation of the standard normal quantile,
/// |error| < 1.2e-9.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -1e308;
        if (p == 1.0) return 1e308;
        throw std::invalid_argument("normal_quantile: p outside [0, 1]");
    }
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

inline double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= xs.size()) return xs.back();
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * xs[lo] + w * xs[lo + 1];
}

}  // namespace gpint
