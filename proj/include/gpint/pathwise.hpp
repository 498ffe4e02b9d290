#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "gpint/grid_function.hpp"
#include "gpint/sampling.hpp"

namespace gpint {

/// Forward Riemann-Stieltjes limit along dyadic coarsenings of the grid.
struct FollmerResult {
    double value = 0.0;                 // finest-level forward sum
    std::vector<double> partial_sums;   // coarsest first
    bool converged = false;
    double gap = 0.0;                   // |last - previous| across levels
};

/// Left-point forward sums of Y against X over [0, t] on `levels` dyadic
/// coarsenings; the finest level is the full grid.
FollmerResult follmer_integral(const GridFunction& Y, const SamplePath& X, unsigned levels,
                               double tol, double t = -1.0);

/// f_eta(x) = (1 + eta) |x|^eta sign(x); integrates to |x|^{1 + eta}.
inline double power_sign(double x, double eta) {
    if (x == 0.0) return 0.0;
    return (1.0 + eta) * std::pow(std::abs(x), eta) * (x > 0.0 ? 1.0 : -1.0);
}

/// Piecewise-defined adapted integrand: each segment covers a grid index
/// range, carries an evaluation rule anchored at an earlier grid point, and
/// goes inactive after its stopping index.
struct StepIntegrand {
    enum class Rule { Constant, PowerSign, ScaledSign };

    struct Segment {
        std::size_t begin = 0;  // grid index range [begin, end)
        std::size_t end = 0;
        Rule rule = Rule::Constant;
        double coeff = 0.0;     // constant value, or the multiplier for ScaledSign
        double eta = 0.0;       // PowerSign exponent
        std::size_t anchor = 0; // grid index of the anchor value X_{anchor}
        int sign = 1;           // extra sign factor for ScaledSign
        std::size_t active_end = std::numeric_limits<std::size_t>::max();  // stop index
    };

    std::vector<Segment> segments;  // sorted by begin, non-overlapping

    /// Value at the left endpoint of grid cell i along the given path.
    double eval(const SamplePath& X, std::size_t i) const {
        auto it = std::upper_bound(segments.begin(), segments.end(), i,
                                   [](std::size_t idx, const Segment& s) { return idx < s.begin; });
        if (it != segments.begin()) {
            const auto& seg = *(it - 1);
            if (i >= seg.end || i >= seg.active_end) return 0.0;
            switch (seg.rule) {
                case Rule::Constant:
                    return seg.coeff;
                case Rule::PowerSign:
                    return static_cast<double>(seg.sign) * power_sign(X[i] - X[seg.anchor], seg.eta);
                case Rule::ScaledSign: {
                    const double d = X[i] - X[seg.anchor];
                    const double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
                    return seg.coeff * s * static_cast<double>(seg.sign);
                }
            }
        }
        return 0.0;
    }

    void append(Segment seg) { segments.push_back(seg); }
};

/// Exact left-point forward sum of the step integrand over [0, t].
double integrate_step(const StepIntegrand& phi, const SamplePath& X, double t);

/// Bounded-variation rules admitted by the change-of-variable check.
struct BvRule {
    enum class Kind { Constant, Sign, Indicator, PowerSign };
    Kind kind = Kind::Constant;
    double c = 1.0;       // constant value
    double level = 0.0;   // indicator threshold K
    double eta = 1.0;     // power exponent

    double f(double x) const;
    double F(double x) const;  // antiderivative with F(0) = 0

    static BvRule constant(double c) { return {Kind::Constant, c, 0.0, 0.0}; }
    static BvRule sign() { return {Kind::Sign, 0.0, 0.0, 0.0}; }
    static BvRule indicator(double K) { return {Kind::Indicator, 0.0, K, 0.0}; }
    static BvRule power(double eta) { return {Kind::PowerSign, 0.0, 0.0, eta}; }
};

/// F(X_T - X_u) minus the forward-sum integral of f(X_s - X_u) over [u, T];
/// the magnitude is the discretization error of the change-of-variable
/// identity. u must be a grid point.
double ito_residual(const BvRule& rule, double u, const SamplePath& X);

}  // namespace gpint
