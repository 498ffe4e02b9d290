#include "gpint/pathwise.hpp"

#include <stdexcept>

namespace gpint {

FollmerResult follmer_integral(const GridFunction& Y, const SamplePath& X, unsigned levels,
                               double tol, double t) {
    if (!(Y.grid == X.grid))
        throw std::invalid_argument("follmer_integral: Y and X must share a grid");
    if (levels == 0) throw std::invalid_argument("follmer_integral: need at least one level");
    const std::size_t m = t < 0.0 ? X.grid.size() - 1 : X.grid.index_of(t);
    const std::size_t max_stride = std::size_t{1} << (levels - 1);
    if (m % max_stride != 0 || m / max_stride < 1)
        throw std::invalid_argument("follmer_integral: levels exceed grid depth");

    FollmerResult res;
    for (unsigned lvl = 0; lvl < levels; ++lvl) {
        const std::size_t stride = std::size_t{1} << (levels - 1 - lvl);
        double acc = 0.0;
        for (std::size_t i = 0; i + stride <= m; i += stride)
            acc += Y[i] * (X[i + stride] - X[i]);
        res.partial_sums.push_back(acc);
    }
    res.value = res.partial_sums.back();
    if (res.partial_sums.size() >= 2) {
        res.gap = std::abs(res.partial_sums.back() -
                           res.partial_sums[res.partial_sums.size() - 2]);
        res.converged = res.gap <= tol;
    } else {
        res.converged = true;
    }
    return res;
}

double integrate_step(const StepIntegrand& phi, const SamplePath& X, double t) {
    const std::size_t m = X.grid.index_of(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += phi.eval(X, i) * (X[i + 1] - X[i]);
    return acc;
}

double BvRule::f(double x) const {
    switch (kind) {
        case Kind::Constant:
            return c;
        case Kind::Sign:
            return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        case Kind::Indicator:
            return x > level ? 1.0 : 0.0;
        case Kind::PowerSign:
            return power_sign(x, eta);
    }
    return 0.0;
}

double BvRule::F(double x) const {
    switch (kind) {
        case Kind::Constant:
            return c * x;
        case Kind::Sign:
            return std::abs(x);
        case Kind::Indicator:
            // int_0^x 1_{y > K} dy = (x - K)^+ - (-K)^+
            return std::max(x - level, 0.0) - std::max(-level, 0.0);
        case Kind::PowerSign:
            return std::pow(std::abs(x), 1.0 + eta);
    }
    return 0.0;
}

double ito_residual(const BvRule& rule, double u, const SamplePath& X) {
    const std::size_t start = X.grid.index_of(u);
    const std::size_t last = X.grid.size() - 1;
    const double x_u = X[start];
    double acc = 0.0;
    for (std::size_t i = start; i < last; ++i)
        acc += rule.f(X[i] - x_u) * (X[i + 1] - X[i]);
    return rule.F(X[last] - x_u) - acc;
}

}  // namespace gpint
