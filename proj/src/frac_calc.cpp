#include "gpint/frac_calc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gpint {

namespace {

void require_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("fractional order must lie in (0, 1)");
}

/// Power tables w^{-beta} and w^{1-beta} for w = k h, k = 0..n.
struct PowTables {
    std::vector<double> neg;   // (k h)^{-beta}; entry 0 unused
    std::vector<double> pos;   // (k h)^{1-beta}
    PowTables(std::size_t n, double h, double beta) : neg(n + 1), pos(n + 1) {
        neg[0] = 0.0;
        pos[0] = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double w = static_cast<double>(k) * h;
            neg[k] = std::pow(w, -beta);
            pos[k] = std::pow(w, 1.0 - beta);
        }
    }
};

/// Exact integral of the linear interpolant of g against w^{-beta-1} over a
/// cell [w_lo, w_hi] expressed through the tables (w_lo = k_lo h). g_lo must
/// vanish when k_lo = 0.
inline double cell_integral(const PowTables& tab, std::size_t k_lo, std::size_t k_hi, double h,
                            double g_lo, double g_hi, double beta) {
    const double q = (g_hi - g_lo) / (static_cast<double>(k_hi - k_lo) * h);
    const double linear = q * (tab.pos[k_hi] - tab.pos[k_lo]) / (1.0 - beta);
    if (k_lo == 0) return linear;
    const double p = g_lo - q * static_cast<double>(k_lo) * h;
    return p * (tab.neg[k_lo] - tab.neg[k_hi]) / beta + linear;
}

void require_uniform(const TimeGrid& grid) {
    if (!grid.uniform_spacing())
        throw std::invalid_argument("fractional operators require a uniform grid");
}

}  // namespace

GridFunction rl_derivative_left(const GridFunction& f, double beta) {
    require_beta(beta);
    require_uniform(f.grid);
    const std::size_t n = f.grid.steps();
    const double h = f.grid.step(0);
    const PowTables tab(n, h, beta);
    const double inv_gamma = 1.0 / std::tgamma(1.0 - beta);

    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double incr = 0.0;
        const double fi = f[i];
        // cells [u_j, u_{j+1}], kernel in w = s - u
        for (std::size_t j = 0; j < i; ++j)
            incr += cell_integral(tab, i - j - 1, i - j, h, fi - f[j + 1], fi - f[j], beta);
        out[i] = inv_gamma * (fi * tab.neg[i] + beta * incr);
    }
    return GridFunction(f.grid, std::move(out));
}

GridFunction rl_derivative_right(const GridFunction& g, double order, double t) {
    require_beta(order);
    require_uniform(g.grid);
    const std::size_t m = g.grid.index_of(t);
    if (m == 0) throw std::invalid_argument("rl_derivative_right: t must be positive");
    const double h = g.grid.step(0);
    const PowTables tab(m, h, order);
    const double inv_gamma = 1.0 / std::tgamma(1.0 - order);

    std::vector<double> gt(m + 1);
    for (std::size_t i = 0; i <= m; ++i) gt[i] = g[i] - g[m];

    std::vector<double> out(m + 1, 0.0);
    std::vector<double> pts(g.grid.points().begin(), g.grid.points().begin() + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        double incr = 0.0;
        const double gi = gt[i];
        // cells [u_j, u_{j+1}], kernel in w = u - s
        for (std::size_t j = i; j < m; ++j)
            incr += cell_integral(tab, j - i, j - i + 1, h, gi - gt[j], gi - gt[j + 1], order);
        out[i] = inv_gamma * (gi * tab.neg[m - i] + order * incr);
    }
    return GridFunction(TimeGrid(std::move(pts)), std::move(out));
}

GridFunction rl_integral_left(const GridFunction& f, double beta) {
    require_beta(beta);
    require_uniform(f.grid);
    const std::size_t n = f.grid.steps();
    const double h = f.grid.step(0);
    // kernel (s - u)^{beta - 1}; product integration of the linear interpolant
    std::vector<double> pos1(n + 1), pos2(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double w = static_cast<double>(k) * h;
        pos1[k] = std::pow(w, beta);
        pos2[k] = std::pow(w, beta + 1.0);
    }
    const double inv_gamma = 1.0 / std::tgamma(beta);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            // f(u) = p + q w with w = s - u on [u_j, u_{j+1}]
            const std::size_t k_hi = i - j, k_lo = i - j - 1;
            const double q = (f[j] - f[j + 1]) / h;
            const double p = f[j + 1] - q * static_cast<double>(k_lo) * h;
            acc += p * (pos1[k_hi] - pos1[k_lo]) / beta +
                   q * (pos2[k_hi] - pos2[k_lo]) / (beta + 1.0);
        }
        out[i] = inv_gamma * acc;
    }
    return GridFunction(f.grid, std::move(out));
}

double besov_norm_w2(const GridFunction& f, double beta, double t) {
    require_beta(beta);
    require_uniform(f.grid);
    const std::size_t m = f.grid.index_of(t);
    const double h = f.grid.step(0);
    const PowTables tab(m, h, beta);

    // first term: |f| against s^{-beta}
    double first = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double g_lo = std::abs(f[j]);
        const double g_hi = std::abs(f[j + 1]);
        const double q = (g_hi - g_lo) / h;
        const double p = g_lo - q * static_cast<double>(j) * h;
        const double s_lo = static_cast<double>(j) * h;
        const double s_hi = static_cast<double>(j + 1) * h;
        first += p * (std::pow(s_hi, 1.0 - beta) - std::pow(s_lo, 1.0 - beta)) / (1.0 - beta) +
                 q * (std::pow(s_hi, 2.0 - beta) - std::pow(s_lo, 2.0 - beta)) / (2.0 - beta);
    }

    // second term: trapezoid over s of the singular inner integral
    double second = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        double inner = 0.0;
        const double fi = f[i];
        for (std::size_t j = 0; j < i; ++j)
            inner += cell_integral(tab, i - j - 1, i - j, h, std::abs(fi - f[j + 1]),
                                   std::abs(fi - f[j]), beta);
        const double weight = (i == m) ? 0.5 * h : h;
        second += weight * inner;
    }
    return first + second;
}

namespace {

double besov_w1_grid_value(const GridFunction& g, double beta) {
    const std::size_t n = g.grid.steps();
    const double h = g.grid.step(0);
    const PowTables tab(n, h, beta);
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double integral = 0.0;
        const double gi = g[i];
        for (std::size_t k = i + 1; k <= n; ++k) {
            integral += cell_integral(tab, k - 1 - i, k - i, h, std::abs(g[k - 1] - gi),
                                      std::abs(g[k] - gi), beta);
            const double quot = std::abs(g[k] - gi) * tab.neg[k - i];
            best = std::max(best, quot + integral);
        }
    }
    return best;
}

}  // namespace

W1Result besov_norm_w1(const GridFunction& g, double beta, double sentinel) {
    require_beta(beta);
    require_uniform(g.grid);
    W1Result res;
    res.value = besov_w1_grid_value(g, beta);
    if (res.value > sentinel) {
        res.value = sentinel;
        res.overflow = true;
        return res;
    }
    // refinement growth check against a 4x coarser grid
    if (g.grid.steps() % 4 == 0 && g.grid.steps() >= 64) {
        const double coarse = besov_w1_grid_value(g.coarsened(2), beta);
        if (coarse > 0.0 && res.value > 1.15 * coarse) res.overflow = true;
    }
    return res;
}

namespace {

double gls_core(const GridFunction& f, const GridFunction& g, double beta, double t,
                GridFunction* df_out, GridFunction* dg_out) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("gls_integral: f and g must share a grid");
    const std::size_t m = f.grid.index_of(t);
    const double h = f.grid.step(0);

    std::vector<double> pts(f.grid.points().begin(), f.grid.points().begin() + m + 1);
    TimeGrid sub(pts);
    std::vector<double> fv(f.values.begin(), f.values.begin() + m + 1);
    const double f0 = fv[0];
    for (auto& v : fv) v -= f0;
    GridFunction f0p(sub, std::move(fv));

    std::vector<double> gv(g.values.begin(), g.values.begin() + m + 1);
    GridFunction gsub(sub, std::move(gv));

    GridFunction df = rl_derivative_left(f0p, beta);
    GridFunction dg = rl_derivative_right(gsub, 1.0 - beta, sub.horizon());

    double acc = 0.0;
    for (std::size_t i = 1; i < m; ++i) acc += df[i] * dg[i];  // endpoints carry value 0
    const double integral = -h * acc + f0 * (g[m] - g[0]);

    if (df_out) *df_out = df;
    if (dg_out) *dg_out = dg;
    return integral;
}

double sup_abs(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace

double gls_integral(const GridFunction& f, const GridFunction& g, double beta, double t) {
    return gls_core(f, g, beta, t, nullptr, nullptr);
}

GlsResult gls_integral_checked(const GridFunction& f, const GridFunction& g, double beta,
                               double t) {
    GridFunction df{f.grid, std::vector<double>(f.size(), 0.0)};
    GridFunction dg = df;
    GlsResult res;
    res.value = gls_core(f, g, beta, t, &df, &dg);
    // empirical admissibility: sup of the derivative should be stable under
    // one grid coarsening
    if (f.grid.steps() % 2 == 0 && f.grid.steps() >= 64) {
        GridFunction fc = f.coarsened(1);
        GridFunction gc = g.coarsened(1);
        const std::size_t mc = fc.grid.index_at_or_after(t - 1e-12);
        const double tc = fc.grid[mc];
        GridFunction dfc{fc.grid, std::vector<double>(fc.size(), 0.0)};
        GridFunction dgc = dfc;
        gls_core(fc, gc, beta, tc, &dfc, &dgc);
        if (sup_abs(df) > 10.0 * std::max(sup_abs(dfc), 1e-300)) res.overflow_f = true;
        if (sup_abs(dg) > 10.0 * std::max(sup_abs(dgc), 1e-300)) res.overflow_g = true;
    }
    return res;
}

double gls_bound(const GridFunction& f, const GridFunction& g, double beta, double t) {
    GridFunction dg = rl_derivative_right(g, 1.0 - beta, t);
    return sup_abs(dg) * besov_norm_w2(f, beta, t);
}

double default_beta(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("default_beta: alpha must lie in (1/2, 1)");
    const double lo = 1.0 - alpha;
    const double hi = 0.5;
    double beta = lo + 0.5 * std::min(alpha, 0.5);
    const double pad = 0.02 * (hi - lo);
    return std::clamp(beta, lo + pad, hi - pad);
}

}  // namespace gpint
