#include "gpint/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpint/rng.hpp"

namespace gpint {

namespace {

/// Lower Cholesky with a small jitter ladder; for the modest matrices used by
/// the verification estimators.
Eigen::MatrixXd chol_with_jitter(Eigen::MatrixXd m) {
    const double base = m.diagonal().maxCoeff();
    for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
        Eigen::MatrixXd trial = m;
        if (jitter > 0.0) trial.diagonal().array() += jitter * base;
        Eigen::LLT<Eigen::MatrixXd> llt(trial);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw std::runtime_error("verification sampler: covariance factorization failed");
}

/// `count` draws of sup_k |X_{u_k} - X_s| over a subgrid of [s, t].
std::vector<double> increment_sups(const CovarianceModel& model, double s, double t,
                                   std::size_t subgrid_steps, std::size_t count,
                                   std::uint64_t seed) {
    if (!(t > s)) throw std::invalid_argument("smallball: need s < t");
    if (subgrid_steps < 2) throw std::invalid_argument("smallball: need >= 2 subgrid steps");
    if (count == 0) throw std::invalid_argument("smallball: need at least one path");
    const auto n = static_cast<Eigen::Index>(subgrid_steps);
    std::vector<double> u(subgrid_steps);
    for (std::size_t k = 0; k < subgrid_steps; ++k)
        u[k] = s + (t - s) * static_cast<double>(k + 1) / static_cast<double>(subgrid_steps);
    Eigen::MatrixXd cov(n, n);
    const double rss = model.covariance(s, s);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = model.covariance(u[i], u[j]) - model.covariance(u[i], s) -
                             model.covariance(u[j], s) + rss;
            cov(i, j) = c;
            cov(j, i) = c;
        }
    const Eigen::MatrixXd L = chol_with_jitter(std::move(cov));

    std::vector<double> sups(count);
    Eigen::VectorXd z(n);
    for (std::size_t p = 0; p < count; ++p) {
        Rng rng(seed, p);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
        const Eigen::VectorXd inc = L * z;
        sups[p] = inc.cwiseAbs().maxCoeff();
    }
    return sups;
}

/// Coarse and fine grid suprema computed from one draw per path: the fine
/// subgrid has 2*subgrid_steps cells and the coarse supremum runs over the
/// alternating points that form the subgrid_steps-cell grid.
std::pair<std::vector<double>, std::vector<double>> increment_sup_pairs(
    const CovarianceModel& model, double s, double t, std::size_t subgrid_steps,
    std::size_t count, std::uint64_t seed) {
    if (!(t > s)) throw std::invalid_argument("smallball: need s < t");
    if (subgrid_steps < 2) throw std::invalid_argument("smallball: need >= 2 subgrid steps");
    if (count == 0) throw std::invalid_argument("smallball: need at least one path");
    const std::size_t fine_steps = 2 * subgrid_steps;
    const auto n = static_cast<Eigen::Index>(fine_steps);
    std::vector<double> u(fine_steps);
    for (std::size_t k = 0; k < fine_steps; ++k)
        u[k] = s + (t - s) * static_cast<double>(k + 1) / static_cast<double>(fine_steps);
    Eigen::MatrixXd cov(n, n);
    const double rss = model.covariance(s, s);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = model.covariance(u[i], u[j]) - model.covariance(u[i], s) -
                             model.covariance(u[j], s) + rss;
            cov(i, j) = c;
            cov(j, i) = c;
        }
    const Eigen::MatrixXd L = chol_with_jitter(std::move(cov));

    std::vector<double> coarse(count), fine(count);
    Eigen::VectorXd z(n);
    for (std::size_t p = 0; p < count; ++p) {
        Rng rng(seed, p);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
        const Eigen::VectorXd inc = L * z;
        double sc = 0.0, sf = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::abs(inc(i));
            sf = std::max(sf, a);
            if (i % 2 == 1) sc = std::max(sc, a);  // odd index = coarse grid point
        }
        coarse[p] = sc;
        fine[p] = sf;
    }
    return {std::move(coarse), std::move(fine)};
}

EstimateWithCI proportion_below(const std::vector<double>& sups, double eps) {
    std::size_t hits = 0;
    for (double v : sups)
        if (v <= eps) ++hits;
    return proportion_with_ci(hits, sups.size());
}

}  // namespace

EstimateWithCI smallball_estimate(const CovarianceModel& model, double s, double t, double eps,
                                  std::size_t subgrid_steps, std::size_t count,
                                  std::uint64_t seed) {
    if (!(eps > 0.0)) throw std::invalid_argument("smallball: eps must be positive");
    return proportion_below(increment_sups(model, s, t, subgrid_steps, count, seed), eps);
}

SmallballSweepReport smallball_sweep(const CovarianceModel& model, double s, double delta,
                                     const std::vector<double>& eps_list,
                                     std::size_t subgrid_steps, std::size_t count,
                                     std::uint64_t seed) {
    if (eps_list.size() < 3)
        throw std::invalid_argument("smallball_sweep: need at least 3 eps values");
    SmallballSweepReport rep;
    rep.s = s;
    rep.delta = delta;
    rep.alpha = model.alpha();
    rep.count = count;
    rep.subgrid_steps = subgrid_steps;

    // Common random numbers across the two resolutions: each path is drawn
    // once on the doubled subgrid and the coarse supremum is taken over every
    // other point of the same draw, so the halving comparison isolates
    // discretization bias from Monte Carlo noise.
    auto [coarse_sups, fine_sups] =
        increment_sup_pairs(model, s, s + delta, subgrid_steps, count, seed);
    const auto run = [&](const std::vector<double>& sups,
                         std::vector<SmallballPoint>& out) -> OlsFit {
        std::vector<double> xs, ys;
        for (double eps : eps_list) {
            SmallballPoint pt;
            pt.eps = eps;
            pt.prob = proportion_below(sups, eps);
            out.push_back(pt);
            const std::size_t hits =
                static_cast<std::size_t>(std::llround(pt.prob.estimate * static_cast<double>(count)));
            if (hits >= 5) {  // log-probability needs a usable estimate
                xs.push_back(std::pow(eps, -1.0 / rep.alpha));
                ys.push_back(std::log(pt.prob.estimate));
            }
        }
        if (xs.size() < 3)
            throw std::runtime_error(
                "smallball_sweep: too few eps values with enough successes for the regression");
        return ols_fit(xs, ys);
    };
    rep.fit = run(coarse_sups, rep.points);
    rep.fit_fine = run(fine_sups, rep.points_fine);
    return rep;
}

CrossingReport crossing_check(const CovarianceModel& model, double s, double t,
                              std::size_t count, std::uint64_t seed) {
    if (!(s > 0.0 && s <= t)) throw std::invalid_argument("crossing_check: need 0 < s <= t");
    if (count == 0) throw std::invalid_argument("crossing_check: need samples");
    const double vs = model.variance(s);
    const double vt = model.variance(t);
    const double rts = model.covariance(t, s);
    if (!(rts > 0.0))
        throw std::invalid_argument("crossing_check: requires R(t, s) > 0");

    // exact bivariate draw: only (X_s, X_t) matters for the event
    const double sd_s = std::sqrt(vs);
    const double b = rts / sd_s;
    const double resid = std::sqrt(std::max(vt - b * b, 0.0));
    std::size_t up = 0, down = 0;
    for (std::size_t p = 0; p < count; ++p) {
        Rng rng(seed, p);
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double xs = sd_s * z1;
        const double xt = b * z1 + resid * z2;
        if (xs < 0.0 && xt > 0.0) ++up;
        if (xs > 0.0 && xt < 0.0) ++down;
    }

    CrossingReport rep;
    rep.s = s;
    rep.t = t;
    rep.straddle_up = proportion_with_ci(up, count);
    rep.straddle_down = proportion_with_ci(down, count);
    const double w = model.incremental_variance(t, s);
    rep.bound_shape = s == t ? 0.0 : std::sqrt(w / vs) * (1.0 + model.covariance(s, s) / rts);
    rep.implied_C = rep.bound_shape > 0.0 ? rep.straddle_up.estimate / rep.bound_shape : 0.0;
    const double joint = 1.96 * (rep.straddle_up.std_error + rep.straddle_down.std_error);
    rep.symmetry_ok =
        std::abs(rep.straddle_up.estimate - rep.straddle_down.estimate) <= std::max(joint, 1e-12);
    return rep;
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 50) throw std::invalid_argument("ks_test: need at least 50 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * (k % 2 == 1 ? 1.0 : -1.0) *
                            std::exp(-2.0 * lambda * lambda * static_cast<double>(k) *
                                     static_cast<double>(k));
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

GridFunction exp_kernel_integral(const SamplePath& X, double theta) {
    if (theta < 0.0) throw std::invalid_argument("exp_kernel_integral: theta must be >= 0");
    std::vector<double> v(X.size(), 0.0);
    for (std::size_t i = 0; i + 1 < X.size(); ++i) {
        const double h = X.grid.step(i);
        // U_{i+1} = e^{-theta h} (U_i + left-point increment)
        v[i + 1] = std::exp(-theta * h) * (v[i] + (X[i + 1] - X[i]));
    }
    return GridFunction(X.grid, std::move(v));
}

ZeroIntegralReport zero_integral_demo(const CovarianceModel& model, double strike,
                                      const TimeGrid& grid, const HolderParams& params,
                                      const PartitionSchedule& schedule, std::size_t count,
                                      std::uint64_t seed, const HolderOptions& opts) {
    if (!(strike >= 0.0))
        throw std::invalid_argument("zero_integral_demo: strike must be >= 0 so X_0 <= K");
    if (count == 0) throw std::invalid_argument("zero_integral_demo: need paths");
    ZeroIntegralReport rep;
    rep.strike = strike;
    rep.paths = count;
    const std::size_t idx_t1 =
        std::min(grid.index_at_or_after(schedule.times[1]), grid.size() - 1);
    rep.t1 = grid[idx_t1];

    PathBatch batch = sample_paths(model, grid, count, seed);
    for (std::size_t p = 0; p < count; ++p) {
        SamplePath X = batch.path(p);
        std::vector<double> z(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) z[i] = std::max(X[i] - strike, 0.0);
        GridFunction Z(grid, std::move(z));
        ReplicationOutcome out = replicate_holder(Z, X, params, schedule, opts);
        // u2 = 1_{X > K} integrates to (X_T - K)^+ exactly along the
        // piecewise-linear path, so the integral gap is the replication error
        const double payoff = std::max(X[X.size() - 1] - strike, 0.0);
        rep.gaps.push_back(std::abs(out.achieved - payoff));
        double occ = 0.0;
        bool crossed = false;
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (X[i] > strike) {
                crossed = true;
                if (i < idx_t1) occ += grid.step(i);
            }
        }
        rep.occupations.push_back(occ);
        if (!crossed) ++rep.degenerate;
    }
    rep.median_gap = median(rep.gaps);
    rep.mean_occupation = mean_with_ci(rep.occupations).estimate;
    return rep;
}

}  // namespace gpint
