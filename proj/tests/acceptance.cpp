// Acceptance suite: one criterion per invocation (argv[1] = 1..12), printing a
// single PASS/FAIL line with its summary numbers. Criterion 12 reruns all the
// others and requires bit-identical summaries.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "gpint/class_check.hpp"
#include "gpint/frac_calc.hpp"
#include "gpint/io.hpp"
#include "gpint/pathwise.hpp"
#include "gpint/replicate.hpp"
#include "gpint/rng.hpp"
#include "gpint/sampling.hpp"
#include "gpint/stats.hpp"
#include "gpint/verify.hpp"

using namespace gpint;

namespace {

constexpr std::uint64_t kMasterSeed = 20260824ULL;

std::uint64_t seed_for(int criterion) {
    return derive_seed(kMasterSeed, static_cast<std::uint64_t>(criterion));
}

struct Result {
    bool pass = false;
    std::string detail;
    std::vector<double> summary;
};

double power_fit_err(double mu, double beta, std::size_t n) {
    auto grid = TimeGrid::uniform(1.0, n);
    auto f = GridFunction::from_callable(grid, [mu](double s) { return std::pow(s, mu); });
    auto d = rl_derivative_left(f, beta);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.1) continue;
        const double ref =
            std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - beta) * std::pow(grid[i], mu - beta);
        worst = std::max(worst, std::abs(d[i] - ref) / std::abs(ref));
    }
    return worst;
}

// 1. Fractional-derivative power oracle at N=2^12 with one refinement.
Result criterion1() {
    Result r;
    r.pass = true;
    for (double mu : {0.5, 1.0, 2.0})
        for (double beta : {0.25, 0.5, 0.75}) {
            const double coarse = power_fit_err(mu, beta, 1 << 12);
            const double fine = power_fit_err(mu, beta, 1 << 13);
            r.summary.push_back(coarse);
            r.summary.push_back(fine);
            if (coarse > 1e-3) r.pass = false;
            if (coarse > 1e-12 && fine >= coarse) r.pass = false;
        }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max rel err %.3e", *std::max_element(
        r.summary.begin(), r.summary.end()));
    r.detail = buf;
    return r;
}

// 2. Splitting-order independence of the product-derivative integral.
Result criterion2() {
    Result r;
    auto grid = TimeGrid::uniform(1.0, 1 << 12);
    auto lin = GridFunction::from_callable(grid, [](double s) { return s; });
    const double a = gls_integral(lin, lin, 0.3, 1.0);
    const double b = gls_integral(lin, lin, 0.45, 1.0);
    r.summary = {a, b};
    r.pass = std::abs(a - b) <= 1e-3 && std::abs(a - 0.5) <= 1e-3 && std::abs(b - 0.5) <= 1e-3;
    char buf[128];
    std::snprintf(buf, sizeof buf, "beta=0.30 -> %.6f, beta=0.45 -> %.6f", a, b);
    r.detail = buf;
    return r;
}

// 3. A-priori bound dominates the integral on sampled rough paths.
Result criterion3() {
    Result r;
    auto grid = TimeGrid::uniform(1.0, 1 << 10);
    auto batch = sample_paths(CovarianceModel::fbm(0.75), grid, 100, seed_for(3));
    std::size_t violations = 0;
    double worst_margin = 1e300;
    for (std::size_t p = 0; p < 100; ++p) {
        auto g = GridFunction::from_path(batch.path(p));
        std::vector<double> fv(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) fv[i] = g[i] > 0.0 ? 1.0 : 0.0;
        GridFunction f(grid, fv);
        const double integral = gls_integral(f, g, 0.35, 1.0);
        const double bound = gls_bound(f, g, 0.35, 1.0);
        const double margin = bound + 1e-6 * (1.0 + bound) - std::abs(integral);
        worst_margin = std::min(worst_margin, margin);
        if (margin < 0.0) ++violations;
    }
    r.summary = {static_cast<double>(violations), worst_margin};
    r.pass = violations == 0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "violations %zu/100, worst margin %.3e", violations,
                  worst_margin);
    r.detail = buf;
    return r;
}

// 4. Change-of-variable residual ladder for the indicator rule.
Result criterion4() {
    Result r;
    std::vector<double> medians;
    for (std::size_t n : {1u << 10, 1u << 11, 1u << 12, 1u << 13}) {
        auto grid = TimeGrid::uniform(1.0, n);
        auto batch = sample_paths(CovarianceModel::fbm(0.75), grid, 200, seed_for(4));
        std::vector<double> res;
        for (std::size_t p = 0; p < 200; ++p)
            res.push_back(std::abs(ito_residual(BvRule::indicator(0.0), 0.0, batch.path(p))));
        medians.push_back(median(res));
    }
    r.summary = medians;
    r.pass = medians.back() <= 5e-2;
    for (std::size_t k = 1; k < medians.size(); ++k)
        if (medians[k] > medians[k - 1]) r.pass = false;
    char buf[160];
    std::snprintf(buf, sizeof buf, "medians %.4f %.4f %.4f %.4f", medians[0], medians[1],
                  medians[2], medians[3]);
    r.detail = buf;
    return r;
}

// 5. Divergence of the running integral to the level L.
Result criterion5() {
    Result r;
    const double T = 8.0;
    auto grid = TimeGrid::uniform(T, 1 << 12);
    LemmaParams p = default_lemma_params(0.75);
    auto sched = partition_schedule(p.gamma, T, 200);
    auto batch = sample_paths(CovarianceModel::fbm(0.75), grid, 500, seed_for(5));
    std::size_t successes = 0, monotone = 0, hit_blocks = 0, hit_ok = 0;
    for (std::size_t q = 0; q < 500; ++q) {
        auto out = build_diverging_integrand(batch.path(q), p, sched, 0.0, 3.0);
        if (out.success) ++successes;
        bool mono = true;
        for (std::size_t k = 1; k < out.trajectory.size(); ++k)
            if (out.trajectory[k] < out.trajectory[k - 1]) mono = false;
        if (mono) ++monotone;
        for (const auto& b : out.blocks)
            if (b.hit) {
                ++hit_blocks;
                if (b.contribution >= 1.0 / static_cast<double>(b.n) * (1.0 - 1e-12)) ++hit_ok;
            }
    }
    r.summary = {static_cast<double>(successes), static_cast<double>(monotone),
                 static_cast<double>(hit_blocks), static_cast<double>(hit_ok)};
    r.pass = successes >= 475 && monotone == 500 && hit_ok == hit_blocks;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "success %zu/500, monotone %zu/500, hit contributions >= 1/n %zu/%zu",
                  successes, monotone, hit_ok, hit_blocks);
    r.detail = buf;
    return r;
}

// 6. Distribution replication of a standard normal target.
Result criterion6() {
    Result r;
    const double T = 8.0;
    auto model = CovarianceModel::fbm(0.75);
    auto grid = TimeGrid::uniform(T, 1 << 12);
    LemmaParams p = default_lemma_params(0.75);
    auto sched = partition_schedule(p.gamma, T - 0.5, 200);
    auto batch = sample_paths(model, grid, 1000, seed_for(6));
    std::vector<double> replicated;
    std::size_t successes = 0;
    for (std::size_t q = 0; q < 1000; ++q) {
        auto out = replicate_distribution([](double u) { return normal_quantile(u); }, model,
                                          batch.path(q), 0.5, p, sched);
        if (out.success) {
            ++successes;
            replicated.push_back(out.achieved);
        }
    }
    auto ks = ks_test(replicated, [](double x) { return normal_cdf(x); });
    r.summary = {ks.d, static_cast<double>(successes)};
    r.pass = ks.d <= 0.08 && successes >= 990;
    char buf[128];
    std::snprintf(buf, sizeof buf, "KS D %.4f, success %zu/1000", ks.d, successes);
    r.detail = buf;
    return r;
}

// 7. Improper replication of a call payoff through the conditional chase.
Result criterion7() {
    Result r;
    const double T = 4.0;
    auto model = CovarianceModel::fbm(0.75);
    auto grid = TimeGrid::uniform(T, 1 << 12);
    LemmaParams p = default_lemma_params(0.75);
    auto sched = partition_schedule(p.gamma, T, 8);
    ConditionalArctanEvaluator eval(model, grid, TargetSpec::call(1.0, 0.2));
    auto batch = sample_paths(model, grid, 200, seed_for(7));
    std::vector<std::vector<double>> errs(9);
    for (std::size_t q = 0; q < 200; ++q) {
        auto out = replicate_rv(eval, batch.path(q), sched, p);
        for (std::size_t n = 0; n <= 8; ++n)
            errs[n].push_back(std::abs(out.trajectory[n] - out.target));
    }
    std::vector<double> med;
    for (std::size_t n : {2u, 4u, 6u, 8u}) med.push_back(median(errs[n]));
    r.summary = med;
    r.pass = med[3] <= 0.05;
    for (std::size_t k = 1; k < med.size(); ++k)
        if (med[k] >= med[k - 1]) r.pass = false;
    char buf[160];
    std::snprintf(buf, sizeof buf, "median errors at n=2,4,6,8: %.4f %.4f %.4f %.4f", med[0],
                  med[1], med[2], med[3]);
    r.detail = buf;
    return r;
}

// 8. Proper replication of the path endpoint at Holder order a.
Result criterion8() {
    Result r;
    const double T = 0.008;
    auto model = CovarianceModel::fbm(0.75);
    auto grid = TimeGrid::uniform(T, 1 << 13);
    HolderParams hp = default_holder_params(0.75, 0.7);
    auto sched = partition_schedule(hp.gamma, T, 30);
    auto batch = sample_paths(model, grid, 200, seed_for(8));
    std::size_t ok = 0;
    std::vector<double> miss(31, 0.0);
    for (std::size_t q = 0; q < 200; ++q) {
        auto X = batch.path(q);
        auto out = replicate_holder(GridFunction::from_path(X), X, hp, sched);
        if (std::abs(out.achieved - out.target) <= 0.05) ++ok;
        for (const auto& b : out.blocks)
            if (b.case_label == 'A' && !b.empty && !b.hit) miss[b.n] += 1.0;
    }
    // per-path frequency: the fraction of all paths whose block n was a
    // chase attempt that missed its threshold
    auto freq = [&](std::size_t n) { return miss[n] / 200.0; };
    double tail = 0.0;
    for (std::size_t n = 5; n <= 30; ++n) tail = std::max(tail, freq(n));
    const bool decreasing = freq(2) > freq(3) && freq(3) > freq(4) && freq(4) >= tail;
    r.summary = {static_cast<double>(ok), freq(2), freq(3), freq(4), tail};
    r.pass = ok >= 180 && decreasing;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "final err <= 0.05 on %zu/200; miss freq n=2,3,4,max(5..30): "
                  "%.3f %.3f %.3f %.3f",
                  ok, freq(2), freq(3), freq(4), tail);
    r.detail = buf;
    return r;
}

// 9. Exponential small-deviation shape for both built-in models.
Result criterion9() {
    Result r;
    r.pass = true;
    std::vector<double> eps{0.02, 0.03, 0.04, 0.05, 0.06, 0.08, 0.1};
    std::string msg;
    int idx = 0;
    for (auto model : {CovarianceModel::fbm(0.75), CovarianceModel::stationary_exp(0.75)}) {
        auto rep = smallball_sweep(model, 0.85, 0.1, eps, 256, 10000,
                                   derive_seed(seed_for(9), static_cast<std::uint64_t>(idx++)));
        r.summary.push_back(rep.fit.slope);
        r.summary.push_back(rep.fit.t_stat);
        r.summary.push_back(rep.fit_fine.slope);
        if (!rep.shape_ok() || !rep.stable()) r.pass = false;
        char buf[128];
        std::snprintf(buf, sizeof buf, "[%s slope %.4f t %.1f fine %.4f] ",
                      model.tag().c_str(), rep.fit.slope, rep.fit.t_stat, rep.fit_fine.slope);
        msg += buf;
    }
    r.detail = msg;
    return r;
}

// 10. Sign-straddling probability against the covariance-ratio shape.
Result criterion10() {
    Result r;
    auto model = CovarianceModel::fbm(0.75);
    double cmin = 1e300, cmax = 0.0;
    bool symmetry = true;
    for (int k = 0; k < 10; ++k) {
        const double dt = 0.01 + 0.19 * static_cast<double>(k) / 9.0;
        auto rep = crossing_check(model, 0.5, 0.5 + dt, 100000,
                                  derive_seed(seed_for(10), static_cast<std::uint64_t>(k)));
        cmin = std::min(cmin, rep.implied_C);
        cmax = std::max(cmax, rep.implied_C);
        if (!rep.symmetry_ok) symmetry = false;
        r.summary.push_back(rep.implied_C);
    }
    r.pass = symmetry && cmax / cmin <= 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "implied C in [%.4f, %.4f] (ratio %.2f), symmetry %s", cmin,
                  cmax, cmax / cmin, symmetry ? "ok" : "violated");
    r.detail = buf;
    return r;
}

// 11. Distinct adapted integrands with (near-)equal integrals.
Result criterion11() {
    Result r;
    auto model = CovarianceModel::fbm(0.75);
    auto grid = TimeGrid::uniform(1.0, 1 << 12);
    HolderParams hp = default_holder_params(0.75, 0.7);
    auto sched = partition_schedule(hp.gamma, 1.0, 30);
    auto rep = zero_integral_demo(model, 0.2, grid, hp, sched, 200, seed_for(11));
    r.summary = {rep.median_gap, rep.mean_occupation};
    r.pass = rep.median_gap <= 0.05 && rep.mean_occupation >= 0.01;
    char buf[128];
    std::snprintf(buf, sizeof buf, "median gap %.4f, mean occupation of {X>K} on [0,t_1] %.4f",
                  rep.median_gap, rep.mean_occupation);
    r.detail = buf;
    return r;
}

Result run_criterion(int k);

// 12. Bit-exact reproducibility of every summary under the same master seed.
Result criterion12() {
    Result r;
    r.pass = true;
    std::string msg;
    for (int k = 1; k <= 11; ++k) {
        clear_sampling_cache();
        auto a = run_criterion(k);
        clear_sampling_cache();
        auto b = run_criterion(k);
        const bool same = a.summary.size() == b.summary.size() &&
                          std::memcmp(a.summary.data(), b.summary.data(),
                                      a.summary.size() * sizeof(double)) == 0;
        if (!same) {
            r.pass = false;
            msg += "criterion " + std::to_string(k) + " not reproducible; ";
        }
    }
    r.detail = r.pass ? "all summaries bit-identical across reruns" : msg;
    return r;
}

Result run_criterion(int k) {
    switch (k) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        case 9: return criterion9();
        case 10: return criterion10();
        case 11: return criterion11();
        case 12: return criterion12();
        default: throw std::invalid_argument("criterion number must be 1..12");
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..12>\n");
        return 2;
    }
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 12) {
        std::fprintf(stderr, "criterion number must be 1..12\n");
        return 2;
    }
    Result r = run_criterion(k);
    std::printf("criterion %d: %s — %s\n", k, r.pass ? "PASS" : "FAIL", r.detail.c_str());
    return r.pass ? 0 : 1;
}
