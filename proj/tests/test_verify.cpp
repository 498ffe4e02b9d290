#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gpint/rng.hpp"
#include "gpint/verify.hpp"

using namespace gpint;

TEST_CASE("smallball estimate: huge ball, monotonicity, CI sanity") {
    auto model = CovarianceModel::fbm(0.75);
    const double w = model.incremental_variance(0.95, 0.85);
    auto big = smallball_estimate(model, 0.85, 0.95, 10.0 * std::sqrt(w), 32, 2000, 9);
    CHECK(big.estimate >= big.lower());
    CHECK(big.upper() >= 1.0 - 1e-9);

    double prev = 2.0;
    for (double eps : {0.10, 0.06, 0.03}) {
        auto est = smallball_estimate(model, 0.85, 0.95, eps, 32, 2000, 9);
        CHECK(est.estimate >= 0.0);
        CHECK(est.estimate <= 1.0);
        CHECK(est.estimate <= prev + 3.0 * est.std_error);  // monotone within noise
        prev = est.estimate;
    }
    // zero-success case reports a one-sided width, not an exact zero
    auto tiny = smallball_estimate(model, 0.85, 0.95, 1e-6, 32, 500, 9);
    CHECK(tiny.estimate == 0.0);
    CHECK(tiny.std_error > 0.0);
}

TEST_CASE("smallball sweep: negative slope with strong t-stat") {
    auto model = CovarianceModel::fbm(0.75);
    std::vector<double> eps{0.02, 0.03, 0.04, 0.05, 0.06, 0.08, 0.1};
    // subgrid 64: coarse enough to be cheap, fine enough that halving the
    // step no longer shifts the fitted slope beyond its confidence band
    auto rep = smallball_sweep(model, 0.85, 0.1, eps, 64, 4000, 12);
    CHECK(rep.fit.slope < 0.0);
    CHECK(std::abs(rep.fit.t_stat) > 3.0);
    CHECK(rep.shape_ok());
    CHECK(rep.stable());
}

TEST_CASE("crossing check: degenerate, symmetry, bounded implied constant") {
    auto model = CovarianceModel::fbm(0.75);
    auto at = crossing_check(model, 0.5, 0.5, 20000, 33);
    CHECK(at.straddle_up.estimate == 0.0);  // s = t cannot straddle
    CHECK(at.bound_shape == 0.0);

    auto rep = crossing_check(model, 0.5, 0.6, 50000, 34);
    CHECK(rep.symmetry_ok);
    CHECK(rep.straddle_up.estimate > 0.0);
    CHECK(rep.bound_shape > 0.0);
    CHECK(rep.implied_C < 1.0);  // the shape dominates the probability here
}

TEST_CASE("KS test: calibration and point mass") {
    // uniform samples against the uniform CDF should not be rejected often
    std::size_t reject = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        std::vector<double> u(1000);
        for (auto& x : u) x = rng.uniform();
        if (ks_test(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).p <= 0.001) ++reject;
    }
    CHECK(reject <= 1);

    std::vector<double> zeros(100, 0.0);
    auto r = ks_test(zeros, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
    CHECK(r.d == doctest::Approx(0.5));
    CHECK_THROWS_AS(ks_test(std::vector<double>(10, 0.0), [](double) { return 0.5; }),
                    std::invalid_argument);
}

TEST_CASE("KS test is invariant under strictly increasing transforms") {
    Rng rng(77);
    std::vector<double> u(500);
    for (auto& x : u) x = rng.uniform();
    const double d0 = ks_test(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).d;
    // exp, cube-root shift, and logistic transforms applied to both sides
    struct Xf {
        std::function<double(double)> fwd, inv;
    };
    std::vector<Xf> xfs = {
        {[](double x) { return std::exp(x); }, [](double y) { return std::log(y); }},
        {[](double x) { return std::cbrt(x) + 2.0; },
         [](double y) { return std::pow(y - 2.0, 3.0); }},
        {[](double x) { return 1.0 / (1.0 + std::exp(-3.0 * x)); },
         [](double y) { return std::log(y / (1.0 - y)) / 3.0; }}};
    for (const auto& xf : xfs) {
        std::vector<double> v;
        for (double x : u) v.push_back(xf.fwd(x));
        const double d1 =
            ks_test(v, [&](double y) { return std::clamp(xf.inv(y), 0.0, 1.0); }).d;
        CHECK(d1 == doctest::Approx(d0).epsilon(1e-12));
    }
}

TEST_CASE("exponential-kernel forward integral") {
    auto grid = TimeGrid::uniform(1.0, 1024);
    // theta = 0 telescopes to the path itself
    auto X = sample_paths(CovarianceModel::fbm(0.75), grid, 1, 55).path(0);
    auto u0 = exp_kernel_integral(X, 0.0);
    for (std::size_t i = 0; i < X.size(); ++i)
        CHECK(u0[i] == doctest::Approx(X[i] - X[0]).epsilon(1e-12));
    // deterministic ramp: integral of e^{-theta(t-s)} ds has a closed form
    SamplePath ramp{grid, {}, 0, "ramp"};
    ramp.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ramp.values[i] = grid[i];
    auto u = exp_kernel_integral(ramp, 2.0);
    const double ref = (1.0 - std::exp(-2.0)) / 2.0;
    CHECK(u[1024] == doctest::Approx(ref).epsilon(1e-2));
}

TEST_CASE("zero-integral demonstration runs and reports sane numbers") {
    auto model = CovarianceModel::fbm(0.75);
    auto grid = TimeGrid::uniform(1.0, 1 << 11);
    auto hp = default_holder_params(0.75, 0.7);
    auto sched = partition_schedule(hp.gamma, 1.0, 20);
    auto rep = zero_integral_demo(model, 0.2, grid, hp, sched, 50, 66);
    CHECK(rep.paths == 50);
    CHECK(rep.t1 > 0.5);  // the integrand-free window covers most of [0, 1]
    CHECK(rep.mean_occupation > 0.01);
    CHECK(rep.median_gap < 1.0);
    CHECK(rep.degenerate < 50);
    // a strike no path reaches makes the demo degenerate
    auto far = zero_integral_demo(model, 50.0, grid, hp, sched, 20, 67);
    CHECK(far.degenerate == 20);
    CHECK(far.median_gap == doctest::Approx(0.0));
}
