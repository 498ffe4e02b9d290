// Python bindings for the main operations: covariance models, exact path
// sampling, fractional calculus, pathwise integrals, the replication
// constructions, and the Monte Carlo verification harness.
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpint/class_check.hpp"
#include "gpint/conditional.hpp"
#include "gpint/frac_calc.hpp"
#include "gpint/io.hpp"
#include "gpint/pathwise.hpp"
#include "gpint/replicate.hpp"
#include "gpint/rng.hpp"
#include "gpint/sampling.hpp"
#include "gpint/stats.hpp"
#include "gpint/verify.hpp"

namespace py = pybind11;
using namespace gpint;

namespace {

py::array_t<double> batch_to_numpy(const PathBatch& b) {
    const auto rows = static_cast<py::ssize_t>(b.values.rows());
    const auto cols = static_cast<py::ssize_t>(b.values.cols());
    py::array_t<double> out({rows, cols});
    auto r = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < rows; ++i)
        for (py::ssize_t j = 0; j < cols; ++j) r(i, j) = b.values(i, j);
    return out;
}

SamplePath make_path(const TimeGrid& grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("path values must have one entry per grid point");
    return SamplePath{grid, std::move(values), 0, "user"};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Gaussian-process pathwise integration: simulation, fractional calculus, "
        "replication constructions, and Monte Carlo verification";

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<std::vector<double>>(), py::arg("points"))
        .def_static("uniform", &TimeGrid::uniform, py::arg("horizon"), py::arg("n_steps"))
        .def_property_readonly("horizon", &TimeGrid::horizon)
        .def_property_readonly("points", [](const TimeGrid& g) { return g.points(); })
        .def("__len__", &TimeGrid::size)
        .def("__getitem__",
             [](const TimeGrid& g, std::size_t i) {
                 if (i >= g.size()) throw py::index_error();
                 return g[i];
             })
        .def("index_of", &TimeGrid::index_of, py::arg("t"), py::arg("tol") = 1e-9)
        .def("coarsened", &TimeGrid::coarsened, py::arg("k"));

    py::class_<CovarianceModel>(m, "CovarianceModel")
        .def_static("fbm", &CovarianceModel::fbm, py::arg("hurst"))
        .def_static("stationary_exp", &CovarianceModel::stationary_exp, py::arg("alpha"))
        .def_static(
            "stationary",
            [](const std::function<double(double)>& r, double alpha, const std::string& name) {
                return CovarianceModel::stationary(r, alpha, name);
            },
            py::arg("r"), py::arg("alpha"), py::arg("name") = "stationary")
        .def_static(
            "tabulated",
            [](std::vector<double> ts, std::vector<double> rs, double alpha) {
                return CovarianceModel::stationary(
                    make_interpolated_kernel(std::move(ts), std::move(rs)), alpha, "tabulated");
            },
            py::arg("lags"), py::arg("values"), py::arg("alpha"))
        .def_property_readonly("alpha", &CovarianceModel::alpha)
        .def_property_readonly("tag", &CovarianceModel::tag)
        .def("covariance", &CovarianceModel::covariance, py::arg("t"), py::arg("s"))
        .def("variance", &CovarianceModel::variance, py::arg("t"))
        .def("incremental_variance", &CovarianceModel::incremental_variance, py::arg("t"),
             py::arg("s"));

    m.def(
        "sample_paths",
        [](const CovarianceModel& model, const TimeGrid& grid, std::size_t count,
           std::uint64_t seed) {
            return batch_to_numpy(sample_paths(model, grid, count, seed));
        },
        py::arg("model"), py::arg("grid"), py::arg("count"), py::arg("seed"),
        "count x (len(grid)) array of exact Gaussian paths; row p depends only on "
        "derive_seed(seed, p)");

    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("stream"));

    // ---- class membership and small-deviation sufficient conditions
    py::class_<ClassReport>(m, "ClassReport")
        .def_readonly("cond1_positive_covariance", &ClassReport::cond1_positive_covariance)
        .def_readonly("cond2_incremental_bound", &ClassReport::cond2_incremental_bound)
        .def_readonly("cond3_variance_lower", &ClassReport::cond3_variance_lower)
        .def_readonly("cond4_ratio_bounded", &ClassReport::cond4_ratio_bounded)
        .def_readonly("fitted_C", &ClassReport::fitted_C)
        .def_readonly("fitted_exponent", &ClassReport::fitted_exponent)
        .def_readonly("fitted_c", &ClassReport::fitted_c)
        .def_readonly("ratio_supremum", &ClassReport::ratio_supremum)
        .def("passed", &ClassReport::pass);
    m.def("check_class_membership", &check_class_membership, py::arg("model"),
          py::arg("alpha"), py::arg("delta"), py::arg("grid"), py::arg("delta_hat") = 0.0);

    py::class_<SmallballConditionReport>(m, "SmallballConditionReport")
        .def_readonly("doubling_ok", &SmallballConditionReport::doubling_ok)
        .def_readonly("convexity_ok", &SmallballConditionReport::convexity_ok)
        .def_readonly("doubling_ratio", &SmallballConditionReport::doubling_ratio)
        .def_readonly("worst_margin", &SmallballConditionReport::worst_margin)
        .def("passed", &SmallballConditionReport::pass);
    m.def("check_smallball_conditions",
          py::overload_cast<const CovarianceModel&>(&check_smallball_conditions),
          py::arg("model"));

    // ---- fractional calculus and pathwise integrals (on plain value arrays)
    m.def(
        "rl_derivative_left",
        [](const TimeGrid& g, std::vector<double> v, double beta) {
            return rl_derivative_left(GridFunction(g, std::move(v)), beta).values;
        },
        py::arg("grid"), py::arg("values"), py::arg("beta"));
    m.def(
        "rl_derivative_right",
        [](const TimeGrid& g, std::vector<double> v, double order, double t) {
            return rl_derivative_right(GridFunction(g, std::move(v)), order, t).values;
        },
        py::arg("grid"), py::arg("values"), py::arg("order"), py::arg("t"));
    m.def(
        "gls_integral",
        [](const TimeGrid& g, std::vector<double> f, std::vector<double> x, double beta,
           double t) {
            return gls_integral(GridFunction(g, std::move(f)), GridFunction(g, std::move(x)),
                                beta, t);
        },
        py::arg("grid"), py::arg("f"), py::arg("g"), py::arg("beta"), py::arg("t"));
    m.def(
        "gls_bound",
        [](const TimeGrid& g, std::vector<double> f, std::vector<double> x, double beta,
           double t) {
            return gls_bound(GridFunction(g, std::move(f)), GridFunction(g, std::move(x)),
                             beta, t);
        },
        py::arg("grid"), py::arg("f"), py::arg("g"), py::arg("beta"), py::arg("t"));
    m.def("default_beta", &default_beta, py::arg("alpha"));
    m.def(
        "besov_norm_w2",
        [](const TimeGrid& g, std::vector<double> v, double beta, double t) {
            return besov_norm_w2(GridFunction(g, std::move(v)), beta, t);
        },
        py::arg("grid"), py::arg("values"), py::arg("beta"), py::arg("t"));
    m.def(
        "follmer_integral",
        [](const TimeGrid& g, std::vector<double> y, std::vector<double> x, unsigned levels,
           double tol) {
            auto res = follmer_integral(GridFunction(g, std::move(y)),
                                        make_path(g, std::move(x)), levels, tol);
            return py::make_tuple(res.value, res.partial_sums, res.converged);
        },
        py::arg("grid"), py::arg("y"), py::arg("x"), py::arg("levels") = 4,
        py::arg("tol") = 1e30,
        "returns (finest forward sum, partial sums coarsest-first, converged flag)");
    m.def(
        "ito_residual_indicator",
        [](const TimeGrid& g, std::vector<double> x, double level, double u) {
            return ito_residual(BvRule::indicator(level), u, make_path(g, std::move(x)));
        },
        py::arg("grid"), py::arg("x"), py::arg("level") = 0.0, py::arg("u") = 0.0);

    // ---- schedules and window parameters
    py::class_<PartitionSchedule>(m, "PartitionSchedule")
        .def_readonly("gamma", &PartitionSchedule::gamma)
        .def_readonly("horizon", &PartitionSchedule::horizon)
        .def_readonly("n_max", &PartitionSchedule::n_max)
        .def_readonly("times", &PartitionSchedule::times)
        .def("gap", &PartitionSchedule::gap, py::arg("n"));
    m.def("partition_schedule", &partition_schedule, py::arg("gamma"), py::arg("horizon"),
          py::arg("n_max"), py::arg("tail_tol") = 1e-9);

    py::class_<LemmaParams>(m, "LemmaParams")
        .def(py::init([](double alpha, double gamma, double eta) {
                 LemmaParams p{alpha, gamma, eta};
                 p.validate();
                 return p;
             }),
             py::arg("alpha"), py::arg("gamma"), py::arg("eta"))
        .def_readonly("alpha", &LemmaParams::alpha)
        .def_readonly("gamma", &LemmaParams::gamma)
        .def_readonly("eta", &LemmaParams::eta);
    m.def("default_lemma_params", &default_lemma_params, py::arg("alpha"));

    py::class_<HolderParams>(m, "HolderParams")
        .def_readonly("alpha", &HolderParams::alpha)
        .def_readonly("a", &HolderParams::a)
        .def_readonly("beta", &HolderParams::beta)
        .def_readonly("gamma", &HolderParams::gamma)
        .def_readonly("kappa", &HolderParams::kappa);
    m.def("default_holder_params", &default_holder_params, py::arg("alpha"), py::arg("a"));

    // ---- replication constructions
    py::class_<BlockRecord>(m, "BlockRecord")
        .def_readonly("n", &BlockRecord::n)
        .def_property_readonly("case_label",
                               [](const BlockRecord& b) { return std::string(1, b.case_label); })
        .def_readonly("hit", &BlockRecord::hit)
        .def_readonly("empty", &BlockRecord::empty)
        .def_readonly("stop_time", &BlockRecord::stop_time)
        .def_readonly("target", &BlockRecord::target)
        .def_readonly("contribution", &BlockRecord::contribution);

    py::class_<ReplicationOutcome>(m, "ReplicationOutcome")
        .def_readonly("block_times", &ReplicationOutcome::block_times)
        .def_readonly("trajectory", &ReplicationOutcome::trajectory)
        .def_readonly("blocks", &ReplicationOutcome::blocks)
        .def_readonly("target", &ReplicationOutcome::target)
        .def_readonly("achieved", &ReplicationOutcome::achieved)
        .def_readonly("success", &ReplicationOutcome::success)
        .def_readonly("stop_time", &ReplicationOutcome::stop_time)
        .def_readonly("case_b_count", &ReplicationOutcome::case_b_count);

    m.def(
        "build_diverging_integrand",
        [](const TimeGrid& g, std::vector<double> x, const LemmaParams& p,
           const PartitionSchedule& sched, double start, double level) {
            return build_diverging_integrand(make_path(g, std::move(x)), p, sched, start,
                                             level);
        },
        py::arg("grid"), py::arg("x"), py::arg("params"), py::arg("schedule"),
        py::arg("start") = 0.0, py::arg("level") = 3.0);
    m.def(
        "replicate_distribution",
        [](const std::function<double(double)>& quantile, const CovarianceModel& model,
           const TimeGrid& g, std::vector<double> x, double v, const LemmaParams& p,
           const PartitionSchedule& sched) {
            return replicate_distribution(quantile, model, make_path(g, std::move(x)), v, p,
                                          sched);
        },
        py::arg("quantile"), py::arg("model"), py::arg("grid"), py::arg("x"), py::arg("v"),
        py::arg("params"), py::arg("schedule"));

    py::class_<TargetSpec>(m, "TargetSpec")
        .def_static("linear", &TargetSpec::linear, py::arg("times"), py::arg("coeffs"),
                    py::arg("intercept") = 0.0)
        .def_static("call", &TargetSpec::call, py::arg("time"), py::arg("strike"));
    py::class_<ConditionalArctanEvaluator>(m, "ConditionalArctanEvaluator")
        .def(py::init<const CovarianceModel&, const TimeGrid&, TargetSpec, std::size_t>(),
             py::arg("model"), py::arg("grid"), py::arg("spec"), py::arg("quad_nodes") = 64)
        .def(
            "expected_arctan",
            [](const ConditionalArctanEvaluator& e, const TimeGrid& g, std::vector<double> x,
               double t) { return e.expected_arctan(make_path(g, std::move(x)), t); },
            py::arg("grid"), py::arg("x"), py::arg("t"));
    m.def(
        "replicate_rv",
        [](const ConditionalArctanEvaluator& eval, const TimeGrid& g, std::vector<double> x,
           const PartitionSchedule& sched, const LemmaParams& p) {
            return replicate_rv(eval, make_path(g, std::move(x)), sched, p);
        },
        py::arg("evaluator"), py::arg("grid"), py::arg("x"), py::arg("schedule"),
        py::arg("params"));
    m.def(
        "replicate_holder",
        [](const TimeGrid& g, std::vector<double> z, std::vector<double> x,
           const HolderParams& p, const PartitionSchedule& sched) {
            return replicate_holder(GridFunction(g, std::move(z)), make_path(g, std::move(x)),
                                    p, sched);
        },
        py::arg("grid"), py::arg("z"), py::arg("x"), py::arg("params"), py::arg("schedule"));

    // ---- verification harness
    py::class_<EstimateWithCI>(m, "EstimateWithCI")
        .def_readonly("estimate", &EstimateWithCI::estimate)
        .def_readonly("std_error", &EstimateWithCI::std_error)
        .def_readonly("count", &EstimateWithCI::count);
    m.def("smallball_estimate", &smallball_estimate, py::arg("model"), py::arg("s"),
          py::arg("t"), py::arg("eps"), py::arg("subgrid_steps"), py::arg("count"),
          py::arg("seed"));

    py::class_<SmallballSweepReport>(m, "SmallballSweepReport")
        .def_property_readonly("slope",
                               [](const SmallballSweepReport& r) { return r.fit.slope; })
        .def_property_readonly("slope_fine",
                               [](const SmallballSweepReport& r) { return r.fit_fine.slope; })
        .def_property_readonly("t_stat",
                               [](const SmallballSweepReport& r) { return r.fit.t_stat; })
        .def("shape_ok", &SmallballSweepReport::shape_ok)
        .def("stable", &SmallballSweepReport::stable);
    m.def("smallball_sweep", &smallball_sweep, py::arg("model"), py::arg("s"),
          py::arg("delta"), py::arg("eps_list"), py::arg("subgrid_steps"), py::arg("count"),
          py::arg("seed"));

    py::class_<CrossingReport>(m, "CrossingReport")
        .def_readonly("straddle_up", &CrossingReport::straddle_up)
        .def_readonly("straddle_down", &CrossingReport::straddle_down)
        .def_readonly("bound_shape", &CrossingReport::bound_shape)
        .def_readonly("implied_C", &CrossingReport::implied_C)
        .def_readonly("symmetry_ok", &CrossingReport::symmetry_ok);
    m.def("crossing_check", &crossing_check, py::arg("model"), py::arg("s"), py::arg("t"),
          py::arg("count"), py::arg("seed"));

    m.def(
        "ks_test",
        [](std::vector<double> samples, const std::function<double(double)>& cdf) {
            auto r = ks_test(std::move(samples), cdf);
            return py::make_tuple(r.d, r.p);
        },
        py::arg("samples"), py::arg("cdf"), "returns (D statistic, asymptotic p-value)");

    py::class_<ZeroIntegralReport>(m, "ZeroIntegralReport")
        .def_readonly("t1", &ZeroIntegralReport::t1)
        .def_readonly("median_gap", &ZeroIntegralReport::median_gap)
        .def_readonly("mean_occupation", &ZeroIntegralReport::mean_occupation)
        .def_readonly("degenerate", &ZeroIntegralReport::degenerate)
        .def_readonly("gaps", &ZeroIntegralReport::gaps)
        .def_readonly("occupations", &ZeroIntegralReport::occupations);
    m.def(
        "zero_integral_demo",
        [](const CovarianceModel& model, double strike, const TimeGrid& grid,
           const HolderParams& p, const PartitionSchedule& sched, std::size_t count,
           std::uint64_t seed) {
            return zero_integral_demo(model, strike, grid, p, sched, count, seed);
        },
        py::arg("model"), py::arg("strike"), py::arg("grid"), py::arg("params"),
        py::arg("schedule"), py::arg("count"), py::arg("seed"));
}
