#include "gpint/sampling.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "gpint/rng.hpp"

namespace gpint {

namespace {

std::string cache_key(const CovarianceModel& model, const TimeGrid& grid, const char* what) {
    std::ostringstream os;
    os << what << '|' << model.tag() << '|' << grid.size() << '|' << grid.horizon() << '|'
       << grid[1];
    return os.str();
}

std::mutex g_cache_mutex;
std::map<std::string, std::shared_ptr<const Eigen::MatrixXd>> g_chol_cache;
std::map<std::string, std::shared_ptr<const std::vector<double>>> g_spec_cache;

std::shared_ptr<const Eigen::MatrixXd> cached_cholesky(const CovarianceModel& model,
                                                       const TimeGrid& grid) {
    const std::string key = cache_key(model, grid, "chol");
    // Generic kernels are backed by arbitrary callables; their tag may not
    // identify them, so skip the cache.
    const bool cacheable = model.kind() != CovarianceModel::Kind::GenericKernel &&
                           model.kind() != CovarianceModel::Kind::StationaryGeneric;
    if (cacheable) {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = g_chol_cache.find(key);
        if (it != g_chol_cache.end()) return it->second;
    }
    auto factor = std::make_shared<Eigen::MatrixXd>(cholesky_factor(model, grid));
    if (cacheable) {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        g_chol_cache.emplace(key, factor);
    }
    return factor;
}

/// Circulant eigenvalues for fractional Gaussian noise with step h on an
/// N-step grid (embedding size 2N).
std::vector<double> fgn_spectrum(std::size_t n_steps, double hurst, double h) {
    const std::size_t m = 2 * n_steps;
    const double h2 = 2.0 * hurst;
    auto rho = [&](double k) {
        return 0.5 * std::pow(h, h2) *
               (std::pow(std::abs(k + 1.0), h2) + std::pow(std::abs(k - 1.0), h2) -
                2.0 * std::pow(std::abs(k), h2));
    };
    std::vector<double> row(m);
    for (std::size_t k = 0; k <= n_steps; ++k) row[k] = rho(static_cast<double>(k));
    for (std::size_t k = n_steps + 1; k < m; ++k) row[k] = row[m - k];

    std::vector<std::complex<double>> in(m), out(m);
    for (std::size_t k = 0; k < m; ++k) in[k] = row[k];
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m),
                                      reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    std::vector<double> lambda(m);
    double min_l = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        lambda[k] = out[k].real();
        min_l = std::min(min_l, lambda[k]);
    }
    // For H > 1/2 the embedding is nonnegative definite; clamp roundoff noise.
    if (min_l < -1e-8 * lambda[0])
        throw std::runtime_error("circulant embedding not nonnegative definite");
    for (auto& l : lambda) l = std::max(l, 0.0);
    return lambda;
}

std::shared_ptr<const std::vector<double>> cached_spectrum(const CovarianceModel& model,
                                                           const TimeGrid& grid) {
    const std::string key = cache_key(model, grid, "spec");
    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = g_spec_cache.find(key);
        if (it != g_spec_cache.end()) return it->second;
    }
    auto spec = std::make_shared<std::vector<double>>(
        fgn_spectrum(grid.steps(), model.alpha(), grid.step(0)));
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    g_spec_cache.emplace(key, spec);
    return spec;
}

void sample_path_circulant(const std::vector<double>& lambda, Rng& rng, double* path,
                           std::size_t n_steps) {
    const std::size_t m = lambda.size();
    std::vector<std::complex<double>> in(m), out(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    in[0] = std::sqrt(lambda[0] * inv_m) * rng.normal();
    in[n_steps] = std::sqrt(lambda[n_steps] * inv_m) * rng.normal();
    for (std::size_t k = 1; k < n_steps; ++k) {
        const double a = rng.normal();
        const double b = rng.normal();
        const double s = std::sqrt(0.5 * lambda[k] * inv_m);
        in[k] = std::complex<double>(s * a, s * b);
        in[m - k] = std::conj(in[k]);
    }
    fftw_plan plan;
    {
        // fftw planning is not thread safe
        static std::mutex plan_mutex;
        std::lock_guard<std::mutex> lk(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(m), reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        static std::mutex plan_mutex2;
        std::lock_guard<std::mutex> lk(plan_mutex2);
        fftw_destroy_plan(plan);
    }
    path[0] = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) path[i + 1] = path[i] + out[i].real();
}

}  // namespace

Eigen::MatrixXd covariance_matrix(const CovarianceModel& model, const TimeGrid& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = model.covariance(grid[static_cast<std::size_t>(i)],
                                              grid[static_cast<std::size_t>(j)]);
            cov(i, j) = v;
            cov(j, i) = v;
        }
    return cov;
}

Eigen::MatrixXd cholesky_factor(const CovarianceModel& model, const TimeGrid& grid) {
    Eigen::MatrixXd cov = covariance_matrix(model, grid);
    const double scale = std::max(cov.diagonal().maxCoeff(), 1.0);
    for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
        Eigen::MatrixXd work = cov;
        if (jitter > 0.0) work.diagonal().array() += jitter * scale;
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    std::ostringstream os;
    os << "cholesky_factor: factorization failed for " << model.tag();
    if (grid.size() <= 2049) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
        os << " (smallest eigenvalue " << es.eigenvalues().minCoeff() << ")";
    }
    throw std::runtime_error(os.str());
}

PathBatch sample_paths(const CovarianceModel& model, const TimeGrid& grid, std::size_t count,
                       std::uint64_t seed, SamplingMethod method) {
    if (count == 0) throw std::invalid_argument("sample_paths: count must be positive");
    if (method == SamplingMethod::Auto)
        method = (model.kind() == CovarianceModel::Kind::Fbm && grid.uniform_spacing())
                     ? SamplingMethod::Circulant
                     : SamplingMethod::Cholesky;

    PathBatch batch{grid, Eigen::MatrixXd(static_cast<Eigen::Index>(count),
                                          static_cast<Eigen::Index>(grid.size())),
                    seed, model.tag()};

    if (method == SamplingMethod::Circulant) {
        if (model.kind() != CovarianceModel::Kind::Fbm || !grid.uniform_spacing())
            throw std::invalid_argument(
                "sample_paths: circulant embedding needs fbm on a uniform grid");
        auto spec = cached_spectrum(model, grid);
        std::vector<double> path(grid.size());
        for (std::size_t p = 0; p < count; ++p) {
            Rng rng(seed, p);
            sample_path_circulant(*spec, rng, path.data(), grid.steps());
            for (std::size_t i = 0; i < grid.size(); ++i)
                batch.values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)) = path[i];
        }
        return batch;
    }

    auto factor = cached_cholesky(model, grid);
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd z(n);
    for (std::size_t p = 0; p < count; ++p) {
        Rng rng(seed, p);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
        batch.values.row(static_cast<Eigen::Index>(p)) = ((*factor) * z).transpose();
    }
    return batch;
}

void clear_sampling_cache() {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    g_chol_cache.clear();
    g_spec_cache.clear();
}

}  // namespace gpint
