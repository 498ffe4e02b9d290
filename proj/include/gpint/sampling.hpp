#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gpint/covariance.hpp"
#include "gpint/time_grid.hpp"

namespace gpint {

/// One realized path on a grid.
struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;  // one value per grid point
    std::uint64_t seed = 0;
    std::string model_tag;

    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// A batch of independent paths sharing one grid. Row p is path p.
struct PathBatch {
    TimeGrid grid;
    Eigen::MatrixXd values;  // count x grid.size()
    std::uint64_t seed = 0;
    std::string model_tag;

    std::size_t count() const { return static_cast<std::size_t>(values.rows()); }

    SamplePath path(std::size_t p) const {
        SamplePath out{grid, {}, seed, model_tag};
        out.values.assign(values.row(static_cast<Eigen::Index>(p)).begin(),
                          values.row(static_cast<Eigen::Index>(p)).end());
        return out;
    }
};

enum class SamplingMethod {
    Auto,      // circulant embedding for fBm on uniform grids, Cholesky otherwise
    Cholesky,  // dense Cholesky of the grid covariance, jitter escalation on failure
    Circulant  // Davies-Harte circulant embedding (fBm, uniform grid only)
};

Eigen::MatrixXd covariance_matrix(const CovarianceModel& model, const TimeGrid& grid);

/// Lower Cholesky factor of the grid covariance, with diagonal jitter
/// escalation 1e-12 -> 1e-8 (relative to the largest diagonal entry).
/// Throws on failure, reporting the smallest eigenvalue.
Eigen::MatrixXd cholesky_factor(const CovarianceModel& model, const TimeGrid& grid);

/// `count` centered Gaussian paths with the model covariance. Deterministic in
/// (model, grid, seed, count); path p uses the sub-stream derive_seed(seed, p),
/// so any subset of paths is reproducible on its own.
PathBatch sample_paths(const CovarianceModel& model, const TimeGrid& grid, std::size_t count,
                       std::uint64_t seed, SamplingMethod method = SamplingMethod::Auto);

/// Drops the cached Cholesky factors / circulant spectra (mainly for tests).
void clear_sampling_cache();

}  // namespace gpint
