#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpint/grid_function.hpp"
#include "gpint/pathwise.hpp"
#include "gpint/sampling.hpp"

namespace gpint {

/// RFC-4180 quoting: fields containing commas, quotes, or newlines are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_quote(const std::string& field);

/// Rows of already-formatted fields; the header is written first.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Parses one CSV file into rows of fields, honoring quoted fields.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Two-column (time, value) layout with a header row.
void write_grid_function_csv(const std::string& path, const GridFunction& f);
GridFunction read_grid_function_csv(const std::string& path);

/// Header row of grid times, then one row of values per path.
void write_path_batch_csv(const std::string& path, const PathBatch& batch);

/// Running-integral trajectory of a step integrand along one path:
/// (time, running value, segment index, active flag) per grid point.
void write_integrand_trajectory_csv(const std::string& path, const StepIntegrand& phi,
                                    const SamplePath& X);

/// Piecewise-linear interpolant through tabulated (t, r(t)) pairs, clamped to
/// the endpoint values outside the table; for kernels supplied as CSV.
std::function<double(double)> make_interpolated_kernel(std::vector<double> ts,
                                                       std::vector<double> rs);

/// Reads a two-column (t, r) CSV table into an interpolated kernel.
std::function<double(double)> read_kernel_csv(const std::string& path);

}  // namespace gpint
