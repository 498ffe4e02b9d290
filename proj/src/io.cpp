#include "gpint/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gpint {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": cannot parse number from '" + s + "'");
    }
}

}  // namespace

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(header[i]);
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_quote(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failure on " + path);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_started || !field.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    rows.push_back(std::move(row));
                    row.clear();
                    row_started = false;
                }
                break;
            default:
                field += c;
                row_started = true;
        }
    }
    if (row_started || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_grid_function_csv(const std::string& path, const GridFunction& f) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        rows.push_back({format_double(f.grid[i]), format_double(f[i])});
    write_csv(path, {"time", "value"}, rows);
}

GridFunction read_grid_function_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.size() < 2) throw std::runtime_error("read_grid_function_csv: no data rows");
    std::vector<double> ts, vs;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2)
            throw std::runtime_error("read_grid_function_csv: expected 2 columns");
        ts.push_back(parse_double(rows[i][0], "read_grid_function_csv"));
        vs.push_back(parse_double(rows[i][1], "read_grid_function_csv"));
    }
    return GridFunction(TimeGrid(std::move(ts)), std::move(vs));
}

void write_path_batch_csv(const std::string& path, const PathBatch& batch) {
    std::vector<std::string> header;
    header.reserve(batch.grid.size());
    for (std::size_t i = 0; i < batch.grid.size(); ++i)
        header.push_back(format_double(batch.grid[i]));
    std::vector<std::vector<std::string>> rows;
    rows.reserve(batch.count());
    for (std::size_t p = 0; p < batch.count(); ++p) {
        std::vector<std::string> row;
        row.reserve(batch.grid.size());
        for (std::size_t i = 0; i < batch.grid.size(); ++i)
            row.push_back(format_double(batch.values(static_cast<Eigen::Index>(p),
                                                     static_cast<Eigen::Index>(i))));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void write_integrand_trajectory_csv(const std::string& path, const StepIntegrand& phi,
                                    const SamplePath& X) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(X.size());
    double running = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        // locate the segment covering i, if any
        long seg_index = -1;
        bool active = false;
        for (std::size_t k = 0; k < phi.segments.size(); ++k) {
            const auto& seg = phi.segments[k];
            if (i >= seg.begin && i < seg.end) {
                seg_index = static_cast<long>(k);
                active = i < seg.active_end;
                break;
            }
        }
        rows.push_back({format_double(X.grid[i]), format_double(running),
                        std::to_string(seg_index), active ? "1" : "0"});
        if (i + 1 < X.size()) running += phi.eval(X, i) * (X[i + 1] - X[i]);
    }
    write_csv(path, {"time", "running_value", "segment_index", "active"}, rows);
}

std::function<double(double)> make_interpolated_kernel(std::vector<double> ts,
                                                       std::vector<double> rs) {
    if (ts.size() != rs.size() || ts.size() < 2)
        throw std::invalid_argument("make_interpolated_kernel: need >= 2 (t, r) pairs");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (ts[i] <= ts[i - 1])
            throw std::invalid_argument("make_interpolated_kernel: times must increase");
    return [ts = std::move(ts), rs = std::move(rs)](double x) {
        x = std::abs(x);
        if (x <= ts.front()) return rs.front();
        if (x >= ts.back()) return rs.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), x);
        const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
        const std::size_t lo = hi - 1;
        const double w = (x - ts[lo]) / (ts[hi] - ts[lo]);
        return (1.0 - w) * rs[lo] + w * rs[hi];
    };
}

std::function<double(double)> read_kernel_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.size() < 3) throw std::runtime_error("read_kernel_csv: need >= 2 data rows");
    std::vector<double> ts, rs;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2) throw std::runtime_error("read_kernel_csv: expected 2 columns");
        ts.push_back(parse_double(rows[i][0], "read_kernel_csv"));
        rs.push_back(parse_double(rows[i][1], "read_kernel_csv"));
    }
    return make_interpolated_kernel(std::move(ts), std::move(rs));
}

}  // namespace gpint
