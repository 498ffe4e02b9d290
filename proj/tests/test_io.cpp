#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gpint/io.hpp"
#include "gpint/sampling.hpp"

using namespace gpint;

namespace {

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("gpint_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("csv quoting follows the quoting rules") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_quote("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("csv round-trip with quoted fields") {
    TempDir tmp;
    const auto path = tmp.file("fields.csv");
    write_csv(path, {"name", "note"},
              {{"a,b", "say \"hi\""}, {"plain", "line\nbreak"}});
    auto rows = read_csv(path);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"name", "note"});
    CHECK(rows[1] == std::vector<std::string>{"a,b", "say \"hi\""});
    CHECK(rows[2] == std::vector<std::string>{"plain", "line\nbreak"});
}

TEST_CASE("grid function round-trip preserves values bit-exactly") {
    TempDir tmp;
    auto grid = TimeGrid::uniform(1.0, 64);
    auto f = GridFunction::from_callable(grid, [](double s) { return std::sin(7.0 * s); });
    const auto path = tmp.file("gf.csv");
    write_grid_function_csv(path, f);
    auto g = read_grid_function_csv(path);
    REQUIRE(g.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(g.grid[i] == f.grid[i]);
        CHECK(g[i] == f[i]);
    }
}

TEST_CASE("path batch export layout") {
    TempDir tmp;
    auto grid = TimeGrid::uniform(1.0, 8);
    auto batch = sample_paths(CovarianceModel::fbm(0.75), grid, 3, 1);
    const auto path = tmp.file("batch.csv");
    write_path_batch_csv(path, batch);
    auto rows = read_csv(path);
    REQUIRE(rows.size() == 4);  // header of times + one row per path
    CHECK(rows[0].size() == 9);
    CHECK(std::stod(rows[0][8]) == doctest::Approx(1.0));
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t i = 0; i < 9; ++i)
            CHECK(std::stod(rows[p + 1][i]) ==
                  batch.values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)));
}

TEST_CASE("integrand trajectory export") {
    TempDir tmp;
    auto grid = TimeGrid::uniform(1.0, 16);
    auto X = sample_paths(CovarianceModel::fbm(0.75), grid, 1, 2).path(0);
    StepIntegrand phi;
    phi.append({0, 8, StepIntegrand::Rule::Constant, 1.0, 0.0, 0, 1, 6});
    const auto path = tmp.file("traj.csv");
    write_integrand_trajectory_csv(path, phi, X);
    auto rows = read_csv(path);
    REQUIRE(rows.size() == grid.size() + 1);
    CHECK(rows[1][1] == "0");                       // running value starts at 0
    CHECK(rows[3][3] == "1");                       // active inside the segment
    CHECK(rows[8][3] == "0");                       // inactive past the stop index
    CHECK(std::stod(rows[17][1]) ==
          doctest::Approx(X[6] - X[0]).epsilon(1e-12));  // stopped telescoping sum
}

TEST_CASE("tabulated kernel interpolation") {
    auto r = make_interpolated_kernel({0.0, 1.0, 2.0}, {1.0, 0.5, 0.0});
    CHECK(r(0.0) == doctest::Approx(1.0));
    CHECK(r(0.5) == doctest::Approx(0.75));
    CHECK(r(-0.5) == doctest::Approx(0.75));  // even in the lag
    CHECK(r(1.5) == doctest::Approx(0.25));
    CHECK(r(5.0) == doctest::Approx(0.0));    // clamped beyond the table
    CHECK_THROWS(make_interpolated_kernel({0.0, 0.0}, {1.0, 1.0}));

    TempDir tmp;
    const auto path = tmp.file("kernel.csv");
    write_csv(path, {"t", "r"}, {{"0", "1"}, {"1", "0.5"}, {"2", "0"}});
    auto r2 = read_kernel_csv(path);
    CHECK(r2(0.5) == doctest::Approx(0.75));
}
