#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gpint/sampling.hpp"
#include "gpint/time_grid.hpp"

namespace gpint {

/// A real function known at the grid points.
struct GridFunction {
    TimeGrid grid;
    std::vector<double> values;

    GridFunction(TimeGrid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid.size())
            throw std::invalid_argument("GridFunction: one value per grid point");
        for (double x : values)
            if (!std::isfinite(x)) throw std::invalid_argument("GridFunction: values must be finite");
    }

    static GridFunction from_callable(const TimeGrid& g, const std::function<double(double)>& f) {
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
        return GridFunction(g, std::move(v));
    }

    static GridFunction from_path(const SamplePath& p) { return GridFunction(p.grid, p.values); }

    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    GridFunction coarsened(unsigned k) const {
        const std::size_t stride = std::size_t{1} << k;
        TimeGrid cg = grid.coarsened(k);
        std::vector<double> v;
        v.reserve(cg.size());
        for (std::size_t i = 0; i < values.size(); i += stride) v.push_back(values[i]);
        return GridFunction(std::move(cg), std::move(v));
    }
};

}  // namespace gpint
