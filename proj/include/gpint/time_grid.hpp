#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gpint {

/// Discretization of [0, T]: strictly increasing times with first point 0
/// and last point T.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> points) : points_(std::move(points)) {
        if (points_.size() < 3) throw std::invalid_argument("TimeGrid: need at least 3 points");
        if (points_.front() != 0.0) throw std::invalid_argument("TimeGrid: first point must be 0");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (points_[i] <= points_[i - 1])
                throw std::invalid_argument("TimeGrid: points must be strictly increasing");
        if (points_.back() <= 0.0) throw std::invalid_argument("TimeGrid: horizon must be positive");
    }

    static TimeGrid uniform(double horizon, std::size_t n_steps) {
        if (horizon <= 0.0) throw std::invalid_argument("TimeGrid: horizon must be positive");
        if (n_steps < 2) throw std::invalid_argument("TimeGrid: need at least 2 steps");
        std::vector<double> p(n_steps + 1);
        for (std::size_t i = 0; i <= n_steps; ++i)
            p[i] = horizon * static_cast<double>(i) / static_cast<double>(n_steps);
        p.back() = horizon;
        return TimeGrid(std::move(p));
    }

    double horizon() const { return points_.back(); }
    std::size_t size() const { return points_.size(); }
    std::size_t steps() const { return points_.size() - 1; }
    double operator[](std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const { return points_; }

    double step(std::size_t i) const { return points_[i + 1] - points_[i]; }

    bool uniform_spacing(double rel_tol = 1e-9) const {
        const double h = points_[1] - points_[0];
        for (std::size_t i = 1; i + 1 < points_.size(); ++i)
            if (std::abs(step(i) - h) > rel_tol * h) return false;
        return true;
    }

    /// Index of the first grid point >= t (clamped to the last index).
    std::size_t index_at_or_after(double t) const {
        std::size_t lo = 0, hi = points_.size() - 1;
        if (t <= points_[0]) return 0;
        if (t >= points_[hi]) return hi;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (points_[mid] < t) lo = mid; else hi = mid;
        }
        return hi;
    }

    /// Index of the grid point equal to t, within tolerance; throws otherwise.
    std::size_t index_of(double t, double tol = 1e-9) const {
        std::size_t i = index_at_or_after(t);
        if (std::abs(points_[i] - t) <= tol * (1.0 + horizon())) return i;
        if (i > 0 && std::abs(points_[i - 1] - t) <= tol * (1.0 + horizon())) return i - 1;
        throw std::invalid_argument("TimeGrid: time is not a grid point");
    }

    /// Every 2^k-th point, keeping endpoints. steps() must be divisible by 2^k.
    TimeGrid coarsened(unsigned k) const {
        const std::size_t stride = std::size_t{1} << k;
        if (steps() % stride != 0)
            throw std::invalid_argument("TimeGrid: step count not divisible for coarsening");
        std::vector<double> p;
        p.reserve(steps() / stride + 1);
        for (std::size_t i = 0; i < points_.size(); i += stride) p.push_back(points_[i]);
        return TimeGrid(std::move(p));
    }

    bool operator==(const TimeGrid& o) const { return points_ == o.points_; }

private:
    std::vector<double> points_;
};

}  // namespace gpint
