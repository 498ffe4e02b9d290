#include "gpint/replicate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpint/stats.hpp"

namespace gpint {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

void require_schedule_fits(const TimeGrid& grid, const PartitionSchedule& schedule,
                           double start) {
    if (start < 0.0 || start >= grid.horizon())
        throw std::invalid_argument("replication: start must lie in [0, T)");
    const double tol = 1e-9 * (1.0 + grid.horizon());
    if (start + schedule.horizon > grid.horizon() + tol)
        throw std::invalid_argument("replication: schedule overruns the grid horizon");
}

}  // namespace

ReplicationOutcome build_diverging_integrand(const SamplePath& X, const LemmaParams& params,
                                             const PartitionSchedule& schedule, double start,
                                             double level) {
    params.validate();
    require_schedule_fits(X.grid, schedule, start);
    const TimeGrid& grid = X.grid;
    const std::size_t last = grid.size() - 1;

    ReplicationOutcome out;
    if (level <= 0.0) {
        // nothing to reach: the empty integrand already matches
        out.success = true;
        out.stop_index = grid.index_at_or_after(start);
        out.stop_time = grid[out.stop_index];
        return out;
    }

    double base = 0.0;
    std::size_t prev_end = grid.index_at_or_after(start);
    bool stopped = false;
    for (std::size_t n = 1; n <= schedule.n_max && !stopped; ++n) {
        const std::size_t a = prev_end;
        std::size_t b = std::min(grid.index_at_or_after(start + schedule.times[n]), last);
        BlockRecord rec;
        rec.n = n;
        rec.case_label = 'L';
        rec.target = std::pow(static_cast<double>(n), -1.0 / (1.0 + params.eta));
        if (b <= a) {
            rec.empty = true;
            rec.stop_index = a;
            rec.stop_time = grid[a];
            out.blocks.push_back(rec);
            out.block_times.push_back(grid[a]);
            out.trajectory.push_back(base);
            continue;
        }

        StepIntegrand::Segment seg;
        seg.begin = a;
        seg.end = b;
        seg.rule = StepIntegrand::Rule::PowerSign;
        seg.eta = params.eta;
        seg.anchor = a;
        seg.sign = 1;

        std::size_t stop_i = b;
        for (std::size_t i = a + 1; i <= b; ++i) {
            const double d = std::abs(X[i] - X[a]);
            const double val = std::pow(d, 1.0 + params.eta);
            if (base + val >= level) {
                // running integral reached the requested level
                rec.hit = d >= rec.target;
                rec.contribution = val;
                base += val;
                stop_i = i;
                stopped = true;
                break;
            }
            if (d >= rec.target) {
                // block threshold hit; integrand freezes until the block end
                rec.hit = true;
                rec.contribution = val;
                base += val;
                stop_i = i;
                break;
            }
        }
        if (!rec.hit && !stopped) {
            // block missed: the integrand ran to the block end
            const double d = std::abs(X[b] - X[a]);
            rec.contribution = std::pow(d, 1.0 + params.eta);
            base += rec.contribution;
            stop_i = b;
        }
        seg.active_end = stop_i;
        rec.stop_index = stop_i;
        rec.stop_time = grid[stop_i];
        out.integrand.append(seg);
        out.blocks.push_back(rec);
        out.block_times.push_back(grid[b]);
        out.trajectory.push_back(base);
        out.stop_index = stop_i;
        out.stop_time = grid[stop_i];
        prev_end = b;
    }
    out.achieved = base;
    out.target = level;
    out.success = stopped;
    return out;
}

ReplicationOutcome replicate_distribution(const std::function<double(double)>& quantile,
                                          const CovarianceModel& model, const SamplePath& X,
                                          double v, const LemmaParams& params,
                                          const PartitionSchedule& schedule) {
    const double var_v = model.variance(v);
    if (!(var_v > 0.0))
        throw std::invalid_argument("replicate_distribution: the process variance at v must be positive");
    const std::size_t idx_v = X.grid.index_of(v);
    const double u = normal_cdf(X[idx_v] / std::sqrt(var_v));
    const double target = quantile(u);
    if (!std::isfinite(target))
        throw std::runtime_error("replicate_distribution: quantile transform returned a non-finite target");

    ReplicationOutcome out = build_diverging_integrand(X, params, schedule, v,
                                                       std::abs(target));
    const int s = sign_of(target);
    for (auto& seg : out.integrand.segments) seg.sign = s;
    for (auto& rec : out.blocks) rec.contribution *= static_cast<double>(s);
    for (auto& y : out.trajectory) y *= static_cast<double>(s);
    out.achieved *= static_cast<double>(s);
    out.target = target;
    return out;
}

ReplicationOutcome replicate_rv(const ConditionalArctanEvaluator& target,
                                const SamplePath& X, const PartitionSchedule& schedule,
                                const LemmaParams& params, const RvOptions& opts) {
    params.validate();
    require_schedule_fits(X.grid, schedule, 0.0);
    if (opts.sub_n_max < 2)
        throw std::invalid_argument("replicate_rv: sub_n_max must be >= 2");

    ReplicationOutcome out;
    const TimeGrid& grid = X.grid;
    double v_running = 0.0;
    out.block_times.push_back(grid[grid.index_at_or_after(0.0)]);
    out.trajectory.push_back(v_running);
    for (std::size_t n = 0; n + 1 <= schedule.n_max; ++n) {
        const double t_n = schedule.times[n];
        const double t_next = schedule.times[n + 1];
        // conditional martingale value at the block start; its increment from
        // the running integral is the block target
        double e = target.expected_arctan(X, t_n);
        e = std::clamp(e, -opts.tan_clip, opts.tan_clip);
        const double y_n = std::tan(e);
        const double delta = y_n - v_running;
        const int s = sign_of(delta);

        BlockRecord rec;
        rec.n = n + 1;
        rec.case_label = 'L';
        rec.target = std::abs(delta);
        const double sub_h = t_next - t_n;
        if (sub_h <= 0.0) {
            rec.empty = true;
            out.blocks.push_back(rec);
            out.block_times.push_back(grid[std::min(grid.index_at_or_after(t_next),
                                                    grid.size() - 1)]);
            out.trajectory.push_back(v_running);
            continue;
        }
        PartitionSchedule sub = partition_schedule(params.gamma, sub_h, opts.sub_n_max);
        ReplicationOutcome run = build_diverging_integrand(X, params, sub, t_n,
                                                           std::abs(delta));
        for (auto seg : run.integrand.segments) {
            seg.sign = s;
            out.integrand.append(seg);
        }
        v_running += static_cast<double>(s) * run.achieved;
        rec.hit = run.success;
        rec.contribution = static_cast<double>(s) * run.achieved;
        rec.stop_index = run.stop_index;
        rec.stop_time = run.stop_time;
        out.blocks.push_back(rec);
        out.block_times.push_back(grid[std::min(grid.index_at_or_after(t_next),
                                                grid.size() - 1)]);
        out.trajectory.push_back(v_running);
    }
    out.achieved = v_running;
    out.target = target.spec().evaluate_path(X);
    out.success = std::abs(out.achieved - out.target) <= opts.success_tol;
    out.stop_index = grid.index_at_or_after(schedule.times[schedule.n_max]);
    out.stop_time = grid[std::min(out.stop_index, grid.size() - 1)];
    return out;
}

ReplicationOutcome replicate_holder(const GridFunction& Z, const SamplePath& X,
                                    const HolderParams& params,
                                    const PartitionSchedule& schedule,
                                    const HolderOptions& opts) {
    params.validate();
    if (!(Z.grid == X.grid))
        throw std::invalid_argument("replicate_holder: Z and X must share a grid");
    require_schedule_fits(X.grid, schedule, 0.0);
    if (schedule.n_max < 2)
        throw std::invalid_argument("replicate_holder: need at least 2 blocks");
    const TimeGrid& grid = X.grid;
    const std::size_t last = grid.size() - 1;
    // Case-B recovery blocks reuse the diverging construction with midpoint
    // window parameters for the model regularity
    const LemmaParams sub_params = default_lemma_params(params.alpha);

    ReplicationOutcome out;
    double y = 0.0;
    std::size_t idx_prev = std::min(grid.index_at_or_after(schedule.times[1]), last);
    out.block_times.push_back(grid[0]);
    out.trajectory.push_back(0.0);
    out.block_times.push_back(grid[idx_prev]);
    out.trajectory.push_back(y);  // first block carries the zero integrand
    bool prev_ok = Z[0] == 0.0;

    for (std::size_t n = 2; n <= schedule.n_max; ++n) {
        const std::size_t a = idx_prev;
        const std::size_t b = std::min(grid.index_at_or_after(schedule.times[n]), last);
        const double delta = Z[a] - y;  // gap to the previous block's target
        const int s = sign_of(delta);

        BlockRecord rec;
        rec.n = n;
        rec.target = std::abs(delta);
        if (b <= a) {
            rec.case_label = prev_ok ? 'A' : 'B';
            rec.empty = true;
            rec.hit = delta == 0.0;
            rec.stop_index = a;
            rec.stop_time = grid[a];
            prev_ok = rec.hit;
            out.blocks.push_back(rec);
            out.block_times.push_back(grid[b]);
            out.trajectory.push_back(y);
            continue;
        }

        if (prev_ok) {
            // Case A: scaled-sign chase of the gap, stopped at the grid
            // hitting time of n^kappa |X - X_a| >= |delta|
            rec.case_label = 'A';
            const double scale = std::pow(static_cast<double>(n), params.kappa);
            std::size_t stop_i = b;
            bool hit = false;
            if (delta == 0.0) {
                stop_i = a;
                hit = true;
            } else {
                for (std::size_t i = a + 1; i <= b; ++i) {
                    if (scale * std::abs(X[i] - X[a]) >= std::abs(delta)) {
                        stop_i = i;
                        hit = true;
                        break;
                    }
                }
                StepIntegrand::Segment seg;
                seg.begin = a;
                seg.end = b;
                seg.rule = StepIntegrand::Rule::ScaledSign;
                seg.coeff = scale;
                seg.anchor = a;
                seg.sign = s;
                seg.active_end = stop_i;
                out.integrand.append(seg);
                // pathwise value of the scaled-sign integral at the stop
                rec.contribution =
                    static_cast<double>(s) * scale * std::abs(X[stop_i] - X[a]);
                y += rec.contribution;
            }
            rec.hit = hit;
            rec.stop_index = stop_i;
            rec.stop_time = grid[stop_i];
            prev_ok = hit;
        } else {
            // Case B: diverging recovery of the accumulated gap
            rec.case_label = 'B';
            ++out.case_b_count;
            PartitionSchedule sub = partition_schedule(sub_params.gamma,
                                                       schedule.times[n] - schedule.times[n - 1],
                                                       opts.sub_n_max);
            ReplicationOutcome run = build_diverging_integrand(X, sub_params, sub,
                                                               schedule.times[n - 1],
                                                               std::abs(delta));
            for (auto seg : run.integrand.segments) {
                seg.sign = s;
                out.integrand.append(seg);
            }
            rec.contribution = static_cast<double>(s) * run.achieved;
            y += rec.contribution;
            rec.hit = run.success;
            rec.stop_index = run.stop_index;
            rec.stop_time = run.stop_time;
            prev_ok = run.success;
        }
        out.blocks.push_back(rec);
        out.block_times.push_back(grid[b]);
        out.trajectory.push_back(y);
        idx_prev = b;
    }

    out.achieved = y;
    out.target = Z[idx_prev];
    out.success = std::abs(out.achieved - out.target) <= opts.success_tol;
    out.stop_index = idx_prev;
    out.stop_time = grid[idx_prev];
    return out;
}

}  // namespace gpint
