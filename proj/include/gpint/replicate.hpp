#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "gpint/conditional.hpp"
#include "gpint/covariance.hpp"
#include "gpint/grid_function.hpp"
#include "gpint/pathwise.hpp"
#include "gpint/sampling.hpp"
#include "gpint/schedule.hpp"

namespace gpint {

struct BlockRecord {
    std::size_t n = 0;
    char case_label = 'L';  // 'L' diverging block, 'A' / 'B' Holder cases
    bool hit = false;
    bool empty = false;       // block collapsed to zero grid cells
    double stop_time = -1.0;
    std::size_t stop_index = 0;
    double target = 0.0;        // block-level target (threshold level or |delta_n|)
    double contribution = 0.0;  // signed contribution to the running integral
};

struct ReplicationOutcome {
    StepIntegrand integrand;
    std::vector<double> block_times;  // absolute block-end times (grid-snapped)
    std::vector<double> trajectory;   // running integral at block ends
    std::vector<BlockRecord> blocks;
    double target = 0.0;
    double achieved = 0.0;
    bool success = false;
    double stop_time = -1.0;
    std::size_t stop_index = std::numeric_limits<std::size_t>::max();
    std::size_t case_b_count = 0;
};

/// The diverging-integrand construction: per block n the integrand is
/// f_eta(X_s - X_{t_{n-1}}) until the grid hitting time of the threshold
/// n^{-1/(1+eta)} or the block end. The running integral is the exact
/// pathwise value along the piecewise-linear path, sum of
/// |X_{tau_k} - X_{t_{k-1}}|^{1+eta}. Stops once the running value reaches
/// `level`; success=false when n_max is exhausted first.
///
/// The schedule is laid out relative to `start`; its horizon must not exceed
/// the grid horizon minus start.
ReplicationOutcome build_diverging_integrand(const SamplePath& X, const LemmaParams& params,
                                             const PartitionSchedule& schedule, double start,
                                             double level);

/// Distribution replication: target g(X_v) with g = quantile o Phi(. / sqrt(V(v))),
/// reached by running the diverging construction from v at level |target| and
/// signing the integrand.
ReplicationOutcome replicate_distribution(const std::function<double(double)>& quantile,
                                          const CovarianceModel& model, const SamplePath& X,
                                          double v, const LemmaParams& params,
                                          const PartitionSchedule& schedule);

struct RvOptions {
    std::size_t sub_n_max = 50;       // depth of the within-block diverging runs
    double tan_clip = 1.5707963267948966 - 1e-6;  // |E arctan| clip before tan
    double success_tol = 0.05;        // final-error acceptance for the success flag
};

/// Improper replication of a random variable: block n replicates the
/// martingale increment delta_n = Y_{t_n} - (value so far) with a diverging
/// sub-construction on [t_n, t_{n+1}); missed mass carries into the next
/// block. Y_t = tan E[arctan xi | F_t] from grid-filtration conditioning;
/// pass one evaluator across paths so its conditioning solves are reused.
ReplicationOutcome replicate_rv(const ConditionalArctanEvaluator& target,
                                const SamplePath& X, const PartitionSchedule& schedule,
                                const LemmaParams& params, const RvOptions& opts = {});

struct HolderOptions {
    std::size_t sub_n_max = 50;
    double success_tol = 0.05;  // final-error acceptance for the success flag
};

/// Proper replication of a Holder-endpoint target: Psi = 0 on [t_0, t_1];
/// then per block either the scaled-sign chase of the previous Z increment
/// (Case A) or the diverging recovery of the accumulated gap (Case B).
/// Z must live on the grid of X and be adapted to it.
ReplicationOutcome replicate_holder(const GridFunction& Z, const SamplePath& X,
                                    const HolderParams& params,
                                    const PartitionSchedule& schedule,
                                    const HolderOptions& opts = {});

}  // namespace gpint
