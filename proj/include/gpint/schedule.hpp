#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gpint {

/// Deterministic block times t_n with gaps Delta_n = T n^{-gamma} / S_gamma,
/// where S_gamma is the full series sum, so the gaps sum to T in the limit.
struct PartitionSchedule {
    double gamma = 0.0;
    double horizon = 0.0;
    std::size_t n_max = 0;
    double series_sum = 0.0;   // S_gamma to relative accuracy tail_tol
    double tail_bound = 0.0;   // bound on T - t_{n_max}
    std::vector<double> times; // t_0 = 0 .. t_{n_max}, strictly increasing, < T

    double gap(std::size_t n) const { return times[n] - times[n - 1]; }
};

PartitionSchedule partition_schedule(double gamma, double horizon, std::size_t n_max,
                                     double tail_tol = 1e-9);

/// Window parameters for the diverging-integrand construction.
struct LemmaParams {
    double alpha = 0.0;
    double gamma = 0.0;  // in (1, 1/alpha)
    double eta = 0.0;    // in (0, 1/(gamma alpha) - 1)

    void validate() const;
};

/// Midpoint defaults: gamma at the center of (1, 1/alpha), eta at half the
/// upper end of its window. Throws when the window has collapsed.
LemmaParams default_lemma_params(double alpha);

/// Window parameters for the Holder-endpoint proper replication.
struct HolderParams {
    double alpha = 0.0;
    double a = 0.0;      // target Holder order, in (1 - alpha, alpha)
    double beta = 0.0;   // in (1 - alpha, min(a, 1/2))
    double gamma = 0.0;  // > max(1/(a - beta), 1)
    double kappa = 0.0;  // in (gamma (alpha - a), gamma (alpha - beta) - 1)
    double theta = 1.0;  // optional incremental-variance exponent relaxation

    void validate() const;
};

HolderParams default_holder_params(double alpha, double a);

}  // namespace gpint
