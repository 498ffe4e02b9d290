#include "gpint/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace gpint {

namespace {

[[noreturn]] void window_error(const char* name, const std::string& inequality) {
    std::ostringstream os;
    os << name << " violates window " << inequality;
    throw std::invalid_argument(os.str());
}

/// Sum_{k >= 1} k^{-gamma}: direct summation up to K, Euler-Maclaurin tail,
/// verified against the integral bracket for the remainder.
double zeta_sum(double gamma, double rel_tol) {
    for (std::size_t K = 20'000;; K *= 4) {
        double sum = 0.0;
        for (std::size_t k = 1; k < K; ++k) sum += std::pow(static_cast<double>(k), -gamma);
        const double x = static_cast<double>(K);
        const double tail = std::pow(x, 1.0 - gamma) / (gamma - 1.0) +
                            0.5 * std::pow(x, -gamma) + gamma * std::pow(x, -gamma - 1.0) / 12.0;
        // magnitude of the next Euler-Maclaurin correction
        const double err = gamma * (gamma + 1.0) * (gamma + 2.0) *
                           std::pow(x, -gamma - 3.0) / 720.0;
        if (err <= rel_tol * (sum + tail) || K > 5'000'000) return sum + tail;
    }
}

}  // namespace

PartitionSchedule partition_schedule(double gamma, double horizon, std::size_t n_max,
                                     double tail_tol) {
    if (!(gamma > 1.0)) window_error("gamma", "gamma > 1 (series diverges otherwise)");
    if (horizon <= 0.0) throw std::invalid_argument("partition_schedule: horizon must be > 0");
    if (n_max < 2) throw std::invalid_argument("partition_schedule: n_max must be >= 2");

    PartitionSchedule sched;
    sched.gamma = gamma;
    sched.horizon = horizon;
    sched.n_max = n_max;
    {
        static std::mutex mtx;
        static std::map<std::pair<double, double>, double> cache;
        std::lock_guard<std::mutex> lk(mtx);
        auto key = std::make_pair(gamma, tail_tol);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, zeta_sum(gamma, tail_tol)).first;
        sched.series_sum = it->second;
    }
    sched.times.resize(n_max + 1);
    sched.times[0] = 0.0;
    double acc = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        acc += horizon * std::pow(static_cast<double>(n), -gamma) / sched.series_sum;
        sched.times[n] = acc;
    }
    // remainder of the series past n_max, scaled to time units
    sched.tail_bound = horizon *
                       std::pow(static_cast<double>(n_max), 1.0 - gamma) /
                       ((gamma - 1.0) * sched.series_sum);
    return sched;
}

void LemmaParams::validate() const {
    if (!(alpha > 0.5 && alpha < 1.0)) window_error("alpha", "1/2 < alpha < 1");
    if (!(gamma > 1.0 && gamma < 1.0 / alpha)) window_error("gamma", "1 < gamma < 1/alpha");
    if (!(eta > 0.0 && eta < 1.0 / (gamma * alpha) - 1.0))
        window_error("eta", "0 < eta < 1/(gamma alpha) - 1");
}

LemmaParams default_lemma_params(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) window_error("alpha", "1/2 < alpha < 1");
    const double hi = 1.0 / alpha;
    if (hi - 1.0 < 1e-3) window_error("alpha", "gamma window (1, 1/alpha) collapsed");
    LemmaParams p;
    p.alpha = alpha;
    p.gamma = 0.5 * (1.0 + hi);
    p.eta = 0.5 * (1.0 / (p.gamma * alpha) - 1.0);
    p.validate();
    return p;
}

void HolderParams::validate() const {
    if (!(alpha > 0.5 && alpha < 1.0)) window_error("alpha", "1/2 < alpha < 1");
    const double a_floor = theta < 1.0 ? theta - alpha : 1.0 - alpha;
    if (!(a > a_floor)) window_error("a", "a > 1 - alpha (or a > theta - alpha)");
    if (!(a < alpha)) window_error("a", "a < alpha");
    if (!(beta > 1.0 - alpha && beta < std::min(a, 0.5)))
        window_error("beta", "1 - alpha < beta < min(a, 1/2)");
    if (!(gamma > std::max(1.0 / (a - beta), 1.0)))
        window_error("gamma", "gamma > max(1/(a - beta), 1)");
    if (!(kappa > gamma * (alpha - a) && kappa < gamma * (alpha - beta) - 1.0))
        window_error("kappa", "gamma (alpha - a) < kappa < gamma (alpha - beta) - 1");
}

HolderParams default_holder_params(double alpha, double a) {
    if (!(alpha > 0.5 && alpha < 1.0)) window_error("alpha", "1/2 < alpha < 1");
    if (!(a > 1.0 - alpha + 1e-6)) window_error("a", "a > 1 - alpha");
    if (!(a < alpha)) window_error("a", "a < alpha");
    HolderParams p;
    p.alpha = alpha;
    p.a = a;
    p.beta = 0.5 * ((1.0 - alpha) + std::min(a, 0.5));
    p.gamma = std::max(1.0 / (a - p.beta), 1.0) + 1.0;
    const double k_lo = p.gamma * (alpha - a);
    const double k_hi = p.gamma * (alpha - p.beta) - 1.0;
    p.kappa = 0.5 * (k_lo + k_hi);
    p.validate();
    return p;
}

}  // namespace gpint
