#include "gpint/conditional.hpp"

#include <algorithm>
#include <cmath>

namespace gpint {

namespace {

/// Probabilists' Gauss-Hermite rule (weights sum to 1, E f(Z) = sum w f(x))
/// via the Golub-Welsch eigen decomposition of the Jacobi matrix.
void gauss_hermite(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t k = 1; k < n; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = b;
        J(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(n);
    weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
        const double v0 = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
        weights[i] = v0 * v0;
    }
}

}  // namespace

double TargetSpec::evaluate(const std::vector<double>& xs) const {
    if (xs.size() != times.size())
        throw std::invalid_argument("TargetSpec::evaluate: one value per time");
    switch (kind) {
        case Kind::Linear: {
            double acc = intercept;
            for (std::size_t i = 0; i < xs.size(); ++i) acc += coeffs[i] * xs[i];
            return acc;
        }
        case Kind::CallPayoff:
            return std::max(xs[0] - strike, 0.0);
        case Kind::Smooth:
            return h(xs);
    }
    return 0.0;
}

double TargetSpec::evaluate_path(const SamplePath& X) const {
    std::vector<double> xs(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) xs[i] = X[X.grid.index_of(times[i])];
    return evaluate(xs);
}

ConditionalArctanEvaluator::ConditionalArctanEvaluator(const CovarianceModel& model,
                                                       const TimeGrid& grid, TargetSpec spec,
                                                       std::size_t quad_nodes)
    : model_(model), grid_(grid), spec_(std::move(spec)) {
    if (quad_nodes < 8)
        throw std::invalid_argument("ConditionalArctanEvaluator: need >= 8 quadrature nodes");
    if (spec_.kind == TargetSpec::Kind::Smooth && !spec_.h)
        throw std::invalid_argument("ConditionalArctanEvaluator: smooth target missing h");
    time_indices_.reserve(spec_.times.size());
    for (double s : spec_.times) time_indices_.push_back(grid_.index_of(s));
    gauss_hermite(quad_nodes, quad_nodes_, quad_weights_);
}

const ConditionalArctanEvaluator::Prep& ConditionalArctanEvaluator::prep_for(
    std::size_t m) const {
    std::lock_guard<std::mutex> lk(mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return *it->second;

    auto prep = std::make_unique<Prep>();
    // grid point 0 joins the conditioning set only when X_0 is nondegenerate
    prep->obs_begin = model_.variance(grid_[0]) > 1e-12 ? 0 : 1;
    prep->obs_end = m + 1;
    for (std::size_t p = 0; p < time_indices_.size(); ++p)
        if (time_indices_[p] > m) prep->unobserved.push_back(p);

    const auto n_obs = static_cast<Eigen::Index>(prep->obs_end - prep->obs_begin);
    const auto n_u = static_cast<Eigen::Index>(prep->unobserved.size());
    Eigen::MatrixXd sigma(n_obs, n_obs);
    for (Eigen::Index i = 0; i < n_obs; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = model_.covariance(grid_[prep->obs_begin + i],
                                               grid_[prep->obs_begin + j]);
            sigma(i, j) = v;
            sigma(j, i) = v;
        }
    Eigen::MatrixXd cross(n_u, n_obs);
    Eigen::MatrixXd target_cov(n_u, n_u);
    for (Eigen::Index u = 0; u < n_u; ++u) {
        const double tu = grid_[time_indices_[prep->unobserved[u]]];
        for (Eigen::Index j = 0; j < n_obs; ++j)
            cross(u, j) = model_.covariance(tu, grid_[prep->obs_begin + j]);
        for (Eigen::Index v = 0; v <= u; ++v) {
            const double tv = grid_[time_indices_[prep->unobserved[v]]];
            target_cov(u, v) = model_.covariance(tu, tv);
            target_cov(v, u) = target_cov(u, v);
        }
    }

    Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("conditional expectation: covariance factorization failed");
    prep->weights = ldlt.solve(cross.transpose()).transpose();
    prep->cond_cov = target_cov - prep->weights * cross.transpose();
    prep->cond_cov = 0.5 * (prep->cond_cov + prep->cond_cov.transpose()).eval();
    for (Eigen::Index u = 0; u < n_u; ++u)
        if (prep->cond_cov(u, u) < 0.0) prep->cond_cov(u, u) = 0.0;

    auto ins = cache_.emplace(m, std::move(prep));
    return *ins.first->second;
}

double ConditionalArctanEvaluator::expected_arctan(const SamplePath& X, double t) const {
    if (!(X.grid == grid_))
        throw std::invalid_argument("expected_arctan: path grid differs from evaluator grid");
    const double tol = 1e-9 * (1.0 + grid_.horizon());
    std::size_t m = grid_.index_at_or_after(t);
    if (grid_[m] > t + tol) {
        if (m == 0) throw std::invalid_argument("expected_arctan: t precedes the grid");
        --m;
    }

    // fully observed target: the conditional law is a point mass
    bool all_seen = true;
    for (std::size_t idx : time_indices_)
        if (idx > m) { all_seen = false; break; }
    std::vector<double> xs(spec_.times.size());
    for (std::size_t p = 0; p < time_indices_.size(); ++p) xs[p] = X[time_indices_[p]];
    if (all_seen) return std::atan(spec_.evaluate(xs));

    const Prep& prep = prep_for(m);
    const auto n_obs = static_cast<Eigen::Index>(prep.obs_end - prep.obs_begin);
    Eigen::VectorXd obs(n_obs);
    for (Eigen::Index j = 0; j < n_obs; ++j) obs(j) = X[prep.obs_begin + j];
    const Eigen::VectorXd mu = prep.weights * obs;
    const auto n_u = static_cast<Eigen::Index>(prep.unobserved.size());

    if (spec_.kind == TargetSpec::Kind::Linear) {
        // a linear target is scalar Gaussian given the observations
        double mean = spec_.intercept;
        for (std::size_t p = 0; p < time_indices_.size(); ++p)
            if (time_indices_[p] <= m) mean += spec_.coeffs[p] * xs[p];
        Eigen::VectorXd cu(n_u);
        for (Eigen::Index u = 0; u < n_u; ++u) {
            cu(u) = spec_.coeffs[prep.unobserved[u]];
            mean += cu(u) * mu(u);
        }
        const double var = cu.dot(prep.cond_cov * cu);
        if (var <= 0.0) return std::atan(mean);
        const double sd = std::sqrt(var);
        double acc = 0.0;
        for (std::size_t q = 0; q < quad_nodes_.size(); ++q)
            acc += quad_weights_[q] * std::atan(mean + sd * quad_nodes_[q]);
        return acc;
    }

    if (spec_.kind == TargetSpec::Kind::CallPayoff) {
        const double sd = std::sqrt(std::max(prep.cond_cov(0, 0), 0.0));
        double acc = 0.0;
        for (std::size_t q = 0; q < quad_nodes_.size(); ++q) {
            const double x = mu(0) + sd * quad_nodes_[q];
            acc += quad_weights_[q] * std::atan(std::max(x - spec_.strike, 0.0));
        }
        return acc;
    }

    // smooth target over one or two unobserved coordinates
    if (n_u == 1) {
        const std::size_t p0 = prep.unobserved[0];
        const double sd = std::sqrt(std::max(prep.cond_cov(0, 0), 0.0));
        double acc = 0.0;
        for (std::size_t q = 0; q < quad_nodes_.size(); ++q) {
            xs[p0] = mu(0) + sd * quad_nodes_[q];
            acc += quad_weights_[q] * std::atan(spec_.evaluate(xs));
        }
        return acc;
    }
    // two unobserved coordinates: factor the 2x2 conditional covariance
    const double c00 = std::max(prep.cond_cov(0, 0), 0.0);
    const double l00 = std::sqrt(c00);
    const double l10 = l00 > 0.0 ? prep.cond_cov(1, 0) / l00 : 0.0;
    const double l11 = std::sqrt(std::max(prep.cond_cov(1, 1) - l10 * l10, 0.0));
    const std::size_t p0 = prep.unobserved[0];
    const std::size_t p1 = prep.unobserved[1];
    double acc = 0.0;
    for (std::size_t q0 = 0; q0 < quad_nodes_.size(); ++q0)
        for (std::size_t q1 = 0; q1 < quad_nodes_.size(); ++q1) {
            xs[p0] = mu(0) + l00 * quad_nodes_[q0];
            xs[p1] = mu(1) + l10 * quad_nodes_[q0] + l11 * quad_nodes_[q1];
            acc += quad_weights_[q0] * quad_weights_[q1] * std::atan(spec_.evaluate(xs));
        }
    return acc;
}

}  // namespace gpint
