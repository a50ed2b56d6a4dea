#include "dawn/lasso.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace dawn::lasso {

namespace {

double soft_threshold(double z, double lambda) {
    if (z > lambda) return z - lambda;
    if (z < -lambda) return z + lambda;
    return 0.0;
}

}  // namespace

void LassoProblem::validate() const {
    if (design.cols() < 1) {
        throw NumericalError("lasso: design needs at least one column");
    }
    if (design.rows() != response.size()) {
        throw NumericalError("lasso: design/response row mismatch");
    }
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw NumericalError("lasso: lambda must be >= 0");
    }
}

LassoResult solve_lasso(const LassoProblem& problem, double tol, int max_iter,
                        const Eigen::VectorXd* warm_start) {
    problem.validate();
    if (tol <= 0.0) {
        throw NumericalError("lasso: tol must be > 0");
    }
    const Eigen::MatrixXd& X = problem.design;
    const Eigen::VectorXd& y = problem.response;
    const double lambda = problem.lambda;
    const Eigen::Index p = X.cols();

    const Eigen::VectorXd sq_norms = X.colwise().squaredNorm();

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    if (warm_start != nullptr && warm_start->size() == p) {
        beta = *warm_start;
    }
    Eigen::VectorXd residual = y - X * beta;

#ifndef NDEBUG
    double prev_obj = 0.5 * residual.squaredNorm() + lambda * beta.lpNorm<1>();
#endif

    // Tightened when the sweep criterion is met but the KKT residual is not
    // yet within 10*tol (cross-coordinate drift within a sweep).
    double sweep_tol = tol;
    double max_change = 0.0;
    for (int sweep = 1; sweep <= max_iter; ++sweep) {
        max_change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            const double sq = sq_norms(j);
            if (sq <= 0.0) continue;
            const double old = beta(j);
            const double z = X.col(j).dot(residual) + old * sq;
            const double next = soft_threshold(z, lambda) / sq;
            if (next != old) {
                residual.noalias() += X.col(j) * (old - next);
                beta(j) = next;
                max_change = std::max(max_change, std::abs(next - old));
            }
        }

#ifndef NDEBUG
        {
            const double obj = 0.5 * residual.squaredNorm() + lambda * beta.lpNorm<1>();
            assert(obj <= prev_obj + 1e-9 * (1.0 + std::abs(prev_obj)) &&
                   "coordinate descent objective increased");
            prev_obj = obj;
        }
#endif

        if (max_change <= sweep_tol) {
            if (kkt_residual(problem, beta) <= 10.0 * tol) {
                return {beta, sweep, max_change};
            }
            sweep_tol *= 0.1;
        }
    }

    std::ostringstream os;
    os << "lasso: no convergence in " << max_iter << " sweeps (last max change " << max_change
       << ")";
    throw LassoConvergenceError(os.str(), std::move(beta), max_change);
}

std::vector<LassoResult> solve_lasso_path(const Eigen::MatrixXd& design,
                                          const Eigen::VectorXd& response,
                                          const std::vector<double>& lambdas_descending,
                                          double tol, int max_iter) {
    std::vector<LassoResult> results;
    results.reserve(lambdas_descending.size());
    Eigen::VectorXd warm;
    for (std::size_t k = 0; k < lambdas_descending.size(); ++k) {
        if (k > 0 && lambdas_descending[k] > lambdas_descending[k - 1]) {
            throw NumericalError("lasso path: lambda sequence must be non-increasing");
        }
        LassoProblem problem{design, response, lambdas_descending[k]};
        const Eigen::VectorXd* start = warm.size() == design.cols() ? &warm : nullptr;
        results.push_back(solve_lasso(problem, tol, max_iter, start));
        warm = results.back().beta;
    }
    return results;
}

std::vector<bool> support(const Eigen::VectorXd& beta, double zero_tol) {
    if (zero_tol < 0.0) {
        throw NumericalError("support: zero_tol must be >= 0");
    }
    std::vector<bool> s(static_cast<std::size_t>(beta.size()));
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        s[static_cast<std::size_t>(j)] = std::abs(beta(j)) > zero_tol;
    }
    return s;
}

double objective(const LassoProblem& problem, const Eigen::VectorXd& beta) {
    const Eigen::VectorXd r = problem.response - problem.design * beta;
    return 0.5 * r.squaredNorm() + problem.lambda * beta.lpNorm<1>();
}

double kkt_residual(const LassoProblem& problem, const Eigen::VectorXd& beta, double zero_tol) {
    const Eigen::VectorXd r = problem.response - problem.design * beta;
    const Eigen::VectorXd grad = problem.design.transpose() * r;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        if (std::abs(beta(j)) > zero_tol) {
            const double sign = beta(j) > 0.0 ? 1.0 : -1.0;
            worst = std::max(worst, std::abs(grad(j) - problem.lambda * sign));
        } else {
            worst = std::max(worst, std::abs(grad(j)) - problem.lambda);
        }
    }
    return worst;
}

double lambda_max(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    return (design.transpose() * response).cwiseAbs().maxCoeff();
}

}  // namespace dawn::lasso
