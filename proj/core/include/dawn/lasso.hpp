#pragma once

#include "dawn/errors.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace dawn::lasso {

// L1-penalized least squares: minimize 1/2 ||y - X beta||^2 + lambda ||beta||_1.
// Columns of `design` are assumed standardized by the caller.
struct LassoProblem {
    Eigen::MatrixXd design;   // n x p
    Eigen::VectorXd response; // length n
    double lambda = 0.0;

    void validate() const;
};

struct LassoResult {
    Eigen::VectorXd beta;
    int sweeps = 0;
    double max_change = 0.0;  // coordinate-update max change on the last sweep
};

// Thrown when coordinate descent fails to converge; carries the last iterate.
class LassoConvergenceError : public NumericalError {
public:
    LassoConvergenceError(std::string msg, Eigen::VectorXd last_beta, double gap)
        : NumericalError(std::move(msg)), last_beta(std::move(last_beta)), gap(gap) {}

    Eigen::VectorXd last_beta;
    double gap;
};

// Cyclic coordinate descent. Converged when the coordinate-update max change
// within a sweep is <= tol and the KKT conditions hold to 10*tol.
// `warm_start` (when sized p) seeds the iterate.
LassoResult solve_lasso(const LassoProblem& problem, double tol = 1e-8, int max_iter = 100000,
                        const Eigen::VectorXd* warm_start = nullptr);

// Solutions along a descending lambda sequence, warm-started left to right.
std::vector<LassoResult> solve_lasso_path(const Eigen::MatrixXd& design,
                                          const Eigen::VectorXd& response,
                                          const std::vector<double>& lambdas_descending,
                                          double tol = 1e-8, int max_iter = 100000);

// Support indicator: |beta_j| > zero_tol.
std::vector<bool> support(const Eigen::VectorXd& beta, double zero_tol = 1e-8);

// 1/2 ||y - X beta||^2 + lambda ||beta||_1.
double objective(const LassoProblem& problem, const Eigen::VectorXd& beta);

// Worst-case KKT residual at beta: for active coordinates
// |X_j'(y - X beta) - lambda sign(beta_j)|, for inactive max(|X_j'r| - lambda, 0).
double kkt_residual(const LassoProblem& problem, const Eigen::VectorXd& beta,
                    double zero_tol = 1e-12);

// Smallest lambda that forces the all-zero solution: max_j |X_j'y|.
double lambda_max(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

}  // namespace dawn::lasso
