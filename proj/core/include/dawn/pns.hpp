#pragma once

#include "dawn/types.hpp"

#include <vector>

namespace dawn::pns {

struct PnsConfig {
    double t = 0.1;           // p-value screen threshold
    double tau = 0.1;         // absolute-correlation threshold
    double lambda = 0.0;      // lasso regularization weight
    double zero_tol = 1e-8;   // support threshold on |beta|
    double solver_tol = 1e-8;
    int solver_max_iter = 100000;

    void validate() const;
};

// Step 1: S' = { i : p_i <= t }, with anchor nodes always retained.
// Indices refer to gene-table rows (canonical node order).
// Throws NumericalError if S' is empty.
std::vector<int> pvalue_screen(const GeneTable& genes, double t);

// Step 2: drop candidates with no |rho| > tau link to another candidate.
// Throws NumericalError if every candidate is isolated.
std::vector<int> correlation_screen(const std::vector<int>& s_prime,
                                    const ExpressionMatrix& expr, double tau);

// Step 3: V = S plus every first-order |rho| > tau neighbor among all variables.
std::vector<int> retrieve_neighbors(const std::vector<int>& s, const ExpressionMatrix& expr,
                                    double tau);

// Step 4: per-node lasso over V for each node in S; edge (i,j) present when
// either regression selects the other (OR rule). Never emits an edge between
// two non-core nodes. Throws NumericalError naming the node whose regression
// failed to converge.
SparseGraph fit_graph(const std::vector<int>& s, const std::vector<int>& v,
                      const ExpressionMatrix& expr, double lambda,
                      const PnsConfig& config = {}, unsigned workers = 1);

// fit_graph along a descending lambda sequence, warm-starting every per-node
// regression across the sequence. Result k corresponds to lambdas[k].
std::vector<SparseGraph> fit_graph_path(const std::vector<int>& s, const std::vector<int>& v,
                                        const ExpressionMatrix& expr,
                                        const std::vector<double>& lambdas_descending,
                                        const PnsConfig& config = {}, unsigned workers = 1);

// Squared correlation between log p(k) and log k over observed degrees k >= 1.
// Throws NumericalError with fewer than 2 distinct positive degrees.
double scale_free_r2(const SparseGraph& graph);
double scale_free_r2_from_degrees(const std::vector<int>& degrees);

// Algorithm 1 end to end: screen, retrieve, fit. `genes` and `expr` must be
// aligned (same ids in the same order, e.g. via validate_inputs + selection).
SparseGraph estimate_network(const ExpressionMatrix& expr, const GeneTable& genes,
                             const PnsConfig& config, unsigned workers = 1);

// Pairwise Pearson correlations between the selected columns (rows of the
// result) and all columns of `expr`.
Eigen::MatrixXd correlations_vs_all(const ExpressionMatrix& expr, const std::vector<int>& rows);

}  // namespace dawn::pns
