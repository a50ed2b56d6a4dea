#pragma once

#include "dawn/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dawn::hmrf {

struct HmrfConfig {
    double z_thres = 1.6448536269514722;  // state init threshold, Phi^-1(0.95)
    int icm_cycles = 20;                  // outer iterations T
    double param_tol = 1e-5;              // early stop on parameter max-change
    int gibbs_burn_in = 2000;
    int gibbs_samples = 10000;
    std::uint64_t seed = 0;
    double fdr_alpha = 0.1;

    void validate() const;
};

// Hidden binary risk indicators with anchor pins. pinned[i] forces
// states[i] == 1 through every operation.
struct StateVector {
    std::vector<bool> states;
    std::vector<bool> pinned;

    std::size_t size() const { return states.size(); }
    int count_active() const;
};

// Upper-tail normal quantile of a p-value: z = Phi^{-1}(1 - p).
// p is clamped into [denorm_min, 1 - 2^-53] so z stays finite.
double z_from_p(double p);

// z-scores for every gene-table row, in table order.
std::vector<double> z_from_p(const GeneTable& genes);

// Anchor flags in table order.
std::vector<bool> pinned_mask(const GeneTable& genes);

// Node x K covariate indicator matrix (0 columns when the table has none).
Eigen::MatrixXd covariate_matrix(const GeneTable& genes);

// I_i = 1 iff z_i > z_thres or pinned_i.
StateVector init_states(const std::vector<double>& z, double z_thres,
                        const std::vector<bool>& pinned);

// The Ising density used throughout is
//   P(I = eta) propto exp(b sum eta + c eta' Omega eta + sum_k d_k H_k' eta)
// with Omega the symmetric 0/1 adjacency, so eta' Omega eta counts every
// edge twice and the full conditional of one spin is
//   P(I_i = 1 | rest) = logistic(b + 2 c s_i + sum_k d_k h_ik),
// s_i the active-neighbor count.
double activation_logit(const HmrfModel& model, int neighbor_sum, const Eigen::MatrixXd& covariates,
                        int node);

struct PseudoLikelihoodFit {
    double b = 0.0;
    double c = 0.0;
    std::vector<double> d_coefs;
    int newton_iterations = 0;
};

// Maximizes the product of full conditionals of the states given the graph
// (a logistic regression of I_i on the neighbor sum and covariates).
// Throws NumericalError on separation, including the all-identical case.
PseudoLikelihoodFit pseudo_likelihood_fit(const StateVector& states, const SparseGraph& graph,
                                          const Eigen::MatrixXd& covariates);

// One ICM sweep in canonical node order; pinned nodes untouched.
StateVector icm_cycle(const StateVector& states, const std::vector<double>& z,
                      const SparseGraph& graph, const HmrfModel& model,
                      const Eigen::MatrixXd& covariates);

struct MixtureParams {
    double mu = 0.0;
    double sigma0_sq = 1.0;
    double sigma1_sq = 1.0;
};

// Weighted-moment update from alternative-component weights w1 (w0 = 1-w1):
//   mu       = sum w1 z / sum w1
//   sigma0^2 = sum w0 z^2 / sum w0
//   sigma1^2 = sum w1 (z - mu)^2 / sum w1
// Variances are floored at 1e-6. Throws NumericalError when either component
// has zero total weight.
MixtureParams mixture_update(const std::vector<double>& w1, const std::vector<double>& z);

// Per-node conditional posterior P(I_i = 1 | z_i, I_-i, model).
std::vector<double> conditional_posterior(const std::vector<double>& z, const StateVector& states,
                                          const SparseGraph& graph, const HmrfModel& model,
                                          const Eigen::MatrixXd& covariates);

struct FitResult {
    HmrfModel model;
    StateVector states;
    int iterations = 0;
    bool interaction_warning = false;  // fitted c <= 0
};

// Full parameter estimation: init, then T rounds of pseudo-likelihood fit,
// one ICM cycle, and a mixture-moment update, with early stop when no
// parameter moves more than param_tol. Deterministic.
FitResult hmrf_fit(const std::vector<double>& z, const SparseGraph& graph,
                   const Eigen::MatrixXd& covariates, const std::vector<bool>& pinned,
                   const HmrfConfig& config);

// Single-site Gibbs estimate of q_i = P(I_i = 0 | Z). Pinned nodes get
// exactly 0. The chain starts from init_states(z, config.z_thres, pinned).
std::vector<double> gibbs_posterior(const std::vector<double>& z, const SparseGraph& graph,
                                    const HmrfModel& model, const std::vector<bool>& pinned,
                                    const HmrfConfig& config,
                                    const Eigen::MatrixXd& covariates);

struct FdrResult {
    std::vector<double> fdr;   // aligned with the input q order
    std::vector<bool> called;  // fdr <= alpha
};

// Bayesian FDR: sort q ascending, FDR_l = running mean of the sorted q;
// tied q values share the smallest rank's FDR. Ordering ties are broken by
// input position (callers sort by node id for cross-run determinism).
FdrResult bayesian_fdr(const std::vector<double>& q, double alpha);

// Rows sorted by (q, node_id) with FDR values and calls at alpha.
PosteriorTable make_posterior_table(const std::vector<std::string>& ids,
                                    const std::vector<double>& q, double alpha);

struct CovariateTestResult {
    std::vector<double> d_hat;            // observed extended-model coefficients
    std::vector<std::vector<double>> d_star;  // per replicate, K coefficients
    std::vector<double> p_values;         // (1/B) sum I{d*_rep > d_hat}, per coefficient
    int failed_replicates = 0;
};

// Smoothed-bootstrap significance test of the covariate coefficients:
// fit the null Ising, simulate B state/score replicates from it, refit the
// extended model on each, and compare the observed coefficients with the
// bootstrap reference distribution. A replicate that fails (separation) is
// resampled once, then counted as failed.
CovariateTestResult covariate_test(const std::vector<double>& z, const SparseGraph& graph,
                                   const Eigen::MatrixXd& covariates, const HmrfConfig& config,
                                   int bootstrap_b, double init_ratio, int mh_sweeps = 200,
                                   const std::vector<bool>& pinned = {}, unsigned workers = 1);

}  // namespace dawn::hmrf
