#include "dawn/pns.hpp"

#include "dawn/errors.hpp"
#include "dawn/lasso.hpp"
#include "dawn/parallel.hpp"
#include "dawn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_set>

namespace dawn::pns {

namespace {

// Column means/norms after centering, shared by the correlation helpers.
struct CenteredColumns {
    Eigen::MatrixXd values;  // centered
    Eigen::VectorXd norms;   // L2 norms of centered columns

    explicit CenteredColumns(const ExpressionMatrix& expr) {
        values = expr.values;
        const Eigen::VectorXd means = values.colwise().mean();
        values.rowwise() -= means.transpose();
        norms = values.colwise().norm();
    }
};

}  // namespace

void PnsConfig::validate() const {
    if (!(t > 0.0 && t <= 1.0)) {
        throw ConfigError("pns: t must be in (0,1]");
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw ConfigError("pns: tau must be in (0,1)");
    }
    if (lambda < 0.0) {
        throw ConfigError("pns: lambda must be >= 0");
    }
    if (zero_tol < 0.0) {
        throw ConfigError("pns: zero_tol must be >= 0");
    }
}

std::vector<int> pvalue_screen(const GeneTable& genes, double t) {
    std::vector<int> s_prime;
    for (std::size_t i = 0; i < genes.rows.size(); ++i) {
        if (genes.rows[i].p_value <= t || genes.rows[i].anchor) {
            s_prime.push_back(static_cast<int>(i));
        }
    }
    if (s_prime.empty()) {
        std::ostringstream os;
        os << "no key-gene candidates at threshold t=" << t;
        throw NumericalError(os.str());
    }
    return s_prime;
}

Eigen::MatrixXd correlations_vs_all(const ExpressionMatrix& expr, const std::vector<int>& rows) {
    const CenteredColumns cc(expr);
    Eigen::MatrixXd sel(expr.n(), static_cast<Eigen::Index>(rows.size()));
    Eigen::VectorXd sel_norms(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        sel.col(static_cast<Eigen::Index>(k)) = cc.values.col(rows[k]);
        sel_norms(static_cast<Eigen::Index>(k)) = cc.norms(rows[k]);
    }
    Eigen::MatrixXd corr = sel.transpose() * cc.values;
    for (Eigen::Index r = 0; r < corr.rows(); ++r) {
        for (Eigen::Index c = 0; c < corr.cols(); ++c) {
            const double denom = sel_norms(r) * cc.norms(c);
            corr(r, c) = denom > 0.0 ? corr(r, c) / denom : 0.0;
        }
    }
    return corr;
}

std::vector<int> correlation_screen(const std::vector<int>& s_prime, const ExpressionMatrix& expr,
                                    double tau) {
    if (s_prime.empty()) {
        throw NumericalError("correlation screen: empty candidate set");
    }
    const Eigen::MatrixXd corr = correlations_vs_all(expr, s_prime);
    std::vector<int> s;
    for (std::size_t a = 0; a < s_prime.size(); ++a) {
        bool connected = false;
        for (std::size_t b = 0; b < s_prime.size(); ++b) {
            if (a == b) continue;
            if (std::abs(corr(static_cast<Eigen::Index>(a), s_prime[b])) > tau) {
                connected = true;
                break;
            }
        }
        if (connected) {
            s.push_back(s_prime[a]);
        }
    }
    if (s.empty()) {
        std::ostringstream os;
        os << "all candidates isolated at tau=" << tau;
        throw NumericalError(os.str());
    }
    return s;
}

std::vector<int> retrieve_neighbors(const std::vector<int>& s, const ExpressionMatrix& expr,
                                    double tau) {
    if (s.empty()) {
        throw NumericalError("retrieve neighbors: empty core set");
    }
    const Eigen::MatrixXd corr = correlations_vs_all(expr, s);
    std::unordered_set<int> in_s(s.begin(), s.end());
    std::vector<int> v = s;
    for (Eigen::Index j = 0; j < expr.d(); ++j) {
        if (in_s.count(static_cast<int>(j))) continue;
        for (std::size_t a = 0; a < s.size(); ++a) {
            if (std::abs(corr(static_cast<Eigen::Index>(a), j)) > tau) {
                v.push_back(static_cast<int>(j));
                break;
            }
        }
    }
    std::sort(v.begin(), v.end());
    return v;
}

namespace {

// Per-core-node supports at each lambda on the path, assembled serially
// into graphs afterwards so the result is independent of worker scheduling.
std::vector<SparseGraph> fit_graphs_from_paths(const std::vector<int>& s,
                                               const std::vector<int>& v,
                                               const ExpressionMatrix& expr,
                                               const std::vector<double>& lambdas,
                                               const PnsConfig& config, unsigned workers) {
    config.validate();
    if (v.size() < 2) {
        throw NumericalError("pns fit: need at least 2 nodes in V");
    }
    std::unordered_set<int> v_set(v.begin(), v.end());
    for (int i : s) {
        if (!v_set.count(i)) {
            throw NumericalError("pns fit: S not contained in V");
        }
    }

    const Eigen::Index n = expr.n();
    const std::size_t nv = v.size();
    Eigen::MatrixXd sub(n, static_cast<Eigen::Index>(nv));
    for (std::size_t k = 0; k < nv; ++k) {
        sub.col(static_cast<Eigen::Index>(k)) = expr.values.col(v[k]);
    }

    std::unordered_set<int> s_set(s.begin(), s.end());
    std::vector<int> core_rows;  // positions within v
    for (std::size_t k = 0; k < nv; ++k) {
        if (s_set.count(v[k])) core_rows.push_back(static_cast<int>(k));
    }

    // supports[r][l] = support of core row r at lambdas[l], over V \ {row}
    std::vector<std::vector<std::vector<bool>>> supports(core_rows.size());
    parallel_for(core_rows.size(), workers, [&](std::size_t r) {
        const int row = core_rows[r];
        Eigen::MatrixXd design(n, static_cast<Eigen::Index>(nv - 1));
        Eigen::Index col = 0;
        for (std::size_t k = 0; k < nv; ++k) {
            if (static_cast<int>(k) == row) continue;
            design.col(col++) = sub.col(static_cast<Eigen::Index>(k));
        }
        const Eigen::VectorXd response = sub.col(row);
        try {
            const auto path = lasso::solve_lasso_path(design, response, lambdas,
                                                      config.solver_tol, config.solver_max_iter);
            supports[r].reserve(path.size());
            for (const auto& res : path) {
                supports[r].push_back(lasso::support(res.beta, config.zero_tol));
            }
        } catch (const lasso::LassoConvergenceError& e) {
            throw NumericalError("pns fit: lasso did not converge for node '" +
                                 expr.node_ids[static_cast<std::size_t>(v[static_cast<std::size_t>(
                                     row)])] +
                                 "': " + e.what());
        }
    });

    std::vector<bool> core_mask(nv);
    std::vector<std::string> node_ids(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        node_ids[k] = expr.node_ids[static_cast<std::size_t>(v[k])];
        core_mask[k] = s_set.count(v[k]) > 0;
    }

    std::vector<SparseGraph> graphs;
    graphs.reserve(lambdas.size());
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
        SparseGraph graph(node_ids, core_mask);
        for (std::size_t r = 0; r < core_rows.size(); ++r) {
            const int row = core_rows[r];
            const auto& sup = supports[r][l];
            std::size_t pos = 0;
            for (std::size_t k = 0; k < nv; ++k) {
                if (static_cast<int>(k) == row) continue;
                if (sup[pos++] && !graph.has_edge(row, static_cast<int>(k))) {
                    graph.add_edge(row, static_cast<int>(k));
                }
            }
        }
        graphs.push_back(std::move(graph));
    }
    return graphs;
}

}  // namespace

SparseGraph fit_graph(const std::vector<int>& s, const std::vector<int>& v,
                      const ExpressionMatrix& expr, double lambda, const PnsConfig& config,
                      unsigned workers) {
    auto graphs = fit_graphs_from_paths(s, v, expr, {lambda}, config, workers);
    return std::move(graphs.front());
}

std::vector<SparseGraph> fit_graph_path(const std::vector<int>& s, const std::vector<int>& v,
                                        const ExpressionMatrix& expr,
                                        const std::vector<double>& lambdas_descending,
                                        const PnsConfig& config, unsigned workers) {
    if (lambdas_descending.empty()) {
        throw ConfigError("pns fit: empty lambda sequence");
    }
    return fit_graphs_from_paths(s, v, expr, lambdas_descending, config, workers);
}

double scale_free_r2_from_degrees(const std::vector<int>& degrees) {
    std::map<int, int> counts;
    int positive = 0;
    for (int k : degrees) {
        if (k >= 1) {
            ++counts[k];
            ++positive;
        }
    }
    if (counts.size() < 2) {
        throw NumericalError("scale-free R^2 undefined: fewer than 2 distinct positive degrees");
    }
    std::vector<double> log_k, log_p;
    for (const auto& [k, cnt] : counts) {
        log_k.push_back(std::log(static_cast<double>(k)));
        log_p.push_back(std::log(static_cast<double>(cnt) / static_cast<double>(positive)));
    }
    // Two points are always collinear; guard the zero-variance p case
    // (all degrees equally frequent) where the correlation is 0/0.
    double mean_p = 0.0;
    for (double v : log_p) mean_p += v;
    mean_p /= static_cast<double>(log_p.size());
    double var_p = 0.0;
    for (double v : log_p) var_p += (v - mean_p) * (v - mean_p);
    if (var_p == 0.0) {
        return 1.0;
    }
    const double r = dawn::stats::pearson(log_p, log_k);
    return r * r;
}

double scale_free_r2(const SparseGraph& graph) { return scale_free_r2_from_degrees(graph.degrees()); }

SparseGraph estimate_network(const ExpressionMatrix& expr, const GeneTable& genes,
                             const PnsConfig& config, unsigned workers) {
    config.validate();
    if (genes.rows.size() != static_cast<std::size_t>(expr.d())) {
        throw IngestError("estimate_network: gene table and expression are not aligned");
    }
    for (std::size_t i = 0; i < genes.rows.size(); ++i) {
        if (genes.rows[i].node_id != expr.node_ids[i]) {
            throw IngestError("estimate_network: gene table and expression ids differ at row " +
                              std::to_string(i));
        }
    }
    const auto s_prime = pvalue_screen(genes, config.t);
    const auto s = correlation_screen(s_prime, expr, config.tau);
    const auto v = retrieve_neighbors(s, expr, config.tau);
    return fit_graph(s, v, expr, config.lambda, config, workers);
}

}  // namespace dawn::pns
