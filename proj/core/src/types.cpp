#include "dawn/types.hpp"

#include "dawn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dawn {

void ExpressionMatrix::validate() const {
    if (static_cast<Eigen::Index>(node_ids.size()) != values.cols()) {
        throw IngestError("expression: node id count does not match column count");
    }
    if (values.rows() < 2) {
        throw IngestError("expression: need at least 2 samples");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : node_ids) {
        if (!seen.insert(id).second) {
            throw IngestError("expression: duplicate node id '" + id + "'");
        }
    }
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            if (!std::isfinite(values(i, j))) {
                std::ostringstream os;
                os << "expression: non-finite value at sample " << i + 1 << ", variable '"
                   << node_ids[static_cast<std::size_t>(j)] << "'";
                throw IngestError(os.str());
            }
        }
    }
}

void standardize_columns(Eigen::MatrixXd& values) {
    const Eigen::Index n = values.rows();
    if (n < 2) {
        throw IngestError("standardize: need at least 2 samples");
    }
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        auto col = values.col(j);
        const double mean = col.mean();
        col.array() -= mean;
        const double sd = std::sqrt(col.squaredNorm() / static_cast<double>(n - 1));
        if (sd <= 0.0 || !std::isfinite(sd)) {
            throw IngestError("standardize: constant column at index " + std::to_string(j));
        }
        col /= sd;
    }
}

void GeneTable::validate() const {
    std::unordered_set<std::string> seen;
    for (const auto& r : rows) {
        if (!seen.insert(r.node_id).second) {
            throw IngestError("gene table: duplicate node id '" + r.node_id + "'");
        }
        if (!(r.p_value > 0.0) || r.p_value > 1.0 || !std::isfinite(r.p_value)) {
            throw IngestError("gene table: p-value out of (0,1] for node '" + r.node_id + "'");
        }
        if (r.covariates.size() != covariate_names.size()) {
            throw IngestError("gene table: covariate count mismatch for node '" + r.node_id +
                              "'");
        }
    }
}

SparseGraph::SparseGraph(std::vector<std::string> nodes, std::vector<bool> core_mask)
    : nodes_(std::move(nodes)), core_mask_(std::move(core_mask)) {
    if (core_mask_.size() != nodes_.size()) {
        throw IngestError("graph: core mask length does not match node count");
    }
    adj_.resize(nodes_.size());
}

void SparseGraph::add_edge(int a, int b) {
    if (a == b) {
        throw IngestError("graph: self-loop on node '" + nodes_[static_cast<std::size_t>(a)] +
                          "'");
    }
    if (a < 0 || b < 0 || a >= num_nodes() || b >= num_nodes()) {
        throw IngestError("graph: edge endpoint out of range");
    }
    if (!core_mask_[static_cast<std::size_t>(a)] && !core_mask_[static_cast<std::size_t>(b)]) {
        throw IngestError("graph: edge between two non-core nodes '" +
                          nodes_[static_cast<std::size_t>(a)] + "'-'" +
                          nodes_[static_cast<std::size_t>(b)] + "'");
    }
    if (has_edge(a, b)) {
        return;
    }
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
    edges_.emplace_back(std::min(a, b), std::max(a, b));
}

bool SparseGraph::has_edge(int a, int b) const {
    const auto& na = adj_[static_cast<std::size_t>(a)];
    const auto& nb = adj_[static_cast<std::size_t>(b)];
    const auto& shorter = na.size() <= nb.size() ? na : nb;
    const int target = na.size() <= nb.size() ? b : a;
    return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
}

std::vector<int> SparseGraph::degrees() const {
    std::vector<int> deg(adj_.size());
    for (std::size_t i = 0; i < adj_.size(); ++i) {
        deg[i] = static_cast<int>(adj_[i].size());
    }
    return deg;
}

Eigen::MatrixXd SparseGraph::dense_adjacency() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_nodes(), num_nodes());
    for (const auto& [i, j] : edges_) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return a;
}

JoinReport validate_inputs(const ExpressionMatrix& expr, const GeneTable& genes) {
    expr.validate();
    genes.validate();

    std::unordered_map<std::string, int> expr_pos;
    expr_pos.reserve(expr.node_ids.size());
    for (std::size_t j = 0; j < expr.node_ids.size(); ++j) {
        expr_pos.emplace(expr.node_ids[j], static_cast<int>(j));
    }

    JoinReport report;
    std::unordered_set<std::string> joined;
    for (std::size_t i = 0; i < genes.rows.size(); ++i) {
        const auto& id = genes.rows[i].node_id;
        auto it = expr_pos.find(id);
        if (it == expr_pos.end()) {
            report.dropped_gene_only.push_back(id);
        } else {
            report.joined_ids.push_back(id);
            report.expr_index.push_back(it->second);
            report.gene_index.push_back(static_cast<int>(i));
            joined.insert(id);
        }
    }
    for (const auto& id : expr.node_ids) {
        if (!joined.count(id)) {
            report.dropped_expr_only.push_back(id);
        }
    }
    if (report.joined_ids.empty()) {
        throw IngestError("empty join: expression and gene tables share no node ids");
    }
    return report;
}

ExpressionMatrix select_columns(const ExpressionMatrix& expr, const JoinReport& join) {
    ExpressionMatrix out;
    out.node_ids = join.joined_ids;
    out.values.resize(expr.values.rows(), static_cast<Eigen::Index>(join.expr_index.size()));
    for (std::size_t k = 0; k < join.expr_index.size(); ++k) {
        out.values.col(static_cast<Eigen::Index>(k)) = expr.values.col(join.expr_index[k]);
    }
    return out;
}

GeneTable select_rows(const GeneTable& genes, const JoinReport& join) {
    GeneTable out;
    out.covariate_names = genes.covariate_names;
    out.rows.reserve(join.gene_index.size());
    for (int idx : join.gene_index) {
        out.rows.push_back(genes.rows[static_cast<std::size_t>(idx)]);
    }
    return out;
}

}  // namespace dawn
