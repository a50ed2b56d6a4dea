#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dawn {

// n samples x d variables of expression, column-labeled by node id.
// Columns are standardized (mean 0, unit sample variance) once at ingestion;
// raw simulated samples are standardized by the caller before entering the
// pipeline.
struct ExpressionMatrix {
    Eigen::MatrixXd values;             // n x d
    std::vector<std::string> node_ids;  // length d, unique

    Eigen::Index n() const { return values.rows(); }
    Eigen::Index d() const { return values.cols(); }

    // Throws IngestError on duplicate ids, id/column count mismatch,
    // non-finite entries, or n < 2.
    void validate() const;
};

// In-place column standardization to mean 0 and unit sample variance
// (n-1 denominator). Throws IngestError on a constant column.
void standardize_columns(Eigen::MatrixXd& values);

// One row of the per-node score table.
struct GeneRecord {
    std::string node_id;
    double p_value = 1.0;            // in (0, 1]
    bool anchor = false;             // hidden state pinned to 1
    std::vector<double> covariates;  // K binary indicators
};

struct GeneTable {
    std::vector<GeneRecord> rows;
    std::vector<std::string> covariate_names;  // length K

    std::size_t size() const { return rows.size(); }
    std::size_t num_covariates() const { return covariate_names.size(); }

    // Throws IngestError on duplicate ids, p-values outside (0,1], or
    // ragged covariate lists.
    void validate() const;
};

// Undirected binary graph over an ordered node list, with the two-tier
// core/extension membership produced by neighborhood screening: every edge
// has at least one endpoint in the core set.
class SparseGraph {
public:
    SparseGraph() = default;
    SparseGraph(std::vector<std::string> nodes, std::vector<bool> core_mask);

    // Adds the undirected edge {a, b}. No self-loops; at least one endpoint
    // must be core. Duplicate insertions are ignored.
    void add_edge(int a, int b);

    bool has_edge(int a, int b) const;

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<bool>& core_mask() const { return core_mask_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }
    const std::vector<int>& neighbors(int i) const { return adj_[i]; }
    // Unordered edges as (i, j) index pairs with i < j, insertion-ordered.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    std::vector<int> degrees() const;

    // Dense symmetric 0/1 adjacency.
    Eigen::MatrixXd dense_adjacency() const;

private:
    std::vector<std::string> nodes_;
    std::vector<bool> core_mask_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// Ising + Gaussian mixture emission parameters.
struct HmrfModel {
    double b = 0.0;               // external field
    double c = 0.0;               // pairwise interaction (expected > 0)
    std::vector<double> d_coefs;  // covariate effects
    double mu = 1.0;              // alternative emission mean, > 0 at convergence
    double sigma0_sq = 1.0;
    double sigma1_sq = 1.0;
};

struct PosteriorRecord {
    std::string node_id;
    double q = 1.0;  // P(I_i = 0 | Z)
    double fdr = 1.0;
    bool called = false;
};

using PosteriorTable = std::vector<PosteriorRecord>;

// Result of joining expression columns with score-table rows.
struct JoinReport {
    // Join order is canonical: the GeneTable order restricted to shared ids.
    std::vector<std::string> joined_ids;
    // Index into ExpressionMatrix columns / GeneTable rows for each joined id.
    std::vector<int> expr_index;
    std::vector<int> gene_index;
    std::vector<std::string> dropped_expr_only;
    std::vector<std::string> dropped_gene_only;
};

// Validates both inputs and intersects their node ids. The joined order
// follows the GeneTable. Throws IngestError if the intersection is empty
// or either input is malformed.
JoinReport validate_inputs(const ExpressionMatrix& expr, const GeneTable& genes);

// Restriction of `expr` to the joined columns, in join order.
ExpressionMatrix select_columns(const ExpressionMatrix& expr, const JoinReport& join);

// Restriction of `genes` to the joined rows, in join order.
GeneTable select_rows(const GeneTable& genes, const JoinReport& join);

}  // namespace dawn
