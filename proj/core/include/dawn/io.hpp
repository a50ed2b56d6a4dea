#pragma once

#include "dawn/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dawn::io {

// Shortest round-tripping decimal representation of a double.
std::string format_double(double x);

// Expression TSV: header row of sample ids, then one row per variable:
//   node_id<TAB>v1<TAB>...<TAB>vn
// Columns are standardized after reading when `standardize` is true (the
// pipeline default).
ExpressionMatrix read_expression_tsv(const std::filesystem::path& path, bool standardize = true);
void write_expression_tsv(const std::filesystem::path& path, const ExpressionMatrix& expr);

// Gene TSV: header, then node_id<TAB>p_value[<TAB>anchor][<TAB>cov_1...cov_K].
// The anchor column is recognized by its header name "anchor"; any further
// columns are covariate indicators. p-values of exactly 0 are clamped to the
// smallest positive double.
GeneTable read_gene_tsv(const std::filesystem::path& path);
void write_gene_tsv(const std::filesystem::path& path, const GeneTable& genes);

// Graph export/import as a pair of files sharing a prefix:
//   <prefix>.nodes.tsv  node_id<TAB>in_core
//   <prefix>.edges.tsv  node_a<TAB>node_b
void write_graph(const std::filesystem::path& prefix, const SparseGraph& graph);
SparseGraph read_graph(const std::filesystem::path& prefix);

// Posterior TSV: node_id<TAB>q<TAB>fdr<TAB>called.
void write_posteriors(const std::filesystem::path& path, const PosteriorTable& table);

// Hidden-state TSV: node_id<TAB>state.
void write_states(const std::filesystem::path& path, const std::vector<std::string>& ids,
                  const std::vector<bool>& states);

// z-score TSV: node_id<TAB>z.
void write_zscores(const std::filesystem::path& path, const std::vector<std::string>& ids,
                   const std::vector<double>& z);

// Fitted parameters as a flat key=value block.
void write_model(const std::filesystem::path& path, const HmrfModel& model,
                 const std::vector<std::string>& covariate_names);

// FNV-1a 64-bit checksum of a file's bytes, for run manifests.
std::uint64_t file_checksum(const std::filesystem::path& path);

}  // namespace dawn::io
