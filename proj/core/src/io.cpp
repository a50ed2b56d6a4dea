#include "dawn/io.hpp"

#include "dawn/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace dawn::io {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
        out.back().pop_back();
    }
    return out;
}

double parse_double(const std::string& token, const std::string& context) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw IngestError(context + ": cannot parse number '" + token + "'");
    }
    return value;
}

bool parse_flag(const std::string& token, const std::string& context) {
    if (token == "0" || token == "false" || token == "FALSE" || token == "False") return false;
    if (token == "1" || token == "true" || token == "TRUE" || token == "True") return true;
    throw IngestError(context + ": cannot parse boolean '" + token + "'");
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open input file '" + path.string() + "'");
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IngestError("cannot open output file '" + path.string() + "'");
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

ExpressionMatrix read_expression_tsv(const std::filesystem::path& path, bool standardize) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw IngestError("expression file '" + path.string() + "' is empty");
    }
    const auto header = split_tabs(line);
    if (header.size() < 2) {
        throw IngestError("expression header needs at least one sample column");
    }
    const std::size_t n = header.size() - 1;

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != n + 1) {
            std::ostringstream os;
            os << path.string() << ":" << lineno << ": expected " << n + 1 << " fields, got "
               << fields.size();
            throw IngestError(os.str());
        }
        ids.push_back(fields[0]);
        std::vector<double> vals(n);
        for (std::size_t k = 0; k < n; ++k) {
            vals[k] = parse_double(fields[k + 1], path.string() + " node '" + fields[0] + "'");
        }
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) {
        throw IngestError("expression file '" + path.string() + "' has no variable rows");
    }

    ExpressionMatrix expr;
    expr.node_ids = std::move(ids);
    expr.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            expr.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
        }
    }
    expr.validate();
    if (standardize) {
        standardize_columns(expr.values);
    }
    return expr;
}

void write_expression_tsv(const std::filesystem::path& path, const ExpressionMatrix& expr) {
    auto out = open_output(path);
    out << "node_id";
    for (Eigen::Index i = 0; i < expr.n(); ++i) {
        out << "\ts" << i + 1;
    }
    out << "\n";
    for (Eigen::Index j = 0; j < expr.d(); ++j) {
        out << expr.node_ids[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i < expr.n(); ++i) {
            out << "\t" << format_double(expr.values(i, j));
        }
        out << "\n";
    }
}

GeneTable read_gene_tsv(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw IngestError("gene file '" + path.string() + "' is empty");
    }
    const auto header = split_tabs(line);
    if (header.size() < 2 || header[0] != "node_id" || header[1] != "p_value") {
        throw IngestError("gene file header must start with node_id<TAB>p_value");
    }
    int anchor_col = -1;
    GeneTable table;
    for (std::size_t k = 2; k < header.size(); ++k) {
        if (header[k] == "anchor" && anchor_col < 0) {
            anchor_col = static_cast<int>(k);
        } else {
            table.covariate_names.push_back(header[k]);
        }
    }

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != header.size()) {
            std::ostringstream os;
            os << path.string() << ":" << lineno << ": expected " << header.size()
               << " fields, got " << fields.size();
            throw IngestError(os.str());
        }
        GeneRecord rec;
        rec.node_id = fields[0];
        rec.p_value = parse_double(fields[1], path.string() + " node '" + rec.node_id + "'");
        if (rec.p_value == 0.0) {
            // underflowed upstream test; keep the evidence finite
            rec.p_value = std::numeric_limits<double>::denorm_min();
        }
        if (rec.p_value < 0.0 || rec.p_value > 1.0) {
            throw IngestError(path.string() + ": p-value out of [0,1] for node '" + rec.node_id +
                              "'");
        }
        for (std::size_t k = 2; k < fields.size(); ++k) {
            const std::string ctx = path.string() + " node '" + rec.node_id + "'";
            if (static_cast<int>(k) == anchor_col) {
                rec.anchor = parse_flag(fields[k], ctx);
            } else {
                const double v = parse_double(fields[k], ctx);
                if (v != 0.0 && v != 1.0) {
                    throw IngestError(ctx + ": covariate indicator must be 0 or 1");
                }
                rec.covariates.push_back(v);
            }
        }
        table.rows.push_back(std::move(rec));
    }
    table.validate();
    return table;
}

void write_gene_tsv(const std::filesystem::path& path, const GeneTable& genes) {
    auto out = open_output(path);
    out << "node_id\tp_value\tanchor";
    for (const auto& name : genes.covariate_names) {
        out << "\t" << name;
    }
    out << "\n";
    for (const auto& r : genes.rows) {
        out << r.node_id << "\t" << format_double(r.p_value) << "\t" << (r.anchor ? 1 : 0);
        for (double v : r.covariates) {
            out << "\t" << format_double(v);
        }
        out << "\n";
    }
}

void write_graph(const std::filesystem::path& prefix, const SparseGraph& graph) {
    {
        auto out = open_output(prefix.string() + ".nodes.tsv");
        out << "node_id\tin_core\n";
        for (int i = 0; i < graph.num_nodes(); ++i) {
            out << graph.nodes()[static_cast<std::size_t>(i)] << "\t"
                << (graph.core_mask()[static_cast<std::size_t>(i)] ? 1 : 0) << "\n";
        }
    }
    {
        auto out = open_output(prefix.string() + ".edges.tsv");
        out << "node_a\tnode_b\n";
        for (const auto& [i, j] : graph.edges()) {
            out << graph.nodes()[static_cast<std::size_t>(i)] << "\t"
                << graph.nodes()[static_cast<std::size_t>(j)] << "\n";
        }
    }
}

SparseGraph read_graph(const std::filesystem::path& prefix) {
    std::vector<std::string> ids;
    std::vector<bool> core;
    {
        auto in = open_input(prefix.string() + ".nodes.tsv");
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto fields = split_tabs(line);
            if (fields.size() != 2) {
                throw IngestError(prefix.string() + ".nodes.tsv: expected 2 fields");
            }
            ids.push_back(fields[0]);
            core.push_back(parse_flag(fields[1], "graph node '" + fields[0] + "'"));
        }
    }
    SparseGraph graph(ids, core);
    std::unordered_map<std::string, int> pos;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!pos.emplace(ids[i], static_cast<int>(i)).second) {
            throw IngestError(prefix.string() + ".nodes.tsv: duplicate node id '" + ids[i] + "'");
        }
    }
    {
        auto in = open_input(prefix.string() + ".edges.tsv");
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto fields = split_tabs(line);
            if (fields.size() != 2) {
                throw IngestError(prefix.string() + ".edges.tsv: expected 2 fields");
            }
            const auto a = pos.find(fields[0]);
            const auto b = pos.find(fields[1]);
            if (a == pos.end() || b == pos.end()) {
                throw IngestError(prefix.string() + ".edges.tsv: unknown node in edge " +
                                  fields[0] + "-" + fields[1]);
            }
            graph.add_edge(a->second, b->second);
        }
    }
    return graph;
}

void write_posteriors(const std::filesystem::path& path, const PosteriorTable& table) {
    auto out = open_output(path);
    out << "node_id\tq\tfdr\tcalled\n";
    for (const auto& r : table) {
        out << r.node_id << "\t" << format_double(r.q) << "\t" << format_double(r.fdr) << "\t"
            << (r.called ? 1 : 0) << "\n";
    }
}

void write_states(const std::filesystem::path& path, const std::vector<std::string>& ids,
                  const std::vector<bool>& states) {
    auto out = open_output(path);
    out << "node_id\tstate\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << ids[i] << "\t" << (states[i] ? 1 : 0) << "\n";
    }
}

void write_zscores(const std::filesystem::path& path, const std::vector<std::string>& ids,
                   const std::vector<double>& z) {
    auto out = open_output(path);
    out << "node_id\tz\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << ids[i] << "\t" << format_double(z[i]) << "\n";
    }
}

void write_model(const std::filesystem::path& path, const HmrfModel& model,
                 const std::vector<std::string>& covariate_names) {
    auto out = open_output(path);
    out << "b=" << format_double(model.b) << "\n";
    out << "c=" << format_double(model.c) << "\n";
    for (std::size_t k = 0; k < model.d_coefs.size(); ++k) {
        const std::string name =
            k < covariate_names.size() ? covariate_names[k] : "cov" + std::to_string(k + 1);
        out << "d_" << name << "=" << format_double(model.d_coefs[k]) << "\n";
    }
    out << "mu=" << format_double(model.mu) << "\n";
    out << "sigma0_sq=" << format_double(model.sigma0_sq) << "\n";
    out << "sigma1_sq=" << format_double(model.sigma1_sq) << "\n";
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot open file for checksum: '" + path.string() + "'");
    }
    std::uint64_t hash = 14695981039346656037ULL;
    char buf[8192];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

}  // namespace dawn::io
