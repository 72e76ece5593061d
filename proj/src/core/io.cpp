#include "tet/io.hpp"

#include <unistd.h>
#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include "tet/error.hpp"

namespace tet {
namespace {

bool is_gzip_path(const std::filesystem::path& path) { return path.extension() == ".gz"; }

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Non-empty lines with trailing '\r' stripped, paired with 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> csv_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) out.emplace_back(line_no, line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void csv_fail(std::size_t line_no, const std::string& detail) {
    throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + detail);
}

double parse_double(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        csv_fail(line_no, "'" + std::string(text) + "' is not a number");
    }
    return value;
}

const std::string& checked_name(const std::string& name) {
    if (name.find_first_of(",\n\r\"") != std::string::npos) {
        throw Error(ErrorKind::invalid_argument, "node name '" + name + "' cannot be written to CSV");
    }
    return name;
}

void check_header(const std::vector<std::pair<std::size_t, std::string_view>>& lines, std::string_view expected) {
    if (lines.empty()) throw Error(ErrorKind::parse, "empty CSV, expected header '" + std::string(expected) + "'");
    if (lines.front().second != expected) {
        csv_fail(lines.front().first, "expected header '" + std::string(expected) + "'");
    }
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    if (is_gzip_path(path)) {
        gzFile file = gzopen(tmp.c_str(), "wb");
        if (file == nullptr) throw Error(ErrorKind::io, "cannot write " + tmp.string());
        const int written = content.empty() ? 0 : gzwrite(file, content.data(), static_cast<unsigned>(content.size()));
        const bool ok = gzclose(file) == Z_OK && written == static_cast<int>(content.size());
        if (!ok) {
            std::filesystem::remove(tmp);
            throw Error(ErrorKind::io, "failed writing " + tmp.string());
        }
    } else {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(ErrorKind::io, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error(ErrorKind::io, "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorKind::io, "cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    if (is_gzip_path(path)) {
        gzFile file = gzopen(path.c_str(), "rb");
        if (file == nullptr) throw Error(ErrorKind::io, "cannot open " + path.string());
        std::string data;
        char buffer[1 << 16];
        int got = 0;
        while ((got = gzread(file, buffer, sizeof buffer)) > 0) data.append(buffer, static_cast<std::size_t>(got));
        gzclose(file);
        if (got < 0) throw Error(ErrorKind::io, "corrupt gzip stream in " + path.string());
        return data;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

Json catalog_to_json(const TransitionCatalog& catalog) {
    Json out = Json::array();
    for (const auto& c : catalog.classes()) {
        Json left = Json::array();
        Json right = Json::array();
        for (const auto& [a, b] : edges_from_mask(c.canonical.k, c.canonical.left)) left.push_back({a, b});
        for (const auto& [a, b] : edges_from_mask(c.canonical.k, c.canonical.right)) right.push_back({a, b});
        out.push_back(Json{{"id", c.id},
                           {"k", c.canonical.k},
                           {"rooted", c.canonical.rooted},
                           {"left", std::move(left)},
                           {"right", std::move(right)}});
    }
    return out;
}

Json graph_to_bundle(const TemporalGraph& graph) {
    Json snapshots = Json::array();
    for (const auto& snapshot : graph.snapshots()) {
        Json edges = Json::array();
        for (const Edge& e : snapshot.edges()) edges.push_back({e.u, e.v});
        snapshots.push_back(std::move(edges));
    }
    return Json{{"nodes", graph.universe().names()}, {"snapshots", std::move(snapshots)}};
}

TemporalGraph graph_from_bundle(const Json& bundle) {
    try {
        NodeTable universe;
        for (const auto& name : bundle.at("nodes")) universe.intern(name.get<std::string>());
        if (universe.size() != bundle.at("nodes").size()) {
            throw Error(ErrorKind::parse, "snapshot bundle lists a node twice");
        }
        std::vector<Snapshot> snapshots;
        for (const auto& list : bundle.at("snapshots")) {
            std::vector<Edge> edges;
            for (const auto& e : list) {
                if (e.size() != 2) throw Error(ErrorKind::parse, "snapshot bundle edge is not a pair");
                edges.emplace_back(e.at(0).get<NodeIndex>(), e.at(1).get<NodeIndex>());
            }
            snapshots.emplace_back(universe.size(), edges);
        }
        return TemporalGraph(std::move(universe), std::move(snapshots));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("malformed snapshot bundle: ") + e.what());
    }
}

EmbeddingTable make_embedding_table(const TemporalGraph& graph, std::span<const NodeEmbedding> embeddings) {
    EmbeddingTable table;
    for (const auto& e : embeddings) {
        table.nodes.push_back(graph.universe().name(e.node));
        table.rows.push_back(e.values);
    }
    return table;
}

std::string embedding_csv(const EmbeddingTable& table) {
    const std::size_t d = table.rows.empty() ? 0 : table.rows.front().size();
    std::string out = "node";
    for (std::size_t i = 0; i < d; ++i) out += ",c" + std::to_string(i);
    out += '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += checked_name(table.nodes[r]);
        for (double v : table.rows[r]) out += ',' + format_double(v);
        out += '\n';
    }
    return out;
}

EmbeddingTable parse_embedding_csv(std::string_view text) {
    const auto lines = csv_lines(text);
    if (lines.empty()) throw Error(ErrorKind::parse, "empty embedding CSV");
    const auto header = split(lines.front().second, ',');
    if (header.empty() || header.front() != "node") csv_fail(lines.front().first, "header must start with 'node'");
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i] != "c" + std::to_string(i - 1)) {
            csv_fail(lines.front().first, "expected column 'c" + std::to_string(i - 1) + "'");
        }
    }
    EmbeddingTable table;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto fields = split(lines[l].second, ',');
        if (fields.size() != header.size()) {
            csv_fail(lines[l].first, "expected " + std::to_string(header.size()) + " fields");
        }
        table.nodes.emplace_back(fields[0]);
        Point row;
        for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(parse_double(fields[i], lines[l].first));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string step_csv(const TemporalGraph& graph, const std::vector<std::vector<TransitionCountVector>>& steps) {
    std::size_t d = 0;
    if (!steps.empty() && !steps.front().empty()) d = steps.front().front().counts.size();
    std::string out = "node,step";
    for (std::size_t i = 0; i < d; ++i) out += ",c" + std::to_string(i);
    out += '\n';
    for (const auto& node_steps : steps) {
        for (const auto& step : node_steps) {
            out += checked_name(graph.universe().name(step.node)) + ',' + std::to_string(step.step);
            for (auto c : step.counts) out += ',' + std::to_string(c);
            out += '\n';
        }
    }
    return out;
}

std::vector<NodeLabel> LabelTable::aligned_to(std::span<const std::string> order) const {
    std::unordered_map<std::string_view, NodeLabel> by_name;
    for (std::size_t i = 0; i < nodes.size(); ++i) by_name.emplace(nodes[i], labels[i]);
    std::vector<NodeLabel> out;
    out.reserve(order.size());
    for (const auto& name : order) {
        const auto it = by_name.find(name);
        if (it == by_name.end()) throw Error(ErrorKind::unknown_node, "no label for node '" + name + "'");
        out.push_back(it->second);
    }
    return out;
}

LabelTable make_label_table(const TemporalGraph& graph, std::span<const NodeLabel> labels) {
    if (labels.size() != graph.node_count()) throw Error(ErrorKind::invalid_argument, "one label per node required");
    LabelTable table;
    table.nodes = graph.universe().names();
    table.labels.assign(labels.begin(), labels.end());
    return table;
}

std::string labels_csv(const LabelTable& table) {
    std::string out = "node,label\n";
    for (std::size_t i = 0; i < table.nodes.size(); ++i) {
        out += checked_name(table.nodes[i]) + ',' + std::string(to_string(table.labels[i])) + '\n';
    }
    return out;
}

LabelTable parse_labels_csv(std::string_view text) {
    const auto lines = csv_lines(text);
    check_header(lines, "node,label");
    LabelTable table;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto fields = split(lines[l].second, ',');
        if (fields.size() != 2) csv_fail(lines[l].first, "expected 'node,label'");
        table.nodes.emplace_back(fields[0]);
        try {
            table.labels.push_back(parse_label(fields[1]));
        } catch (const Error& e) {
            csv_fail(lines[l].first, e.what());
        }
    }
    return table;
}

std::string assignment_csv(const AssignmentTable& table) {
    std::string out = "node,cluster,predicted\n";
    for (std::size_t i = 0; i < table.nodes.size(); ++i) {
        out += checked_name(table.nodes[i]) + ',' +
               (table.cluster[i] == kNoise ? std::string("noise") : std::to_string(table.cluster[i])) + ',' +
               std::string(to_string(table.predicted[i])) + '\n';
    }
    return out;
}

AssignmentTable parse_assignment_csv(std::string_view text) {
    const auto lines = csv_lines(text);
    check_header(lines, "node,cluster,predicted");
    AssignmentTable table;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto fields = split(lines[l].second, ',');
        if (fields.size() != 3) csv_fail(lines[l].first, "expected 'node,cluster,predicted'");
        table.nodes.emplace_back(fields[0]);
        if (fields[1] == "noise") {
            table.cluster.push_back(kNoise);
        } else {
            int c = 0;
            const auto [end, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), c);
            if (ec != std::errc{} || end != fields[1].data() + fields[1].size() || c < 0) {
                csv_fail(lines[l].first, "cluster must be a non-negative integer or 'noise'");
            }
            table.cluster.push_back(c);
        }
        try {
            table.predicted.push_back(parse_label(fields[2]));
        } catch (const Error& e) {
            csv_fail(lines[l].first, e.what());
        }
    }
    return table;
}

std::string projection_csv(std::span<const std::string> nodes, std::span<const std::array<double, 2>> coords,
                           const AssignmentTable* assignment, const std::vector<NodeLabel>* truth) {
    if (coords.size() != nodes.size()) throw Error(ErrorKind::invalid_argument, "one coordinate pair per node required");
    if (assignment && assignment->nodes.size() != nodes.size()) {
        throw Error(ErrorKind::invalid_argument, "assignment does not match the projected nodes");
    }
    if (truth && truth->size() != nodes.size()) {
        throw Error(ErrorKind::invalid_argument, "truth labels do not match the projected nodes");
    }
    std::string out = "node,x,y,cluster,predicted,truth\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out += checked_name(nodes[i]) + ',' + format_double(coords[i][0]) + ',' + format_double(coords[i][1]) + ',';
        if (assignment) {
            out += (assignment->cluster[i] == kNoise ? std::string("noise") : std::to_string(assignment->cluster[i])) +
                   ',' + std::string(to_string(assignment->predicted[i])) + ',';
        } else {
            out += "unknown,unknown,";
        }
        out += truth ? std::string(to_string((*truth)[i])) : std::string("unknown");
        out += '\n';
    }
    return out;
}

Json report_to_json(const EvalReport& report) {
    auto row = [](const ClassMetrics& m) {
        return Json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
    };
    return Json{{"anomaly", row(report.anomaly)},
                {"normal", row(report.normal)},
                {"accuracy", report.accuracy},
                {"total", report.total},
                {"confusion",
                 {{"true_positive", report.true_positive},
                  {"false_positive", report.false_positive},
                  {"false_negative", report.false_negative},
                  {"true_negative", report.true_negative}}}};
}

}  // namespace tet

namespace tet {

Json synth_manifest(const SynthConfig& cfg) {
    return Json{{"generator", "temporal-er-with-alternating-clique"},
                {"rng", kSynthRngName},
                {"n", cfg.n},
                {"p", cfg.p},
                {"a", cfg.a},
                {"snapshots", cfg.snapshots},
                {"seed", cfg.seed},
                {"cross_edges", cfg.cross_edges},
                {"shuffle_names", cfg.shuffle_names},
                {"anomalous_nodes", anomalous_count(cfg)},
                {"normal_nodes", cfg.n - anomalous_count(cfg)},
                {"timestamps", "snapshot index"}};
}

}  // namespace tet
