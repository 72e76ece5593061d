#include "tet/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tet/error.hpp"

namespace tet {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_sep(line[i])) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& detail) {
    throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + detail);
}

std::string read_gzip(const std::filesystem::path& path) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw Error(ErrorKind::io, "cannot open " + path.string());
    std::string data;
    char buffer[1 << 16];
    int got = 0;
    while ((got = gzread(file, buffer, sizeof buffer)) > 0) data.append(buffer, static_cast<std::size_t>(got));
    const bool failed = got < 0;
    gzclose(file);
    if (failed) throw Error(ErrorKind::io, "corrupt gzip stream in " + path.string());
    return data;
}

}  // namespace

ParsedRecords parse_records(std::istream& in) {
    ParsedRecords out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view directive = "#!node";
            if (line.starts_with(directive) && line.size() > directive.size() &&
                (line[directive.size()] == ' ' || line[directive.size()] == '\t')) {
                const auto name = trim(line.substr(directive.size()));
                if (name.empty()) parse_fail(line_no, "#!node directive without a name");
                out.declared_nodes.emplace_back(name);
            }
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            parse_fail(line_no, "expected 3 fields 'u v t', found " + std::to_string(fields.size()));
        }
        double t = 0.0;
        const auto ts = fields[2];
        const auto [end, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), t);
        if (ec != std::errc{} || end != ts.data() + ts.size() || !std::isfinite(t)) {
            parse_fail(line_no, "timestamp '" + std::string(ts) + "' is not a number");
        }
        if (t < 0.0) parse_fail(line_no, "timestamp '" + std::string(ts) + "' is negative");
        if (fields[0] == fields[1]) {
            ++out.self_loops_dropped;
            continue;
        }
        out.records.push_back({std::string(fields[0]), std::string(fields[1]), t});
    }
    if (in.bad()) throw Error(ErrorKind::io, "read error after line " + std::to_string(line_no));
    return out;
}

ParsedRecords read_records(const std::filesystem::path& path) {
    if (path.extension() == ".gz") {
        std::istringstream in(read_gzip(path));
        return parse_records(in);
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
    return parse_records(in);
}

std::string_view to_string(BinningMode mode) noexcept {
    switch (mode) {
        case BinningMode::equal_width: return "equal-width";
        case BinningMode::fixed_width: return "fixed-width";
        case BinningMode::explicit_boundaries: return "explicit";
    }
    return "equal-width";
}

BinningMode parse_binning_mode(std::string_view text) {
    for (auto mode : {BinningMode::equal_width, BinningMode::fixed_width, BinningMode::explicit_boundaries}) {
        if (text == to_string(mode)) return mode;
    }
    throw Error(ErrorKind::invalid_argument,
                "unknown binning mode '" + std::string(text) + "' (expected equal-width, fixed-width or explicit)");
}

std::vector<double> bin_boundaries(const DiscretizationSpec& spec, double observed_min, double observed_max) {
    if (spec.mode == BinningMode::explicit_boundaries) {
        const auto& b = spec.boundaries;
        if (b.size() < 3) throw Error(ErrorKind::invalid_argument, "explicit binning needs at least 3 boundaries (2 bins)");
        for (std::size_t i = 1; i < b.size(); ++i) {
            if (!(b[i] > b[i - 1])) throw Error(ErrorKind::invalid_argument, "bin boundaries must be strictly increasing");
        }
        return b;
    }
    const double lo = spec.range_min.value_or(observed_min);
    const double hi = spec.range_max.value_or(observed_max);
    if (!(hi > lo)) {
        throw Error(ErrorKind::invalid_argument,
                    "time range is empty (all timestamps equal?); use explicit boundaries or set the range");
    }
    std::vector<double> b;
    if (spec.mode == BinningMode::equal_width) {
        if (spec.bins < 2) throw Error(ErrorKind::invalid_argument, "bin count must be at least 2");
        const double step = (hi - lo) / static_cast<double>(spec.bins);
        for (std::size_t i = 0; i < spec.bins; ++i) b.push_back(lo + static_cast<double>(i) * step);
        b.push_back(hi);
    } else {
        if (!(spec.width > 0.0)) throw Error(ErrorKind::invalid_argument, "bin width must be positive");
        const auto bins = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / spec.width)));
        if (bins < 2) throw Error(ErrorKind::invalid_argument, "bin width covers the whole range; need at least 2 bins");
        for (std::size_t i = 0; i <= bins; ++i) b.push_back(lo + static_cast<double>(i) * spec.width);
        b.back() = std::max(b.back(), hi);
    }
    return b;
}

std::optional<std::size_t> bin_of(std::span<const double> boundaries, double t) {
    if (boundaries.size() < 2 || t < boundaries.front() || t > boundaries.back()) return std::nullopt;
    const auto interior = boundaries.subspan(1, boundaries.size() - 2);
    return static_cast<std::size_t>(std::upper_bound(interior.begin(), interior.end(), t) - interior.begin());
}

TemporalGraph discretize(const ParsedRecords& parsed, const DiscretizationSpec& spec) {
    if (parsed.records.empty()) throw Error(ErrorKind::invalid_argument, "no edge records to discretize");
    if (spec.min_multiplicity == 0) throw Error(ErrorKind::invalid_argument, "minimum multiplicity must be at least 1");
    const auto [lo_it, hi_it] = std::minmax_element(
        parsed.records.begin(), parsed.records.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    const auto boundaries = bin_boundaries(spec, lo_it->t, hi_it->t);
    const std::size_t bins = boundaries.size() - 1;

    NodeTable universe;
    for (const auto& name : parsed.declared_nodes) universe.intern(name);
    std::vector<std::map<Edge, std::size_t>> multiplicity(bins);
    for (const auto& r : parsed.records) {
        const NodeIndex u = universe.intern(r.u);
        const NodeIndex v = universe.intern(r.v);
        if (const auto bin = bin_of(boundaries, r.t)) ++multiplicity[*bin][Edge(u, v)];
    }

    std::vector<Snapshot> snapshots;
    snapshots.reserve(bins);
    for (const auto& counts : multiplicity) {
        std::vector<Edge> edges;
        for (const auto& [edge, count] : counts) {
            if (count >= spec.min_multiplicity) edges.push_back(edge);
        }
        snapshots.emplace_back(universe.size(), edges);
    }
    return TemporalGraph(std::move(universe), std::move(snapshots));
}

void write_edge_list(std::ostream& out, const TemporalGraph& graph) {
    out << "# u v t (t = snapshot index)\n";
    for (const auto& name : graph.universe().names()) out << "#!node " << name << '\n';
    for (std::size_t t = 0; t < graph.snapshot_count(); ++t) {
        for (const Edge& e : graph.snapshot(t).edges()) {
            out << graph.universe().name(e.u) << ' ' << graph.universe().name(e.v) << ' ' << t << '\n';
        }
    }
}

}  // namespace tet
