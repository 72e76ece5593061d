#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tet/graph.hpp"

namespace tet {

struct TemporalEdgeRecord {
    std::string u;
    std::string v;
    double t{};
};

struct ParsedRecords {
    std::vector<TemporalEdgeRecord> records;
    std::size_t self_loops_dropped{0};
    /// Nodes from `#!node <name>` directives, in file order.
    std::vector<std::string> declared_nodes;
};

/// Reads `u v t` records, one per line, separated by whitespace and/or commas.
/// Blank lines and `#` comments are skipped; `#!node <name>` declares a node
/// that may have no edges. Throws ErrorKind::parse with the line number.
ParsedRecords parse_records(std::istream& in);

/// Like parse_records, reading gzip input when the path ends in ".gz".
ParsedRecords read_records(const std::filesystem::path& path);

enum class BinningMode { equal_width, fixed_width, explicit_boundaries };

std::string_view to_string(BinningMode mode) noexcept;
BinningMode parse_binning_mode(std::string_view text);

struct DiscretizationSpec {
    BinningMode mode{BinningMode::equal_width};
    std::size_t bins{0};             // equal_width
    double width{0.0};               // fixed_width
    std::vector<double> boundaries;  // explicit_boundaries: b0 < b1 < ... < bB
    /// Time range; defaults to the observed minimum / maximum.
    std::optional<double> range_min;
    std::optional<double> range_max;
    /// Keep an edge in a bin only if it occurs at least this often there.
    std::size_t min_multiplicity{1};
};

/// Bin boundaries b0..bB for the given spec and observed time range.
std::vector<double> bin_boundaries(const DiscretizationSpec& spec, double observed_min, double observed_max);

/// Bin of timestamp t: half-open [b_i, b_{i+1}) except the last bin, which is
/// closed. nullopt when t falls outside [b0, bB].
std::optional<std::size_t> bin_of(std::span<const double> boundaries, double t);

/// Snapshot b holds {u, v} iff some record with t in bin b joins u and v.
/// Declared nodes come first in the universe, then nodes by first appearance.
/// Records outside the range are dropped.
TemporalGraph discretize(const ParsedRecords& parsed, const DiscretizationSpec& spec);

/// Writes `#!node` declarations for every node in index order, then one
/// `u v t` line per edge with t = snapshot index.
void write_edge_list(std::ostream& out, const TemporalGraph& graph);

}  // namespace tet
