#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace infmax {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

struct Arc {
    NodeId tail;
    NodeId head;

    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

enum class EdgeMode { directed, undirected };

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);

    /// 1-based line of the offending input, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Immutable social network G = (V, A) over node ids 0..n-1.
///
/// Arcs are kept sorted by (tail, head) with self-loops and duplicates
/// removed, so arc ids are stable and every downstream sampler consumes
/// randomness in the same order. Out-adjacency is the arc array itself
/// (sliced by tail); in-adjacency is a separate arc-id index sorted by
/// (head, tail).
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds the canonical graph. Throws std::out_of_range on a bad endpoint.
    /// `labels` carries the original (external) id of every node; empty means identity.
    static DirectedGraph from_arcs(std::size_t n, std::vector<Arc> arcs,
                                   std::vector<std::int64_t> labels = {});

    std::size_t num_nodes() const noexcept { return n_; }
    std::size_t num_arcs() const noexcept { return arcs_.size(); }

    std::span<const Arc> arcs() const noexcept { return arcs_; }
    const Arc& arc(ArcId a) const { return arcs_[a]; }

    /// Arc ids leaving v; contiguous because arcs are sorted by tail.
    std::pair<ArcId, ArcId> out_range(NodeId v) const { return {out_offsets_[v], out_offsets_[v + 1]}; }
    /// Arc ids entering v, ordered by tail.
    std::span<const ArcId> in_arcs(NodeId v) const;

    std::size_t outdeg(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
    std::size_t indeg(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

    /// Original id of node v (identity unless the graph came from a parsed file).
    std::int64_t label(NodeId v) const { return labels_[v]; }
    std::span<const std::int64_t> labels() const noexcept { return labels_; }

    /// Structural equality; labels are not compared.
    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<ArcId> out_offsets_;
    std::vector<ArcId> in_offsets_;
    std::vector<ArcId> in_arcs_;
    std::vector<std::int64_t> labels_;
};

/// Reads a SNAP-style edge list: "u v [ignored]" per line, '#' comments.
/// Original ids are remapped to 0..n-1 in ascending id order.
DirectedGraph parse_edge_list(std::istream& in, EdgeMode mode = EdgeMode::directed);
DirectedGraph parse_edge_list_string(const std::string& text, EdgeMode mode = EdgeMode::directed);

/// Canonical text form: header "n m" followed by the sorted arc lines.
std::string serialize(const DirectedGraph& g);

/// Inverse of serialize (ids are taken verbatim, isolated nodes preserved).
DirectedGraph parse_canonical(std::istream& in);
DirectedGraph parse_canonical_string(const std::string& text);

}  // namespace infmax
