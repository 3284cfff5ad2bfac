#include "infmax/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace infmax {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

DirectedGraph DirectedGraph::from_arcs(std::size_t n, std::vector<Arc> arcs,
                                       std::vector<std::int64_t> labels) {
    for (const Arc& a : arcs) {
        if (a.tail >= n || a.head >= n) {
            throw std::out_of_range("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                                    ") has an endpoint outside [0, " + std::to_string(n) + ")");
        }
    }
    if (!labels.empty() && labels.size() != n) {
        throw std::invalid_argument("label table size does not match node count");
    }

    std::erase_if(arcs, [](const Arc& a) { return a.tail == a.head; });
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    DirectedGraph g;
    g.n_ = n;
    g.arcs_ = std::move(arcs);
    if (labels.empty()) {
        labels.resize(n);
        std::iota(labels.begin(), labels.end(), std::int64_t{0});
    }
    g.labels_ = std::move(labels);

    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const Arc& a : g.arcs_) {
        ++g.out_offsets_[a.tail + 1];
        ++g.in_offsets_[a.head + 1];
    }
    std::partial_sum(g.out_offsets_.begin(), g.out_offsets_.end(), g.out_offsets_.begin());
    std::partial_sum(g.in_offsets_.begin(), g.in_offsets_.end(), g.in_offsets_.begin());

    // Arcs are sorted by tail, so a stable fill by head yields (head, tail) order.
    g.in_arcs_.resize(g.arcs_.size());
    std::vector<ArcId> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (ArcId id = 0; id < g.arcs_.size(); ++id) {
        g.in_arcs_[cursor[g.arcs_[id].head]++] = id;
    }
    return g;
}

std::span<const ArcId> DirectedGraph::in_arcs(NodeId v) const {
    return std::span<const ArcId>(in_arcs_).subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
}

namespace {

// Splits a line into whitespace-separated tokens; returns false on a comment/blank line.
bool tokenize(const std::string& line, std::vector<std::string_view>& tokens) {
    tokens.clear();
    std::string_view rest(line);
    while (!rest.empty()) {
        const auto start = rest.find_first_not_of(" \t\r,");
        if (start == std::string_view::npos) break;
        rest.remove_prefix(start);
        const auto stop = rest.find_first_of(" \t\r,");
        tokens.push_back(rest.substr(0, stop));
        if (stop == std::string_view::npos) break;
        rest.remove_prefix(stop);
    }
    return !tokens.empty() && tokens.front().front() != '#' && tokens.front().front() != '%';
}

std::int64_t parse_id(std::string_view token, std::size_t line_no) {
    std::int64_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line_no, "malformed node id '" + std::string(token) + "'");
    }
    return value;
}

void check_extra_column(std::string_view token, std::size_t line_no) {
    double ignored = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, ignored);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line_no, "malformed third column '" + std::string(token) + "'");
    }
}

}  // namespace

DirectedGraph parse_edge_list(std::istream& in, EdgeMode mode) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::string line;
    std::vector<std::string_view> tokens;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!tokenize(line, tokens)) continue;
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw ParseError(line_no, "expected 'u v' or 'u v w', got " + std::to_string(tokens.size()) + " tokens");
        }
        const auto u = parse_id(tokens[0], line_no);
        const auto v = parse_id(tokens[1], line_no);
        if (tokens.size() == 3) check_extra_column(tokens[2], line_no);
        raw.emplace_back(u, v);
    }
    if (raw.empty()) throw ParseError(0, "edge list contains no arcs");

    std::vector<std::int64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [u, v] : raw) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::unordered_map<std::int64_t, NodeId> remap;
    remap.reserve(ids.size());
    for (NodeId i = 0; i < ids.size(); ++i) remap.emplace(ids[i], i);

    std::vector<Arc> arcs;
    arcs.reserve(mode == EdgeMode::undirected ? raw.size() * 2 : raw.size());
    for (const auto& [u, v] : raw) {
        const Arc a{remap.at(u), remap.at(v)};
        arcs.push_back(a);
        if (mode == EdgeMode::undirected) arcs.push_back({a.head, a.tail});
    }
    const std::size_t n = ids.size();
    return DirectedGraph::from_arcs(n, std::move(arcs), std::move(ids));
}

DirectedGraph parse_edge_list_string(const std::string& text, EdgeMode mode) {
    std::istringstream in(text);
    return parse_edge_list(in, mode);
}

std::string serialize(const DirectedGraph& g) {
    std::ostringstream out;
    out << g.num_nodes() << ' ' << g.num_arcs() << '\n';
    for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << '\n';
    return out.str();
}

DirectedGraph parse_canonical(std::istream& in) {
    std::string line;
    std::vector<std::string_view> tokens;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Arc> arcs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!tokenize(line, tokens)) continue;
        if (tokens.size() != 2) throw ParseError(line_no, "expected two integers");
        const auto a = parse_id(tokens[0], line_no);
        const auto b = parse_id(tokens[1], line_no);
        if (a < 0 || b < 0) throw ParseError(line_no, "negative value");
        if (!have_header) {
            n = static_cast<std::size_t>(a);
            m = static_cast<std::size_t>(b);
            have_header = true;
            continue;
        }
        if (static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
            throw ParseError(line_no, "arc endpoint outside [0, n)");
        }
        arcs.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
    if (!have_header) throw ParseError(0, "missing 'n m' header");
    if (arcs.size() != m) {
        throw ParseError(0, "header announces " + std::to_string(m) + " arcs, found " + std::to_string(arcs.size()));
    }
    return DirectedGraph::from_arcs(n, std::move(arcs));
}

DirectedGraph parse_canonical_string(const std::string& text) {
    std::istringstream in(text);
    return parse_canonical(in);
}

}  // namespace infmax
