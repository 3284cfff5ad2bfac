#include "infmax/cuts.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace infmax {

std::string to_string(CutFamily family) {
    switch (family) {
        case CutFamily::submodular: return "submodular";
        case CutFamily::empty_set: return "empty_set";
        case CutFamily::combinatorial: return "combinatorial";
        case CutFamily::lshaped: return "lshaped";
        case CutFamily::lshaped_strengthened: return "lshaped_strengthened";
    }
    return "unknown";
}

CutFamily cut_family_from_string(const std::string& s) {
    for (auto f : {CutFamily::submodular, CutFamily::empty_set, CutFamily::combinatorial, CutFamily::lshaped,
                   CutFamily::lshaped_strengthened}) {
        if (to_string(f) == s) return f;
    }
    throw std::invalid_argument("unknown cut family '" + s + "'");
}

double Cut::rhs(std::span<const double> x) const {
    double value = constant;
    for (const auto& [j, c] : coeffs) value += c * x[j];
    return value;
}

double Cut::rhs(std::span<const std::uint8_t> x) const {
    double value = constant;
    for (const auto& [j, c] : coeffs) {
        if (x[j]) value += c;
    }
    return value;
}

double Cut::coeff(NodeId j) const {
    const auto it = std::lower_bound(coeffs.begin(), coeffs.end(), j,
                                     [](const auto& entry, NodeId node) { return entry.first < node; });
    return it != coeffs.end() && it->first == j ? it->second : 0.0;
}

std::size_t hash_value(const Cut& cut) {
    auto mix = [](std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
    std::size_t h = mix(cut.block, static_cast<std::size_t>(cut.family));
    h = mix(h, std::hash<double>{}(cut.constant));
    for (const auto& [j, c] : cut.coeffs) h = mix(mix(h, j), std::hash<double>{}(c));
    return h;
}

namespace {

std::string shortest(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument("malformed number '" + std::string(token) + "'");
    }
    return v;
}

Cut make_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator, CutFamily family,
             const std::function<double(NodeId)>& coefficient, bool restrict_to_unreached) {
    Cut cut;
    cut.block = scenario_index;
    cut.constant = static_cast<double>(profile.sigma);
    cut.family = family;
    cut.generator.assign(generator.members().begin(), generator.members().end());
    if (restrict_to_unreached) {
        for (NodeId j : profile.unreached) {
            const double c = coefficient(j);
            if (c > 0.0) cut.coeffs.emplace_back(j, c);
        }
    } else {
        for (NodeId j = 0; j < profile.num_nodes(); ++j) {
            if (generator.contains(j)) continue;
            const double c = coefficient(j);
            if (c > 0.0) cut.coeffs.emplace_back(j, c);
        }
    }
    return cut;
}

}  // namespace

std::string format_cut(const Cut& cut) {
    std::string out = std::to_string(cut.block) + ' ' + to_string(cut.family) + ' ' + shortest(cut.constant);
    for (const auto& [j, c] : cut.coeffs) out += ' ' + std::to_string(j) + ':' + shortest(c);
    return out;
}

Cut parse_cut(const std::string& text) {
    std::istringstream in(text);
    std::string block;
    std::string family;
    std::string constant;
    if (!(in >> block >> family >> constant)) throw std::invalid_argument("cut needs 'scenario family c0'");
    Cut cut;
    cut.block = std::stoull(block);
    cut.family = cut_family_from_string(family);
    cut.constant = parse_double(constant);
    std::string term;
    while (in >> term) {
        const auto colon = term.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("cut term must be 'node:coefficient'");
        const auto node = static_cast<NodeId>(std::stoul(term.substr(0, colon)));
        if (!cut.coeffs.empty() && node <= cut.coeffs.back().first) {
            throw std::invalid_argument("cut terms must be sorted by node");
        }
        cut.coeffs.emplace_back(node, parse_double(std::string_view(term).substr(colon + 1)));
    }
    return cut;
}

Cut submodular_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator) {
    const auto family = generator.empty() ? CutFamily::empty_set : CutFamily::submodular;
    return make_cut(
        profile, scenario_index, generator, family, [&](NodeId j) { return static_cast<double>(profile.gain[j]); },
        true);
}

Cut combinatorial_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator) {
    const auto n = static_cast<double>(profile.num_nodes());
    return make_cut(profile, scenario_index, generator, CutFamily::combinatorial, [n](NodeId) { return n; }, true);
}

Cut lshaped_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator) {
    const auto slack = static_cast<double>(profile.num_nodes() - profile.sigma);
    return make_cut(profile, scenario_index, generator, CutFamily::lshaped, [slack](NodeId) { return slack; }, false);
}

Cut strengthened_lshaped_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator) {
    const auto slack = static_cast<double>(profile.num_nodes() - profile.sigma);
    return make_cut(profile, scenario_index, generator, CutFamily::lshaped_strengthened,
                    [slack](NodeId) { return slack; }, true);
}

namespace {

// Is there a choice of at most `depth` candidate sets covering every element of `uncovered`?
bool cover_within(const std::vector<std::vector<std::uint32_t>>& covering, std::vector<std::uint32_t>& cover_count,
                  const std::vector<std::vector<std::uint32_t>>& sets, std::size_t depth, std::size_t& budget) {
    if (budget == 0) throw BudgetExceeded("root cover search exceeded its node budget");
    --budget;
    // Branch on the uncovered element with the fewest candidate roots.
    std::size_t pick = covering.size();
    for (std::size_t e = 0; e < covering.size(); ++e) {
        if (cover_count[e] > 0) continue;
        if (pick == covering.size() || covering[e].size() < covering[pick].size()) pick = e;
    }
    if (pick == covering.size()) return true;
    if (depth == 0 || covering[pick].empty()) return false;
    for (std::uint32_t root : covering[pick]) {
        for (std::uint32_t e : sets[root]) ++cover_count[e];
        const bool ok = cover_within(covering, cover_count, sets, depth - 1, budget);
        for (std::uint32_t e : sets[root]) --cover_count[e];
        if (ok) return true;
    }
    return false;
}

}  // namespace

FacetVerdict check_facet_necessity(const Scenario& scenario, const SeedSet& seeds, std::size_t k,
                                   std::size_t node_budget) {
    FacetVerdict verdict;
    const auto reached = reached_nodes(scenario, seeds);
    for (NodeId v = 0; v < scenario.num_nodes(); ++v) {
        if (reached[v]) verdict.normalized.push_back(v);
    }
    const auto indeg = scenario.live_indegrees();
    for (NodeId v : verdict.normalized) {
        if (indeg[v] == 0) {
            verdict.status = FacetVerdict::Status::fail_root_member;
            verdict.witness = v;
            return verdict;
        }
    }

    // Element e of the normalized set -> candidate roots reaching it.
    std::vector<std::uint32_t> position(scenario.num_nodes(), std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < verdict.normalized.size(); ++i) position[verdict.normalized[i]] = i;
    std::vector<std::vector<std::uint32_t>> sets;
    std::vector<std::vector<std::uint32_t>> covering(verdict.normalized.size());
    for (NodeId root = 0; root < scenario.num_nodes(); ++root) {
        if (indeg[root] != 0) continue;
        const auto reach = reached_nodes(scenario, SeedSet{root});
        std::vector<std::uint32_t> hits;
        for (NodeId v = 0; v < scenario.num_nodes(); ++v) {
            if (reach[v] && v != root && position[v] != std::numeric_limits<std::uint32_t>::max()) {
                hits.push_back(position[v]);
            }
        }
        if (hits.empty()) continue;
        const auto id = static_cast<std::uint32_t>(sets.size());
        for (std::uint32_t e : hits) covering[e].push_back(id);
        sets.push_back(std::move(hits));
    }

    std::vector<std::uint32_t> cover_count(verdict.normalized.size(), 0);
    std::size_t budget = node_budget;
    verdict.min_root_cover = std::numeric_limits<std::size_t>::max();
    for (std::size_t size = 0; size < k; ++size) {
        if (cover_within(covering, cover_count, sets, size, budget)) {
            verdict.min_root_cover = size;
            break;
        }
    }
    if (verdict.min_root_cover == std::numeric_limits<std::size_t>::max()) {
        verdict.status = FacetVerdict::Status::fail_root_cover;
    }
    return verdict;
}

FacetClass classify_submodular_cut(const Scenario& scenario, const SeedSet& seeds, std::size_t k) {
    if (seeds.empty()) return FacetClass::facet;
    const auto verdict = check_facet_necessity(scenario, seeds, k);
    if (verdict.status != FacetVerdict::Status::pass) return FacetClass::not_facet;
    if (verdict.normalized.size() == 1 && k >= 2) return FacetClass::facet;
    return FacetClass::unknown;
}

Cut strengthen_cut(const Scenario& scenario, std::size_t scenario_index, const SeedSet& seeds, std::size_t /*k*/) {
    const auto reached = reached_nodes(scenario, seeds);
    const auto indeg = scenario.live_indegrees();
    std::vector<NodeId> current;
    for (NodeId v = 0; v < scenario.num_nodes(); ++v) {
        if (reached[v]) current.push_back(v);
    }
    // A root i of the normalized set has R({i}) inside it, so dropping i lowers
    // sigma by exactly one and leaves every other coefficient unchanged.
    for (;;) {
        const auto root = std::find_if(current.begin(), current.end(), [&](NodeId v) { return indeg[v] == 0; });
        if (root == current.end()) break;
        current.erase(root);
    }
    const SeedSet reduced(std::move(current));
    return submodular_cut(reach_profile(scenario, reduced), scenario_index, reduced);
}

}  // namespace infmax
