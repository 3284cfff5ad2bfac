#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infmax/influence.hpp"

namespace infmax {

enum class CutFamily { submodular, empty_set, combinatorial, lshaped, lshaped_strengthened };

std::string to_string(CutFamily family);
CutFamily cut_family_from_string(const std::string& s);

/// Facet classification of a submodular cut (reporting only).
enum class FacetClass { unknown, facet, not_facet };

/// theta_block <= constant + sum_j coeff_j x_j.
///
/// `block` is the scenario index for per-scenario cuts, or 0 for the
/// probability-weighted aggregate cuts of a single-cut model.
struct Cut {
    std::size_t block = 0;
    double constant = 0.0;
    /// Sorted by node id, strictly positive coefficients only.
    std::vector<std::pair<NodeId, double>> coeffs;
    CutFamily family = CutFamily::submodular;
    std::vector<NodeId> generator;
    FacetClass facet = FacetClass::unknown;

    double rhs(std::span<const double> x) const;
    double rhs(std::span<const std::uint8_t> x) const;
    /// Coefficient of x_j (0 when absent).
    double coeff(NodeId j) const;

    friend bool operator==(const Cut& a, const Cut& b) {
        return a.block == b.block && a.family == b.family && a.constant == b.constant && a.coeffs == b.coeffs;
    }
};

/// Hash over (block, family, constant, coefficients); consistent with operator==.
std::size_t hash_value(const Cut& cut);

/// "scenario family c0 j1:c1 j2:c2 ..."
std::string format_cut(const Cut& cut);
Cut parse_cut(const std::string& text);

/// theta <= sigma(S) + sum_{j in barR(S)} r_j(S) x_j; family empty_set when S is empty.
Cut submodular_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator);

/// theta <= sigma(S) + sum_{j in barR(S)} n x_j.
Cut combinatorial_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator);

/// Integer L-shaped cut: theta <= sigma(S) + sum_{j notin S} (n - sigma(S)) x_j.
Cut lshaped_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator);

/// Strengthened L-shaped cut: same constant, support restricted to barR(S).
Cut strengthened_lshaped_cut(const ReachProfile& profile, std::size_t scenario_index, const SeedSet& generator);

struct FacetVerdict {
    enum class Status { pass, fail_root_member, fail_root_cover };
    Status status = Status::pass;
    /// The normalized set hatR(S) the verdict refers to.
    std::vector<NodeId> normalized;
    /// fail_root_member: a root in the normalized set.
    NodeId witness = 0;
    /// Smallest number of roots whose reach covers the normalized set, filled
    /// when condition (i) holds; SIZE_MAX when fewer than k roots cannot cover it.
    std::size_t min_root_cover = 0;
};

/// Thrown when an exact check would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Necessary facet conditions for the submodular cut of S (after replacing S
/// by S + R(S)): no member is a root of the live graph, and fewer than k roots
/// reach every member. The root cover question is solved exactly.
FacetVerdict check_facet_necessity(const Scenario& scenario, const SeedSet& seeds, std::size_t k,
                                   std::size_t node_budget = 10'000'000);

/// Known facet status: facet for S empty, or |S| = 1 with the necessary
/// conditions and k >= 2; not_facet when a necessary condition fails.
FacetClass classify_submodular_cut(const Scenario& scenario, const SeedSet& seeds, std::size_t k);

/// Removes roots from hatR(S) one at a time (each step replaces the cut by a
/// dominating one) and returns the submodular cut of the reduced set.
Cut strengthen_cut(const Scenario& scenario, std::size_t scenario_index, const SeedSet& seeds, std::size_t k);

}  // namespace infmax
