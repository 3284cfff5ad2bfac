#include "infmax/master.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "simplex.hpp"

namespace infmax {

CutModel::CutModel(std::size_t num_nodes, std::size_t k, std::vector<double> block_weights, double value_cap)
    : n_(num_nodes), k_(k), weights_(std::move(block_weights)), cap_(value_cap), by_block_(weights_.size()), columns_(num_nodes) {
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("block weights must be finite and >= 0");
    }
    if (!(cap_ >= 0.0)) throw std::invalid_argument("value cap must be >= 0");
}

bool CutModel::add_cut(Cut cut) {
    if (cut.block >= weights_.size()) throw std::out_of_range("cut refers to an unknown block");
    if (!std::isfinite(cut.constant)) throw std::invalid_argument("cut constant must be finite");
    for (const auto& [j, c] : cut.coeffs) {
        if (j >= n_) throw std::out_of_range("cut coefficient on an unknown node");
        if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("cut coefficients must be finite and >= 0");
    }
    const std::size_t h = hash_value(cut);
    const auto [first, last] = index_.equal_range(h);
    for (auto it = first; it != last; ++it) {
        if (cuts_[it->second] == cut) return false;
    }
    index_.emplace(h, cuts_.size());
    by_block_[cut.block].push_back(cuts_.size());
    for (const auto& [j, c] : cut.coeffs) columns_[j].emplace_back(cuts_.size(), c);
    cuts_.push_back(std::move(cut));
    return true;
}

std::vector<double> CutModel::all_rhs(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("solution size does not match the model");
    std::vector<double> rhs(cuts_.size());
    for (std::size_t c = 0; c < cuts_.size(); ++c) rhs[c] = cuts_[c].constant;
    for (NodeId j = 0; j < n_; ++j) {
        if (x[j] == 0.0) continue;
        for (const auto& [c, a] : columns_[j]) rhs[c] += a * x[j];
    }
    return rhs;
}

double CutModel::block_value_from_rhs(std::size_t block, std::span<const double> rhs) const {
    double value = cap_;
    for (std::size_t c : by_block_[block]) value = std::min(value, rhs[c]);
    return std::max(value, 0.0);
}

double CutModel::block_value(std::size_t block, std::span<const double> x) const {
    double value = cap_;
    for (std::size_t c : by_block_[block]) value = std::min(value, cuts_[c].rhs(x));
    return std::max(value, 0.0);
}

double CutModel::block_value(std::size_t block, std::span<const std::uint8_t> x) const {
    double value = cap_;
    for (std::size_t c : by_block_[block]) value = std::min(value, cuts_[c].rhs(x));
    return std::max(value, 0.0);
}

CutModel::Evaluation CutModel::evaluate(std::span<const std::uint8_t> x) const {
    if (x.size() != n_) throw std::invalid_argument("solution size does not match the model");
    std::vector<double> dense(x.begin(), x.end());
    const auto rhs = all_rhs(dense);
    Evaluation ev;
    ev.theta.resize(weights_.size());
    long double total = 0.0L;
    for (std::size_t b = 0; b < weights_.size(); ++b) {
        ev.theta[b] = block_value_from_rhs(b, rhs);
        total += static_cast<long double>(weights_[b]) * ev.theta[b];
    }
    ev.objective = static_cast<double>(total);
    return ev;
}

namespace {

constexpr double kIntegralityTol = 1e-9;

// Blocks share one value column per group. With few blocks every block is
// its own group; with many the LP would have one column and at least one row
// per block, so blocks are pooled.
constexpr std::size_t kMaxGroups = 32;
// A pooled row unused by this many consecutive node solves is dropped.
constexpr std::size_t kMaxIdle = 8;

// LP relaxation over lazily generated rows. A row for group g is
//   theta_g <= sum_{b in g} p_b * piece_b(x),
// where piece_b is one of the block's cuts or the constant cap. Every such row
// is valid for all x, so the pool survives across branch-and-bound nodes, and
// the loop stops only when theta_g equals the true group value at x.
class Relaxation {
public:
    explicit Relaxation(const CutModel& model) : model_(model), lp_(make_lp(model, groups_, group_cap_)) {
        seen_.resize(groups_.size());
        lo_.assign(model.num_nodes(), 0.0);
        hi_.assign(model.num_nodes(), 1.0);
        detail::WarmSimplex::SparseRow card;
        for (NodeId j = 0; j < model.num_nodes(); ++j) card.emplace_back(j, 1.0);
        lp_.add_row(std::move(card), static_cast<double>(model.k()));
    }

    LpRelaxation solve(const Fixing& fixing) {
        const std::size_t n = model_.num_nodes();
        std::vector<double> lo(n, 0.0);
        std::vector<double> hi(n, 1.0);
        std::size_t ones = 0;
        for (std::size_t j = 0; j < fixing.size(); ++j) {
            if (fixing[j] == 0) hi[j] = 0.0;
            if (fixing[j] == 1) {
                lo[j] = 1.0;
                ++ones;
            }
        }
        if (ones > model_.k()) throw std::invalid_argument("fixing exceeds the cardinality bound");
        for (std::size_t j = 0; j < n; ++j) {
            if (lo[j] != lo_[j] || hi[j] != hi_[j]) lp_.set_bounds(j, lo[j], hi[j]);
        }
        lo_ = lo;
        hi_ = hi;

        purge();
        if (rows_.empty()) {
            const auto rhs = model_.all_rhs(lo);
            for (std::size_t g = 0; g < groups_.size(); ++g) separate(g, rhs, std::numeric_limits<double>::infinity());
        }

        for (;;) {
            ++solves_;
            const auto res = lp_.solve();
            if (!res.optimal) throw std::runtime_error("master LP did not reach optimality");
            std::span<const double> x(res.y.data(), n);
            bool added = false;
            const auto rhs = model_.all_rhs(x);
            for (std::size_t g = 0; g < groups_.size(); ++g) added |= separate(g, rhs, res.y[n + g]);
            if (added) continue;

            LpRelaxation out;
            out.x.assign(x.begin(), x.end());
            out.theta.resize(model_.num_blocks());
            for (std::size_t b = 0; b < model_.num_blocks(); ++b) out.theta[b] = model_.block_value_from_rhs(b, rhs);
            out.value = res.value;
            for (auto& row : rows_) {
                double activity = res.y[n + row.group];
                for (const auto& [j, c] : row.coeffs) activity -= c * x[j];
                row.idle = activity >= row.constant - 1e-7 ? 0 : row.idle + 1;
            }
            return out;
        }
    }

    std::size_t solves() const noexcept { return solves_; }

private:
    struct Row {
        std::size_t group = 0;
        double constant = 0.0;
        std::vector<std::pair<NodeId, double>> coeffs;
        std::vector<std::size_t> pieces;
        std::size_t idle = 0;
        std::size_t lp_id = 0;
    };

    static detail::WarmSimplex make_lp(const CutModel& model, std::vector<std::pair<std::size_t, std::size_t>>& groups,
                                       std::vector<double>& group_cap) {
        const std::size_t n = model.num_nodes();
        const std::size_t blocks = model.num_blocks();
        const std::size_t count = std::min(blocks, kMaxGroups);
        for (std::size_t g = 0; g < count; ++g) groups.emplace_back(g * blocks / count, (g + 1) * blocks / count);
        group_cap.assign(count, 0.0);
        for (std::size_t g = 0; g < count; ++g) {
            for (std::size_t b = groups[g].first; b < groups[g].second; ++b) group_cap[g] += model.weight(b) * model.value_cap();
        }
        std::vector<double> c(n + count, 0.0);
        std::vector<double> lo(n + count, 0.0);
        std::vector<double> hi(n, 1.0);
        std::fill(c.begin() + static_cast<std::ptrdiff_t>(n), c.end(), 1.0);
        hi.insert(hi.end(), group_cap.begin(), group_cap.end());
        return detail::WarmSimplex(std::move(c), std::move(lo), std::move(hi));
    }

    static constexpr std::size_t kCapPiece = std::numeric_limits<std::size_t>::max();

    // Adds the row binding at x (given as all_rhs(x)) for group g if theta exceeds the group value there.
    bool separate(std::size_t g, std::span<const double> rhs, double theta) {
        const auto [first, last] = groups_[g];
        std::vector<std::size_t> pieces;
        pieces.reserve(last - first);
        long double value = 0.0L;
        for (std::size_t b = first; b < last; ++b) {
            std::size_t pick = kCapPiece;
            double best = model_.value_cap();
            for (std::size_t c : model_.block_cuts(b)) {
                const double r = rhs[c];
                if (r < best) {
                    best = r;
                    pick = c;
                }
            }
            pieces.push_back(pick);
            value += static_cast<long double>(model_.weight(b)) * best;
        }
        if (theta <= static_cast<double>(value) + 1e-9 * std::max(1.0, std::abs(theta))) return false;
        if (!seen_[g].insert(pieces).second) return false;

        std::vector<long double> dense(model_.num_nodes(), 0.0L);
        long double constant = 0.0L;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const auto w = static_cast<long double>(model_.weight(first + i));
            if (pieces[i] == kCapPiece) {
                constant += w * model_.value_cap();
                continue;
            }
            const Cut& cut = model_.cuts()[pieces[i]];
            constant += w * cut.constant;
            for (const auto& [j, c] : cut.coeffs) dense[j] += w * c;
        }
        Row row;
        row.group = g;
        row.constant = static_cast<double>(constant);
        for (NodeId j = 0; j < dense.size(); ++j) {
            if (dense[j] != 0.0L) row.coeffs.emplace_back(j, static_cast<double>(dense[j]));
        }
        row.pieces = std::move(pieces);
        detail::WarmSimplex::SparseRow sparse{{model_.num_nodes() + g, 1.0}};
        for (const auto& [j, c] : row.coeffs) sparse.emplace_back(j, -c);
        row.lp_id = lp_.add_row(std::move(sparse), row.constant);
        rows_.push_back(std::move(row));
        return true;
    }

    void purge() {
        std::vector<Row> kept;
        for (auto& row : rows_) {
            if (row.idle < kMaxIdle || !lp_.remove_row(row.lp_id)) {
                kept.push_back(std::move(row));
            } else {
                seen_[row.group].erase(row.pieces);
            }
        }
        rows_ = std::move(kept);
    }

    const CutModel& model_;
    std::vector<std::pair<std::size_t, std::size_t>> groups_;
    std::vector<double> group_cap_;
    detail::WarmSimplex lp_;
    std::vector<double> lo_;
    std::vector<double> hi_;
    std::vector<Row> rows_;
    std::vector<std::set<std::vector<std::size_t>>> seen_;
    std::size_t solves_ = 0;
};

bool is_integral(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(),
                       [](double v) { return v <= kIntegralityTol || v >= 1.0 - kIntegralityTol; });
}

// Fixed ones plus the k - |ones| largest free values (ties to the lowest id).
std::vector<std::uint8_t> round_top_k(std::span<const double> x, const Fixing& fixing, std::size_t k) {
    const std::size_t n = x.size();
    std::vector<std::uint8_t> out(n, 0);
    std::vector<std::size_t> free;
    std::size_t ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::int8_t f = fixing.empty() ? -1 : fixing[j];
        if (f == 1) {
            out[j] = 1;
            ++ones;
        } else if (f == -1) {
            free.push_back(j);
        }
    }
    const std::size_t take = std::min(free.size(), k > ones ? k - ones : 0);
    std::stable_sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    for (std::size_t i = 0; i < take; ++i) out[free[i]] = 1;
    return out;
}

struct Node {
    double bound;
    std::size_t depth;
    std::size_t seq;
    Fixing fixing;
    std::vector<double> x;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.seq > b.seq;
    }
};

double choose(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// Cut right-hand sides are nondecreasing in x, so only sets of exactly k nodes
// need checking. Sets are visited in lexicographic order; the first best wins.
void enumerate_master(const CutModel& model, MasterSolution& best) {
    const std::size_t n = model.num_nodes();
    const std::size_t k = std::min(model.k(), n);
    const auto cuts = model.cuts();
    std::vector<std::vector<std::pair<std::size_t, double>>> column(n);
    std::vector<double> rhs(cuts.size());
    for (std::size_t c = 0; c < cuts.size(); ++c) {
        rhs[c] = cuts[c].constant;
        for (const auto& [j, a] : cuts[c].coeffs) column[j].emplace_back(c, a);
    }
    std::vector<std::uint8_t> x(n, 0);
    std::vector<double> theta(model.num_blocks());
    auto leaf = [&] {
        ++best.nodes;
        long double total = 0.0L;
        for (std::size_t b = 0; b < model.num_blocks(); ++b) {
            double v = model.value_cap();
            for (std::size_t c : model.block_cuts(b)) v = std::min(v, rhs[c]);
            theta[b] = std::max(0.0, v);
            total += static_cast<long double>(model.weight(b)) * theta[b];
        }
        const auto value = static_cast<double>(total);
        if (value > best.objective + 1e-12) {
            best.objective = value;
            best.x = x;
            best.theta = theta;
        }
    };
    auto walk = [&](auto&& self, std::size_t from, std::size_t left) -> void {
        if (left == 0) {
            leaf();
            return;
        }
        for (std::size_t j = from; j + left <= n; ++j) {
            x[j] = 1;
            for (const auto& [c, a] : column[j]) rhs[c] += a;
            self(self, j + 1, left - 1);
            for (const auto& [c, a] : column[j]) rhs[c] -= a;
            x[j] = 0;
        }
    };
    walk(walk, 0, k);
    best.bound = best.objective;
    best.rel_gap = 0.0;
    best.optimal = true;
}

}  // namespace

LpRelaxation solve_lp_relaxation(const CutModel& model, const Fixing& fixing) {
    if (!fixing.empty() && fixing.size() != model.num_nodes()) throw std::invalid_argument("fixing size mismatch");
    Relaxation relaxation(model);
    return relaxation.solve(fixing);
}

MasterSolution solve_master(const CutModel& model, const MasterOptions& options) {
    if (!(options.rel_gap >= 0.0)) throw std::invalid_argument("relative gap target must be >= 0");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = model.num_nodes();
    const std::size_t k = model.k();

    // Any k nodes make a feasible start; spread is monotone so there is no reason to take fewer.
    MasterSolution best;
    best.x.assign(n, 0);
    std::fill_n(best.x.begin(), std::min(k, n), std::uint8_t{1});
    auto ev0 = model.evaluate(best.x);
    best.theta = std::move(ev0.theta);
    best.objective = ev0.objective;

    auto offer = [&](std::vector<std::uint8_t> x) {
        auto ev = model.evaluate(x);
        if (ev.objective > best.objective + 1e-12) {
            best.x = std::move(x);
            best.theta = std::move(ev.theta);
            best.objective = ev.objective;
        }
    };
    if (options.incumbent_hint) {
        const auto& hint = *options.incumbent_hint;
        if (hint.size() != n) throw std::invalid_argument("incumbent hint size mismatch");
        if (static_cast<std::size_t>(std::count(hint.begin(), hint.end(), 1)) <= k) offer(hint);
    }

    if (options.enumeration_limit > 0 && choose(n, std::min(k, n)) <= static_cast<double>(options.enumeration_limit)) {
        enumerate_master(model, best);
        return best;
    }

    auto allowance = [&] { return std::max(1e-9, options.rel_gap * std::max(best.objective, 1e-12)); };

    Relaxation relaxation(model);
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::size_t seq = 0;
    double pruned_bound = -std::numeric_limits<double>::infinity();

    auto visit = [&](Fixing fixing, std::size_t depth) {
        ++best.nodes;
        auto lp = relaxation.solve(fixing);
        offer(round_top_k(lp.x, fixing, k));
        if (is_integral(lp.x)) return;
        if (lp.value <= best.objective + allowance()) {
            pruned_bound = std::max(pruned_bound, lp.value);
            return;
        }
        open.push(Node{lp.value, depth, seq++, std::move(fixing), std::move(lp.x)});
    };

    visit(Fixing(n, -1), 0);
    bool stopped = false;
    while (!open.empty()) {
        if (open.top().bound <= best.objective + allowance()) {
            pruned_bound = std::max(pruned_bound, open.top().bound);
            break;
        }
        if (best.nodes >= options.node_limit) {
            stopped = true;
            break;
        }
        if (options.time_limit_seconds > 0.0) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            if (elapsed.count() > options.time_limit_seconds) {
                stopped = true;
                break;
            }
        }
        Node node = open.top();
        open.pop();

        std::size_t branch = n;
        double closest = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (node.fixing[j] != -1) continue;
            const double frac = std::abs(node.x[j] - 0.5);
            if (node.x[j] > kIntegralityTol && node.x[j] < 1.0 - kIntegralityTol && frac < closest - 1e-12) {
                closest = frac;
                branch = j;
            }
        }
        if (branch == n) continue;

        const auto ones = static_cast<std::size_t>(std::count(node.fixing.begin(), node.fixing.end(), 1));
        if (ones < k) {
            Fixing up = node.fixing;
            up[branch] = 1;
            visit(std::move(up), node.depth + 1);
        }
        Fixing down = std::move(node.fixing);
        down[branch] = 0;
        visit(std::move(down), node.depth + 1);
    }

    double bound = std::max(best.objective, pruned_bound);
    if (stopped && !open.empty()) bound = std::max(bound, open.top().bound);
    best.bound = bound;
    best.rel_gap = (best.bound - best.objective) / std::max(best.objective, 1e-12);
    best.optimal = !stopped;
    best.lp_solves = relaxation.solves();
    return best;
}

}  // namespace infmax
