#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace infmax::detail {

/// maximize c.y  s.t.  A y <= b,  lo <= y <= hi  (dense, row-major A).
///
/// The starting point puts every structural variable at its lower bound and
/// needs b - A lo >= 0; the cut models of the master problem always satisfy
/// this, so no phase one is implemented.
struct DenseLp {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> lo;
    std::vector<double> hi;
};

struct LpResult {
    bool optimal = false;
    std::vector<double> y;
    double value = 0.0;
    std::size_t pivots = 0;
};

LpResult solve_bounded_simplex(const DenseLp& lp, std::size_t max_pivots = 1'000'000);

/// Same problem kept alive between solves. Rows can be added or dropped and
/// bounds changed; the next solve starts from the previous basis with dual
/// simplex pivots, falling back to a cold primal solve when that fails.
/// The lower-bound start must stay feasible (b - A lo >= 0) for the fallback.
class WarmSimplex {
public:
    using SparseRow = std::vector<std::pair<std::size_t, double>>;

    WarmSimplex(std::vector<double> c, std::vector<double> lo, std::vector<double> hi);

    /// Returns an id for remove_row.
    std::size_t add_row(SparseRow coeffs, double b);
    /// Drops a row whose slack is basic; returns false (row kept) otherwise.
    bool remove_row(std::size_t id);
    void set_bounds(std::size_t j, double lo, double hi);

    LpResult solve(std::size_t max_pivots = 1'000'000);

    std::size_t num_rows() const noexcept { return basis_.size(); }
    /// Solves that had to restart from the slack basis.
    std::size_t cold_starts() const noexcept { return cold_starts_; }

private:
    struct Row {
        SparseRow coeffs;
        double b = 0.0;
        std::size_t slack = 0;  // variable index
        bool alive = true;
    };

    void cold_start();
    void pivot(std::size_t r, std::size_t q);
    double value_of(std::size_t var) const;
    bool primal_phase(std::size_t& budget);
    // 1 optimal/feasible, 0 gave up, -1 infeasible.
    int dual_phase(std::size_t& budget);
    bool verify(const std::vector<double>& y) const;
    void add_tableau_row(std::size_t row);

    std::size_t nstruct_;
    std::vector<double> cost_;  // per variable; slacks cost nothing
    std::vector<double> lo_;
    std::vector<double> hi_;
    std::vector<std::uint8_t> at_upper_;
    std::vector<std::size_t> where_;  // basic row, or nonbasic slot + kSlotFlag
    std::vector<Row> rows_;

    std::vector<std::size_t> basis_;    // variable per tableau row
    std::vector<std::size_t> nonbasic_;  // variable per tableau column, always nstruct_ of them
    std::vector<std::vector<double>> t_;  // x_B = beta - T x_N
    std::vector<double> beta_;
    std::vector<double> d_;  // reduced costs per nonbasic slot
    std::size_t pivots_since_cold_ = 0;
    std::size_t cold_starts_ = 0;
    bool fresh_ = true;
};

}  // namespace infmax::detail
