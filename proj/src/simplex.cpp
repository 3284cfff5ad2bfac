#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infmax::detail {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Consecutive zero-length steps before switching from Dantzig to Bland pricing.
constexpr std::size_t kDegenerateLimit = 50;
// Rebuild from the slack basis after this many pivots to shed rounding drift.
constexpr std::size_t kRefreshPivots = 20000;
constexpr std::size_t kSlotFlag = std::size_t{1} << 62;

}  // namespace

LpResult solve_bounded_simplex(const DenseLp& lp, std::size_t max_pivots) {
    WarmSimplex simplex(lp.c, lp.lo, lp.hi);
    for (std::size_t i = 0; i < lp.rows; ++i) {
        WarmSimplex::SparseRow row;
        for (std::size_t j = 0; j < lp.cols; ++j) {
            if (lp.a[i * lp.cols + j] != 0.0) row.emplace_back(j, lp.a[i * lp.cols + j]);
        }
        simplex.add_row(std::move(row), lp.b[i]);
    }
    return simplex.solve(max_pivots);
}

WarmSimplex::WarmSimplex(std::vector<double> c, std::vector<double> lo, std::vector<double> hi)
    : nstruct_(c.size()), cost_(std::move(c)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != nstruct_ || hi_.size() != nstruct_) throw std::invalid_argument("simplex: bound size mismatch");
    for (std::size_t j = 0; j < nstruct_; ++j) {
        if (hi_[j] < lo_[j] - 1e-12) throw std::invalid_argument("simplex: empty variable range");
    }
    at_upper_.assign(nstruct_, 0);
    where_.assign(nstruct_, kSlotFlag);
}

std::size_t WarmSimplex::add_row(SparseRow coeffs, double b) {
    for (const auto& [j, a] : coeffs) {
        if (j >= nstruct_) throw std::out_of_range("simplex: row refers to an unknown column");
    }
    const std::size_t id = rows_.size();
    const std::size_t slack = cost_.size();
    cost_.push_back(0.0);
    lo_.push_back(0.0);
    hi_.push_back(kInf);
    at_upper_.push_back(0);
    where_.push_back(kSlotFlag);
    rows_.push_back(Row{std::move(coeffs), b, slack, true});
    if (!fresh_) add_tableau_row(id);
    return id;
}

void WarmSimplex::add_tableau_row(std::size_t id) {
    const Row& row = rows_[id];
    std::vector<double> tr(nstruct_, 0.0);
    double value = row.b;
    for (const auto& [j, a] : row.coeffs) {
        value -= a * value_of(j);
        const std::size_t w = where_[j];
        if (w >= kSlotFlag) {
            tr[w - kSlotFlag] += a;
        } else {
            const auto& ti = t_[w];
            for (std::size_t q = 0; q < nstruct_; ++q) tr[q] -= a * ti[q];
        }
    }
    where_[row.slack] = basis_.size();
    basis_.push_back(row.slack);
    t_.push_back(std::move(tr));
    beta_.push_back(value);
}

bool WarmSimplex::remove_row(std::size_t id) {
    Row& row = rows_.at(id);
    if (!row.alive) return true;
    if (fresh_) {
        row.alive = false;
        return true;
    }
    const std::size_t r = where_[row.slack];
    if (r >= kSlotFlag) return false;
    const std::size_t last = basis_.size() - 1;
    if (r != last) {
        basis_[r] = basis_[last];
        t_[r] = std::move(t_[last]);
        beta_[r] = beta_[last];
        where_[basis_[r]] = r;
    }
    basis_.pop_back();
    t_.pop_back();
    beta_.pop_back();
    row.alive = false;
    row.coeffs.clear();
    where_[row.slack] = kSlotFlag;
    return true;
}

void WarmSimplex::set_bounds(std::size_t j, double lo, double hi) {
    if (j >= nstruct_) throw std::out_of_range("simplex: unknown column");
    if (hi < lo - 1e-12) throw std::invalid_argument("simplex: empty variable range");
    const double before = fresh_ ? 0.0 : value_of(j);
    lo_[j] = lo;
    hi_[j] = hi;
    if (fresh_ || where_[j] < kSlotFlag) return;
    const std::size_t q = where_[j] - kSlotFlag;
    if (hi - lo <= 1e-12) {
        at_upper_[j] = 0;
    } else if (d_[q] > kCostTol) {
        at_upper_[j] = 1;
    } else if (d_[q] < -kCostTol) {
        at_upper_[j] = 0;
    }
    const double delta = value_of(j) - before;
    if (delta != 0.0) {
        for (std::size_t i = 0; i < basis_.size(); ++i) beta_[i] -= t_[i][q] * delta;
    }
}

double WarmSimplex::value_of(std::size_t var) const {
    const std::size_t w = where_[var];
    if (w < kSlotFlag) return beta_[w];
    return at_upper_[var] ? hi_[var] : lo_[var];
}

void WarmSimplex::cold_start() {
    if (!fresh_) ++cold_starts_;
    fresh_ = false;
    pivots_since_cold_ = 0;
    basis_.clear();
    t_.clear();
    beta_.clear();
    nonbasic_.resize(nstruct_);
    d_.assign(cost_.begin(), cost_.begin() + static_cast<std::ptrdiff_t>(nstruct_));
    for (std::size_t j = 0; j < nstruct_; ++j) {
        nonbasic_[j] = j;
        where_[j] = kSlotFlag + j;
        at_upper_[j] = 0;
    }
    for (std::size_t id = 0; id < rows_.size(); ++id) {
        const Row& row = rows_[id];
        if (!row.alive) continue;
        std::vector<double> tr(nstruct_, 0.0);
        double value = row.b;
        for (const auto& [j, a] : row.coeffs) {
            tr[j] += a;
            value -= a * lo_[j];
        }
        if (value < -1e-9) throw std::invalid_argument("simplex: lower-bound start is infeasible");
        where_[row.slack] = basis_.size();
        at_upper_[row.slack] = 0;
        basis_.push_back(row.slack);
        t_.push_back(std::move(tr));
        beta_.push_back(value);
    }
}

void WarmSimplex::pivot(std::size_t r, std::size_t q) {
    auto& pr = t_[r];
    const double p = pr[q];
    for (std::size_t j = 0; j < nstruct_; ++j) pr[j] /= p;
    pr[q] = 1.0 / p;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i == r) continue;
        auto& row = t_[i];
        const double f = row[q];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < nstruct_; ++j) row[j] -= f * pr[j];
        row[q] = -f / p;
    }
    const double f = d_[q];
    for (std::size_t j = 0; j < nstruct_; ++j) d_[j] -= f * pr[j];
    d_[q] = -f / p;

    const std::size_t leaving = basis_[r];
    const std::size_t entering = nonbasic_[q];
    basis_[r] = entering;
    nonbasic_[q] = leaving;
    where_[entering] = r;
    where_[leaving] = kSlotFlag + q;
    ++pivots_since_cold_;
}

bool WarmSimplex::primal_phase(std::size_t& budget) {
    const std::size_t m = basis_.size();
    std::size_t degenerate_run = 0;
    for (;;) {
        const bool bland = degenerate_run >= kDegenerateLimit;
        std::size_t enter = nstruct_;
        double best = 0.0;
        for (std::size_t q = 0; q < nstruct_; ++q) {
            const std::size_t v = nonbasic_[q];
            if (hi_[v] - lo_[v] <= 1e-12) continue;
            const double gain = at_upper_[v] ? -d_[q] : d_[q];
            if (gain <= kCostTol) continue;
            if (bland) {
                if (enter == nstruct_ || v < nonbasic_[enter]) enter = q;
                continue;
            }
            if (gain > best) {
                best = gain;
                enter = q;
            }
        }
        if (enter == nstruct_) return true;
        if (budget == 0) return false;
        --budget;

        const std::size_t ev = nonbasic_[enter];
        const double dir = at_upper_[ev] ? -1.0 : 1.0;
        double step = hi_[ev] - lo_[ev];
        std::size_t leave_row = m;
        bool leave_to_upper = false;
        for (std::size_t i = 0; i < m; ++i) {
            const double alpha = t_[i][enter] * dir;
            const std::size_t bv = basis_[i];
            double limit = kInf;
            bool to_upper = false;
            if (alpha > kPivotTol) {
                limit = (beta_[i] - lo_[bv]) / alpha;
            } else if (alpha < -kPivotTol && hi_[bv] < kInf) {
                limit = (hi_[bv] - beta_[i]) / -alpha;
                to_upper = true;
            } else {
                continue;
            }
            limit = std::max(limit, 0.0);
            if (limit < step - 1e-12 ||
                (bland && leave_row != m && limit <= step + 1e-12 && bv < basis_[leave_row])) {
                step = limit;
                leave_row = i;
                leave_to_upper = to_upper;
            }
        }
        if (step == kInf) throw std::runtime_error("simplex: unbounded direction");
        degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

        const double delta = step * dir;
        for (std::size_t i = 0; i < m; ++i) beta_[i] -= delta * t_[i][enter];
        if (leave_row == m) {
            at_upper_[ev] = at_upper_[ev] ? 0 : 1;
            continue;
        }
        const double entering_value = (at_upper_[ev] ? hi_[ev] : lo_[ev]) + delta;
        const std::size_t leaving = basis_[leave_row];
        pivot(leave_row, enter);
        at_upper_[leaving] = leave_to_upper ? 1 : 0;
        at_upper_[ev] = 0;
        beta_[leave_row] = entering_value;
    }
}

int WarmSimplex::dual_phase(std::size_t& budget) {
    const std::size_t m = basis_.size();
    // Past this the warm start is not paying off; the caller restarts cold.
    std::size_t allowance = 50 * (m + nstruct_) + 1000;
    std::size_t degenerate_run = 0;
    for (;;) {
        const bool bland = degenerate_run >= kDegenerateLimit;
        std::size_t r = m;
        double worst = 0.0;
        bool below = false;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t bv = basis_[i];
            const double tol = kFeasTol * std::max(1.0, std::abs(beta_[i]));
            const double under = lo_[bv] - beta_[i];
            const double over = beta_[i] - hi_[bv];
            const double v = std::max(under, over);
            if (v <= tol) continue;
            const bool take = bland ? (r == m || bv < basis_[r]) : v > worst;
            if (take) {
                worst = v;
                r = i;
                below = under > over;
            }
        }
        if (r == m) return 1;
        if (budget == 0 || allowance == 0) return 0;
        --budget;
        --allowance;

        // below: raise x_r, so nonbasics must move with -T[r][q] * step > 0.
        const auto& tr = t_[r];
        std::size_t enter = nstruct_;
        double ratio = kInf;
        double size = 0.0;
        for (std::size_t q = 0; q < nstruct_; ++q) {
            const std::size_t v = nonbasic_[q];
            if (hi_[v] - lo_[v] <= 1e-12) continue;
            const double a = tr[q];
            if (std::abs(a) <= kPivotTol) continue;
            const bool up = !at_upper_[v];
            const bool eligible = below ? (up ? a < 0.0 : a > 0.0) : (up ? a > 0.0 : a < 0.0);
            if (!eligible) continue;
            const double rq = std::abs(d_[q]) / std::abs(a);
            const bool tie = rq <= ratio + 1e-12;
            if (rq < ratio - 1e-12 || (tie && (bland ? v < nonbasic_[enter] : std::abs(a) > size))) {
                ratio = rq;
                enter = q;
                size = std::abs(a);
            }
        }
        if (enter == nstruct_) return -1;
        degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;

        const std::size_t leaving = basis_[r];
        const double target = below ? lo_[leaving] : hi_[leaving];
        const double delta = (beta_[r] - target) / tr[enter];
        const std::size_t ev = nonbasic_[enter];
        const double entering_value = value_of(ev) + delta;
        for (std::size_t i = 0; i < m; ++i) beta_[i] -= delta * t_[i][enter];
        pivot(r, enter);
        at_upper_[leaving] = below ? 0 : 1;
        at_upper_[ev] = 0;
        beta_[r] = entering_value;
    }
}

bool WarmSimplex::verify(const std::vector<double>& y) const {
    for (std::size_t j = 0; j < nstruct_; ++j) {
        if (y[j] < lo_[j] - 1e-7 || y[j] > hi_[j] + 1e-7) return false;
    }
    for (const Row& row : rows_) {
        if (!row.alive) continue;
        double activity = 0.0;
        for (const auto& [j, a] : row.coeffs) activity += a * y[j];
        if (activity > row.b + 1e-7 * std::max(1.0, std::abs(row.b))) return false;
    }
    return true;
}

LpResult WarmSimplex::solve(std::size_t max_pivots) {
    std::size_t budget = max_pivots;
    bool warm = !fresh_ && pivots_since_cold_ < kRefreshPivots;
    if (!warm) cold_start();
    LpResult result;
    for (;;) {
        if (warm && dual_phase(budget) != 1) {
            cold_start();
            warm = false;
        }
        if (!primal_phase(budget)) {
            result.pivots = max_pivots - budget;
            return result;
        }
        result.y.assign(nstruct_, 0.0);
        for (std::size_t j = 0; j < nstruct_; ++j) result.y[j] = std::clamp(value_of(j), lo_[j], hi_[j]);
        if (!warm || verify(result.y)) break;
        cold_start();
        warm = false;
    }
    result.optimal = true;
    result.pivots = max_pivots - budget;
    for (std::size_t j = 0; j < nstruct_; ++j) result.value += cost_[j] * result.y[j];
    return result;
}

}  // namespace infmax::detail
