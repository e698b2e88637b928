#include "pillars/assignment/lap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace pillars::assignment {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_entry(double v, std::size_t r, std::size_t c) {
    if (!std::isfinite(v)) throw InvalidCostMatrix(fmt::format("cost[{}][{}] is not finite", r, c));
    if (v < 0) throw InvalidCostMatrix(fmt::format("cost[{}][{}] = {} is negative", r, c, v));
}

bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) throw InvalidCostMatrix("cost matrix needs at least one row and one column");
    if (values_.size() != rows_ * cols_)
        throw InvalidCostMatrix(fmt::format("expected {} entries, got {}", rows_ * cols_, values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) check_entry(values_[i], i / cols_, i % cols_);
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : CostMatrix(rows, cols, std::vector<double>(rows * cols, fill)) {}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidCostMatrix("cost matrix needs at least one row and one column");
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw InvalidCostMatrix("ragged cost matrix");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return CostMatrix(rows.size(), rows.front().size(), std::move(flat));
}

void CostMatrix::set(std::size_t r, std::size_t c, double v) {
    check_entry(v, r, c);
    values_[r * cols_ + c] = v;
}

double CostMatrix::max_entry() const { return *std::max_element(values_.begin(), values_.end()); }

namespace detail {

// Column reduction, reduction transfer, augmenting row reduction and
// shortest augmenting path, after Jonker & Volgenant (1987).
std::vector<std::size_t> lapjv_square(const std::vector<double>& cost, std::size_t n) {
    auto c = [&](std::size_t i, std::size_t j) { return cost[i * n + j]; };
    std::vector<std::size_t> x(n, kNone);  // row -> col
    std::vector<std::size_t> y(n, kNone);  // col -> row
    if (n == 1) {
        x[0] = 0;
        return x;
    }
    std::vector<double> v(n, 0.0);
    std::vector<int> matches(n, 0);

    // Column reduction, scanning columns right to left.
    for (std::size_t jj = n; jj-- > 0;) {
        std::size_t imin = 0;
        double min = c(0, jj);
        for (std::size_t i = 1; i < n; ++i) {
            if (c(i, jj) < min) {
                min = c(i, jj);
                imin = i;
            }
        }
        v[jj] = min;
        if (++matches[imin] == 1) {
            x[imin] = jj;
            y[jj] = imin;
        } else if (x[imin] != kNone && c(imin, jj) < c(imin, x[imin])) {
            y[x[imin]] = kNone;
            x[imin] = jj;
            y[jj] = imin;
        } else {
            y[jj] = kNone;
        }
    }

    // Reduction transfer from rows assigned exactly once.
    std::vector<std::size_t> free_rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (matches[i] == 0) {
            free_rows.push_back(i);
        } else if (matches[i] == 1) {
            std::size_t j1 = x[i];
            double min = kInf;
            for (std::size_t j = 0; j < n; ++j)
                if (j != j1) min = std::min(min, c(i, j) - v[j]);
            v[j1] -= min;
        }
    }

    // Augmenting row reduction, two passes.
    for (int pass = 0; pass < 2 && !free_rows.empty(); ++pass) {
        std::vector<std::size_t> queue = std::move(free_rows);
        free_rows.clear();
        std::size_t k = 0;
        std::size_t guard = 0;
        const std::size_t guard_limit = 4 * n * n + 16;
        while (k < queue.size()) {
            std::size_t i = queue[k++];
            if (++guard > guard_limit) {
                free_rows.push_back(i);
                continue;
            }
            double umin = c(i, 0) - v[0];
            std::size_t j1 = 0;
            std::size_t j2 = kNone;
            double usubmin = kInf;
            for (std::size_t j = 1; j < n; ++j) {
                double h = c(i, j) - v[j];
                if (h < usubmin) {
                    if (h >= umin) {
                        usubmin = h;
                        j2 = j;
                    } else {
                        usubmin = umin;
                        umin = h;
                        j2 = j1;
                        j1 = j;
                    }
                }
            }
            std::size_t i0 = y[j1];
            if (umin < usubmin) {
                v[j1] -= usubmin - umin;
            } else if (i0 != kNone) {
                j1 = j2;
                i0 = y[j2];
            }
            x[i] = j1;
            y[j1] = i;
            if (i0 != kNone) {
                x[i0] = kNone;
                if (umin < usubmin) {
                    queue[--k] = i0;
                } else {
                    free_rows.push_back(i0);
                }
            }
        }
    }

    // Augmentation by shortest paths (Dijkstra on reduced costs).
    std::vector<double> d(n);
    std::vector<std::size_t> pred(n);
    std::vector<std::size_t> collist(n);
    for (std::size_t freerow : free_rows) {
        for (std::size_t j = 0; j < n; ++j) {
            d[j] = c(freerow, j) - v[j];
            pred[j] = freerow;
            collist[j] = j;
        }
        std::size_t low = 0;
        std::size_t up = 0;
        std::size_t last = 0;  // columns [0, last) are scanned
        std::size_t endofpath = kNone;
        double min = 0.0;
        bool found = false;
        while (!found) {
            if (up == low) {
                last = low;
                min = d[collist[up++]];
                for (std::size_t k = up; k < n; ++k) {
                    std::size_t j = collist[k];
                    double h = d[j];
                    if (h <= min) {
                        if (h < min) {
                            up = low;
                            min = h;
                        }
                        collist[k] = collist[up];
                        collist[up++] = j;
                    }
                }
                for (std::size_t k = low; k < up; ++k) {
                    if (y[collist[k]] == kNone) {
                        endofpath = collist[k];
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                std::size_t j1 = collist[low++];
                std::size_t i = y[j1];
                double h = c(i, j1) - v[j1] - min;
                for (std::size_t k = up; k < n; ++k) {
                    std::size_t j = collist[k];
                    double v2 = c(i, j) - v[j] - h;
                    if (v2 < d[j]) {
                        pred[j] = i;
                        if (v2 == min) {
                            if (y[j] == kNone) {
                                endofpath = j;
                                found = true;
                                break;
                            }
                            collist[k] = collist[up];
                            collist[up++] = j;
                        }
                        d[j] = v2;
                    }
                }
            }
        }
        // Update column prices of scanned columns.
        for (std::size_t k = 0; k < last; ++k) {
            std::size_t j1 = collist[k];
            v[j1] += d[j1] - min;
        }
        // Augment along the alternating path.
        std::size_t i;
        do {
            i = pred[endofpath];
            y[endofpath] = i;
            std::size_t j1 = endofpath;
            endofpath = x[i];
            x[i] = j1;
        } while (i != freerow);
    }
    return x;
}

}  // namespace detail

namespace {

/// Optimal maximal matching cost over the given row/col subsets.
double optimal_cost(const CostMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                    std::vector<std::pair<std::size_t, std::size_t>>* pairs = nullptr) {
    if (rows.empty() || cols.empty()) return 0.0;
    const std::size_t n = std::max(rows.size(), cols.size());
    double max_entry = 0.0;
    for (auto r : rows)
        for (auto c : cols) max_entry = std::max(max_entry, m(r, c));
    const double pad = (max_entry + 1.0) * double(n);
    std::vector<double> square(n * n, pad);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) square[i * n + j] = m(rows[i], cols[j]);
    auto x = detail::lapjv_square(square, n);
    double total = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (x[i] < cols.size()) {
            total += m(rows[i], cols[x[i]]);
            if (pairs) pairs->emplace_back(rows[i], cols[x[i]]);
        }
    }
    return total;
}

}  // namespace

Matching solve_lap(const CostMatrix& m) {
    std::vector<std::size_t> all_rows(m.rows());
    std::vector<std::size_t> all_cols(m.cols());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::iota(all_cols.begin(), all_cols.end(), 0);
    const double optimum = optimal_cost(m, all_rows, all_cols);
    const std::size_t target = std::min(m.rows(), m.cols());

    // Greedy lexicographic tie-break: fix each row to its smallest column that
    // still admits an optimal completion.
    Matching result;
    std::vector<bool> col_used(m.cols(), false);
    double fixed_cost = 0.0;
    for (std::size_t r = 0; r < m.rows() && result.pairs.size() < target; ++r) {
        const std::size_t needed = target - result.pairs.size();
        std::vector<std::size_t> later_rows;
        for (std::size_t rr = r + 1; rr < m.rows(); ++rr) later_rows.push_back(rr);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (col_used[c]) continue;
            std::vector<std::size_t> rest_cols;
            for (std::size_t cc = 0; cc < m.cols(); ++cc)
                if (!col_used[cc] && cc != c) rest_cols.push_back(cc);
            if (std::min(later_rows.size(), rest_cols.size()) != needed - 1) continue;
            double total = fixed_cost + m(r, c) + optimal_cost(m, later_rows, rest_cols);
            if (same_cost(total, optimum)) {
                result.pairs.emplace_back(r, c);
                col_used[c] = true;
                fixed_cost += m(r, c);
                break;
            }
        }
    }
    result.total_cost = 0.0;
    for (auto [r, c] : result.pairs) result.total_cost += m(r, c);
    return result;
}

Matching solve_lap_lexicographic(const CostMatrix& primary, const CostMatrix& secondary) {
    if (primary.rows() != secondary.rows() || primary.cols() != secondary.cols())
        throw InvalidCostMatrix("primary and secondary cost matrices differ in shape");
    const std::size_t rows = primary.rows(), cols = primary.cols();
    const std::size_t n = std::max(rows, cols);
    const double pad = (primary.max_entry() + 1.0) * double(n);
    CostMatrix square(n, n, pad);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) square.set(r, c, primary(r, c));

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const double optimum = optimal_cost(square, idx, idx);

    // An edge lies on some optimal perfect matching iff forcing it keeps the
    // optimum. By complementary slackness every perfect matching built only
    // from such edges is optimal too.
    const double forbid = (secondary.max_entry() + 1.0) * double(n) + 1.0;
    CostMatrix second(n, n, forbid);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::size_t> other_rows;
        for (std::size_t k = 0; k < n; ++k)
            if (k != r) other_rows.push_back(k);
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::size_t> other_cols;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) other_cols.push_back(k);
            if (same_cost(square(r, c) + optimal_cost(square, other_rows, other_cols), optimum))
                second.set(r, c, r < rows && c < cols ? secondary(r, c) : 0.0);
        }
    }

    Matching result;
    for (auto [r, c] : solve_lap(second).pairs) {
        if (r >= rows || c >= cols) continue;
        result.pairs.emplace_back(r, c);
        result.total_cost += primary(r, c);
    }
    return result;
}

Matching brute_force_lap(const CostMatrix& m) {
    const std::size_t target = std::min(m.rows(), m.cols());
    if (target > kBruteForceLimit)
        throw std::invalid_argument(
            fmt::format("brute force limited to min(rows, cols) <= {}, got {}", kBruteForceLimit, target));

    Matching best;
    best.total_cost = kInf;
    std::vector<std::pair<std::size_t, std::size_t>> current;
    std::vector<bool> col_used(m.cols(), false);
    const std::size_t skippable = m.rows() - target;

    // Depth-first over rows; trying columns ascending before skipping a row
    // visits pair lists in lexicographic order.
    auto dfs = [&](auto&& self, std::size_t r, std::size_t skipped, double cost) -> void {
        if (current.size() == target) {
            if (cost < best.total_cost) {
                best.total_cost = cost;
                best.pairs = current;
            }
            return;
        }
        if (r == m.rows()) return;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (col_used[c]) continue;
            col_used[c] = true;
            current.emplace_back(r, c);
            self(self, r + 1, skipped, cost + m(r, c));
            current.pop_back();
            col_used[c] = false;
        }
        if (skipped < skippable) self(self, r + 1, skipped + 1, cost);
    };
    dfs(dfs, 0, 0, 0.0);
    // Recompute in pair order so both solvers sum identically.
    best.total_cost = 0.0;
    for (auto [r, c] : best.pairs) best.total_cost += m(r, c);
    return best;
}

}  // namespace pillars::assignment
