#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pillars::assignment {

class InvalidCostMatrix : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major cost matrix: rows are predictions, columns ground truths.
/// Every entry must be finite and non-negative.
class CostMatrix {
public:
    /// Throws InvalidCostMatrix on empty dimensions, size mismatch or a
    /// non-finite / negative entry.
    CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, double v);
    double max_entry() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

struct Matching {
    /// (row, col) pairs sorted by row.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double total_cost = 0.0;
};

/// Minimum-cost maximal matching (|pairs| = min(rows, cols)) using the
/// Jonker-Volgenant shortest augmenting path method on the square matrix
/// obtained by padding with (max entry + 1) * max(rows, cols). Among optimal
/// matchings the lexicographically smallest sorted pair list is returned.
Matching solve_lap(const CostMatrix& c);

/// Minimum primary cost first; among those matchings, minimum total
/// secondary cost; remaining ties broken as in solve_lap. Both matrices must
/// have the same shape. `total_cost` reports the primary total.
Matching solve_lap_lexicographic(const CostMatrix& primary, const CostMatrix& secondary);

inline constexpr std::size_t kBruteForceLimit = 8;

/// Exhaustive enumeration of every maximal injection, in lexicographic order
/// of the pair list; the first strictly cheapest one wins. Refuses (throws
/// std::invalid_argument) when min(rows, cols) > kBruteForceLimit.
Matching brute_force_lap(const CostMatrix& c);

namespace detail {

/// Square LAPJV core. Returns row -> column assignment.
std::vector<std::size_t> lapjv_square(const std::vector<double>& cost, std::size_t n);

}  // namespace detail

}  // namespace pillars::assignment
