#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sncinv/rational.hpp"

namespace sncinv {

// One affine relation sum coeff[i] * x_i = rhs, tagged with the instance or
// move that produced it.
struct AffineEquation {
    std::map<int, Rational> coeff;
    Rational rhs;
    std::string label;
};

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

struct AffineSolution {
    SolveStatus status = SolveStatus::Unique;
    // Per unknown: the forced value, or nullopt when the unknown can vary
    // over the solution family (meaningless when inconsistent).
    std::vector<std::optional<Rational>> value;
    int free_count = 0;
};

// Exact Gauss-Jordan elimination over Q. An unknown is reported as
// determined when its pivot row involves no free column.
inline AffineSolution solve_affine(int unknowns, const std::vector<AffineEquation>& equations) {
    const std::size_t cols = static_cast<std::size_t>(unknowns) + 1;
    std::vector<std::vector<Rational>> rows;
    rows.reserve(equations.size());
    for (const auto& eq : equations) {
        std::vector<Rational> row(cols, Rational(0));
        for (const auto& [i, c] : eq.coeff) row[static_cast<std::size_t>(i)] = c;
        row[cols - 1] = eq.rhs;
        rows.push_back(std::move(row));
    }

    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(unknowns), -1);
    std::size_t rank = 0;
    for (int col = 0; col < unknowns && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][static_cast<std::size_t>(col)] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const Rational inv = Rational(1) / rows[rank][static_cast<std::size_t>(col)];
        for (auto& v : rows[rank]) v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            const Rational f = rows[r][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (std::size_t k = static_cast<std::size_t>(col); k < cols; ++k)
                rows[r][k] -= f * rows[rank][k];
        }
        pivot_row_of_col[static_cast<std::size_t>(col)] = static_cast<int>(rank);
        ++rank;
    }

    AffineSolution sol;
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][cols - 1] != 0) {
            sol.status = SolveStatus::Inconsistent;
            return sol;
        }

    sol.value.assign(static_cast<std::size_t>(unknowns), std::nullopt);
    for (int col = 0; col < unknowns; ++col) {
        if (pivot_row_of_col[static_cast<std::size_t>(col)] < 0) {
            ++sol.free_count;
            continue;
        }
        const auto& row = rows[static_cast<std::size_t>(pivot_row_of_col[static_cast<std::size_t>(col)])];
        bool clean = true;
        for (int k = 0; k < unknowns; ++k)
            if (k != col && row[static_cast<std::size_t>(k)] != 0 &&
                pivot_row_of_col[static_cast<std::size_t>(k)] < 0) {
                clean = false;
                break;
            }
        // A pivot row may also touch other pivot columns only if eliminated;
        // after Gauss-Jordan it never does, so `clean` means fully forced.
        if (clean) sol.value[static_cast<std::size_t>(col)] = row[cols - 1];
    }
    sol.status = sol.free_count == 0 ? SolveStatus::Unique : SolveStatus::Underdetermined;
    return sol;
}

inline bool equation_satisfied(const AffineEquation& eq, const std::vector<Rational>& assignment) {
    Rational lhs = 0;
    for (const auto& [i, c] : eq.coeff) lhs += c * assignment[static_cast<std::size_t>(i)];
    return lhs == eq.rhs;
}

} // namespace sncinv
