#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dmca/matrix.hpp"

namespace dmca {

// Injective matching between rows and columns of a score matrix.
// pairs are sorted by row index; total is the sum of matched scores
// accumulated in that order.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double total = 0.0;
};

// Maximum-cardinality matching (cardinality = min(rows, cols)) of maximum
// total score, ties broken by lexicographically smallest pair list.
// Jonker-Volgenant shortest augmenting paths on the negated scores, then a
// sequential-fixing pass that canonicalizes among tied optima.
Matching solve_max_assignment(const Matrix& score);

// Exhaustive reference: enumerates every maximum-cardinality injective
// matching, same tie-break. Throws SizeError when min(rows, cols) > max_n.
Matching brute_force_assignment(const Matrix& score, std::size_t max_n = 7);

}  // namespace dmca
