#include "dmca/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dmca/errors.hpp"

namespace dmca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double matching_total(const Matrix& score,
                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    double total = 0.0;
    for (const auto& [r, c] : pairs) total += score(r, c);
    return total;
}

// Shortest-augmenting-path assignment minimizing total cost. Requires
// rows <= cols; every row ends up assigned. Returns row -> column.
std::vector<std::size_t> jv_min(const Matrix& cost) {
    const std::size_t nr = cost.rows(), nc = cost.cols();
    std::vector<double> u(nr, 0.0), v(nc, 0.0);
    std::vector<std::ptrdiff_t> col4row(nr, -1), row4col(nc, -1);
    std::vector<double> shortest(nc);
    std::vector<std::size_t> pred(nc);
    std::vector<char> scanned_row(nr), scanned_col(nc);

    for (std::size_t cur = 0; cur < nr; ++cur) {
        std::fill(shortest.begin(), shortest.end(), kInf);
        std::fill(scanned_row.begin(), scanned_row.end(), 0);
        std::fill(scanned_col.begin(), scanned_col.end(), 0);

        double min_val = 0.0;
        std::size_t i = cur;
        std::ptrdiff_t sink = -1;
        while (sink == -1) {
            scanned_row[i] = 1;
            double lowest = kInf;
            std::size_t index = 0;
            bool found = false;
            for (std::size_t j = 0; j < nc; ++j) {
                if (scanned_col[j]) continue;
                const double reduced = min_val + cost(i, j) - u[i] - v[j];
                if (reduced < shortest[j]) {
                    shortest[j] = reduced;
                    pred[j] = i;
                }
                if (!found || shortest[j] < lowest ||
                    (shortest[j] == lowest && row4col[index] != -1 && row4col[j] == -1)) {
                    lowest = shortest[j];
                    index = j;
                    found = true;
                }
            }
            min_val = lowest;
            if (row4col[index] == -1) {
                sink = static_cast<std::ptrdiff_t>(index);
            } else {
                i = static_cast<std::size_t>(row4col[index]);
            }
            scanned_col[index] = 1;
        }

        u[cur] += min_val;
        for (std::size_t r = 0; r < nr; ++r) {
            if (scanned_row[r] && r != cur)
                u[r] += min_val - shortest[static_cast<std::size_t>(col4row[r])];
        }
        for (std::size_t j = 0; j < nc; ++j) {
            if (scanned_col[j]) v[j] -= min_val - shortest[j];
        }

        std::size_t j = static_cast<std::size_t>(sink);
        while (true) {
            const std::size_t r = pred[j];
            row4col[j] = static_cast<std::ptrdiff_t>(r);
            const std::ptrdiff_t displaced = col4row[r];
            col4row[r] = static_cast<std::ptrdiff_t>(j);
            if (r == cur) break;
            j = static_cast<std::size_t>(displaced);
        }
    }

    std::vector<std::size_t> out(nr);
    for (std::size_t r = 0; r < nr; ++r) out[r] = static_cast<std::size_t>(col4row[r]);
    return out;
}

// Maximum-total, maximum-cardinality matching without a canonical
// tie-break. Pairs come back sorted by row.
std::vector<std::pair<std::size_t, std::size_t>> jv_max_pairs(const Matrix& score) {
    const std::size_t nr = score.rows(), nc = score.cols();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (nr <= nc) {
        Matrix cost(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) cost(r, c) = -score(r, c);
        const auto col4row = jv_min(cost);
        for (std::size_t r = 0; r < nr; ++r) pairs.emplace_back(r, col4row[r]);
    } else {
        Matrix cost(nc, nr);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) cost(c, r) = -score(r, c);
        const auto row4col = jv_min(cost);
        for (std::size_t c = 0; c < nc; ++c) pairs.emplace_back(row4col[c], c);
        std::sort(pairs.begin(), pairs.end());
    }
    return pairs;
}

struct Subproblem {
    std::vector<std::size_t> rows;  // original row indices, ascending
    std::vector<std::size_t> cols;  // original column indices, ascending
};

// Optimal total of the subproblem restricted to the given rows/cols.
double sub_optimal_total(const Matrix& score, const Subproblem& sub,
                         std::vector<std::pair<std::size_t, std::size_t>>* pairs_out) {
    if (sub.rows.empty() || sub.cols.empty()) {
        if (pairs_out) pairs_out->clear();
        return 0.0;
    }
    Matrix local(sub.rows.size(), sub.cols.size());
    for (std::size_t r = 0; r < sub.rows.size(); ++r)
        for (std::size_t c = 0; c < sub.cols.size(); ++c)
            local(r, c) = score(sub.rows[r], sub.cols[c]);
    auto local_pairs = jv_max_pairs(local);
    std::vector<std::pair<std::size_t, std::size_t>> mapped;
    mapped.reserve(local_pairs.size());
    for (const auto& [r, c] : local_pairs)
        mapped.emplace_back(sub.rows[r], sub.cols[c]);
    const double total = matching_total(score, mapped);
    if (pairs_out) *pairs_out = std::move(mapped);
    return total;
}

}  // namespace

Matching solve_max_assignment(const Matrix& score) {
    const std::size_t nr = score.rows(), nc = score.cols();
    if (nr == 0 || nc == 0) throw InvalidData("solve_max_assignment: empty score matrix");
    if (!score.all_finite()) throw InvalidData("solve_max_assignment: non-finite score");

    auto witness = jv_max_pairs(score);
    const double best_total = matching_total(score, witness);

    double max_abs = 0.0;
    for (double x : score.data()) max_abs = std::max(max_abs, std::abs(x));
    const double eps = 1e-9 * (1.0 + max_abs * static_cast<double>(std::min(nr, nc)));

    // Sequential fixing: walk rows in order, move each matched row to the
    // smallest column that still admits an optimal completion. The first
    // optimum found with this discipline is the lexicographically smallest.
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    std::vector<char> col_used(nc, 0);
    double fixed_total = 0.0;

    for (std::size_t r = 0; r < nr; ++r) {
        std::ptrdiff_t cur_col = -1;
        for (const auto& [wr, wc] : witness) {
            if (wr == r) {
                cur_col = static_cast<std::ptrdiff_t>(wc);
                break;
            }
        }

        Subproblem rest;
        for (std::size_t rr = r + 1; rr < nr; ++rr) rest.rows.push_back(rr);
        for (std::size_t cc = 0; cc < nc; ++cc)
            if (!col_used[cc]) rest.cols.push_back(cc);

        bool placed = false;
        for (std::size_t c = 0; c < nc && !placed; ++c) {
            if (col_used[c]) continue;
            if (cur_col != -1 && static_cast<std::ptrdiff_t>(c) >= cur_col) break;
            Subproblem sub = rest;
            sub.cols.erase(std::find(sub.cols.begin(), sub.cols.end(), c));
            std::vector<std::pair<std::size_t, std::size_t>> completion;
            const double rest_total = sub_optimal_total(score, sub, &completion);
            if (std::abs(fixed_total + score(r, c) + rest_total - best_total) <= eps) {
                fixed.emplace_back(r, c);
                fixed_total += score(r, c);
                col_used[c] = 1;
                witness = std::move(completion);
                placed = true;
            }
        }
        if (!placed && cur_col != -1) {
            const std::size_t c = static_cast<std::size_t>(cur_col);
            fixed.emplace_back(r, c);
            fixed_total += score(r, c);
            col_used[c] = 1;
            std::erase_if(witness, [&](const auto& p) { return p.first == r; });
        }
        // Otherwise the row stays unmatched (only possible when rows > cols
        // and no optimal completion uses it).
    }

    Matching out;
    out.pairs = std::move(fixed);
    out.total = matching_total(score, out.pairs);
    return out;
}

Matching brute_force_assignment(const Matrix& score, std::size_t max_n) {
    const std::size_t nr = score.rows(), nc = score.cols();
    if (nr == 0 || nc == 0) throw InvalidData("brute_force_assignment: empty score matrix");
    if (!score.all_finite()) throw InvalidData("brute_force_assignment: non-finite score");
    const std::size_t cardinality = std::min(nr, nc);
    if (cardinality > max_n)
        throw SizeError("brute_force_assignment: instance larger than max_n");

    std::vector<std::pair<std::size_t, std::size_t>> current, best;
    bool have_best = false;
    double best_total = -kInf;
    std::vector<char> col_used(nc, 0);

    // Depth-first over rows; at each row try columns in ascending order and
    // then (when rows exceed columns) the skip branch. This emits candidate
    // pair lists in lexicographic order, so keeping strict improvements
    // yields the lexicographically smallest optimum.
    auto recurse = [&](auto&& self, std::size_t row) -> void {
        if (current.size() == cardinality) {
            const double total = matching_total(score, current);
            if (!have_best || total > best_total) {
                have_best = true;
                best_total = total;
                best = current;
            }
            return;
        }
        if (row == nr) return;
        const std::size_t rows_left = nr - row;
        if (current.size() + rows_left < cardinality) return;
        for (std::size_t c = 0; c < nc; ++c) {
            if (col_used[c]) continue;
            col_used[c] = 1;
            current.emplace_back(row, c);
            self(self, row + 1);
            current.pop_back();
            col_used[c] = 0;
        }
        if (current.size() + (rows_left - 1) >= cardinality) self(self, row + 1);
    };
    recurse(recurse, 0);

    Matching out;
    out.pairs = std::move(best);
    out.total = matching_total(score, out.pairs);
    return out;
}

}  // namespace dmca
