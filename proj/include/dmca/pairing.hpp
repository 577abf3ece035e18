#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace dmca {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Sparse binary partial matching between two sample sets of sizes n and
// n_prime. Each left index and each right index appears in at most one
// pair; pairs are kept sorted by (left, right).
class PairingMatrix {
public:
    PairingMatrix(std::size_t n, std::size_t n_prime)
        : n_(n), n_prime_(n_prime) {}

    // Validates ranges and the at-most-one-partner constraint.
    static PairingMatrix from_pairs(std::size_t n, std::size_t n_prime,
                                    std::vector<IndexPair> pairs);

    static PairingMatrix identity(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t n_prime() const { return n_prime_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const std::vector<IndexPair>& pairs() const { return pairs_; }

    // Throws InvalidData unless every pair joins samples of one group.
    void validate_groups(const std::vector<int>& groups,
                         const std::vector<int>& groups_prime) const;

    // Number of pairs present in exactly one of the two matchings.
    std::size_t difference_count(const PairingMatrix& other) const;

    friend bool operator==(const PairingMatrix& a, const PairingMatrix& b) {
        return a.n_ == b.n_ && a.n_prime_ == b.n_prime_ && a.pairs_ == b.pairs_;
    }

private:
    std::size_t n_ = 0;
    std::size_t n_prime_ = 0;
    std::vector<IndexPair> pairs_;
};

}  // namespace dmca
