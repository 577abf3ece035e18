#include "dmca/pairing.hpp"

#include <algorithm>
#include <string>

#include "dmca/errors.hpp"

namespace dmca {

PairingMatrix PairingMatrix::from_pairs(std::size_t n, std::size_t n_prime,
                                        std::vector<IndexPair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> left_used(n, false), right_used(n_prime, false);
    for (const auto& [i, j] : pairs) {
        if (i >= n || j >= n_prime)
            throw InvalidData("pairing index out of range");
        if (left_used[i] || right_used[j])
            throw InvalidData("sample paired more than once");
        left_used[i] = true;
        right_used[j] = true;
    }
    PairingMatrix p(n, n_prime);
    p.pairs_ = std::move(pairs);
    return p;
}

PairingMatrix PairingMatrix::identity(std::size_t n) {
    std::vector<IndexPair> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, i);
    return from_pairs(n, n, std::move(pairs));
}

void PairingMatrix::validate_groups(const std::vector<int>& groups,
                                    const std::vector<int>& groups_prime) const {
    if (groups.size() != n_ || groups_prime.size() != n_prime_)
        throw InvalidData("group label count does not match pairing size");
    for (const auto& [i, j] : pairs_) {
        if (groups[i] != groups_prime[j])
            throw InvalidData("pair crosses groups: left " + std::to_string(i) +
                              " right " + std::to_string(j));
    }
}

std::size_t PairingMatrix::difference_count(const PairingMatrix& other) const {
    std::size_t common = 0;
    auto it = other.pairs_.begin();
    for (const auto& p : pairs_) {
        while (it != other.pairs_.end() && *it < p) ++it;
        if (it != other.pairs_.end() && *it == p) ++common;
    }
    return (pairs_.size() - common) + (other.pairs_.size() - common);
}

}  // namespace dmca
