#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dmca/matcore.hpp"
#include "dmca/modality.hpp"
#include "dmca/pairing.hpp"

namespace dmca {

// Learned shared space: projections into R^q for each modality together
// with the frozen per-modality means.
struct ProjectionPair {
    Matrix w;                         // D x q
    Matrix w_prime;                   // D' x q
    std::vector<double> sigma;        // q, descending
    std::vector<double> mean;         // D
    std::vector<double> mean_prime;   // D'
    std::size_t q = 0;
};

struct DmcaTrace {
    std::vector<double> objectives;            // one per iteration, nondecreasing
    std::vector<std::size_t> pairings_changed; // pairs differing from the previous matching
    std::size_t iterations = 0;
    bool converged = false;
};

enum class InitPairing { RandomWithinGroup, IdentityWithinGroup };

struct DmcaConfig {
    std::size_t max_iters = 50;
    double tol = 1e-7;  // relative objective gain
    std::uint64_t seed = 0;
    InitPairing init = InitPairing::RandomWithinGroup;
    bool drop_negative_pairs = false;  // partial matching: drop negative-score pairs
};

struct DmcaResult {
    ProjectionPair projection;
    PairingMatrix pairing{0, 0};
    DmcaTrace trace;
};

// Covariance maximization for a known pairing: center both sides, SVD the
// cross-covariance, keep the top q triplets. Objective value is sigma sum.
ProjectionPair mca_fit(const Matrix& h, const Matrix& h_prime,
                       const PairingMatrix& pairing, std::size_t q);

// One matching update: per group, score every cross-modal pair by the dot
// product of its shared-space images and solve a max assignment; groups
// present in only one modality contribute nothing (warning on stderr).
PairingMatrix assignment_step(const Matrix& h, const Matrix& h_prime,
                              const ProjectionPair& proj,
                              const std::vector<int>& groups,
                              const std::vector<int>& groups_prime,
                              bool drop_negative_pairs = false);

// Alternating maximization over (W, W') and the pairing, starting from a
// seeded random full matching within each group. Means are taken from the
// initially matched samples and frozen, which keeps the trace monotone.
DmcaResult dmca_fit(const Matrix& h, const Matrix& h_prime,
                    const std::vector<int>& groups,
                    const std::vector<int>& groups_prime,
                    std::size_t q, const DmcaConfig& config = {});

// Trace objective: sum over matched pairs of the shared-space dot products.
double objective(const Matrix& h, const Matrix& h_prime,
                 const ProjectionPair& proj, const PairingMatrix& pairing);

Matrix project_modality(const ProjectionPair& proj, const Matrix& m,
                        Modality modality);

// Model file: one JSON metadata line, then the w, w_prime, sigma, mean and
// mean_prime blocks in the binary feature-matrix format.
struct ModelMeta {
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    double objective = 0.0;
    bool converged = false;
};

void save_model(std::ostream& out, const ProjectionPair& proj, const ModelMeta& meta);
std::pair<ProjectionPair, ModelMeta> load_model(std::istream& in);

}  // namespace dmca
