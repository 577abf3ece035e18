#include "dmca/mca.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dmca/assign.hpp"
#include "dmca/errors.hpp"
#include "dmca/features.hpp"
#include "dmca/rng.hpp"

namespace dmca {

namespace {

// Column indices per group id, ascending within each group.
std::map<int, std::vector<std::size_t>> group_index(const std::vector<int>& groups) {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < groups.size(); ++i) out[groups[i]].push_back(i);
    return out;
}

std::vector<double> mean_of_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
    std::vector<double> mean(m.rows(), 0.0);
    for (std::size_t c : cols)
        for (std::size_t r = 0; r < m.rows(); ++r) mean[r] += m(r, c);
    const double denom = static_cast<double>(cols.size());
    for (double& v : mean) v /= denom;
    return mean;
}

Matrix subtract_mean(const Matrix& m, const std::vector<double>& mean) {
    Matrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c) - mean[r];
    return out;
}

PairingMatrix initial_pairing(const std::vector<int>& groups,
                              const std::vector<int>& groups_prime,
                              InitPairing init, std::uint64_t seed) {
    const auto left = group_index(groups);
    const auto right = group_index(groups_prime);
    Rng rng(seed);
    std::vector<IndexPair> pairs;
    for (const auto& [g, li] : left) {
        auto it = right.find(g);
        if (it == right.end()) continue;
        std::vector<std::size_t> a = li;
        std::vector<std::size_t> b = it->second;
        if (init == InitPairing::RandomWithinGroup) {
            rng.shuffle(a);
            rng.shuffle(b);
        }
        const std::size_t m = std::min(a.size(), b.size());
        for (std::size_t k = 0; k < m; ++k) pairs.emplace_back(a[k], b[k]);
    }
    return PairingMatrix::from_pairs(groups.size(), groups_prime.size(), std::move(pairs));
}

PairingMatrix assignment_step_impl(const Matrix& h, const Matrix& h_prime,
                                   const ProjectionPair& proj,
                                   const std::vector<int>& groups,
                                   const std::vector<int>& groups_prime,
                                   bool drop_negative_pairs, bool warn) {
    if (groups.size() != h.cols() || groups_prime.size() != h_prime.cols())
        throw ShapeError("assignment_step: group labels do not cover all samples");
    const Matrix p = project_modality(proj, h, Modality::Vision);
    const Matrix p_prime = project_modality(proj, h_prime, Modality::Tactile);

    const auto left = group_index(groups);
    const auto right = group_index(groups_prime);
    std::vector<IndexPair> pairs;
    for (const auto& [g, li] : left) {
        auto it = right.find(g);
        if (it == right.end()) {
            if (warn)
                std::cerr << "warning: group " << g << " has no tactile samples; skipped\n";
            continue;
        }
        const auto& ri = it->second;
        Matrix score(li.size(), ri.size());
        for (std::size_t a = 0; a < li.size(); ++a) {
            for (std::size_t b = 0; b < ri.size(); ++b) {
                double dot = 0.0;
                for (std::size_t k = 0; k < proj.q; ++k)
                    dot += p(k, li[a]) * p_prime(k, ri[b]);
                score(a, b) = dot;
            }
        }
        const Matching match = solve_max_assignment(score);
        for (const auto& [a, b] : match.pairs) {
            if (drop_negative_pairs && score(a, b) < 0.0) continue;
            pairs.emplace_back(li[a], ri[b]);
        }
    }
    if (warn) {
        for (const auto& [g, ri] : right) {
            if (!left.count(g))
                std::cerr << "warning: group " << g << " has no vision samples; skipped\n";
        }
    }
    return PairingMatrix::from_pairs(groups.size(), groups_prime.size(), std::move(pairs));
}

}  // namespace

ProjectionPair mca_fit(const Matrix& h, const Matrix& h_prime,
                       const PairingMatrix& pairing, std::size_t q) {
    if (pairing.empty()) throw EmptyPairing("mca_fit: no pairs to fit on");
    if (h.cols() != pairing.n() || h_prime.cols() != pairing.n_prime())
        throw ShapeError("mca_fit: pairing shape does not match sample counts");
    if (q < 1 || q > std::min({h.rows(), h_prime.rows(), pairing.size()}))
        throw DimensionError("mca_fit: q out of range");

    CenterResult ca = center_columns(h);
    CenterResult cb = center_columns(h_prime);
    const Matrix c = cross_covariance(ca.centered, cb.centered, pairing);
    SvdResult svd = truncated_svd(c, q);

    ProjectionPair out;
    out.w = std::move(svd.left);
    out.w_prime = std::move(svd.right);
    out.sigma = std::move(svd.sigma);
    out.mean = std::move(ca.mean);
    out.mean_prime = std::move(cb.mean);
    out.q = q;
    return out;
}

PairingMatrix assignment_step(const Matrix& h, const Matrix& h_prime,
                              const ProjectionPair& proj,
                              const std::vector<int>& groups,
                              const std::vector<int>& groups_prime,
                              bool drop_negative_pairs) {
    return assignment_step_impl(h, h_prime, proj, groups, groups_prime,
                                drop_negative_pairs, /*warn=*/true);
}

DmcaResult dmca_fit(const Matrix& h, const Matrix& h_prime,
                    const std::vector<int>& groups,
                    const std::vector<int>& groups_prime,
                    std::size_t q, const DmcaConfig& config) {
    if (groups.size() != h.cols() || groups_prime.size() != h_prime.cols())
        throw ShapeError("dmca_fit: group labels do not cover all samples");
    if (config.max_iters < 1) throw InvalidData("dmca_fit: max_iters must be >= 1");

    PairingMatrix pairing =
        initial_pairing(groups, groups_prime, config.init, config.seed);
    if (pairing.empty())
        throw EmptyPairing("dmca_fit: no group is present in both modalities");
    if (q < 1 || q > std::min({h.rows(), h_prime.rows(), pairing.size()}))
        throw DimensionError("dmca_fit: q out of range");

    // Means over the initially matched columns, frozen for the whole run.
    std::vector<std::size_t> init_left, init_right;
    for (const auto& [i, j] : pairing.pairs()) {
        init_left.push_back(i);
        init_right.push_back(j);
    }
    const std::vector<double> mean = mean_of_columns(h, init_left);
    const std::vector<double> mean_prime = mean_of_columns(h_prime, init_right);
    const Matrix hc = subtract_mean(h, mean);
    const Matrix hc_prime = subtract_mean(h_prime, mean_prime);

    DmcaResult result;
    result.trace.converged = false;
    double prev_objective = -std::numeric_limits<double>::infinity();

    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        const Matrix c = cross_covariance(hc, hc_prime, pairing);
        SvdResult svd = truncated_svd(c, q);
        double obj = 0.0;
        for (double s : svd.sigma) obj += s;

        result.projection.w = std::move(svd.left);
        result.projection.w_prime = std::move(svd.right);
        result.projection.sigma = std::move(svd.sigma);
        result.projection.mean = mean;
        result.projection.mean_prime = mean_prime;
        result.projection.q = q;

        PairingMatrix next =
            assignment_step_impl(h, h_prime, result.projection, groups, groups_prime,
                                 config.drop_negative_pairs, /*warn=*/iter == 0);

        result.trace.objectives.push_back(obj);
        result.trace.pairings_changed.push_back(next.difference_count(pairing));
        result.trace.iterations = iter + 1;

        const bool pairing_stable = next == pairing;
        pairing = std::move(next);
        if (pairing_stable) {
            result.trace.converged = true;
            break;
        }
        if (iter > 0 && obj - prev_objective <= config.tol * std::max(1.0, std::abs(obj))) {
            result.trace.converged = true;
            break;
        }
        prev_objective = obj;
    }

    result.pairing = std::move(pairing);
    return result;
}

double objective(const Matrix& h, const Matrix& h_prime,
                 const ProjectionPair& proj, const PairingMatrix& pairing) {
    if (h.cols() != pairing.n() || h_prime.cols() != pairing.n_prime())
        throw ShapeError("objective: pairing shape does not match sample counts");
    const Matrix p = project_modality(proj, h, Modality::Vision);
    const Matrix p_prime = project_modality(proj, h_prime, Modality::Tactile);
    double total = 0.0;
    for (const auto& [i, j] : pairing.pairs()) {
        for (std::size_t k = 0; k < proj.q; ++k) total += p(k, i) * p_prime(k, j);
    }
    return total;
}

Matrix project_modality(const ProjectionPair& proj, const Matrix& m, Modality modality) {
    if (modality == Modality::Vision) return project(proj.w, m, proj.mean);
    return project(proj.w_prime, m, proj.mean_prime);
}

void save_model(std::ostream& out, const ProjectionPair& proj, const ModelMeta& meta) {
    nlohmann::ordered_json header;
    header["format"] = "dmca-model";
    header["version"] = 1;
    header["q"] = proj.q;
    header["seed"] = meta.seed;
    header["iterations"] = meta.iterations;
    header["objective"] = meta.objective;
    header["converged"] = meta.converged;
    out << header.dump() << '\n';

    save_dmat(out, proj.w);
    save_dmat(out, proj.w_prime);
    Matrix sigma(proj.sigma.size(), 1);
    for (std::size_t i = 0; i < proj.sigma.size(); ++i) sigma(i, 0) = proj.sigma[i];
    save_dmat(out, sigma);
    Matrix mean(proj.mean.size(), 1);
    for (std::size_t i = 0; i < proj.mean.size(); ++i) mean(i, 0) = proj.mean[i];
    save_dmat(out, mean);
    Matrix mean_prime(proj.mean_prime.size(), 1);
    for (std::size_t i = 0; i < proj.mean_prime.size(); ++i)
        mean_prime(i, 0) = proj.mean_prime[i];
    save_dmat(out, mean_prime);
}

std::pair<ProjectionPair, ModelMeta> load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("model: missing header line");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model: bad header: ") + e.what());
    }
    if (!header.contains("format") || header["format"] != "dmca-model")
        throw FormatError("model: wrong format tag");
    if (!header.contains("version") || header["version"] != 1)
        throw FormatError("model: unsupported version");

    ProjectionPair proj;
    ModelMeta meta;
    try {
        proj.q = header.at("q").get<std::size_t>();
        meta.seed = header.at("seed").get<std::uint64_t>();
        meta.iterations = header.at("iterations").get<std::size_t>();
        meta.objective = header.at("objective").get<double>();
        meta.converged = header.at("converged").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model: bad header field: ") + e.what());
    }

    proj.w = load_dmat(in);
    proj.w_prime = load_dmat(in);
    const Matrix sigma = load_dmat(in);
    const Matrix mean = load_dmat(in);
    const Matrix mean_prime = load_dmat(in);
    if (sigma.cols() != 1 || mean.cols() != 1 || mean_prime.cols() != 1)
        throw FormatError("model: vector block is not a column");
    if (proj.w.cols() != proj.q || proj.w_prime.cols() != proj.q ||
        sigma.rows() != proj.q || mean.rows() != proj.w.rows() ||
        mean_prime.rows() != proj.w_prime.rows())
        throw FormatError("model: inconsistent block shapes");
    proj.sigma.assign(sigma.data().begin(), sigma.data().end());
    proj.mean.assign(mean.data().begin(), mean.data().end());
    proj.mean_prime.assign(mean_prime.data().begin(), mean_prime.data().end());
    return {std::move(proj), meta};
}

}  // namespace dmca
