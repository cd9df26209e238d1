#ifndef SANAV_PACCET_HPP
#define SANAV_PACCET_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "sanav/geometry.hpp"

// Per-tick multi-objective ranking. Every call builds its archive from scratch;
// nothing carries over between planning ticks.
namespace sanav::paccet {

using ObjectiveVector = std::vector<double>;

inline constexpr double jitter = 1e-9;
inline constexpr double degenerate_range = 1e-12;
inline constexpr double bisection_tolerance = 1e-6;

// u is dominated by v under minimization: v <= u componentwise and v != u.
inline bool dominates(std::span<const double> v, std::span<const double> u) {
    bool strictly = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > u[i]) return false;
        if (v[i] < u[i]) strictly = true;
    }
    return strictly;
}

struct ParetoArchive {
    std::vector<std::size_t> members; // candidate indices, ascending
    std::vector<ObjectiveVector> points;
    ObjectiveVector utopia;
    ObjectiveVector nadir;

    [[nodiscard]] bool dominated(std::span<const double> v) const {
        return std::any_of(points.begin(), points.end(), [&](const auto& a) { return dominates(a, v); });
    }
};

// Non-dominated subset of the candidates; utopia and nadir span all candidates.
inline ParetoArchive pareto_filter(std::span<const ObjectiveVector> candidates) {
    ParetoArchive archive;
    if (candidates.empty()) return archive;
    const std::size_t dim = candidates.front().size();
    if (dim == 0) throw Error("pareto_filter: empty objective vectors");
    for (const auto& c : candidates)
        if (c.size() != dim) throw Error("pareto_filter: mixed objective vector lengths");

    archive.utopia = candidates.front();
    archive.nadir = candidates.front();
    for (const auto& c : candidates) {
        for (std::size_t i = 0; i < dim; ++i) {
            archive.utopia[i] = std::min(archive.utopia[i], c[i]);
            archive.nadir[i] = std::max(archive.nadir[i], c[i]);
        }
    }

    // In lexicographic order a vector can only be dominated by one before it,
    // and any dominating vector is itself dominated by a survivor.
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(candidates[a].begin(), candidates[a].end(), candidates[b].begin(),
                                            candidates[b].end());
    });
    std::vector<std::size_t> kept;
    for (std::size_t idx : order) {
        const bool beaten = std::any_of(kept.begin(), kept.end(),
                                        [&](std::size_t k) { return dominates(candidates[k], candidates[idx]); });
        if (!beaten) kept.push_back(idx);
    }
    std::sort(kept.begin(), kept.end());
    archive.members = kept;
    for (std::size_t k : kept) archive.points.push_back(candidates[k]);
    return archive;
}

// Maps v into the unit box spanned by utopia (0) and nadir (1). Components
// with a vanishing range map to 0.
inline std::vector<double> normalize(const ParetoArchive& archive, std::span<const double> v) {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double range = archive.nadir[i] - archive.utopia[i];
        out[i] = range < degenerate_range ? 0.0 : (v[i] - archive.utopia[i]) / range;
    }
    return out;
}

// Smallest mu >= 0 such that mu * direction is dominated-or-equaled by some
// archive point, i.e. where the ray from the origin enters the region the
// archive dominates. Bisection on [0, sqrt(n)]; returns sqrt(n) when the ray
// never enters it there.
inline double ray_boundary_scale(std::span<const std::vector<double>> archive_norm, std::span<const double> direction) {
    const std::size_t n = direction.size();
    const double hi_limit = std::sqrt(static_cast<double>(n));
    auto covered = [&](double mu) {
        for (const auto& a : archive_norm) {
            bool all = true;
            for (std::size_t i = 0; i < n && all; ++i) all = a[i] <= mu * direction[i];
            if (all) return true;
        }
        return false;
    };
    if (covered(0.0)) return 0.0;
    if (!covered(hi_limit)) return hi_limit;
    double lo = 0.0, hi = hi_limit;
    const int iterations = static_cast<int>(std::ceil(std::log2(hi_limit / bisection_tolerance)));
    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        (covered(mid) ? hi : lo) = mid;
    }
    return hi;
}

// Archive normalized into the unit box and shifted by the positive jitter.
inline std::vector<std::vector<double>> normalized_archive(const ParetoArchive& archive) {
    std::vector<std::vector<double>> out;
    out.reserve(archive.points.size());
    for (const auto& p : archive.points) {
        auto w = normalize(archive, p);
        for (auto& x : w) x += jitter;
        out.push_back(std::move(w));
    }
    return out;
}

// Fitness of v against the tick's archive; lower is better.
//
// Dominated vectors are scored by how far past the dominance boundary they
// sit along their own ray from the utopia point: |w| / mu*, never below 1.
// Non-dominated vectors are scored by the same ray ratio taken against the
// convex unit box instead of the (possibly concave) front, which reduces to
// the largest normalized component and is at most 1. The front therefore
// always ranks ahead of dominated vectors, and among front vectors balanced
// trade-offs rank ahead of ones that sacrifice a single objective.
inline double paccet_fitness(const ParetoArchive& archive, std::span<const double> v,
                             std::span<const std::vector<double>> archive_norm) {
    const auto norm = normalize(archive, v);
    if (!archive.dominated(v)) return norm.empty() ? 0.0 : *std::max_element(norm.begin(), norm.end());

    std::vector<double> w = norm;
    for (auto& x : w) x += jitter;
    double len = 0.0;
    for (double x : w) len += x * x;
    len = std::sqrt(len);
    if (len < degenerate_range) return 0.0;
    std::vector<double> dir(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) dir[i] = w[i] / len;
    const double mu = ray_boundary_scale(archive_norm, dir);
    if (mu <= 0.0) return std::numeric_limits<double>::infinity();
    return std::max(1.0, len / mu);
}

inline double paccet_fitness(const ParetoArchive& archive, std::span<const double> v) {
    const auto norm_archive = normalized_archive(archive);
    return paccet_fitness(archive, v, norm_archive);
}

struct Ranking {
    std::vector<std::size_t> order; // candidate indices, best first
    std::vector<double> fitness;    // per candidate index
    std::vector<bool> dominated;    // per candidate index
};

// Sorts candidates ascending by fitness; ties go to the non-dominated vector,
// then the lower tie_break value (base cost), then the lower index.
inline Ranking rank(std::span<const ObjectiveVector> candidates, std::span<const double> tie_break) {
    if (candidates.empty()) throw Error("rank: no candidates (planner stuck)");
    Ranking r;
    const auto archive = pareto_filter(candidates);
    const auto archive_norm = normalized_archive(archive);
    r.fitness.resize(candidates.size());
    r.dominated.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        r.fitness[i] = paccet_fitness(archive, candidates[i], archive_norm);
        r.dominated[i] = !std::binary_search(archive.members.begin(), archive.members.end(), i);
    }
    r.order.resize(candidates.size());
    std::iota(r.order.begin(), r.order.end(), 0);
    std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
        if (r.fitness[a] != r.fitness[b]) return r.fitness[a] < r.fitness[b];
        if (r.dominated[a] != r.dominated[b]) return !r.dominated[a];
        const double ta = tie_break.empty() ? 0.0 : tie_break[a];
        const double tb = tie_break.empty() ? 0.0 : tie_break[b];
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return r;
}

} // namespace sanav::paccet

#endif
