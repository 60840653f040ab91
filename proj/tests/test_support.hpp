#pragma once

// Shared test-only helpers: deterministic random generators for points,
// families, and finite sets, plus independent brute-force oracles the
// implementation is checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ufix/hyperspace.hpp"
#include "ufix/space.hpp"

namespace testsup {

using Rng = std::mt19937_64;

inline double rand_in(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t rand_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline ufix::Point random_point(Rng& rng, std::size_t dim, double range = 10.0) {
    std::vector<double> c(dim);
    for (double& v : c) v = rand_in(rng, -range, range);
    return ufix::Point(std::move(c));
}

/// Random family of 1..3 members over a random mix of kinds, weights, and
/// nonempty coordinate subsets.
inline ufix::PseudometricFamily random_family(Rng& rng, std::size_t dim,
                                              std::size_t max_members = 3) {
    const std::size_t count = rand_index(rng, 1, max_members);
    std::vector<ufix::PseudometricSpec> members;
    for (std::size_t i = 0; i < count; ++i) {
        ufix::PseudometricSpec spec;
        spec.kind = rand_index(rng, 0, 1) == 0 ? ufix::PseudometricKind::AbsoluteDifference
                                               : ufix::PseudometricKind::Euclidean;
        spec.weight = rand_in(rng, 0.1, 3.0);
        std::vector<std::size_t> all(dim);
        for (std::size_t j = 0; j < dim; ++j) all[j] = j;
        std::shuffle(all.begin(), all.end(), rng);
        const std::size_t take = rand_index(rng, 1, dim);
        spec.coords.assign(all.begin(), all.begin() + take);
        std::sort(spec.coords.begin(), spec.coords.end());
        members.push_back(std::move(spec));
    }
    return ufix::PseudometricFamily(dim, std::move(members));
}

inline ufix::FiniteSet random_set(Rng& rng, std::size_t dim, std::size_t max_points = 8,
                                  double range = 10.0) {
    const std::size_t count = rand_index(rng, 1, max_points);
    std::vector<ufix::Point> pts;
    for (std::size_t k = 0; k < count; ++k) pts.push_back(random_point(rng, dim, range));
    return ufix::FiniteSet(std::move(pts));
}

/// Independent Hausdorff oracle: plain double loops over both directions,
/// written against the definition rather than the library internals.
inline double brute_force_hausdorff(const ufix::PseudometricFamily& family, std::size_t i,
                                    const ufix::FiniteSet& A, const ufix::FiniteSet& B) {
    double sup_a = 0.0;
    for (std::size_t p = 0; p < A.size(); ++p) {
        double inf = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < B.size(); ++q)
            inf = std::min(inf, family.eval(i, A[p], B[q]));
        sup_a = std::max(sup_a, inf);
    }
    double sup_b = 0.0;
    for (std::size_t q = 0; q < B.size(); ++q) {
        double inf = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < A.size(); ++p)
            inf = std::min(inf, family.eval(i, B[q], A[p]));
        sup_b = std::max(sup_b, inf);
    }
    return std::max(sup_a, sup_b);
}

/// Independent augmented-diameter oracle: full pair-times-index enumeration.
inline double brute_force_diameter(const ufix::PseudometricFamily& family,
                                   const ufix::FiniteSet& A) {
    double best = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t p = 0; p < A.size(); ++p)
            for (std::size_t q = 0; q < A.size(); ++q)
                best = std::max(best, family.eval(i, A[p], A[q]));
    return best;
}

}  // namespace testsup
