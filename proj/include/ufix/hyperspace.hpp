#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ufix/space.hpp"

namespace ufix {

/// A nonempty finite point set, the computational stand-in for a compact
/// element of the hyperspace. Points are stored sorted lexicographically,
/// so storage order is deterministic across runs and platforms.
///
/// With dedup_tolerance == 0 only exact coordinate duplicates collapse.
/// The family-aware constructor additionally drops points within
/// dedup_tolerance of an already kept point under the max-over-index
/// aggregate distance.
class FiniteSet {
public:
    explicit FiniteSet(std::vector<Point> points) : dedup_tolerance_(0.0) {
        init_exact(std::move(points));
    }

    FiniteSet(std::vector<Point> points, const PseudometricFamily& family,
              double dedup_tolerance)
        : dedup_tolerance_(dedup_tolerance) {
        if (dedup_tolerance < 0.0)
            throw std::invalid_argument("FiniteSet: dedup_tolerance must be >= 0");
        init_exact(std::move(points));
        if (dedup_tolerance_ > 0.0) {
            std::vector<Point> kept;
            kept.reserve(points_.size());
            for (const Point& p : points_) {
                bool close = false;
                for (const Point& k : kept) {
                    double agg = 0.0;
                    for (std::size_t i = 0; i < family.size(); ++i)
                        agg = std::max(agg, family.eval(i, p, k));
                    if (agg <= dedup_tolerance_) {
                        close = true;
                        break;
                    }
                }
                if (!close) kept.push_back(p);
            }
            points_ = std::move(kept);
        }
    }

    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return points_.front().dimension(); }
    const Point& operator[](std::size_t k) const { return points_[k]; }
    const std::vector<Point>& points() const { return points_; }
    std::span<const Point> span() const { return {points_.data(), points_.size()}; }
    double dedup_tolerance() const { return dedup_tolerance_; }

    bool contains(const Point& p) const {
        return std::any_of(points_.begin(), points_.end(),
                           [&](const Point& q) { return q == p; });
    }

    friend bool operator==(const FiniteSet& a, const FiniteSet& b) {
        return a.points_ == b.points_;
    }

private:
    void init_exact(std::vector<Point> points) {
        if (points.empty())
            throw std::invalid_argument("FiniteSet: set must be nonempty");
        const std::size_t dim = points.front().dimension();
        for (const Point& p : points)
            if (p.dimension() != dim)
                throw std::invalid_argument("FiniteSet: mixed point dimensions");
        std::sort(points.begin(), points.end(), lex_less);
        points.erase(std::unique(points.begin(), points.end()), points.end());
        points_ = std::move(points);
    }

    std::vector<Point> points_;
    double dedup_tolerance_;
};

inline double augmented_diameter(const PseudometricFamily& family, const FiniteSet& A) {
    return augmented_diameter(family, A.span());
}

/// Point-to-set distance d_i(x, A) = min over a in A of d_i(x, a).
/// The infimum is attained because A is finite.
inline double point_set_distance(const PseudometricFamily& family, std::size_t i,
                                 const Point& x, const FiniteSet& A) {
    double best = family.eval(i, x, A[0]);
    for (std::size_t k = 1; k < A.size(); ++k)
        best = std::min(best, family.eval(i, x, A[k]));
    return best;
}

namespace detail {

inline double directed_hausdorff(const PseudometricFamily& family, std::size_t i,
                                 const FiniteSet& A, const FiniteSet& B) {
    double sup = 0.0;
    for (std::size_t p = 0; p < A.size(); ++p) {
        double inf = family.eval(i, A[p], B[0]);
        for (std::size_t q = 1; q < B.size(); ++q)
            inf = std::min(inf, family.eval(i, A[p], B[q]));
        sup = std::max(sup, inf);
    }
    return sup;
}

}  // namespace detail

/// Induced Hausdorff pseudometric
/// H_i(A, B) = max{ sup_a d_i(a, B), sup_b d_i(A, b) }.
inline double hausdorff(const PseudometricFamily& family, std::size_t i,
                        const FiniteSet& A, const FiniteSet& B) {
    return std::max(detail::directed_hausdorff(family, i, A, B),
                    detail::directed_hausdorff(family, i, B, A));
}

/// Hyperspace entourage membership: H_i(A, B) < eps, strict.
inline bool hyper_entourage_contains(const PseudometricFamily& family, std::size_t i,
                                     double epsilon, const FiniteSet& A,
                                     const FiniteSet& B) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("hyper_entourage_contains: epsilon must be > 0");
    return hausdorff(family, i, A, B) < epsilon;
}

struct NearestPoint {
    Point point;                    // the selected member of A
    std::vector<double> distances;  // d_i(x, point) for every index i
};

/// Selects the member of A minimizing the aggregate max over i of d_i(x, a).
/// Ties resolve to the lexicographically smallest candidate, which is the
/// first one encountered in storage order.
inline NearestPoint nearest_point(const PseudometricFamily& family, const Point& x,
                                  const FiniteSet& A) {
    const std::size_t n = family.size();
    std::vector<double> best_dists(n);
    std::size_t best_k = 0;
    double best_agg = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k) {
        std::vector<double> dists(n);
        double agg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dists[i] = family.eval(i, x, A[k]);
            agg = std::max(agg, dists[i]);
        }
        if (k == 0 || agg < best_agg) {
            best_agg = agg;
            best_k = k;
            best_dists = std::move(dists);
        }
    }
    return NearestPoint{A[best_k], std::move(best_dists)};
}

}  // namespace ufix
