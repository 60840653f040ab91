#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ufix/hyperspace.hpp"
#include "ufix/multifunction.hpp"
#include "ufix/space.hpp"

namespace ufix {

/// Per-index coefficient triple (a_i, b_i, c_i).
struct CoefficientTriple {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Exponent r and one coefficient triple per family index.
/// Valid when r >= 1 and 0 < b_i + c_i < 1 for every i.
struct ContractionParams {
    int r = 1;
    std::vector<CoefficientTriple> coefficients;

    void validate(std::size_t family_size) const {
        if (r < 1)
            throw std::invalid_argument("ContractionParams: r must be >= 1");
        if (coefficients.size() != family_size)
            throw std::invalid_argument("ContractionParams: need one coefficient triple per index (got " +
                                        std::to_string(coefficients.size()) + ", family has " +
                                        std::to_string(family_size) + ")");
        for (const auto& t : coefficients) {
            const double k = t.b + t.c;
            if (!(k > 0.0 && k < 1.0))
                throw std::invalid_argument("ContractionParams: b + c must lie in (0, 1)");
        }
    }
};

namespace detail {

/// Integer power with the convention 0^0 = 1, so that exponent-zero factors
/// drop out of the r = 1 inequality.
inline double ipow(double base, int exp) {
    double out = 1.0;
    for (int k = 0; k < exp; ++k) out *= base;
    return out;
}

inline double min3(double a, double b, double c) {
    return std::min(std::min(a, b), c);
}

}  // namespace detail

struct ConditionSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// A pair counts as a violation only when lhs exceeds rhs by more than this
/// relative slack, so equality boundaries are not flagged.
inline constexpr double kConditionSlack = 1e-12;

inline bool condition_holds(const ConditionSides& s) {
    return s.lhs <= s.rhs + kConditionSlack * std::max(1.0, std::abs(s.rhs));
}

/// Evaluates both sides of the set-valued contraction inequality at (i,x,y):
///
///   min{H_i(Fx,Fy)^r, d_i(x,Fx)*d_i(y,Fy)^(r-1), d_i(y,Fy)^r}
///     + a_i * min{d_i(x,Fy), d_i(y,Fx)}
///   <=  [b_i*d_i(x,Fx) + c_i*d_i(x,y)] * d_i(y,Fy)^(r-1)
inline ConditionSides condition_sides(const Multifunction& F, const ContractionParams& params,
                                      const PseudometricFamily& family, std::size_t i,
                                      const Point& x, const Point& y) {
    params.validate(family.size());
    if (i >= family.size())
        throw std::invalid_argument("condition_sides: index out of range");
    family.check_dimension(x);
    family.check_dimension(y);
    if (F.dimension() != family.dimension())
        throw std::invalid_argument("condition_sides: map/family dimension mismatch");

    const FiniteSet fx = F.evaluate(x);
    const FiniteSet fy = F.evaluate(y);
    const double h = hausdorff(family, i, fx, fy);
    const double dx_fx = point_set_distance(family, i, x, fx);
    const double dy_fy = point_set_distance(family, i, y, fy);
    const double dx_fy = point_set_distance(family, i, x, fy);
    const double dy_fx = point_set_distance(family, i, y, fx);
    const double dxy = family.eval(i, x, y);

    const CoefficientTriple& t = params.coefficients[i];
    const int r = params.r;
    const double tail = detail::ipow(dy_fy, r - 1);

    ConditionSides s;
    s.lhs = detail::min3(detail::ipow(h, r), dx_fx * tail, detail::ipow(dy_fy, r)) +
            t.a * std::min(dx_fy, dy_fx);
    s.rhs = (t.b * dx_fx + t.c * dxy) * tail;
    return s;
}

/// True iff the inequality holds at (x, y) for every index of the family.
inline bool holds_at(const Multifunction& F, const ContractionParams& params,
                     const PseudometricFamily& family, const Point& x, const Point& y) {
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!condition_holds(condition_sides(F, params, family, i, x, y)))
            return false;
    return true;
}

/// Axis-aligned box region, nondegenerate in every coordinate.
struct Region {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dimension() const { return lo.size(); }

    void validate() const {
        if (lo.empty() || lo.size() != hi.size())
            throw std::invalid_argument("Region: lo/hi must be nonempty and of equal length");
        for (std::size_t j = 0; j < lo.size(); ++j) {
            if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]))
                throw std::invalid_argument("Region: bounds must be finite");
            if (!(hi[j] > lo[j]))
                throw std::invalid_argument("Region: degenerate in coordinate " + std::to_string(j));
        }
    }

    Point center() const {
        std::vector<double> c(lo.size());
        for (std::size_t j = 0; j < lo.size(); ++j) c[j] = 0.5 * (lo[j] + hi[j]);
        return Point(std::move(c));
    }

    /// Corners in binary-counting order, axis 0 as the least significant bit.
    std::vector<Point> corners() const {
        const std::size_t d = lo.size();
        std::vector<Point> out;
        out.reserve(std::size_t{1} << d);
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            std::vector<double> c(d);
            for (std::size_t j = 0; j < d; ++j) c[j] = (mask >> j) & 1 ? hi[j] : lo[j];
            out.push_back(Point(std::move(c)));
        }
        return out;
    }
};

struct Violation {
    Point x;
    Point y;
    std::size_t index = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ConditionReport {
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    std::size_t pairs_checked = 0;
    std::vector<Violation> violations;
    bool holds_on_sample = true;  // == violations.empty()
};

namespace detail {

/// Maps raw 64-bit engine output to [0, 1) without the distribution
/// machinery, keeping the stream identical across platforms.
inline double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline Point sample_point(std::mt19937_64& engine, const Region& region) {
    std::vector<double> c(region.dimension());
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = region.lo[j] + uniform01(engine) * (region.hi[j] - region.lo[j]);
    return Point(std::move(c));
}

/// Deterministic probe pairs evaluated before any random sampling: every
/// ordered pair over the corner points and the center, diagonal included.
inline std::vector<std::pair<Point, Point>> probe_pairs(const Region& region) {
    std::vector<Point> pts = region.corners();
    pts.push_back(region.center());
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(pts.size() * pts.size());
    for (const Point& p : pts)
        for (const Point& q : pts) pairs.emplace_back(p, q);
    return pairs;
}

template <typename SidesFn>
ConditionReport run_scan(const PseudometricFamily& family, const Region& region,
                         std::size_t budget, std::uint64_t seed, SidesFn&& sides) {
    region.validate();
    if (budget < 1) throw std::invalid_argument("scan: budget must be >= 1");
    if (region.dimension() != family.dimension())
        throw std::invalid_argument("scan: region/family dimension mismatch");

    ConditionReport report;
    report.seed = seed;
    report.budget = budget;

    auto check_pair = [&](const Point& x, const Point& y) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            const ConditionSides s = sides(i, x, y);
            if (!condition_holds(s))
                report.violations.push_back(Violation{x, y, i, s.lhs, s.rhs});
        }
        ++report.pairs_checked;
    };

    for (const auto& [x, y] : probe_pairs(region)) check_pair(x, y);

    std::mt19937_64 engine(seed);
    for (std::size_t n = 0; n < budget; ++n) {
        const Point x = sample_point(engine, region);
        const Point y = sample_point(engine, region);
        check_pair(x, y);
    }

    report.holds_on_sample = report.violations.empty();
    return report;
}

}  // namespace detail

/// Samples the inequality over region x region: the deterministic probe
/// pairs first, then `budget` seeded pseudo-random pairs. An empty violation
/// list is a sample result, not a proof.
inline ConditionReport scan(const Multifunction& F, const ContractionParams& params,
                            const PseudometricFamily& family, const Region& region,
                            std::size_t budget, std::uint64_t seed) {
    params.validate(family.size());
    return detail::run_scan(family, region, budget, seed,
                            [&](std::size_t i, const Point& x, const Point& y) {
                                return condition_sides(F, params, family, i, x, y);
                            });
}

using SingleValuedMap = std::function<Point(const Point&)>;

/// Both sides of the minus-sign variant for a single-valued map T:
///
///   min{d_i(Tx,Ty), d_i(x,Tx), d_i(y,Ty)} - min{d_i(x,Ty), d_i(y,Tx)}
///     <=  b_i*d_i(x,Tx) + c_i*d_i(x,y)
inline ConditionSides corollary_sides(const SingleValuedMap& T, double b, double c,
                                      const PseudometricFamily& family, std::size_t i,
                                      const Point& x, const Point& y) {
    if (i >= family.size())
        throw std::invalid_argument("corollary_sides: index out of range");
    const double k = b + c;
    if (!(k > 0.0 && k < 1.0))
        throw std::invalid_argument("corollary_sides: b + c must lie in (0, 1)");
    family.check_dimension(x);
    family.check_dimension(y);

    const Point tx = T(x);
    const Point ty = T(y);
    const double d_txty = family.eval(i, tx, ty);
    const double d_xtx = family.eval(i, x, tx);
    const double d_yty = family.eval(i, y, ty);
    const double d_xty = family.eval(i, x, ty);
    const double d_ytx = family.eval(i, y, tx);

    ConditionSides s;
    s.lhs = detail::min3(d_txty, d_xtx, d_yty) - std::min(d_xty, d_ytx);
    s.rhs = b * d_xtx + c * family.eval(i, x, y);
    return s;
}

/// Samples the minus-sign condition the same way scan samples the
/// set-valued one; b and c are shared across indices here.
inline ConditionReport scan_corollary(const SingleValuedMap& T, double b, double c,
                                      const PseudometricFamily& family, const Region& region,
                                      std::size_t budget, std::uint64_t seed) {
    return detail::run_scan(family, region, budget, seed,
                            [&](std::size_t i, const Point& x, const Point& y) {
                                return corollary_sides(T, b, c, family, i, x, y);
                            });
}

/// The uniqueness argument applies only when a_i > c_i > 0 for every index.
inline bool uniqueness_applicable(const ContractionParams& params) {
    if (params.coefficients.empty()) return false;
    for (const auto& t : params.coefficients)
        if (!(t.a > t.c && t.c > 0.0)) return false;
    return true;
}

}  // namespace ufix
