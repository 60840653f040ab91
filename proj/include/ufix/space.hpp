#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ufix {

/// A point of the carrier space: a finite coordinate vector of fixed
/// dimension d >= 1. Coordinates must be finite doubles.
class Point {
public:
    Point() = default;

    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
        if (coords_.empty())
            throw std::invalid_argument("Point: dimension must be >= 1");
        for (double c : coords_)
            if (!std::isfinite(c))
                throw std::invalid_argument("Point: coordinates must be finite");
    }

    Point(std::initializer_list<double> coords)
        : Point(std::vector<double>(coords)) {}

    std::size_t dimension() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.coords_ == b.coords_;
    }

private:
    std::vector<double> coords_;
};

/// Lexicographic coordinate order; the tie-break and storage order used
/// throughout the library.
inline bool lex_less(const Point& a, const Point& b) {
    const std::size_t n = std::min(a.dimension(), b.dimension());
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j] < b[j]) return true;
        if (b[j] < a[j]) return false;
    }
    return a.dimension() < b.dimension();
}

enum class PseudometricKind {
    AbsoluteDifference,  // w * sum_{j in S} |x_j - y_j|
    Euclidean,           // w * sqrt(sum_{j in S} (x_j - y_j)^2)
};

/// One member d_i of the family: a weighted distance over a coordinate
/// subset. Members over proper subsets vanish on points that differ only
/// outside the subset, so a single member need not separate points.
struct PseudometricSpec {
    PseudometricKind kind = PseudometricKind::AbsoluteDifference;
    double weight = 1.0;
    std::vector<std::size_t> coords;  // nonempty, each < space dimension
};

/// Finite indexed family {d_i : i in I} of pseudometrics on R^d.
/// Immutable after construction; evaluation is pure.
class PseudometricFamily {
public:
    PseudometricFamily(std::size_t dimension, std::vector<PseudometricSpec> members)
        : dimension_(dimension), members_(std::move(members)) {
        if (dimension_ == 0)
            throw std::invalid_argument("PseudometricFamily: dimension must be >= 1");
        if (members_.empty())
            throw std::invalid_argument("PseudometricFamily: at least one member required");
        for (const auto& m : members_) {
            if (!(m.weight > 0.0) || !std::isfinite(m.weight))
                throw std::invalid_argument("PseudometricFamily: weights must be strictly positive");
            if (m.coords.empty())
                throw std::invalid_argument("PseudometricFamily: coordinate subset must be nonempty");
            for (std::size_t j : m.coords)
                if (j >= dimension_)
                    throw std::invalid_argument("PseudometricFamily: coordinate index out of range");
        }
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return members_.size(); }
    const PseudometricSpec& member(std::size_t i) const { return members_[i]; }
    const std::vector<PseudometricSpec>& members() const { return members_; }

    /// d_i(x, y). Exactly symmetric; zero on the diagonal.
    double eval(std::size_t i, const Point& x, const Point& y) const {
        if (i >= members_.size())
            throw std::invalid_argument("eval_pseudometric: index out of range");
        check_dimension(x);
        check_dimension(y);
        const PseudometricSpec& m = members_[i];
        double acc = 0.0;
        switch (m.kind) {
            case PseudometricKind::AbsoluteDifference:
                for (std::size_t j : m.coords) acc += std::abs(x[j] - y[j]);
                break;
            case PseudometricKind::Euclidean:
                for (std::size_t j : m.coords) {
                    const double t = x[j] - y[j];
                    acc += t * t;
                }
                acc = std::sqrt(acc);
                break;
        }
        return m.weight * acc;
    }

    /// Family with every weight multiplied by lambda > 0.
    PseudometricFamily scaled(double lambda) const {
        if (!(lambda > 0.0))
            throw std::invalid_argument("PseudometricFamily::scaled: lambda must be > 0");
        std::vector<PseudometricSpec> scaled_members = members_;
        for (auto& m : scaled_members) m.weight *= lambda;
        return PseudometricFamily(dimension_, std::move(scaled_members));
    }

    void check_dimension(const Point& x) const {
        if (x.dimension() != dimension_)
            throw std::invalid_argument("dimension mismatch: point has dimension " +
                                        std::to_string(x.dimension()) + ", family expects " +
                                        std::to_string(dimension_));
    }

private:
    std::size_t dimension_;
    std::vector<PseudometricSpec> members_;
};

/// A basic entourage V(i, eps) = {(x, y) : d_i(x, y) < eps}.
struct Entourage {
    std::size_t index;
    double epsilon;

    Entourage(std::size_t index_, double epsilon_) : index(index_), epsilon(epsilon_) {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("Entourage: epsilon must be > 0");
    }
};

inline double eval_pseudometric(const PseudometricFamily& family, std::size_t i,
                                const Point& x, const Point& y) {
    return family.eval(i, x, y);
}

/// Augmented diameter D*(A): max over all indices and all point pairs of
/// d_i. Zero for singletons; always finite here (finite set, finite family).
inline double augmented_diameter(const PseudometricFamily& family,
                                 std::span<const Point> points) {
    if (points.empty())
        throw std::invalid_argument("augmented_diameter: set must be nonempty");
    double best = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t p = 0; p < points.size(); ++p)
            for (std::size_t q = p + 1; q < points.size(); ++q)
                best = std::max(best, family.eval(i, points[p], points[q]));
    return best;
}

/// Strict membership test: d_i(x, y) < eps.
inline bool entourage_contains(const PseudometricFamily& family, const Entourage& e,
                               const Point& x, const Point& y) {
    return family.eval(e.index, x, y) < e.epsilon;
}

}  // namespace ufix
