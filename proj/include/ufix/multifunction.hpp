#pragma once

#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ufix/hyperspace.hpp"
#include "ufix/space.hpp"

namespace ufix {

/// Dense row-major square-ish matrix, sized for desk-scale dimensions.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major, rows*cols entries

    static Matrix scaled_identity(std::size_t n, double s) {
        Matrix m{n, n, std::vector<double>(n * n, 0.0)};
        for (std::size_t i = 0; i < n; ++i) m.data[i * n + i] = s;
        return m;
    }

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

inline Point apply_affine(const Matrix& m, const std::vector<double>& offset,
                          const Point& x) {
    std::vector<double> out(m.rows, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols; ++c) acc += m.at(r, c) * x[c];
        out[r] = acc + offset[r];
    }
    return Point(std::move(out));
}

/// A total set-valued map F : X -> 2^X with nonempty finite images.
/// Evaluation is deterministic; images come back FiniteSet-normalized
/// (sorted, exact duplicates removed).
class Multifunction {
public:
    using Evaluator = std::function<std::vector<Point>(const Point&)>;

    Multifunction(std::size_t dimension, std::string descriptor, Evaluator evaluator)
        : dimension_(dimension),
          descriptor_(std::move(descriptor)),
          evaluator_(std::move(evaluator)) {
        if (dimension_ == 0)
            throw std::invalid_argument("Multifunction: dimension must be >= 1");
        if (!evaluator_)
            throw std::invalid_argument("Multifunction: evaluator required");
    }

    std::size_t dimension() const { return dimension_; }
    const std::string& descriptor() const { return descriptor_; }

    FiniteSet evaluate(const Point& x) const {
        if (x.dimension() != dimension_)
            throw std::invalid_argument("Multifunction::evaluate: dimension mismatch");
        return FiniteSet(evaluator_(x));
    }

private:
    std::size_t dimension_;
    std::string descriptor_;
    Evaluator evaluator_;
};

/// Embeds a single-valued map T as the multifunction x -> {Tx}.
inline Multifunction lift_single_valued(std::size_t dimension,
                                        std::function<Point(const Point&)> t,
                                        std::string descriptor = "lifted") {
    return Multifunction(dimension, std::move(descriptor),
                         [t = std::move(t)](const Point& x) {
                             return std::vector<Point>{t(x)};
                         });
}

// ---------------------------------------------------------------------------
// Builtin catalog
// ---------------------------------------------------------------------------

struct AffineContractionSpec {
    Matrix matrix;
    std::vector<double> offset;
};

struct MultiAffineSpec {
    std::vector<AffineContractionSpec> branches;  // nonempty
};

struct ScaledSelectorSpec {
    std::vector<double> ratios;  // nonempty; x -> {r_j * x}
};

struct IdentitySpec {};

struct ExpansionSpec {
    double factor;  // > 1
};

using BuiltinSpec = std::variant<AffineContractionSpec, MultiAffineSpec,
                                 ScaledSelectorSpec, IdentitySpec, ExpansionSpec>;

/// Errors in scenario/builtin construction are configuration errors, as
/// opposed to the input errors thrown on bad call arguments.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void check_affine(const AffineContractionSpec& s, std::size_t dimension,
                         const char* name) {
    if (s.matrix.rows != dimension || s.matrix.cols != dimension)
        throw ConfigError(std::string(name) + ": matrix must be " +
                          std::to_string(dimension) + "x" + std::to_string(dimension));
    if (s.matrix.data.size() != dimension * dimension)
        throw ConfigError(std::string(name) + ": matrix storage size mismatch");
    if (s.offset.size() != dimension)
        throw ConfigError(std::string(name) + ": offset dimension mismatch");
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

inline Multifunction make_builtin(const BuiltinSpec& spec, std::size_t dimension) {
    if (dimension == 0) throw ConfigError("make_builtin: dimension must be >= 1");

    if (const auto* s = std::get_if<AffineContractionSpec>(&spec)) {
        detail::check_affine(*s, dimension, "affine_contraction");
        AffineContractionSpec copy = *s;
        return Multifunction(dimension, "affine_contraction(dim=" + std::to_string(dimension) + ")",
                             [copy](const Point& x) {
                                 return std::vector<Point>{apply_affine(copy.matrix, copy.offset, x)};
                             });
    }
    if (const auto* s = std::get_if<MultiAffineSpec>(&spec)) {
        if (s->branches.empty())
            throw ConfigError("multi_affine: at least one branch required");
        for (const auto& b : s->branches) detail::check_affine(b, dimension, "multi_affine");
        MultiAffineSpec copy = *s;
        return Multifunction(dimension,
                             "multi_affine(branches=" + std::to_string(s->branches.size()) +
                                 ",dim=" + std::to_string(dimension) + ")",
                             [copy](const Point& x) {
                                 std::vector<Point> out;
                                 out.reserve(copy.branches.size());
                                 for (const auto& b : copy.branches)
                                     out.push_back(apply_affine(b.matrix, b.offset, x));
                                 return out;
                             });
    }
    if (const auto* s = std::get_if<ScaledSelectorSpec>(&spec)) {
        if (s->ratios.empty())
            throw ConfigError("scaled_selector: at least one ratio required");
        std::string desc = "scaled_selector(";
        for (std::size_t j = 0; j < s->ratios.size(); ++j) {
            if (j) desc += ",";
            desc += detail::format_double(s->ratios[j]);
        }
        desc += ")";
        std::vector<double> ratios = s->ratios;
        return Multifunction(dimension, std::move(desc), [ratios](const Point& x) {
            std::vector<Point> out;
            out.reserve(ratios.size());
            for (double r : ratios) {
                std::vector<double> c(x.coords());
                for (double& v : c) v *= r;
                out.push_back(Point(std::move(c)));
            }
            return out;
        });
    }
    if (std::get_if<IdentitySpec>(&spec)) {
        return Multifunction(dimension, "identity", [](const Point& x) {
            return std::vector<Point>{x};
        });
    }
    if (const auto* s = std::get_if<ExpansionSpec>(&spec)) {
        if (!(s->factor > 1.0))
            throw ConfigError("expansion: factor must be > 1");
        const double mu = s->factor;
        return Multifunction(dimension, "expansion(" + detail::format_double(mu) + ")",
                             [mu](const Point& x) {
                                 std::vector<double> c(x.coords());
                                 for (double& v : c) v *= mu;
                                 return std::vector<Point>{Point(std::move(c))};
                             });
    }
    throw ConfigError("make_builtin: unknown builtin kind");
}

}  // namespace ufix
