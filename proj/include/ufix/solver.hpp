#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ufix/checker.hpp"
#include "ufix/hyperspace.hpp"
#include "ufix/multifunction.hpp"
#include "ufix/space.hpp"

namespace ufix {

struct SolveOptions {
    double tolerance = 1e-10;        // residual threshold, > 0
    std::size_t max_iterations = 1000;  // >= 1
    double divergence_guard = 1e12;  // abort when any step distance exceeds this

    void validate() const {
        if (!(tolerance > 0.0))
            throw std::invalid_argument("SolveOptions: tolerance must be > 0");
        if (max_iterations < 1)
            throw std::invalid_argument("SolveOptions: max_iterations must be >= 1");
        if (!(divergence_guard > 0.0))
            throw std::invalid_argument("SolveOptions: divergence_guard must be > 0");
    }
};

/// Default guard scaled to the start point: 10^12 * (1 + max_i d_i(x0, 0)).
inline double default_divergence_guard(const PseudometricFamily& family, const Point& x0) {
    family.check_dimension(x0);
    const Point origin(std::vector<double>(family.dimension(), 0.0));
    double agg = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        agg = std::max(agg, family.eval(i, x0, origin));
    return 1e12 * (1.0 + agg);
}

/// The computed orbit x_0, x_1, ... with x_{k+1} in F(x_k).
/// step_distances[k][i] = d_i(x_k, x_{k+1}); residuals[k][i] = d_i(x_k, Fx_k).
struct OrbitTrace {
    std::vector<Point> points;
    std::vector<std::vector<double>> step_distances;  // points.size() - 1 rows
    std::vector<std::vector<double>> residuals;       // points.size() rows
};

enum class SolveStatus {
    FixedPointFound,
    MaxIterationsReached,
    Diverged,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::FixedPointFound: return "fixed_point_found";
        case SolveStatus::MaxIterationsReached: return "max_iterations_reached";
        case SolveStatus::Diverged: return "diverged";
    }
    return "unknown";
}

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIterationsReached;
    Point final_point;
    std::vector<double> final_residual;   // per index
    std::size_t iterations_used = 0;      // steps taken == points.size() - 1
    std::vector<double> rate_estimates;   // per index; 0 when undefined
};

struct SolveResult {
    OrbitTrace trace;
    SolveReport report;
};

/// d_i(x, Fx) for every index, each minimized independently over the image.
inline std::vector<double> residual(const Multifunction& F, const PseudometricFamily& family,
                                    const Point& x) {
    const FiniteSet image = F.evaluate(x);
    std::vector<double> out(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        out[i] = point_set_distance(family, i, x, image);
    return out;
}

/// One orbit step: the nearest-point selection from F(x).
inline Point step(const Multifunction& F, const PseudometricFamily& family, const Point& x) {
    return nearest_point(family, x, F.evaluate(x)).point;
}

namespace detail {

/// Geometric mean of successive positive step ratios; 0 when fewer than two
/// positive consecutive steps exist.
inline double fit_rate(const std::vector<std::vector<double>>& steps, std::size_t i) {
    double log_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 0; n + 1 < steps.size(); ++n) {
        const double prev = steps[n][i];
        const double next = steps[n + 1][i];
        if (prev > 0.0 && next > 0.0) {
            log_sum += std::log(next / prev);
            ++count;
        }
    }
    return count == 0 ? 0.0 : std::exp(log_sum / static_cast<double>(count));
}

inline double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

}  // namespace detail

/// Iterates the nearest-point orbit from x0 until the residual drops to the
/// tolerance, the step distance trips the divergence guard, or the iteration
/// budget runs out. The trace is complete in every outcome.
inline SolveResult solve(const Multifunction& F, const PseudometricFamily& family,
                         const Point& x0, const SolveOptions& opts) {
    opts.validate();
    family.check_dimension(x0);
    if (F.dimension() != family.dimension())
        throw std::invalid_argument("solve: map/family dimension mismatch");

    SolveResult result;
    OrbitTrace& trace = result.trace;
    trace.points.push_back(x0);

    SolveStatus status = SolveStatus::MaxIterationsReached;
    for (std::size_t k = 0;; ++k) {
        const Point& x = trace.points.back();
        const FiniteSet image = F.evaluate(x);

        std::vector<double> res(family.size());
        for (std::size_t i = 0; i < family.size(); ++i)
            res[i] = point_set_distance(family, i, x, image);
        trace.residuals.push_back(res);

        if (detail::max_of(res) <= opts.tolerance) {
            status = SolveStatus::FixedPointFound;
            break;
        }
        if (k == opts.max_iterations) {
            status = SolveStatus::MaxIterationsReached;
            break;
        }

        NearestPoint next = nearest_point(family, x, image);
        trace.step_distances.push_back(next.distances);
        trace.points.push_back(std::move(next.point));

        if (detail::max_of(trace.step_distances.back()) > opts.divergence_guard) {
            // Complete the trace with the final point's residual, then stop.
            trace.residuals.push_back(residual(F, family, trace.points.back()));
            status = SolveStatus::Diverged;
            break;
        }
    }

    SolveReport& report = result.report;
    report.status = status;
    report.final_point = trace.points.back();
    report.final_residual = trace.residuals.back();
    report.iterations_used = trace.points.size() - 1;
    report.rate_estimates.resize(family.size(), 0.0);
    for (std::size_t i = 0; i < family.size(); ++i)
        report.rate_estimates[i] = detail::fit_rate(trace.step_distances, i);
    return result;
}

struct VerificationReport {
    bool ok = true;
    // First failing site when ok is false.
    std::size_t fail_n = 0;
    std::size_t fail_m = 0;  // used by the tail bound only
    std::size_t fail_index = 0;
    double observed = 0.0;
    double bound = 0.0;
};

inline constexpr double kVerifySlack = 1e-9;

namespace detail {

inline void check_rates(const std::vector<double>& k, std::size_t family_size) {
    if (k.size() != family_size)
        throw std::invalid_argument("verification: one rate per family index required");
    for (double v : k)
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("verification: rates must lie in (0, 1)");
}

}  // namespace detail

/// Checks the geometric decay chain on a recorded trace:
/// d_i(x_n, x_{n+1}) <= k_i^n * d_i(x_0, x_1) + slack for every n and i.
inline VerificationReport verify_geometric_decay(const OrbitTrace& trace,
                                                 const std::vector<double>& k) {
    if (trace.points.size() < 2)
        throw std::invalid_argument("verify_geometric_decay: trace needs at least 2 points");
    if (trace.step_distances.empty() || trace.step_distances.front().empty())
        throw std::invalid_argument("verify_geometric_decay: trace has no step distances");
    detail::check_rates(k, trace.step_distances.front().size());

    VerificationReport report;
    const std::vector<double>& first = trace.step_distances.front();
    for (std::size_t i = 0; i < k.size(); ++i) {
        double factor = 1.0;  // k_i^n
        for (std::size_t n = 0; n < trace.step_distances.size(); ++n) {
            const double bound = factor * first[i] + kVerifySlack;
            const double observed = trace.step_distances[n][i];
            if (observed > bound) {
                report.ok = false;
                report.fail_n = n;
                report.fail_index = i;
                report.observed = observed;
                report.bound = bound;
                return report;
            }
            factor *= k[i];
        }
    }
    return report;
}

/// Checks the constructive Cauchy certificate on trace tails:
/// d_i(x_n, x_m) <= (k_i^n / (1 - k_i)) * d_i(x_0, x_1) + slack for n < m.
inline VerificationReport verify_tail_bound(const OrbitTrace& trace,
                                            const PseudometricFamily& family,
                                            const std::vector<double>& k) {
    if (trace.points.size() < 2)
        throw std::invalid_argument("verify_tail_bound: trace needs at least 2 points");
    if (trace.step_distances.empty())
        throw std::invalid_argument("verify_tail_bound: trace has no step distances");
    detail::check_rates(k, family.size());

    VerificationReport report;
    const std::vector<double>& first = trace.step_distances.front();
    for (std::size_t i = 0; i < k.size(); ++i) {
        double factor = 1.0;  // k_i^n
        for (std::size_t n = 0; n + 1 < trace.points.size(); ++n) {
            const double bound = factor / (1.0 - k[i]) * first[i] + kVerifySlack;
            for (std::size_t m = n + 1; m < trace.points.size(); ++m) {
                const double observed = family.eval(i, trace.points[n], trace.points[m]);
                if (observed > bound) {
                    report.ok = false;
                    report.fail_n = n;
                    report.fail_m = m;
                    report.fail_index = i;
                    report.observed = observed;
                    report.bound = bound;
                    return report;
                }
            }
            factor *= k[i];
        }
    }
    return report;
}

struct UniquenessProbeReport {
    std::vector<SolveReport> runs;          // one per start, same order
    std::vector<Point> converged_limits;    // final points of converged runs
    double worst_pair_distance = 0.0;       // max-over-index aggregate
    double threshold = 0.0;                 // 2 * tol * (1 + max_i c_i/a_i)
    bool pass = true;
};

/// Solves from every start and checks that all converged limits coincide up
/// to the tolerance-scaled threshold. Requires the uniqueness regime
/// a_i > c_i > 0; the probe is meaningless outside it.
inline UniquenessProbeReport uniqueness_probe(const Multifunction& F,
                                              const PseudometricFamily& family,
                                              const ContractionParams& params,
                                              const std::vector<Point>& starts,
                                              const SolveOptions& opts) {
    params.validate(family.size());
    if (!uniqueness_applicable(params))
        throw std::invalid_argument("uniqueness_probe: requires a_i > c_i > 0 for every index");
    if (starts.empty())
        throw std::invalid_argument("uniqueness_probe: at least one start required");

    UniquenessProbeReport report;
    double ratio = 0.0;
    for (const auto& t : params.coefficients) ratio = std::max(ratio, t.c / t.a);
    report.threshold = 2.0 * opts.tolerance * (1.0 + ratio);

    for (const Point& x0 : starts) {
        SolveResult r = solve(F, family, x0, opts);
        if (r.report.status == SolveStatus::FixedPointFound)
            report.converged_limits.push_back(r.report.final_point);
        report.runs.push_back(std::move(r.report));
    }

    for (std::size_t p = 0; p < report.converged_limits.size(); ++p) {
        for (std::size_t q = p + 1; q < report.converged_limits.size(); ++q) {
            double agg = 0.0;
            for (std::size_t i = 0; i < family.size(); ++i)
                agg = std::max(agg, family.eval(i, report.converged_limits[p],
                                                report.converged_limits[q]));
            report.worst_pair_distance = std::max(report.worst_pair_distance, agg);
        }
    }
    report.pass = report.worst_pair_distance <= report.threshold;
    return report;
}

/// Exact re-checks of the trace invariants, used after deserialization.
inline bool verify_orbit_membership(const Multifunction& F, const OrbitTrace& trace) {
    for (std::size_t n = 0; n + 1 < trace.points.size(); ++n)
        if (!F.evaluate(trace.points[n]).contains(trace.points[n + 1])) return false;
    return true;
}

inline bool verify_step_distances(const PseudometricFamily& family, const OrbitTrace& trace) {
    if (trace.step_distances.size() + 1 != trace.points.size()) return false;
    for (std::size_t n = 0; n < trace.step_distances.size(); ++n) {
        if (trace.step_distances[n].size() != family.size()) return false;
        for (std::size_t i = 0; i < family.size(); ++i)
            if (family.eval(i, trace.points[n], trace.points[n + 1]) != trace.step_distances[n][i])
                return false;
    }
    return true;
}

}  // namespace ufix
