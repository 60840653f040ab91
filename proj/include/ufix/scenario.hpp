#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ufix/checker.hpp"
#include "ufix/multifunction.hpp"
#include "ufix/solver.hpp"
#include "ufix/space.hpp"

namespace ufix {

/// A fully validated run configuration: the space, the map, the contraction
/// coefficients, and the solve/scan settings.
struct ScenarioConfig {
    PseudometricFamily family;
    Multifunction map;
    ContractionParams params;
    Point x0;
    SolveOptions solve;
    Region scan_region;
    std::size_t scan_budget;
    std::uint64_t scan_seed;
    std::vector<double> verify_k;  // rates for decay/tail verification
};

namespace cfg {

inline const nlohmann::json& require(const nlohmann::json& j, const std::string& path,
                                     const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(path + ": missing required key '" + key + "'");
    return j.at(key);
}

inline double as_double(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    return j.get<double>();
}

inline std::size_t as_size(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ConfigError(path + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline std::string as_string(const nlohmann::json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path + ": expected a string");
    return j.get<std::string>();
}

inline std::vector<double> as_double_array(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a nonempty array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(as_double(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

inline Matrix as_matrix(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a nonempty array of rows");
    Matrix m;
    m.rows = j.size();
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto row = as_double_array(j[r], path + "[" + std::to_string(r) + "]");
        if (r == 0) m.cols = row.size();
        if (row.size() != m.cols) throw ConfigError(path + ": ragged matrix rows");
        m.data.insert(m.data.end(), row.begin(), row.end());
    }
    return m;
}

inline PseudometricFamily parse_family(const nlohmann::json& space, const std::string& path) {
    const std::size_t dimension = as_size(require(space, path, "dimension"), path + ".dimension");
    const nlohmann::json& members = require(space, path, "family");
    if (!members.is_array() || members.empty())
        throw ConfigError(path + ".family: expected a nonempty array");

    std::vector<PseudometricSpec> specs;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string mpath = path + ".family[" + std::to_string(i) + "]";
        const nlohmann::json& m = members[i];
        PseudometricSpec spec;
        const std::string kind = as_string(require(m, mpath, "kind"), mpath + ".kind");
        if (kind == "absolute_difference")
            spec.kind = PseudometricKind::AbsoluteDifference;
        else if (kind == "euclidean")
            spec.kind = PseudometricKind::Euclidean;
        else
            throw ConfigError(mpath + ".kind: unknown kind '" + kind +
                              "' (use absolute_difference or euclidean)");
        spec.weight = as_double(require(m, mpath, "weight"), mpath + ".weight");
        const nlohmann::json& coords = require(m, mpath, "coords");
        if (!coords.is_array() || coords.empty())
            throw ConfigError(mpath + ".coords: expected a nonempty array");
        for (std::size_t c = 0; c < coords.size(); ++c)
            spec.coords.push_back(
                as_size(coords[c], mpath + ".coords[" + std::to_string(c) + "]"));
        specs.push_back(std::move(spec));
    }
    try {
        return PseudometricFamily(dimension, std::move(specs));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline AffineContractionSpec parse_affine(const nlohmann::json& j, const std::string& path) {
    AffineContractionSpec s;
    s.matrix = as_matrix(require(j, path, "matrix"), path + ".matrix");
    s.offset = as_double_array(require(j, path, "offset"), path + ".offset");
    return s;
}

inline BuiltinSpec parse_map_spec(const nlohmann::json& map, const std::string& path) {
    const std::string kind = as_string(require(map, path, "kind"), path + ".kind");
    if (kind == "affine_contraction") return parse_affine(map, path);
    if (kind == "multi_affine") {
        const nlohmann::json& branches = require(map, path, "branches");
        if (!branches.is_array() || branches.empty())
            throw ConfigError(path + ".branches: expected a nonempty array");
        MultiAffineSpec s;
        for (std::size_t b = 0; b < branches.size(); ++b)
            s.branches.push_back(
                parse_affine(branches[b], path + ".branches[" + std::to_string(b) + "]"));
        return s;
    }
    if (kind == "scaled_selector") {
        ScaledSelectorSpec s;
        s.ratios = as_double_array(require(map, path, "ratios"), path + ".ratios");
        return s;
    }
    if (kind == "identity") return IdentitySpec{};
    if (kind == "expansion") {
        ExpansionSpec s;
        s.factor = as_double(require(map, path, "factor"), path + ".factor");
        return s;
    }
    throw ConfigError(path + ".kind: unknown map kind '" + kind + "'");
}

inline ContractionParams parse_params(const nlohmann::json& params, const std::string& path,
                                      std::size_t family_size) {
    ContractionParams out;
    const nlohmann::json& r = require(params, path, "r");
    if (!r.is_number_integer() || r.get<std::int64_t>() < 1)
        throw ConfigError(path + ".r: expected an integer >= 1");
    out.r = static_cast<int>(r.get<std::int64_t>());

    const nlohmann::json& coeffs = require(params, path, "coefficients");
    if (!coeffs.is_array())
        throw ConfigError(path + ".coefficients: expected an array");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::string cpath = path + ".coefficients[" + std::to_string(i) + "]";
        CoefficientTriple t;
        t.a = as_double(require(coeffs[i], cpath, "a"), cpath + ".a");
        t.b = as_double(require(coeffs[i], cpath, "b"), cpath + ".b");
        t.c = as_double(require(coeffs[i], cpath, "c"), cpath + ".c");
        out.coefficients.push_back(t);
    }
    try {
        out.validate(family_size);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return out;
}

}  // namespace cfg

/// Validates and binds a parsed JSON document into a runnable scenario.
inline ScenarioConfig scenario_from_json(const nlohmann::json& doc) {
    PseudometricFamily family = cfg::parse_family(cfg::require(doc, "config", "space"), "space");
    const std::size_t dim = family.dimension();

    BuiltinSpec map_spec = cfg::parse_map_spec(cfg::require(doc, "config", "map"), "map");
    Multifunction map = make_builtin(map_spec, dim);

    ContractionParams params =
        cfg::parse_params(cfg::require(doc, "config", "params"), "params", family.size());

    const nlohmann::json& solve_j = cfg::require(doc, "config", "solve");
    std::vector<double> x0_coords =
        cfg::as_double_array(cfg::require(solve_j, "solve", "x0"), "solve.x0");
    if (x0_coords.size() != dim)
        throw ConfigError("solve.x0: dimension mismatch with space.dimension");
    Point x0{std::vector<double>(x0_coords)};

    SolveOptions opts;
    opts.tolerance = cfg::as_double(cfg::require(solve_j, "solve", "tolerance"), "solve.tolerance");
    opts.max_iterations =
        cfg::as_size(cfg::require(solve_j, "solve", "max_iterations"), "solve.max_iterations");
    opts.divergence_guard = solve_j.contains("divergence_guard")
                                ? cfg::as_double(solve_j.at("divergence_guard"),
                                                 "solve.divergence_guard")
                                : default_divergence_guard(family, x0);
    try {
        opts.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solve: ") + e.what());
    }

    const nlohmann::json& scan_j = cfg::require(doc, "config", "scan");
    Region region;
    region.lo = cfg::as_double_array(cfg::require(scan_j, "scan", "lo"), "scan.lo");
    region.hi = cfg::as_double_array(cfg::require(scan_j, "scan", "hi"), "scan.hi");
    if (region.dimension() != dim)
        throw ConfigError("scan: region dimension mismatch with space.dimension");
    try {
        region.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scan: ") + e.what());
    }
    const std::size_t budget = cfg::as_size(cfg::require(scan_j, "scan", "budget"), "scan.budget");
    if (budget < 1) throw ConfigError("scan.budget: must be >= 1");
    const std::uint64_t seed =
        static_cast<std::uint64_t>(cfg::as_size(cfg::require(scan_j, "scan", "seed"), "scan.seed"));

    std::vector<double> verify_k;
    if (doc.contains("verify")) {
        verify_k = cfg::as_double_array(cfg::require(doc.at("verify"), "verify", "k"), "verify.k");
        if (verify_k.size() != family.size())
            throw ConfigError("verify.k: one rate per family index required");
        for (double k : verify_k)
            if (!(k > 0.0 && k < 1.0)) throw ConfigError("verify.k: rates must lie in (0, 1)");
    } else {
        for (const auto& t : params.coefficients) verify_k.push_back(t.b + t.c);
    }

    return ScenarioConfig{std::move(family), std::move(map),    std::move(params),
                          std::move(x0),     opts,              std::move(region),
                          budget,            seed,              std::move(verify_k)};
}

/// Parses a config document, converting parse errors into line-anchored
/// ConfigErrors. `origin` names the source in messages (e.g. the file path).
inline nlohmann::json parse_config_text(const std::string& text, const std::string& origin) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t p = 0; p + 1 < e.byte && p < text.size(); ++p) {
            if (text[p] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
}

inline nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

/// Applies one dotted-path override of the form "a.b.c=value" to a config
/// document. Values parse as JSON when possible and as strings otherwise;
/// integer tokens index into arrays.
inline void apply_override(nlohmann::json& doc, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "': expected key.path=value");
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    std::vector<std::string> tokens;
    std::istringstream in(key);
    std::string tok;
    while (std::getline(in, tok, '.')) {
        if (tok.empty()) throw ConfigError("override '" + assignment + "': empty path segment");
        tokens.push_back(tok);
    }
    if (tokens.empty()) throw ConfigError("override '" + assignment + "': empty path");

    nlohmann::json* node = &doc;
    for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(tokens[t]);
            } catch (...) {
                throw ConfigError("override '" + assignment + "': '" + tokens[t] +
                                  "' is not an array index");
            }
            if (idx >= node->size())
                throw ConfigError("override '" + assignment + "': index out of range");
            node = &(*node)[idx];
        } else {
            node = &(*node)[tokens[t]];  // creates objects along the way
        }
    }

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
        parsed = value;  // plain string value
    }
    if (node->is_array()) {
        std::size_t idx = 0;
        try {
            idx = std::stoul(tokens.back());
        } catch (...) {
            throw ConfigError("override '" + assignment + "': '" + tokens.back() +
                              "' is not an array index");
        }
        if (idx >= node->size())
            throw ConfigError("override '" + assignment + "': index out of range");
        (*node)[idx] = parsed;
    } else {
        (*node)[tokens.back()] = parsed;
    }
}

// ---------------------------------------------------------------------------
// Packaged scenarios
// ---------------------------------------------------------------------------

/// x -> {x/2} on the real line; coefficients chosen so the sampled
/// contraction condition actually holds on the scan region.
inline nlohmann::json halving_scenario() {
    return nlohmann::json{
        {"space", {{"dimension", 1},
                   {"family", {{{"kind", "absolute_difference"}, {"weight", 1.0}, {"coords", {0}}}}}}},
        {"map", {{"kind", "affine_contraction"}, {"matrix", {{0.5}}}, {"offset", {0.0}}}},
        {"params", {{"r", 1}, {"coefficients", {{{"a", 0.1}, {"b", 0.2}, {"c", 0.5}}}}}},
        {"solve", {{"x0", {1.0}}, {"tolerance", 1e-8}, {"max_iterations", 100}}},
        {"scan", {{"lo", {-1.0}}, {"hi", {1.0}}, {"budget", 10000}, {"seed", 42}}}};
}

/// x -> {x/2, x/3}: a genuinely set-valued orbit that halves at every step.
inline nlohmann::json two_branch_scenario() {
    return nlohmann::json{
        {"space", {{"dimension", 1},
                   {"family", {{{"kind", "absolute_difference"}, {"weight", 1.0}, {"coords", {0}}}}}}},
        {"map", {{"kind", "scaled_selector"}, {"ratios", {0.5, 1.0 / 3.0}}}},
        {"params", {{"r", 1}, {"coefficients", {{{"a", 0.1}, {"b", 0.2}, {"c", 0.5}}}}}},
        {"solve", {{"x0", {6.0}}, {"tolerance", 1e-9}, {"max_iterations", 100}}},
        {"scan", {{"lo", {-10.0}}, {"hi", {10.0}}, {"budget", 10000}, {"seed", 42}}}};
}

/// Halving map in the minus-sign regime (a = -1).
inline nlohmann::json corollary_scenario() {
    nlohmann::json j = halving_scenario();
    j["params"]["coefficients"][0]["a"] = -1.0;
    return j;
}

/// Halving map with a > c > 0, the regime in which converged limits must
/// coincide. The demo probes several starts.
inline nlohmann::json uniqueness_scenario() {
    nlohmann::json j = halving_scenario();
    j["params"]["coefficients"][0]["a"] = 0.6;
    return j;
}

}  // namespace ufix
