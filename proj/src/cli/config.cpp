#include "majorant/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "majorant/discretize.hpp"
#include "majorant/operators.hpp"

namespace majorant::cli {

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::multilinear: return "multilinear";
        case ProblemKind::hammerstein_c: return "hammerstein_c";
        case ProblemKind::hammerstein_lp: return "hammerstein_lp";
        case ProblemKind::urysohn: return "urysohn";
        case ProblemKind::composition: return "composition";
        case ProblemKind::scalar_profile: return "scalar_profile";
    }
    return "unknown";
}

namespace {

// ---------------------------------------------------------------------------
// Schema helpers. `path` is a dotted location used in error messages.

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) fail(path, "missing required field '" + key + "'");
    return obj.at(key);
}

double as_number(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

double number(const Json& obj, const std::string& key, const std::string& path) {
    return as_number(require(obj, key, path), path + "." + key);
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& path) {
    return obj.contains(key) ? as_number(obj.at(key), path + "." + key) : fallback;
}

std::size_t count(const Json& obj, const std::string& key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path + "." + key, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::string text(const Json& obj, const std::string& key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const Json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

const Json& object(const Json& obj, const std::string& key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_object()) fail(path + "." + key, "expected an object");
    return v;
}

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) fail(path, "unknown field '" + key + "'");
    }
}

double positive(double v, const std::string& path) {
    if (!(v > 0.0)) fail(path, "must be positive");
    return v;
}

// ---------------------------------------------------------------------------
// Built-in demo functions.

struct Nonlinearity {
    ScalarFn h;
    LipschitzModulus modulus;
};

const std::map<std::string, KernelFn>& demo_kernels() {
    static const std::map<std::string, KernelFn> table{
        {"product", [](double t, double s) { return t * s; }},
        {"one", [](double, double) { return 1.0; }},
        {"exp_decay", [](double t, double s) { return std::exp(-std::abs(t - s)); }},
        {"min", [](double t, double s) { return std::min(t, s); }},
    };
    return table;
}

const std::map<std::string, Nonlinearity>& demo_nonlinearities() {
    static const std::map<std::string, Nonlinearity> table{
        {"square", {[](double y) { return y * y; }, LipschitzModulus::power_sum({{2.0, 1.0}})}},
        {"cube", {[](double y) { return y * y * y; }, LipschitzModulus::power_sum({{3.0, 2.0}})}},
        {"identity", {[](double y) { return y; }, LipschitzModulus::constant(1.0)}},
        {"sin", {[](double y) { return std::sin(y); }, LipschitzModulus::constant(1.0)}},
        {"tanh", {[](double y) { return std::tanh(y); }, LipschitzModulus::constant(1.0)}},
    };
    return table;
}

const std::map<std::string, ScalarFn>& demo_forcings() {
    static const std::map<std::string, ScalarFn> table{
        {"identity", [](double t) { return t; }},
        {"zero", [](double) { return 0.0; }},
        {"one", [](double) { return 1.0; }},
        {"sin", [](double t) { return std::sin(t); }},
    };
    return table;
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const std::string& path) {
    const auto it = map.find(name);
    if (it == map.end()) {
        std::string known;
        for (const auto& [k, _] : map) known += (known.empty() ? "" : ", ") + k;
        fail(path, "unknown demo function '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// Readers. Each one both validates and produces the typed value.

LipschitzModulus read_modulus(const Json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected a modulus object");
    const std::string type = text(v, "type", path);
    try {
        if (type == "constant") {
            only_keys(v, {"type", "q"}, path);
            return LipschitzModulus::constant(number(v, "q", path));
        }
        if (type == "power_sum") {
            only_keys(v, {"type", "terms"}, path);
            const auto& terms = require(v, "terms", path);
            if (!terms.is_array()) fail(path + ".terms", "expected an array of [coefficient, exponent] pairs");
            std::vector<PowerTerm> out;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const auto pair = numbers(terms[i], path + ".terms[" + std::to_string(i) + "]");
                if (pair.size() != 2) fail(path + ".terms[" + std::to_string(i) + "]", "expected [coefficient, exponent]");
                out.push_back({pair[0], pair[1]});
            }
            return LipschitzModulus::power_sum(std::move(out));
        }
        if (type == "tabulated") {
            only_keys(v, {"type", "r", "k"}, path);
            return LipschitzModulus::tabulated(numbers(require(v, "r", path), path + ".r"),
                                               numbers(require(v, "k", path), path + ".k"));
        }
    } catch (const InvalidModulus& e) {
        fail(path, e.what());
    }
    fail(path + ".type", "unknown modulus type '" + type + "' (constant, power_sum, tabulated)");
}

Grid read_grid(const Json& doc, const std::string& path) {
    const auto interval = numbers(require(doc, "interval", path), path + ".interval");
    if (interval.size() != 2 || !(interval[1] > interval[0])) fail(path + ".interval", "expected [a, b] with a < b");
    const auto& g = object(doc, "grid", path);
    only_keys(g, {"nodes", "rule"}, path + ".grid");
    const std::size_t n = count(g, "nodes", path + ".grid");
    QuadratureRule rule = QuadratureRule::simpson;
    try {
        if (g.contains("rule")) rule = parse_quadrature_rule(text(g, "rule", path + ".grid"));
        return Grid(interval[0], interval[1], n, rule);
    } catch (const GridError& e) {
        fail(path + ".grid", e.what());
    }
}

std::optional<State> read_center(const Json& doc, std::size_t n, const std::string& path) {
    if (!doc.contains("center")) return std::nullopt;
    const auto& c = doc.at("center");
    if (c.is_number()) return State(n, as_number(c, path + ".center"));
    auto v = numbers(c, path + ".center");
    if (v.size() != n) fail(path + ".center", "expected " + std::to_string(n) + " entries");
    return v;
}

KernelFn read_kernel(const Json& v, const Grid& grid, const std::string& path) {
    if (v.is_string()) return lookup(demo_kernels(), v.get<std::string>(), path);
    if (!v.is_object()) fail(path, "expected a demo kernel name or a table object");
    std::optional<KernelTable> table;
    try {
        if (v.contains("dense")) {
            only_keys(v, {"dense", "rule"}, path);
            const auto& rows = v.at("dense");
            if (!rows.is_array() || rows.empty()) fail(path + ".dense", "expected a square matrix");
            std::vector<double> values;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto row = numbers(rows[i], path + ".dense[" + std::to_string(i) + "]");
                if (row.size() != rows.size()) fail(path + ".dense", "matrix must be square");
                values.insert(values.end(), row.begin(), row.end());
            }
            const Grid kg(grid.lower(), grid.upper(), rows.size(), QuadratureRule::trapezoid);
            table.emplace(kg, kg, std::move(values));
        } else if (v.contains("csv")) {
            only_keys(v, {"csv", "rule"}, path);
            const std::string file = text(v, "csv", path);
            std::ifstream in(file);
            if (!in) fail(path + ".csv", "cannot open '" + file + "'");
            KernelCsvOptions options;
            options.rule = QuadratureRule::trapezoid;
            options.interval_lower = grid.lower();
            options.interval_upper = grid.upper();
            table.emplace(load_kernel_csv(in, options));
            if (table->rows().lower() > grid.lower() || table->rows().upper() < grid.upper() ||
                table->cols().lower() > grid.lower() || table->cols().upper() < grid.upper()) {
                fail(path + ".csv", "kernel table does not cover the problem interval");
            }
        } else {
            fail(path, "kernel table needs 'dense' or 'csv'");
        }
    } catch (const GridError& e) {
        fail(path, e.what());
    }
    auto shared = std::make_shared<const KernelTable>(std::move(*table));
    return [shared](double t, double s) { return shared->interpolate(t, s); };
}

ScalarFn read_forcing(const Json& v, const Grid& grid, const std::string& path) {
    if (v.is_string()) return lookup(demo_forcings(), v.get<std::string>(), path);
    if (!v.is_object()) fail(path, "expected a demo forcing name or {\"values\": [...]}");
    only_keys(v, {"values"}, path);
    auto values = numbers(require(v, "values", path), path + ".values");
    if (values.size() != grid.size()) fail(path + ".values", "expected one value per grid node");
    const std::vector<double> nodes(grid.nodes().begin(), grid.nodes().end());
    return [values, nodes](double t) {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
        if (it != nodes.end() && *it == t) return values[static_cast<std::size_t>(it - nodes.begin())];
        if (it == nodes.begin()) return values.front();
        if (it == nodes.end()) return values.back();
        const std::size_t j = static_cast<std::size_t>(it - nodes.begin());
        const double theta = (t - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
        return values[j - 1] + theta * (values[j] - values[j - 1]);
    };
}

struct Params {
    const Json* obj;
    std::string path;
    double get(const std::string& key, double fallback) const {
        return obj ? number_or(*obj, key, fallback, path) : fallback;
    }
};

Params read_params(const Json& doc, const std::string& path, const std::set<std::string>& allowed) {
    if (!doc.contains("params")) return {nullptr, path};
    const auto& p = object(doc, "params", path);
    only_keys(p, allowed, path + ".params");
    return {&p, path + ".params"};
}

// ---------------------------------------------------------------------------
// Per-kind builders.

Problem build_scalar(const ProblemConfig& config) {
    const auto& doc = config.document;
    const std::string path = config.name;
    const double a = number(doc, "a", path);
    if (a < 0.0) fail(path + ".a", "must be nonnegative");
    const auto modulus = read_modulus(require(doc, "modulus", path), path + ".modulus");
    const double radius = config.radius;
    if (modulus.max_radius() < radius) fail(path + ".modulus", "tabulated modulus must cover [0, R]");
    auto k = std::make_shared<const LipschitzModulus>(modulus);
    auto map = [a, k, radius](double x) { return a + k->primitive(std::min(std::abs(x), radius)); };
    ApplyFn apply = [map](std::span<const double> x) { return State{map(x[0])}; };
    NormFn norm = [](std::span<const double> x) { return std::abs(x[0]); };
    Problem p{config, make_operator("scalar_profile", std::move(apply), State{0.0}, norm, modulus, radius, a), {}, {},
              map};
    try {
        p.reference = State{find_r_star(p.profile(), 1e-15)};
    } catch (const NoExistence&) {
    }
    return p;
}

Problem build_multilinear_problem(const ProblemConfig& config) {
    const auto& doc = config.document;
    const std::string path = config.name;
    MultilinearSpec spec;
    spec.dimension = count(doc, "dimension", path);
    spec.degree = count(doc, "degree", path);
    if (spec.dimension < 1) fail(path + ".dimension", "must be at least 1");
    if (spec.degree < 2) fail(path + ".degree", "must be at least 2");
    spec.tensor = numbers(require(doc, "tensor", path), path + ".tensor");
    spec.eta = numbers(require(doc, "eta", path), path + ".eta");
    if (doc.contains("norm")) {
        spec.norm = as_number(doc.at("norm"), path + ".norm");
        if (*spec.norm < 0.0) fail(path + ".norm", "must be nonnegative");
    }
    if (doc.contains("seed")) spec.seed = count(doc, "seed", path);
    spec.center = read_center(doc, spec.dimension, path);

    OperatorHandle op = [&] {
        try {
            return build_multilinear(spec, config.radius);
        } catch (const SpecError& e) {
            fail(path, e.what());
        }
    }();
    const double c = spec.norm.value_or(multilinear_norm(spec));
    const int m = static_cast<int>(spec.degree);
    Problem p{config, std::move(op), {}, {}, {}};
    if (c > 0.0) p.multilinear = MultilinearFacts{c, m, lr_critical_a(c, m)};
    else p.multilinear = MultilinearFacts{c, m, std::numeric_limits<double>::infinity()};

    if (spec.dimension == 1) {
        const double t = spec.tensor.front();
        const double eta = spec.eta.front();
        p.scalar_map = [t, eta, m](double x) { return eta + t * std::pow(x, m); };
        if (m == 2 && !spec.center) {
            if (t == 0.0) p.reference = State{eta};
            else if (1.0 - 4.0 * t * eta >= 0.0) p.reference = State{(1.0 - std::sqrt(1.0 - 4.0 * t * eta)) / (2.0 * t)};
        }
    }
    return p;
}

struct HammersteinDoc {
    HammersteinSpec spec;
    Grid grid;
    std::vector<std::string> kernel_names;
    std::vector<std::string> nonlinearity_names;
    std::string forcing_name;
};

HammersteinDoc read_hammerstein(const ProblemConfig& config, const std::set<std::string>& term_keys) {
    const auto& doc = config.document;
    const std::string path = config.name;
    Grid grid = read_grid(doc, path);
    HammersteinSpec spec;
    spec.lower = grid.lower();
    spec.upper = grid.upper();
    spec.lambda = number(doc, "lambda", path);
    const auto& forcing = require(doc, "forcing", path);
    spec.forcing = read_forcing(forcing, grid, path + ".forcing");
    spec.center = read_center(doc, grid.size(), path);

    HammersteinDoc out{spec, grid, {}, {}, forcing.is_string() ? forcing.get<std::string>() : ""};
    const auto& terms = require(doc, "terms", path);
    if (!terms.is_array() || terms.empty()) fail(path + ".terms", "expected a nonempty array");
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const std::string tpath = path + ".terms[" + std::to_string(j) + "]";
        const auto& term = terms[j];
        if (!term.is_object()) fail(tpath, "expected an object");
        only_keys(term, term_keys, tpath);
        const auto& kernel = require(term, "kernel", tpath);
        const std::string hname = text(term, "nonlinearity", tpath);
        const auto& nl = lookup(demo_nonlinearities(), hname, tpath + ".nonlinearity");
        LipschitzModulus modulus =
            term.contains("modulus") ? read_modulus(term.at("modulus"), tpath + ".modulus") : nl.modulus;
        out.spec.terms.push_back({read_kernel(kernel, grid, tpath + ".kernel"), nl.h, modulus});
        out.kernel_names.push_back(kernel.is_string() ? kernel.get<std::string>() : "");
        out.nonlinearity_names.push_back(hname);
    }
    return out;
}

// x(t) = t + lambda t int s h(x(s)) ds with h = square has the solution
// beta t where beta = 1 + lambda c beta^2, c = (b^4 - a^4)/4; the Nyström
// solution coincides with it because the integrand is a cubic.
std::optional<State> separable_reference(const HammersteinDoc& h) {
    if (h.spec.terms.size() != 1 || h.kernel_names[0] != "product" || h.nonlinearity_names[0] != "square" ||
        h.forcing_name != "identity" || h.spec.center) {
        return std::nullopt;
    }
    const double a = h.grid.lower();
    const double b = h.grid.upper();
    const double c = (std::pow(b, 4) - std::pow(a, 4)) / 4.0;
    const double lc = h.spec.lambda * c;
    double beta = 1.0;
    if (lc != 0.0) {
        const double disc = 1.0 - 4.0 * lc;
        if (disc < 0.0) return std::nullopt;
        beta = (1.0 - std::sqrt(disc)) / (2.0 * lc);
    }
    if (h.grid.rule() == QuadratureRule::trapezoid) return std::nullopt;
    return h.grid.sample([beta](double t) { return beta * t; });
}

Problem build_hammerstein_c_problem(const ProblemConfig& config) {
    const auto h = read_hammerstein(config, {"kernel", "nonlinearity", "modulus"});
    try {
        Problem p{config, build_hammerstein_c(h.spec, h.grid, config.radius), separable_reference(h), {}, {}};
        return p;
    } catch (const InvalidModulus& e) {
        fail(config.name, e.what());
    } catch (const SpecError& e) {
        fail(config.name, e.what());
    }
}

Problem build_hammerstein_lp_problem(const ProblemConfig& config) {
    const std::string path = config.name;
    const auto& doc = config.document;
    const auto h = read_hammerstein(config, {"kernel", "nonlinearity", "q", "pairs", "zaanen_norm", "zaanen_inflation"});
    const double p = number(doc, "p", path);
    if (!(p > 1.0)) fail(path + ".p", "must exceed 1");
    const double dual = p / (p - 1.0);

    std::vector<LipschitzModulus> moduli;
    std::vector<double> zaanen;
    const auto& terms = doc.at("terms");
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const std::string tpath = path + ".terms[" + std::to_string(j) + "]";
        const auto& term = terms[j];
        const double q = number(term, "q", tpath);
        if (!(q > 0.0) || q > p) fail(tpath + ".q", "must lie in (0, p]");
        LipschitzPairSet pairs;
        const auto& raw = require(term, "pairs", tpath);
        if (!raw.is_array() || raw.empty()) fail(tpath + ".pairs", "expected a nonempty array of [xi, eta]");
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const auto pr = numbers(raw[i], tpath + ".pairs[" + std::to_string(i) + "]");
            if (pr.size() != 2 || pr[0] < 0.0 || pr[1] < 0.0) {
                fail(tpath + ".pairs[" + std::to_string(i) + "]", "expected nonnegative [xi, eta]");
            }
            pairs.pairs.emplace_back(pr[0], pr[1]);
        }
        try {
            moduli.push_back(build_superposition_modulus(pairs, p, q, h.grid.length(), config.radius));
        } catch (const std::invalid_argument& e) {
            fail(tpath, e.what());
        }
        if (term.contains("zaanen_norm")) {
            const double z = as_number(term.at("zaanen_norm"), tpath + ".zaanen_norm");
            if (z < 0.0) fail(tpath + ".zaanen_norm", "must be nonnegative");
            zaanen.push_back(z);
        } else {
            if (!(q > 1.0)) fail(tpath, "zaanen_norm must be supplied when q <= 1");
            const double inflation = number_or(term, "zaanen_inflation", 1.05, tpath);
            if (inflation < 1.0) fail(tpath + ".zaanen_inflation", "must be at least 1");
            const auto table = KernelTable::sample(h.grid, h.grid, h.spec.terms[j].kernel);
            zaanen.push_back(inflation * zaanen_norm_estimate(table, q, dual));
        }
    }
    try {
        Problem out{config, build_hammerstein_lp(h.spec, moduli, zaanen, p, h.grid, config.radius), {}, {}, {}};
        return out;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

// Urysohn demo: K(t,s,u,v) = alpha s u^2 + beta v + gamma t,
// so l = 2 alpha s r and m = beta.
Problem build_urysohn_problem(const ProblemConfig& config) {
    const auto& doc = config.document;
    const std::string path = config.name;
    const Grid grid = read_grid(doc, path);
    const std::string demo = text(doc, "demo", path);
    UrysohnSpec spec;
    spec.lower = grid.lower();
    spec.upper = grid.upper();
    spec.center = read_center(doc, grid.size(), path);
    if (demo == "quadratic_mixed") {
        const auto params = read_params(doc, path, {"alpha", "beta", "gamma"});
        const double alpha = params.get("alpha", 0.1);
        const double beta = params.get("beta", 0.05);
        const double gamma = params.get("gamma", 0.1);
        spec.kernel = [=](double t, double s, double u, double v) { return alpha * s * u * u + beta * v + gamma * t; };
        spec.l = [=](double, double s, double r) { return 2.0 * std::abs(alpha) * std::abs(s) * r; };
        spec.m = [=](double, double, double) { return std::abs(beta); };
    } else if (demo == "pure_integral") {
        read_params(doc, path, {});
        spec.kernel = [](double t, double s, double, double) { return t * s; };
        spec.l = [](double, double, double) { return 0.0; };
        spec.m = [](double, double, double) { return 0.0; };
    } else {
        fail(path + ".demo", "unknown Urysohn demo '" + demo + "' (quadratic_mixed, pure_integral)");
    }
    try {
        Problem p{config, build_urysohn_c(spec, grid, config.radius), {}, {}, {}};
        return p;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

// Composition demo: F(t,u,v) = offset + alpha u + beta v, K(t,s,u) = s u^2,
// so l = alpha, m = beta, n = 2 s r, n0 = s r^2.
Problem build_composition_problem(const ProblemConfig& config) {
    const auto& doc = config.document;
    const std::string path = config.name;
    const Grid grid = read_grid(doc, path);
    const std::string demo = text(doc, "demo", path);
    CompositionSpec spec;
    spec.lower = grid.lower();
    spec.upper = grid.upper();
    spec.center = read_center(doc, grid.size(), path);
    if (demo != "affine_square") fail(path + ".demo", "unknown composition demo '" + demo + "' (affine_square)");
    const auto params = read_params(doc, path, {"alpha", "beta", "offset"});
    const double alpha = params.get("alpha", 0.5);
    const double beta = params.get("beta", 0.25);
    const double offset = params.get("offset", 0.1);
    spec.outer = [=](double, double u, double v) { return offset + alpha * u + beta * v; };
    spec.l = [=](double, double, double) { return std::abs(alpha); };
    spec.m = [=](double, double, double) { return std::abs(beta); };
    spec.inner = [](double, double s, double u) { return s * u * u; };
    spec.n0 = [](double, double s, double r) { return std::abs(s) * r * r; };
    spec.n = [](double, double s, double r) { return 2.0 * std::abs(s) * r; };
    try {
        Problem p{config, build_composition_c(spec, grid, config.radius), {}, {}, {}};
        return p;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

const std::map<std::string, ProblemKind>& kinds() {
    static const std::map<std::string, ProblemKind> table{
        {"multilinear", ProblemKind::multilinear},       {"hammerstein_c", ProblemKind::hammerstein_c},
        {"hammerstein_lp", ProblemKind::hammerstein_lp}, {"urysohn", ProblemKind::urysohn},
        {"composition", ProblemKind::composition},       {"scalar_profile", ProblemKind::scalar_profile},
    };
    return table;
}

std::set<std::string> allowed_keys(ProblemKind kind) {
    std::set<std::string> common{"kind", "R", "tol", "description"};
    std::set<std::string> extra;
    switch (kind) {
        case ProblemKind::scalar_profile: extra = {"a", "modulus"}; break;
        case ProblemKind::multilinear: extra = {"dimension", "degree", "tensor", "eta", "norm", "seed", "center"}; break;
        case ProblemKind::hammerstein_c: extra = {"interval", "grid", "lambda", "forcing", "terms", "center"}; break;
        case ProblemKind::hammerstein_lp:
            extra = {"interval", "grid", "lambda", "forcing", "terms", "center", "p"};
            break;
        case ProblemKind::urysohn:
        case ProblemKind::composition: extra = {"interval", "grid", "demo", "params", "center"}; break;
    }
    common.insert(extra.begin(), extra.end());
    return common;
}

}  // namespace

ProblemConfig parse_config(const Json& document, std::string name) {
    if (!document.is_object()) throw ConfigError(name + ": configuration must be an object");
    ProblemConfig config;
    config.name = std::move(name);
    const std::string kind = text(document, "kind", config.name);
    const auto it = kinds().find(kind);
    if (it == kinds().end()) fail(config.name + ".kind", "unknown problem kind '" + kind + "'");
    config.kind = it->second;
    only_keys(document, allowed_keys(config.kind), config.name);
    config.radius = positive(number(document, "R", config.name), config.name + ".R");
    config.tol = positive(number_or(document, "tol", kDefaultRadiusTol, config.name), config.name + ".tol");
    config.document = document;
    // A dry build catches every remaining schema problem before any command
    // starts computing.
    (void)build_problem(config);
    return config;
}

ProblemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(doc, path);
}

Problem build_problem(const ProblemConfig& config) {
    try {
        switch (config.kind) {
            case ProblemKind::scalar_profile: return build_scalar(config);
            case ProblemKind::multilinear: return build_multilinear_problem(config);
            case ProblemKind::hammerstein_c: return build_hammerstein_c_problem(config);
            case ProblemKind::hammerstein_lp: return build_hammerstein_lp_problem(config);
            case ProblemKind::urysohn: return build_urysohn_problem(config);
            case ProblemKind::composition: return build_composition_problem(config);
        }
    } catch (const DomainError& e) {
        throw ConfigError(config.name + ": " + e.what());
    } catch (const InvalidModulus& e) {
        throw ConfigError(config.name + ": " + e.what());
    } catch (const GridError& e) {
        throw ConfigError(config.name + ": " + e.what());
    }
    throw ConfigError(config.name + ": unsupported problem kind");
}

}  // namespace majorant::cli
