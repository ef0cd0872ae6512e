#include "majorant/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace majorant {

namespace {

NormFn sup_norm() {
    return [](std::span<const double> x) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    };
}

NormFn grid_lp_norm(const Grid& grid, double p) {
    return [grid, p](std::span<const double> x) { return lp_norm(grid, x, p); };
}

void require_grid_covers(const Grid& grid, double lower, double upper) {
    if (grid.lower() != lower || grid.upper() != upper) {
        throw SpecError("grid does not cover the problem interval");
    }
}

void require_radius(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw SpecError("radius R must be positive and finite");
}

State resolve_center(const std::optional<State>& center, std::size_t n) {
    if (!center) return State(n, 0.0);
    if (center->size() != n) throw SpecError("centre has the wrong dimension");
    return *center;
}

// Lower envelope of finitely many nondecreasing curves.
class LowerEnvelope {
public:
    explicit LowerEnvelope(std::vector<std::function<double(double)>> curves) : curves_(std::move(curves)) {}

    double operator()(double r) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : curves_) best = std::min(best, f(r));
        return best;
    }

    // Radii in (0, radius) where the minimising curve changes, located by
    // bisection inside each grid cell where the argmin differs.
    std::vector<double> crossings(double radius, std::size_t nodes = kRadiusGridNodes) const {
        std::vector<double> out;
        auto argmin = [&](double r) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < curves_.size(); ++i) {
                if (curves_[i](r) < curves_[best](r)) best = i;
            }
            return best;
        };
        double prev_r = 0.0;
        std::size_t prev = argmin(0.0);
        for (std::size_t j = 1; j < nodes; ++j) {
            const double r = radius * static_cast<double>(j) / static_cast<double>(nodes - 1);
            const std::size_t cur = argmin(r);
            if (cur != prev) {
                const auto& fa = curves_[prev];
                const auto& fb = curves_[cur];
                double lo = prev_r;
                double hi = r;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * radius; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (fa(mid) <= fb(mid)) lo = mid;
                    else hi = mid;
                }
                out.push_back(0.5 * (lo + hi));
            }
            prev = cur;
            prev_r = r;
        }
        return out;
    }

private:
    std::vector<std::function<double(double)>> curves_;
};

// Drops pairs that another pair beats in both components.
std::vector<std::pair<double, double>> undominated(std::vector<std::pair<double, double>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& cand : pairs) {
        const bool dominated = std::any_of(pairs.begin(), pairs.end(), [&](const auto& other) {
            return other != cand && other.first <= cand.first && other.second <= cand.second;
        });
        if (!dominated) out.push_back(cand);
    }
    return out;
}

// Shared data for Nyström-discretised Hammerstein operators.
struct HammersteinData {
    std::vector<KernelTable> kernels;
    std::vector<ScalarFn> nonlinearities;
    std::vector<double> forcing;
    std::vector<double> weights;
    double lambda;
};

ApplyFn hammerstein_apply(std::shared_ptr<const HammersteinData> data) {
    return [data](std::span<const double> x) {
        const std::size_t n = data->forcing.size();
        if (x.size() != n) throw DomainError("state dimension mismatch");
        State out = data->forcing;
        std::vector<double> weighted(n);
        for (std::size_t j = 0; j < data->kernels.size(); ++j) {
            const auto& h = data->nonlinearities[j];
            for (std::size_t l = 0; l < n; ++l) weighted[l] = data->weights[l] * h(x[l]);
            const auto& k = data->kernels[j];
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += k(i, l) * weighted[l];
                out[i] += data->lambda * acc;
            }
        }
        return out;
    };
}

std::shared_ptr<const HammersteinData> hammerstein_data(const HammersteinSpec& spec, const Grid& grid) {
    if (spec.terms.empty()) throw SpecError("Hammerstein operator needs at least one term");
    if (!spec.forcing) throw SpecError("Hammerstein operator needs a forcing function");
    if (!std::isfinite(spec.lambda)) throw SpecError("lambda must be finite");
    require_grid_covers(grid, spec.lower, spec.upper);
    auto data = std::make_shared<HammersteinData>();
    for (const auto& term : spec.terms) {
        if (!term.kernel || !term.nonlinearity) throw SpecError("Hammerstein term is missing a kernel or nonlinearity");
        data->kernels.push_back(KernelTable::sample(grid, grid, term.kernel));
        data->nonlinearities.push_back(term.nonlinearity);
    }
    data->forcing = grid.sample(spec.forcing);
    data->weights.assign(grid.weights().begin(), grid.weights().end());
    data->lambda = spec.lambda;
    return data;
}

}  // namespace

// ---------------------------------------------------------------------------

State contract_multilinear(const MultilinearSpec& spec, std::span<const State> args) {
    const std::size_t d = spec.dimension;
    if (args.size() != spec.degree) throw SpecError("multilinear map needs exactly m arguments");
    std::vector<double> v = spec.tensor;
    for (std::size_t k = args.size(); k-- > 0;) {
        const auto& u = args[k];
        if (u.size() != d) throw SpecError("dimension mismatch in multilinear argument");
        std::vector<double> next(v.size() / d, 0.0);
        for (std::size_t p = 0; p < next.size(); ++p) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += v[p * d + j] * u[j];
            next[p] = acc;
        }
        v = std::move(next);
    }
    return v;
}

namespace {

void validate_multilinear(const MultilinearSpec& spec) {
    if (spec.dimension < 1) throw SpecError("dimension must be at least 1");
    if (spec.degree < 2) throw SpecError("degree m must be at least 2");
    std::size_t expected = spec.dimension;
    for (std::size_t k = 0; k < spec.degree; ++k) expected *= spec.dimension;
    if (spec.tensor.size() != expected) {
        std::ostringstream msg;
        msg << "tensor has " << spec.tensor.size() << " entries, expected d^(m+1) = " << expected;
        throw SpecError(msg.str());
    }
    if (spec.eta.size() != spec.dimension) throw SpecError("eta has the wrong dimension");
    for (double v : spec.tensor) {
        if (!std::isfinite(v)) throw SpecError("tensor entries must be finite");
    }
    if (spec.norm && (!std::isfinite(*spec.norm) || *spec.norm < 0.0)) throw SpecError("norm C must be nonnegative");
}

}  // namespace

double multilinear_norm(const MultilinearSpec& spec) {
    validate_multilinear(spec);
    if (spec.dimension == 1) return std::abs(spec.tensor.front());
    const std::size_t d = spec.dimension;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss;
    const auto norm = euclidean_norm();
    std::vector<State> args(spec.degree, State(d));
    double best = 0.0;
    for (std::size_t sample = 0; sample < spec.norm_samples; ++sample) {
        for (auto& u : args) {
            double len = 0.0;
            do {
                for (auto& c : u) c = gauss(rng);
                len = norm(u);
            } while (len == 0.0);
            for (auto& c : u) c /= len;
        }
        best = std::max(best, norm(contract_multilinear(spec, args)));
    }
    return 1.1 * best;
}

OperatorHandle build_multilinear(const MultilinearSpec& spec, double radius) {
    validate_multilinear(spec);
    require_radius(radius);
    const double c = spec.norm.value_or(multilinear_norm(spec));
    const auto m = static_cast<double>(spec.degree);
    State center = resolve_center(spec.center, spec.dimension);
    const NormFn norm = euclidean_norm();
    const LipschitzModulus modulus =
        LipschitzModulus::power_sum({{c * m, m - 1.0}}).shifted(norm(center), radius);

    auto shared = std::make_shared<const MultilinearSpec>(spec);
    ApplyFn apply = [shared](std::span<const double> x) {
        std::vector<State> args(shared->degree, State(x.begin(), x.end()));
        State out = contract_multilinear(*shared, args);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += shared->eta[i];
        return out;
    };
    return make_operator("multilinear", std::move(apply), std::move(center), norm, modulus, radius);
}

double lr_critical_a(double c, int m) {
    if (!(c > 0.0) || !std::isfinite(c)) throw SpecError("C must be positive");
    if (m < 2) throw SpecError("m must be at least 2");
    const double md = m;
    return std::pow(1.0 / (c * md), 1.0 / (md - 1.0)) * (md - 1.0) / md;
}

// ---------------------------------------------------------------------------

std::vector<double> kernel_sup_norms(const HammersteinSpec& spec, const Grid& grid) {
    std::vector<double> out;
    const auto w = grid.weights();
    for (const auto& term : spec.terms) {
        const auto table = KernelTable::sample(grid, grid, term.kernel);
        double best = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double row = 0.0;
            for (std::size_t l = 0; l < grid.size(); ++l) row += w[l] * std::abs(table(i, l));
            best = std::max(best, row);
        }
        out.push_back(best);
    }
    return out;
}

OperatorHandle build_hammerstein_c(const HammersteinSpec& spec, const Grid& grid, double radius) {
    require_radius(radius);
    auto data = hammerstein_data(spec, grid);
    State center = resolve_center(spec.center, grid.size());
    const NormFn norm = sup_norm();
    const double offset = norm(center);

    const auto norms = kernel_sup_norms(spec, grid);
    std::vector<double> weights;
    std::vector<LipschitzModulus> moduli;
    for (std::size_t j = 0; j < spec.terms.size(); ++j) {
        weights.push_back(std::abs(spec.lambda) * norms[j]);
        moduli.push_back(spec.terms[j].modulus.shifted(offset, radius));
    }
    const auto modulus = LipschitzModulus::weighted_sum(weights, moduli, radius);
    return make_operator("hammerstein_c", hammerstein_apply(data), std::move(center), norm, modulus, radius);
}

void LipschitzPairSet::validate() const {
    if (pairs.empty()) throw SpecError("pair set must be nonempty");
    for (const auto& [first, second] : pairs) {
        if (!std::isfinite(first) || !std::isfinite(second) || first < 0.0 || second < 0.0) {
            throw SpecError("pair entries must be finite and nonnegative");
        }
    }
}

LipschitzModulus build_superposition_modulus(const LipschitzPairSet& pairs, double p, double q, double length,
                                             double radius) {
    pairs.validate();
    if (!(p > 1.0) || !std::isfinite(p)) throw SpecError("p must exceed 1");
    if (!(q > 0.0) || q > p) throw SpecError("q must lie in (0, p]");
    if (!(length > 0.0)) throw SpecError("interval length must be positive");
    require_radius(radius);

    const double gamma = (p - q) / q;
    const double scale = std::pow(length, (p - q) / (p * q));
    const auto kept = undominated(pairs.pairs);

    if (gamma == 0.0) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [xi, eta] : kept) best = std::min(best, xi * scale + eta);
        return LipschitzModulus::constant(best);
    }
    if (kept.size() == 1) {
        const auto [xi, eta] = kept.front();
        std::vector<PowerTerm> terms;
        if (xi > 0.0) terms.push_back({xi * scale, 0.0});
        if (eta > 0.0) terms.push_back({eta, gamma});
        if (terms.empty()) return LipschitzModulus::constant(0.0);
        if (terms.size() == 1 && terms.front().exponent == 0.0) return LipschitzModulus::constant(terms.front().coefficient);
        return LipschitzModulus::power_sum(std::move(terms));
    }

    std::vector<std::function<double(double)>> curves;
    for (const auto& [xi, eta] : kept) {
        curves.push_back([=](double r) { return xi * scale + eta * std::pow(r, gamma); });
    }
    const LowerEnvelope envelope(std::move(curves));
    const auto nodes = envelope.crossings(radius);
    return LipschitzModulus::sampled(envelope, radius, nodes);
}

OperatorHandle build_hammerstein_lp(const HammersteinSpec& spec, std::span<const LipschitzModulus> moduli,
                                    std::span<const double> zaanen_norms, double p, const Grid& grid, double radius) {
    require_radius(radius);
    if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("p must be finite and >= 1");
    if (moduli.size() != spec.terms.size() || zaanen_norms.size() != spec.terms.size()) {
        throw SpecError("need one superposition modulus and one Zaanen norm per term");
    }
    auto data = hammerstein_data(spec, grid);
    State center = resolve_center(spec.center, grid.size());
    const NormFn norm = grid_lp_norm(grid, p);
    const double offset = norm(center);

    std::vector<double> weights;
    std::vector<LipschitzModulus> shifted;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        if (!(zaanen_norms[j] >= 0.0) || !std::isfinite(zaanen_norms[j])) {
            throw SpecError("Zaanen norms must be finite and nonnegative");
        }
        weights.push_back(std::abs(spec.lambda) * zaanen_norms[j]);
        shifted.push_back(moduli[j].shifted(offset, radius));
    }
    const auto modulus = LipschitzModulus::weighted_sum(weights, shifted, radius);
    return make_operator("hammerstein_lp", hammerstein_apply(data), std::move(center), norm, modulus, radius);
}

// ---------------------------------------------------------------------------

OperatorHandle build_urysohn_c(const UrysohnSpec& spec, const Grid& grid, double radius) {
    require_radius(radius);
    require_grid_covers(grid, spec.lower, spec.upper);
    if (!spec.kernel || !spec.l || !spec.m) throw SpecError("Urysohn operator needs K, l and m");
    State center = resolve_center(spec.center, grid.size());
    const NormFn norm = sup_norm();
    const double offset = norm(center);

    const std::vector<double> t(grid.nodes().begin(), grid.nodes().end());
    const std::vector<double> w(grid.weights().begin(), grid.weights().end());
    const auto modulus = LipschitzModulus::sampled(
        [&](double r) {
            const double rr = r + offset;
            double best = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                double acc = 0.0;
                for (std::size_t l = 0; l < t.size(); ++l) acc += w[l] * (spec.l(t[i], t[l], rr) + spec.m(t[i], t[l], rr));
                best = std::max(best, acc);
            }
            return best;
        },
        radius);

    ApplyFn apply = [kernel = spec.kernel, t, w](std::span<const double> x) {
        if (x.size() != t.size()) throw DomainError("state dimension mismatch");
        State out(x.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            double acc = 0.0;
            for (std::size_t l = 0; l < t.size(); ++l) acc += w[l] * kernel(t[i], t[l], x[l], x[i]);
            out[i] = acc;
        }
        return out;
    };
    return make_operator("urysohn_c", std::move(apply), std::move(center), norm, modulus, radius);
}

OperatorHandle build_composition_c(const CompositionSpec& spec, const Grid& grid, double radius) {
    require_radius(radius);
    require_grid_covers(grid, spec.lower, spec.upper);
    if (!spec.outer || !spec.l || !spec.m || !spec.inner || !spec.n0 || !spec.n) {
        throw SpecError("composition operator needs F, l, m, K, n0 and n");
    }
    State center = resolve_center(spec.center, grid.size());
    const NormFn norm = sup_norm();
    const double offset = norm(center);

    const std::vector<double> t(grid.nodes().begin(), grid.nodes().end());
    const std::vector<double> w(grid.weights().begin(), grid.weights().end());
    const auto modulus = LipschitzModulus::sampled(
        [&](double r) {
            const double rr = r + offset;
            double best = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                double bound = 0.0;
                double lip = 0.0;
                for (std::size_t l = 0; l < t.size(); ++l) {
                    bound += w[l] * spec.n0(t[i], t[l], rr);
                    lip += w[l] * spec.n(t[i], t[l], rr);
                }
                best = std::max(best, spec.l(t[i], rr, bound) + spec.m(t[i], rr, bound) * lip);
            }
            return best;
        },
        radius);

    ApplyFn apply = [outer = spec.outer, inner = spec.inner, t, w](std::span<const double> x) {
        if (x.size() != t.size()) throw DomainError("state dimension mismatch");
        State out(x.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            double v = 0.0;
            for (std::size_t l = 0; l < t.size(); ++l) v += w[l] * inner(t[i], t[l], x[l]);
            out[i] = outer(t[i], x[i], v);
        }
        return out;
    };
    return make_operator("composition_c", std::move(apply), std::move(center), norm, modulus, radius);
}

// ---------------------------------------------------------------------------

namespace {

void check_terms(const std::vector<PowerTerm>& terms, double max_exponent, const char* family) {
    for (const auto& term : terms) {
        if (!std::isfinite(term.coefficient) || term.coefficient < 0.0) {
            throw SpecError(std::string(family) + " coefficients must be finite and nonnegative");
        }
        if (!(term.exponent >= 0.0) || term.exponent > max_exponent) {
            std::ostringstream msg;
            msg << family << " exponent " << term.exponent << " outside [0, " << max_exponent << "]";
            throw SpecError(msg.str());
        }
    }
}

double power_value(const std::vector<PowerTerm>& terms, double r) {
    double s = 0.0;
    for (const auto& term : terms) s += term.coefficient * std::pow(r, term.exponent);
    return s;
}

bool all_constant(const std::vector<PowerTerm>& terms) {
    return std::all_of(terms.begin(), terms.end(), [](const PowerTerm& t) { return t.exponent == 0.0; });
}

LipschitzModulus power_or_constant(std::vector<PowerTerm> terms) {
    if (all_constant(terms)) {
        double s = 0.0;
        for (const auto& t : terms) s += t.coefficient;
        return LipschitzModulus::constant(s);
    }
    return LipschitzModulus::power_sum(std::move(terms));
}

}  // namespace

LipschitzModulus build_power_modulus(const PowerGrowthModulusSpec& spec) {
    const double p = spec.p;
    if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("p must be finite and >= 1");

    if (!spec.outer) {
        check_terms(spec.theta_terms, p - 1.0, "theta");
        check_terms(spec.vartheta_terms, p, "vartheta");
        std::vector<PowerTerm> terms = spec.theta_terms;
        terms.insert(terms.end(), spec.vartheta_terms.begin(), spec.vartheta_terms.end());
        return power_or_constant(std::move(terms));
    }

    const auto& outer = *spec.outer;
    check_terms(spec.theta_terms, p, "theta");
    check_terms(spec.vartheta_terms, p - 1.0, "vartheta");
    outer.pairs.validate();
    if (!std::isfinite(outer.c) || outer.c < 0.0) throw SpecError("c must be finite and nonnegative");
    if (!(outer.q >= p) || !std::isfinite(outer.q)) throw SpecError("outer exponent q must satisfy q >= p");
    require_radius(spec.radius);

    const double e = (outer.q - p) / p;
    const auto kept = undominated(outer.pairs.pairs);
    const bool growth_constant = e == 0.0 || all_constant(spec.theta_terms);
    const auto& b_terms = spec.vartheta_terms;

    if (kept.size() == 1 && (kept.front().second == 0.0 || growth_constant)) {
        const auto [mu, nu] = kept.front();
        const double env = mu + nu * std::pow(power_value(spec.theta_terms, 0.0), e);
        std::vector<PowerTerm> terms{{outer.c, 0.0}};
        for (const auto& b : b_terms) terms.push_back({env * b.coefficient, b.exponent});
        return power_or_constant(std::move(terms));
    }

    std::vector<std::function<double(double)>> curves;
    const auto theta = spec.theta_terms;
    for (const auto& [mu, nu] : kept) {
        curves.push_back([=](double r) { return mu + nu * std::pow(power_value(theta, r), e); });
    }
    const LowerEnvelope envelope(std::move(curves));
    const auto nodes = envelope.crossings(spec.radius);
    const double c = outer.c;
    return LipschitzModulus::sampled([&](double r) { return c + envelope(r) * power_value(b_terms, r); },
                                     spec.radius, nodes);
}

}  // namespace majorant
