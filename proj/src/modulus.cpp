#include "majorant/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace majorant {

namespace {

// Relative allowance for radii that overshoot the table end by rounding.
constexpr double kEdgeSlack = 16.0 * std::numeric_limits<double>::epsilon();

// Sampled moduli may wobble by quadrature rounding; anything larger is a
// genuine decrease.
constexpr double kMonotoneNoise = 1e-12;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw InvalidModulus(std::string(what) + " must be finite");
    }
}

std::vector<double> uniform_nodes(double radius, std::size_t nodes) {
    std::vector<double> out(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        out[i] = radius * static_cast<double>(i) / static_cast<double>(nodes - 1);
    }
    out.back() = radius;
    return out;
}

std::vector<double> merge_nodes(std::vector<double> base, std::span<const double> extra, double radius) {
    for (double e : extra) {
        if (e > 0.0 && e < radius) base.push_back(e);
    }
    std::sort(base.begin(), base.end());
    std::vector<double> out;
    out.reserve(base.size());
    const double min_gap = 1e-14 * radius;
    for (double t : base) {
        if (out.empty() || t - out.back() > min_gap) out.push_back(t);
    }
    // The last node must be exactly the radius.
    if (out.back() != radius) {
        if (radius - out.back() <= min_gap) out.back() = radius;
        else out.push_back(radius);
    }
    return out;
}

}  // namespace

LipschitzModulus::LipschitzModulus(std::variant<Constant, PowerSum, Tabulated> rep) : rep_(std::move(rep)) {
    if (const auto* tab = std::get_if<Tabulated>(&rep_)) {
        const auto& t = tab->abscissae;
        const auto& k = tab->ordinates;
        cumulative_.assign(t.size(), 0.0);
        for (std::size_t j = 1; j < t.size(); ++j) {
            cumulative_[j] = cumulative_[j - 1] + 0.5 * (t[j] - t[j - 1]) * (k[j] + k[j - 1]);
        }
    }
}

LipschitzModulus LipschitzModulus::constant(double q) {
    require_finite(q, "constant modulus");
    if (q < 0.0) throw InvalidModulus("constant modulus must be nonnegative");
    return LipschitzModulus(Constant{q});
}

LipschitzModulus LipschitzModulus::power_sum(std::vector<PowerTerm> terms) {
    for (const auto& term : terms) {
        require_finite(term.coefficient, "power-sum coefficient");
        require_finite(term.exponent, "power-sum exponent");
        if (term.coefficient < 0.0) throw InvalidModulus("power-sum coefficients must be nonnegative");
        if (term.exponent < 0.0) throw InvalidModulus("power-sum exponents must be nonnegative");
    }
    return LipschitzModulus(PowerSum{std::move(terms)});
}

LipschitzModulus LipschitzModulus::tabulated(std::vector<double> abscissae, std::vector<double> ordinates) {
    if (abscissae.size() != ordinates.size()) {
        throw InvalidModulus("tabulated modulus: abscissae and ordinates differ in length");
    }
    if (abscissae.size() < 2) throw InvalidModulus("tabulated modulus needs at least two nodes");
    if (abscissae.front() != 0.0) throw InvalidModulus("tabulated modulus must start at r = 0");
    for (std::size_t j = 0; j < abscissae.size(); ++j) {
        require_finite(abscissae[j], "tabulated abscissa");
        require_finite(ordinates[j], "tabulated ordinate");
        if (ordinates[j] < 0.0) throw InvalidModulus("tabulated modulus must be nonnegative");
        if (j > 0) {
            if (!(abscissae[j] > abscissae[j - 1])) {
                throw InvalidModulus("tabulated abscissae must be strictly increasing");
            }
            if (ordinates[j] < ordinates[j - 1]) {
                std::ostringstream msg;
                msg << "modulus is not nondecreasing: k(" << abscissae[j] << ") = " << ordinates[j]
                    << " < k(" << abscissae[j - 1] << ") = " << ordinates[j - 1];
                throw InvalidModulus(msg.str());
            }
        }
    }
    return LipschitzModulus(Tabulated{std::move(abscissae), std::move(ordinates)});
}

LipschitzModulus LipschitzModulus::sampled(const std::function<double(double)>& k, double radius,
                                           std::span<const double> extra_nodes, std::size_t nodes) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidModulus("sampling radius must be positive");
    if (nodes < 2) throw InvalidModulus("need at least two sampling nodes");
    auto t = merge_nodes(uniform_nodes(radius, nodes), extra_nodes, radius);
    std::vector<double> values(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double v = k(t[j]);
        require_finite(v, "sampled modulus value");
        if (v < 0.0) throw InvalidModulus("sampled modulus is negative at r = " + std::to_string(t[j]));
        if (j > 0 && v < values[j - 1]) {
            if (values[j - 1] - v > kMonotoneNoise * std::max(1.0, values[j - 1])) {
                std::ostringstream msg;
                msg << "sampled modulus decreases between r = " << t[j - 1] << " and r = " << t[j];
                throw InvalidModulus(msg.str());
            }
            values[j] = values[j - 1];
            continue;
        }
        values[j] = v;
    }
    return tabulated(std::move(t), std::move(values));
}

LipschitzModulus LipschitzModulus::weighted_sum(std::span<const double> weights,
                                                std::span<const LipschitzModulus> moduli, double radius) {
    if (weights.size() != moduli.size()) throw InvalidModulus("weighted_sum: size mismatch");
    for (double w : weights) {
        require_finite(w, "weight");
        if (w < 0.0) throw InvalidModulus("weighted_sum: weights must be nonnegative");
    }
    const bool any_table = std::any_of(moduli.begin(), moduli.end(),
                                       [](const auto& m) { return m.kind() == Kind::tabulated; });
    if (!any_table) {
        const bool all_constant = std::all_of(moduli.begin(), moduli.end(),
                                              [](const auto& m) { return m.kind() == Kind::constant; });
        if (all_constant && !moduli.empty()) {
            double q = 0.0;
            for (std::size_t j = 0; j < moduli.size(); ++j) {
                q += weights[j] * std::get<Constant>(moduli[j].rep_).q;
            }
            return constant(q);
        }
        std::vector<PowerTerm> terms;
        for (std::size_t j = 0; j < moduli.size(); ++j) {
            if (const auto* c = std::get_if<Constant>(&moduli[j].rep_)) {
                terms.push_back({weights[j] * c->q, 0.0});
            } else {
                for (const auto& term : std::get<PowerSum>(moduli[j].rep_).terms) {
                    terms.push_back({weights[j] * term.coefficient, term.exponent});
                }
            }
        }
        return power_sum(std::move(terms));
    }

    std::vector<double> extra;
    for (const auto& m : moduli) {
        if (const auto* tab = std::get_if<Tabulated>(&m.rep_)) {
            if (m.max_radius() * (1.0 + kEdgeSlack) < radius) {
                throw InvalidModulus("weighted_sum: tabulated modulus does not cover the radius");
            }
            extra.insert(extra.end(), tab->abscissae.begin(), tab->abscissae.end());
        }
    }
    std::vector<double> w(weights.begin(), weights.end());
    std::vector<LipschitzModulus> parts(moduli.begin(), moduli.end());
    return sampled(
        [&](double r) {
            double s = 0.0;
            for (std::size_t j = 0; j < parts.size(); ++j) s += w[j] * parts[j](r);
            return s;
        },
        radius, extra);
}

LipschitzModulus LipschitzModulus::shifted(double offset, double radius) const {
    if (!(offset >= 0.0) || !std::isfinite(offset)) throw InvalidModulus("shift offset must be nonnegative");
    if (offset == 0.0 || kind() == Kind::constant) return *this;
    if (offset + radius > max_radius() * (1.0 + kEdgeSlack)) {
        throw InvalidModulus("shifted modulus exceeds the tabulated range");
    }
    std::vector<double> extra;
    if (const auto* tab = std::get_if<Tabulated>(&rep_)) {
        for (double t : tab->abscissae) extra.push_back(t - offset);
    }
    const LipschitzModulus self = *this;
    return sampled([&](double r) { return self(std::min(r + offset, self.max_radius())); }, radius, extra);
}

double LipschitzModulus::max_radius() const {
    if (const auto* tab = std::get_if<Tabulated>(&rep_)) return tab->abscissae.back();
    return std::numeric_limits<double>::infinity();
}

double LipschitzModulus::operator()(double r) const {
    if (!(r >= 0.0)) throw DomainError("modulus evaluated at negative radius");
    return std::visit(
        [&](const auto& rep) -> double {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return rep.q;
            } else if constexpr (std::is_same_v<T, PowerSum>) {
                double s = 0.0;
                for (const auto& term : rep.terms) s += term.coefficient * std::pow(r, term.exponent);
                return s;
            } else {
                const auto& t = rep.abscissae;
                const auto& k = rep.ordinates;
                if (r > t.back()) {
                    if (r > t.back() * (1.0 + kEdgeSlack)) throw DomainError("radius beyond tabulated modulus");
                    return k.back();
                }
                const auto it = std::upper_bound(t.begin(), t.end(), r);
                if (it == t.end()) return k.back();
                const std::size_t j = static_cast<std::size_t>(it - t.begin()) - 1;
                const double theta = (r - t[j]) / (t[j + 1] - t[j]);
                return k[j] + theta * (k[j + 1] - k[j]);
            }
        },
        rep_);
}

double LipschitzModulus::primitive(double r) const {
    if (!(r >= 0.0)) throw DomainError("primitive evaluated at negative radius");
    return std::visit(
        [&](const auto& rep) -> double {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return rep.q * r;
            } else if constexpr (std::is_same_v<T, PowerSum>) {
                double s = 0.0;
                for (const auto& term : rep.terms) {
                    const double e = term.exponent + 1.0;
                    s += term.coefficient / e * std::pow(r, e);
                }
                return s;
            } else {
                const auto& t = rep.abscissae;
                if (r > t.back()) {
                    if (r > t.back() * (1.0 + kEdgeSlack)) throw DomainError("radius beyond tabulated modulus");
                    return cumulative_.back();
                }
                const auto it = std::upper_bound(t.begin(), t.end(), r);
                if (it == t.end()) return cumulative_.back();
                const std::size_t j = static_cast<std::size_t>(it - t.begin()) - 1;
                return cumulative_[j] + 0.5 * (r - t[j]) * (rep.ordinates[j] + (*this)(r));
            }
        },
        rep_);
}

std::string LipschitzModulus::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(
        [&](const auto& rep) {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, Constant>) {
                out << "constant{" << rep.q << "}";
            } else if constexpr (std::is_same_v<T, PowerSum>) {
                out << "power_sum{";
                for (std::size_t i = 0; i < rep.terms.size(); ++i) {
                    if (i) out << ",";
                    out << "(" << rep.terms[i].coefficient << "," << rep.terms[i].exponent << ")";
                }
                out << "}";
            } else {
                out << "tabulated{" << rep.abscissae.size() << " nodes on [0," << rep.abscissae.back() << "]}";
            }
        },
        rep_);
    return out.str();
}

}  // namespace majorant
