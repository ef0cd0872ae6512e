#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace majorant {

/// Thrown when an argument lies outside the domain of a scalar function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a modulus cannot be a valid Lipschitz modulus
/// (negative, non-monotone, malformed table).
class InvalidModulus : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One term c * r^p of a power-sum modulus.
struct PowerTerm {
    double coefficient = 0.0;
    double exponent = 0.0;
};

/// Number of radius nodes used when a modulus without a closed form is
/// wrapped as a table.
inline constexpr std::size_t kRadiusGridNodes = 257;

/// Radius-dependent Lipschitz modulus k(r) on [0, R].
///
/// Three representations are supported:
///   - constant:  k(r) = q
///   - power sum: k(r) = sum_i c_i r^{p_i}
///   - tabulated: linear interpolation through (t_j, k_j), t_0 = 0
///
/// Every instance is nonnegative and nondecreasing; the factories reject
/// anything else. The primitive K(r) = int_0^r k(t) dt is exact for all
/// three forms (piecewise quadratic for tables).
class LipschitzModulus {
public:
    enum class Kind { constant, power_sum, tabulated };

    struct Constant {
        double q;
    };
    struct PowerSum {
        std::vector<PowerTerm> terms;
    };
    struct Tabulated {
        std::vector<double> abscissae;
        std::vector<double> ordinates;
    };

    static LipschitzModulus constant(double q);
    static LipschitzModulus power_sum(std::vector<PowerTerm> terms);
    static LipschitzModulus tabulated(std::vector<double> abscissae, std::vector<double> ordinates);

    /// Samples `k` on a uniform grid of `nodes` points over [0, radius],
    /// merged with any `extra_nodes` inside (0, radius), and wraps the
    /// result as a table.
    static LipschitzModulus sampled(const std::function<double(double)>& k, double radius,
                                    std::span<const double> extra_nodes = {},
                                    std::size_t nodes = kRadiusGridNodes);

    /// sum_j weights[j] * moduli[j](r). Stays a power sum when no table is
    /// involved; otherwise tabulated on the union of table nodes and a
    /// uniform radius grid over [0, radius].
    static LipschitzModulus weighted_sum(std::span<const double> weights,
                                         std::span<const LipschitzModulus> moduli, double radius);

    /// k(r + offset) on [0, radius]. Needed when a ball is centred away from
    /// the origin but the modulus was stated for |u| <= r.
    [[nodiscard]] LipschitzModulus shifted(double offset, double radius) const;

    [[nodiscard]] double operator()(double r) const;
    [[nodiscard]] double primitive(double r) const;

    /// Largest radius at which the modulus is defined (infinite for the
    /// closed forms).
    [[nodiscard]] double max_radius() const;

    [[nodiscard]] Kind kind() const { return static_cast<Kind>(rep_.index()); }
    [[nodiscard]] const std::variant<Constant, PowerSum, Tabulated>& representation() const { return rep_; }

    [[nodiscard]] std::string describe() const;

private:
    explicit LipschitzModulus(std::variant<Constant, PowerSum, Tabulated> rep);

    std::variant<Constant, PowerSum, Tabulated> rep_;
    // Primitive at each table node.
    std::vector<double> cumulative_;
};

}  // namespace majorant
