#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "majorant/discretize.hpp"
#include "majorant/iteration.hpp"
#include "majorant/modulus.hpp"

namespace majorant {

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using ScalarFn = std::function<double(double)>;
using KernelFn = std::function<double(double, double)>;

// ---------------------------------------------------------------------------
// x = eta + T(x, ..., x) with an m-linear T on R^d.

struct MultilinearSpec {
    std::size_t dimension = 1;
    std::size_t degree = 2;
    /// T[i][j_1]...[j_m], row-major, d^{m+1} entries.
    std::vector<double> tensor;
    std::vector<double> eta;
    /// Norm C of T; estimated when absent.
    std::optional<double> norm;
    std::optional<State> center;
    std::uint64_t seed = 0x6d616a6fULL;
    std::size_t norm_samples = 20000;
};

/// T(u_1, ..., u_m).
State contract_multilinear(const MultilinearSpec& spec, std::span<const State> args);

/// Exact for d = 1. For d > 1: the largest ||T(u_1..u_m)|| over seeded
/// random unit vectors, inflated by 10%.
double multilinear_norm(const MultilinearSpec& spec);

/// Euclidean norm (absolute value when d = 1), modulus C m r^{m-1}.
OperatorHandle build_multilinear(const MultilinearSpec& spec, double radius);

/// Largest a for which a + C r^m = r has a root.
double lr_critical_a(double c, int m);

// ---------------------------------------------------------------------------
// x(t) = f(t) + lambda sum_j int k_j(t,s) h_j(x(s)) ds

struct HammersteinTerm {
    KernelFn kernel;
    ScalarFn nonlinearity;
    /// |h(y1) - h(y2)| <= w(r) |y1 - y2| for |y1|, |y2| <= r.
    LipschitzModulus modulus;
};

struct HammersteinSpec {
    double lower = 0.0;
    double upper = 1.0;
    std::vector<HammersteinTerm> terms;
    double lambda = 1.0;
    ScalarFn forcing;
    std::optional<State> center;
};

/// max_i sum_l w_l |k_j(t_i, s_l)| for each term.
std::vector<double> kernel_sup_norms(const HammersteinSpec& spec, const Grid& grid);

/// Nyström discretisation in the max norm, k(r) = |lambda| sum_j ||K_j|| w_j(r).
OperatorHandle build_hammerstein_c(const HammersteinSpec& spec, const Grid& grid, double radius);

/// Candidate pairs (first, second) for an infimum first * beta + second * r^gamma.
struct LipschitzPairSet {
    std::vector<std::pair<double, double>> pairs;

    void validate() const;
};

/// h(r) = inf over pairs of xi (b-a)^{(p-q)/(pq)} + eta r^{(p-q)/q}. Exact power
/// sum when one pair dominates, otherwise the tabulated lower envelope on
/// [0, radius] with the crossing radii as nodes.
LipschitzModulus build_superposition_modulus(const LipschitzPairSet& pairs, double p, double q, double length,
                                             double radius);

/// Same Nyström operator in the discrete L_p norm with
/// k(r) = |lambda| sum_j zaanen_norms[j] * moduli[j](r).
OperatorHandle build_hammerstein_lp(const HammersteinSpec& spec, std::span<const LipschitzModulus> moduli,
                                    std::span<const double> zaanen_norms, double p, const Grid& grid, double radius);

// ---------------------------------------------------------------------------
// x(t) = int K(t, s, x(s), x(t)) ds

struct UrysohnSpec {
    double lower = 0.0;
    double upper = 1.0;
    /// K(t, s, u, v).
    std::function<double(double, double, double, double)> kernel;
    /// l(t, s, r) and m(t, s, r): moduli in u and v.
    std::function<double(double, double, double)> l;
    std::function<double(double, double, double)> m;
    std::optional<State> center;
};

OperatorHandle build_urysohn_c(const UrysohnSpec& spec, const Grid& grid, double radius);

// ---------------------------------------------------------------------------
// x(t) = F(t, x(t), int K(t, s, x(s)) ds)

struct CompositionSpec {
    double lower = 0.0;
    double upper = 1.0;
    /// F(t, u, v).
    std::function<double(double, double, double)> outer;
    /// l(t, r, rho), m(t, r, rho): moduli of F in u and v.
    std::function<double(double, double, double)> l;
    std::function<double(double, double, double)> m;
    /// K(t, s, u).
    std::function<double(double, double, double)> inner;
    /// n0(t, s, r) bounds |K|; n(t, s, r) is its modulus in u.
    std::function<double(double, double, double)> n0;
    std::function<double(double, double, double)> n;
    std::optional<State> center;
};

OperatorHandle build_composition_c(const CompositionSpec& spec, const Grid& grid, double radius);

// ---------------------------------------------------------------------------
// Power-growth moduli for the L_p variants.

/// Outer superposition factor c + inf_{(mu, nu)} (mu + nu G(r)^{(q-p)/p}).
struct OuterSuperposition {
    double c = 0.0;
    LipschitzPairSet pairs;
    double q = 1.0;
};

struct PowerGrowthModulusSpec {
    double p = 2.0;
    /// (||a_j||, theta_j).
    std::vector<PowerTerm> theta_terms;
    /// (||b_k||, vartheta_k).
    std::vector<PowerTerm> vartheta_terms;
    /// Present for the composition form
    ///   k(r) = c + inf(mu + nu (sum a_j r^theta_j)^{(q-p)/p}) * sum b_k r^vartheta_k,
    /// absent for the Urysohn form k(r) = sum a_j r^theta_j + sum b_k r^vartheta_k.
    std::optional<OuterSuperposition> outer;
    /// Tabulation range when the result has no closed form.
    double radius = 1.0;
};

LipschitzModulus build_power_modulus(const PowerGrowthModulusSpec& spec);

}  // namespace majorant
