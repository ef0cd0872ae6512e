#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "majorant/modulus.hpp"

namespace majorant {

/// Default tolerance for scalar radii.
inline constexpr double kDefaultRadiusTol = 1e-12;

/// Offset a, modulus k and radius R of an operator; defines
/// a_+(r) = a + K(r) and a_-(r) = a - K(r) on [0, R].
class MajorantProfile {
public:
    MajorantProfile(double a, LipschitzModulus modulus, double radius);

    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] const LipschitzModulus& modulus() const { return modulus_; }

    /// K(r); throws DomainError outside [0, R].
    [[nodiscard]] double primitive(double r) const;
    [[nodiscard]] double a_plus(double r) const { return a_ + primitive(r); }
    [[nodiscard]] double a_minus(double r) const { return a_ - primitive(r); }

private:
    double a_;
    LipschitzModulus modulus_;
    double radius_;
};

/// Location of the minimum of a_+(r) - r together with its value.
/// A positive gap means a_+ never meets the bisectrix.
struct GapWitness {
    double gap = 0.0;
    double at = 0.0;
};

/// No fixed point of a_+ in [0, R]; carries the distance to solvability.
class NoExistence : public std::runtime_error {
public:
    explicit NoExistence(GapWitness witness);
    [[nodiscard]] const GapWitness& witness() const { return witness_; }

private:
    GapWitness witness_;
};

/// Real interval with explicit endpoint closedness. Empty intervals carry
/// `is_empty = true` and their endpoints are meaningless.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_closed = true;
    bool upper_closed = true;
    bool is_empty = false;

    static Interval make(double lower, double upper, bool lower_closed, bool upper_closed);
    static Interval empty();

    [[nodiscard]] bool contains(double x) const;
    /// Set inclusion, endpoint closedness included.
    [[nodiscard]] bool includes(const Interval& other) const;
    [[nodiscard]] bool operator==(const Interval& other) const;
    [[nodiscard]] std::string to_string() const;
};

struct MajorantValues {
    double a_plus;
    double a_minus;
};

/// Existence and uniqueness radii of a majorant profile.
struct ZoneReport {
    double a = 0.0;
    double radius = 0.0;
    std::optional<double> r_lower;        // smallest fixed point of a_-
    std::optional<double> r_star;         // smallest fixed point of a_+
    std::optional<double> r_double_star;  // end of the uniqueness annulus
    bool r_double_star_closed = false;
    bool degenerate = false;              // empty annulus; r** := r*
    std::optional<double> r_cr;           // first radius with k(r) >= 1
    Interval bc_zone = Interval::empty();
    Interval u_zone = Interval::empty();
    Interval e_zone = Interval::empty();
    bool existence_certified = false;
    GapWitness min_gap;
};

struct DoubleStar {
    double r;
    bool closed;
    bool degenerate;
};

MajorantValues eval_majorants(const MajorantProfile& profile, double r);

/// Smallest root of a_+(r) = r on [0, R].
///
/// The monotone sequence r_{n+1} = a_+(r_n), r_0 = 0 stays strictly below
/// the smallest root, so its last term is a certified lower bracket. The
/// upper bracket is the minimiser of a_+(r) - r (r_cr, or R when k < 1),
/// which is convex because k is nondecreasing; bisection between the two
/// then finds the unique sign change. Throws NoExistence with the minimum
/// gap when a_+ stays above the bisectrix.
double find_r_star(const MajorantProfile& profile, double tol = kDefaultRadiusTol);

/// Unique root of a_-(r) = r in [0, min(a, R)].
double find_r_lower_star(const MajorantProfile& profile, double tol = kDefaultRadiusTol);

/// sup{ r in (r*, R] : a_+(r) < r }; r* itself with `degenerate` set when
/// the set is empty. `closed` is a_+(R) < R.
DoubleStar find_r_double_star(const MajorantProfile& profile, double r_star, double tol = kDefaultRadiusTol);

/// inf{ r : k(r) >= 1 }, or nothing if k(R) < 1.
std::optional<double> find_r_cr(const MajorantProfile& profile, double tol = kDefaultRadiusTol);

/// Minimum of a_+(r) - r over [0, R] and where it is attained.
GapWitness min_gap(const MajorantProfile& profile, double tol = kDefaultRadiusTol);

/// All radii and zones. Never throws NoExistence: that outcome is reported
/// through `existence_certified = false` and `min_gap`.
ZoneReport analyze(const MajorantProfile& profile, double tol = kDefaultRadiusTol);

/// [s_0 = start, s_1 = a_+(s_0), ..., s_n].
std::vector<double> scalar_sequence(const MajorantProfile& profile, double start, std::size_t n);

}  // namespace majorant
