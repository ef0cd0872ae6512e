#include "majorant/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace majorant {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxMonotoneSteps = 1000;

// Rounding floor for a_+(r) - r. Below it the sign is not trustworthy,
// which matters only at tangency where the root is ill-conditioned.
double gap_noise(const MajorantProfile& p, double r) {
    return 64.0 * kEps * (p.a() + p.primitive(r) + r);
}

double gap(const MajorantProfile& p, double r) { return p.a_plus(r) - r; }

// Shrinks [lo, hi] while keeping `keep_low(lo)` true and `keep_low(hi)` false.
template <typename Pred>
std::pair<double, double> bisect(double lo, double hi, double width, Pred keep_low) {
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (keep_low(mid)) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

void require_tol(double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

std::string format_witness(const GapWitness& w) {
    std::ostringstream out;
    out.precision(17);
    out << "a_+(r) > r on the whole interval; minimum gap " << w.gap << " at r = " << w.at;
    return out.str();
}

}  // namespace

MajorantProfile::MajorantProfile(double a, LipschitzModulus modulus, double radius)
    : a_(a), modulus_(std::move(modulus)), radius_(radius) {
    if (!std::isfinite(a) || a < 0.0) throw DomainError("offset a must be finite and nonnegative");
    if (!std::isfinite(radius) || !(radius > 0.0)) throw DomainError("radius R must be finite and positive");
    if (modulus_.max_radius() * (1.0 + 16.0 * kEps) < radius) {
        throw InvalidModulus("modulus is not defined on the whole of [0, R]");
    }
}

double MajorantProfile::primitive(double r) const {
    if (!(r >= 0.0) || r > radius_) {
        std::ostringstream msg;
        msg << "radius " << r << " outside [0, " << radius_ << "]";
        throw DomainError(msg.str());
    }
    return modulus_.primitive(r);
}

NoExistence::NoExistence(GapWitness witness) : std::runtime_error(format_witness(witness)), witness_(witness) {}

Interval Interval::make(double lower, double upper, bool lower_closed, bool upper_closed) {
    Interval out{lower, upper, lower_closed, upper_closed, false};
    if (lower > upper || (lower == upper && !(lower_closed && upper_closed))) out.is_empty = true;
    return out;
}

Interval Interval::empty() { return Interval{0.0, 0.0, false, false, true}; }

bool Interval::contains(double x) const {
    if (is_empty) return false;
    const bool above = lower_closed ? x >= lower : x > lower;
    const bool below = upper_closed ? x <= upper : x < upper;
    return above && below;
}

bool Interval::includes(const Interval& other) const {
    if (other.is_empty) return true;
    if (is_empty) return false;
    const bool low_ok = lower < other.lower || (lower == other.lower && (lower_closed || !other.lower_closed));
    const bool high_ok = upper > other.upper || (upper == other.upper && (upper_closed || !other.upper_closed));
    return low_ok && high_ok;
}

bool Interval::operator==(const Interval& other) const {
    if (is_empty || other.is_empty) return is_empty == other.is_empty;
    return lower == other.lower && upper == other.upper && lower_closed == other.lower_closed &&
           upper_closed == other.upper_closed;
}

std::string Interval::to_string() const {
    if (is_empty) return "empty";
    std::ostringstream out;
    out.precision(17);
    out << (lower_closed ? '[' : '(') << lower << ", " << upper << (upper_closed ? ']' : ')');
    return out.str();
}

MajorantValues eval_majorants(const MajorantProfile& profile, double r) {
    const double big_k = profile.primitive(r);
    return {profile.a() + big_k, profile.a() - big_k};
}

std::optional<double> find_r_cr(const MajorantProfile& profile, double tol) {
    require_tol(tol);
    const auto& k = profile.modulus();
    if (k(0.0) >= 1.0) return 0.0;
    if (k(profile.radius()) < 1.0) return std::nullopt;
    const auto [lo, hi] = bisect(0.0, profile.radius(), tol / 10.0, [&](double r) { return k(r) < 1.0; });
    return hi;
}

GapWitness min_gap(const MajorantProfile& profile, double tol) {
    // a_+(r) - r has derivative k(r) - 1, which is nondecreasing, so the
    // minimum sits where k first reaches 1.
    const double at = find_r_cr(profile, tol).value_or(profile.radius());
    return {gap(profile, at), at};
}

double find_r_star(const MajorantProfile& profile, double tol) {
    require_tol(tol);
    if (profile.a() == 0.0) return 0.0;

    const GapWitness witness = min_gap(profile, tol);
    const double noise = gap_noise(profile, witness.at);
    if (witness.gap > noise) throw NoExistence(witness);
    // Tangency: the bisectrix touches a_+ at its minimiser.
    if (witness.gap >= -noise) return witness.at;

    double lo = 0.0;
    double hi = witness.at;
    for (std::size_t n = 0; n < kMaxMonotoneSteps; ++n) {
        const double next = profile.a_plus(lo);
        if (next >= hi || gap(profile, next) <= 0.0) {
            hi = std::min(hi, next);
            break;
        }
        const double step = next - lo;
        lo = next;
        if (step < tol) break;
    }
    const auto [l, h] = bisect(lo, hi, tol / 10.0, [&](double r) { return gap(profile, r) > 0.0; });
    return 0.5 * (l + h);
}

double find_r_lower_star(const MajorantProfile& profile, double tol) {
    require_tol(tol);
    if (profile.a() == 0.0) return 0.0;
    const double hi = std::min(profile.a(), profile.radius());
    auto below = [&](double r) { return profile.a_minus(r) - r > 0.0; };
    if (below(hi)) throw DomainError("a_-(r) = r has no root in [0, R]; a exceeds R");
    const auto [l, h] = bisect(0.0, hi, tol / 10.0, below);
    return 0.5 * (l + h);
}

DoubleStar find_r_double_star(const MajorantProfile& profile, double r_star, double tol) {
    require_tol(tol);
    const double big_r = profile.radius();
    if (!(r_star >= 0.0) || r_star > big_r) throw DomainError("r_star outside [0, R]");
    if (std::abs(gap(profile, r_star)) > 10.0 * tol + gap_noise(profile, r_star)) {
        throw DomainError("r_star is not a fixed point of a_+");
    }

    const bool closed = profile.a_plus(big_r) < big_r;
    if (r_star >= big_r) return {r_star, closed, true};
    if (closed) return {big_r, true, false};

    // a_+(R) >= R: the annulus ends at the second crossing, which lies past
    // the minimiser of the convex gap.
    const GapWitness witness = min_gap(profile, tol);
    if (witness.at <= r_star || witness.gap >= -gap_noise(profile, witness.at)) {
        return {r_star, false, true};
    }
    const auto [l, h] = bisect(witness.at, big_r, tol / 10.0, [&](double r) { return gap(profile, r) < 0.0; });
    return {0.5 * (l + h), false, false};
}

ZoneReport analyze(const MajorantProfile& profile, double tol) {
    require_tol(tol);
    ZoneReport report;
    report.a = profile.a();
    report.radius = profile.radius();
    report.r_cr = find_r_cr(profile, tol);
    report.min_gap = min_gap(profile, tol);

    double r_star = 0.0;
    try {
        r_star = find_r_star(profile, tol);
    } catch (const NoExistence&) {
        report.existence_certified = false;
        return report;
    }
    report.existence_certified = true;
    report.r_star = r_star;
    report.r_lower = find_r_lower_star(profile, tol);

    const DoubleStar ds = find_r_double_star(profile, r_star, tol);
    report.r_double_star = ds.r;
    report.r_double_star_closed = ds.closed;
    report.degenerate = ds.degenerate;

    report.e_zone = Interval::make(*report.r_lower, r_star, true, true);
    report.u_zone = Interval::make(0.0, ds.r, true, ds.closed);
    if (report.r_cr) {
        if (*report.r_cr <= r_star) {
            report.bc_zone = Interval::empty();
        } else if (*report.r_cr <= ds.r) {
            report.bc_zone = Interval::make(r_star, *report.r_cr, true, false);
        } else {
            report.bc_zone = Interval::make(r_star, ds.r, true, ds.closed);
        }
    } else {
        report.bc_zone = Interval::make(r_star, ds.r, true, ds.closed);
    }
    return report;
}

std::vector<double> scalar_sequence(const MajorantProfile& profile, double start, std::size_t n) {
    if (!(start >= 0.0) || start > profile.radius()) throw DomainError("start outside [0, R]");
    std::vector<double> out;
    out.reserve(n + 1);
    out.push_back(start);
    for (std::size_t i = 0; i < n; ++i) {
        const double next = profile.a_plus(out.back());
        if (next > profile.radius()) {
            std::ostringstream msg;
            msg << "scalar sequence left [0, R] at step " << i + 1 << " (value " << next << ")";
            throw DomainError(msg.str());
        }
        out.push_back(next);
    }
    return out;
}

}  // namespace majorant
