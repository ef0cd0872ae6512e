#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "majorant/majorant.hpp"

namespace majorant {

using State = std::vector<double>;
using ApplyFn = std::function<State(std::span<const double>)>;
using NormFn = std::function<double(std::span<const double>)>;

/// Operator A on a finite-dimensional state space together with its centre
/// x0, ambient norm and majorant profile.
struct OperatorHandle {
    std::string name;
    ApplyFn apply;
    State center;
    NormFn norm;
    MajorantProfile profile;

    [[nodiscard]] double distance(std::span<const double> x, std::span<const double> y) const;
};

/// Builds a handle. When `a` is not supplied it is ||A x0 - x0||; a supplied
/// value smaller than that (beyond `consistency_tol`) is rejected.
OperatorHandle make_operator(std::string name, ApplyFn apply, State center, NormFn norm, LipschitzModulus modulus,
                             double radius, std::optional<double> a = std::nullopt, double consistency_tol = 1e-9);

NormFn euclidean_norm();

struct StoppingRule {
    double bound_tol = 1e-10;
    std::size_t max_steps = 10000;
};

/// Slack separating a modulus violation from rounding.
struct BoundSlack {
    double relative = 1e-9;
    double absolute = 1e-12;

    [[nodiscard]] double allowance(double bound) const { return relative * std::abs(bound) + absolute; }
};

enum class TraceStatus { converged, max_steps, bound_violated };

std::string to_string(TraceStatus status);

/// One application xi_{n+1} = A xi_n with the scalar majorant sequences.
struct StepRecord {
    std::size_t n = 0;
    double step_norm = 0.0;      // ||xi_{n+1} - xi_n||
    double r = 0.0;              // r_n
    double rho = 0.0;            // rho_n
    double rho_next = 0.0;       // rho_{n+1}
    double apriori_bound = 0.0;  // r* + rho_n - 2 r_n
    double step_bound = 0.0;     // rho_{n+1} + rho_n - 2 r_n
    double center_bound = 0.0;   // r* - r_n
};

struct IterationTrace {
    double r_star = 0.0;
    std::vector<StepRecord> steps;
    /// xi_0, ..., xi_N.
    std::vector<State> states;
    /// Scalar sequences up to index N.
    std::vector<double> r;
    std::vector<double> rho;
    TraceStatus status = TraceStatus::max_steps;

    [[nodiscard]] std::size_t step_count() const { return steps.size(); }
    [[nodiscard]] double final_apriori_bound() const { return r_star + rho.back() - 2.0 * r.back(); }
    [[nodiscard]] double final_center_bound() const { return r_star - r.back(); }
};

class InadmissibleStart : public std::runtime_error {
public:
    InadmissibleStart(double rho0, const ZoneReport& report);
    [[nodiscard]] double rho0() const { return rho0_; }

private:
    double rho0_;
};

/// An observed step exceeded its certified bound: the modulus attached to
/// the operator is not a valid Lipschitz modulus for it. Carries the trace
/// up to and including the offending step.
class BoundViolation : public std::runtime_error {
public:
    BoundViolation(const std::string& what, IterationTrace trace);
    [[nodiscard]] const IterationTrace& trace() const { return trace_; }

private:
    IterationTrace trace_;
};

/// rho0 in B[x0, r*] or in the annulus L(x0, r*, r**) with its openness.
bool check_admissible_start(const ZoneReport& report, double rho0);

struct IterationResult {
    State x_star;
    IterationTrace trace;
};

/// Successive approximations from `xi0`, stopping once the a-priori bound
/// r* + rho_n - 2 r_n falls below `rule.bound_tol`.
IterationResult iterate(const OperatorHandle& op, std::span<const double> xi0, const StoppingRule& rule = {},
                        const BoundSlack& slack = {}, double radius_tol = kDefaultRadiusTol);

struct CertificateCheck {
    enum class Kind { step, apriori };
    Kind kind;
    std::size_t n;
    double observed;
    double bound;
    double slack;  // bound - observed; negative when violated
    bool pass;
};

struct Certificate {
    std::vector<CertificateCheck> checks;
    bool all_pass = true;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> first_violation;  // step index n
};

/// Re-checks every step bound and, given a reference solution, every
/// a-priori bound of a finished trace.
Certificate certify_trace(const IterationTrace& trace, const std::optional<State>& x_ref, const NormFn& norm,
                          const BoundSlack& slack = {});

}  // namespace majorant
