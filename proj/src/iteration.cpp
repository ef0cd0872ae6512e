#include "majorant/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace majorant {

double OperatorHandle::distance(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != y.size()) throw DomainError("state dimension mismatch");
    State diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    return norm(diff);
}

OperatorHandle make_operator(std::string name, ApplyFn apply, State center, NormFn norm, LipschitzModulus modulus,
                             double radius, std::optional<double> a, double consistency_tol) {
    const State image = apply(center);
    if (image.size() != center.size()) throw DomainError("operator changes the state dimension");
    State diff(center.size());
    for (std::size_t i = 0; i < center.size(); ++i) diff[i] = image[i] - center[i];
    const double derived = norm(diff);
    if (a && *a + consistency_tol * std::max(1.0, derived) < derived) {
        std::ostringstream msg;
        msg << "supplied offset a = " << *a << " is below ||A x0 - x0|| = " << derived;
        throw DomainError(msg.str());
    }
    MajorantProfile profile(a.value_or(derived), std::move(modulus), radius);
    return OperatorHandle{std::move(name), std::move(apply), std::move(center), std::move(norm), std::move(profile)};
}

NormFn euclidean_norm() {
    return [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    };
}

std::string to_string(TraceStatus status) {
    switch (status) {
        case TraceStatus::converged: return "converged";
        case TraceStatus::max_steps: return "max_steps";
        case TraceStatus::bound_violated: return "bound_violated";
    }
    return "unknown";
}

namespace {

std::string inadmissible_message(double rho0, const ZoneReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "start at distance " << rho0 << " from the centre is outside B[x0, r*] and the uniqueness annulus";
    if (report.r_star && report.r_double_star) {
        out << " (r* = " << *report.r_star << ", r** = " << *report.r_double_star
            << (report.r_double_star_closed ? ", closed)" : ", open)");
    }
    return out.str();
}

}  // namespace

InadmissibleStart::InadmissibleStart(double rho0, const ZoneReport& report)
    : std::runtime_error(inadmissible_message(rho0, report)), rho0_(rho0) {}

BoundViolation::BoundViolation(const std::string& what, IterationTrace trace)
    : std::runtime_error(what), trace_(std::move(trace)) {}

bool check_admissible_start(const ZoneReport& report, double rho0) {
    if (!report.existence_certified || !report.r_star || !report.r_double_star) return false;
    const double r_star = *report.r_star;
    const double r_dd = *report.r_double_star;
    if (rho0 <= r_star) return rho0 >= 0.0;
    return report.r_double_star_closed ? rho0 <= r_dd : rho0 < r_dd;
}

IterationResult iterate(const OperatorHandle& op, std::span<const double> xi0, const StoppingRule& rule,
                        const BoundSlack& slack, double radius_tol) {
    if (rule.max_steps < 1) throw DomainError("max_steps must be at least 1");
    const MajorantProfile& profile = op.profile;
    const ZoneReport report = analyze(profile, radius_tol);
    if (!report.existence_certified) throw NoExistence(report.min_gap);

    const double rho0 = op.distance(xi0, op.center);
    if (!check_admissible_start(report, rho0)) throw InadmissibleStart(rho0, report);

    const double big_r = profile.radius();
    IterationTrace trace;
    trace.r_star = *report.r_star;
    trace.states.emplace_back(xi0.begin(), xi0.end());
    trace.r.push_back(0.0);
    trace.rho.push_back(rho0);

    for (std::size_t n = 0;; ++n) {
        const double r_n = trace.r.back();
        const double rho_n = trace.rho.back();
        const double apriori = trace.r_star + rho_n - 2.0 * r_n;
        if (apriori <= rule.bound_tol) {
            trace.status = TraceStatus::converged;
            break;
        }
        if (n == rule.max_steps) {
            trace.status = TraceStatus::max_steps;
            break;
        }

        const State& xi = trace.states.back();
        if (op.distance(xi, op.center) > big_r + slack.allowance(big_r)) {
            trace.status = TraceStatus::bound_violated;
            std::ostringstream msg;
            msg << "iterate " << n << " left the ball B[x0, R]";
            throw BoundViolation(msg.str(), std::move(trace));
        }
        State next = op.apply(xi);
        StepRecord rec;
        rec.n = n;
        rec.step_norm = op.distance(next, xi);
        rec.r = r_n;
        rec.rho = rho_n;
        rec.rho_next = profile.a_plus(std::min(rho_n, big_r));
        rec.apriori_bound = apriori;
        rec.step_bound = rec.rho_next + rho_n - 2.0 * r_n;
        rec.center_bound = trace.r_star - r_n;

        trace.steps.push_back(rec);
        trace.states.push_back(std::move(next));
        trace.r.push_back(profile.a_plus(std::min(r_n, big_r)));
        trace.rho.push_back(rec.rho_next);

        if (rec.step_norm > rec.step_bound + slack.allowance(rec.step_bound)) {
            trace.status = TraceStatus::bound_violated;
            std::ostringstream msg;
            msg.precision(17);
            msg << "step " << n << ": ||xi_{n+1} - xi_n|| = " << rec.step_norm << " exceeds the certified bound "
                << rec.step_bound << "; the modulus is not valid for this operator";
            throw BoundViolation(msg.str(), std::move(trace));
        }
    }

    IterationResult result{trace.states.back(), std::move(trace)};
    return result;
}

Certificate certify_trace(const IterationTrace& trace, const std::optional<State>& x_ref, const NormFn& norm,
                          const BoundSlack& slack) {
    if (trace.states.empty()) throw DomainError("cannot certify an empty trace");
    Certificate cert;
    auto record = [&](CertificateCheck::Kind kind, std::size_t n, double observed, double bound) {
        const double margin = bound - observed;
        const bool pass = observed <= bound + slack.allowance(bound);
        cert.checks.push_back({kind, n, observed, bound, margin, pass});
        cert.worst_slack = std::min(cert.worst_slack, margin);
        if (!pass) {
            cert.all_pass = false;
            if (!cert.first_violation || n < *cert.first_violation) cert.first_violation = n;
        }
    };

    for (const auto& step : trace.steps) {
        record(CertificateCheck::Kind::step, step.n, step.step_norm, step.step_bound);
    }
    if (x_ref) {
        State diff(x_ref->size());
        for (std::size_t n = 0; n < trace.states.size(); ++n) {
            const auto& xi = trace.states[n];
            if (xi.size() != x_ref->size()) throw DomainError("reference solution has the wrong dimension");
            for (std::size_t i = 0; i < xi.size(); ++i) diff[i] = (*x_ref)[i] - xi[i];
            record(CertificateCheck::Kind::apriori, n, norm(diff), trace.r_star + trace.rho[n] - 2.0 * trace.r[n]);
        }
    }
    return cert;
}

}  // namespace majorant
