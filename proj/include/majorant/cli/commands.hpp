#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "majorant/cli/config.hpp"

namespace majorant::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_success = 0,
    exit_config_error = 2,
    exit_inadmissible_start = 3,
    exit_bound_violation = 4,
};

struct SolveOptions {
    double bound_tol = 1e-10;
    std::size_t max_steps = 10000;
    /// xi_0 = x0 + offset * (1, ..., 1).
    std::optional<double> start_offset;
};

Json interval_json(const Interval& zone);

/// Radii, zones and the existence verdict.
Json analyze_document(const Problem& problem, double tol);

/// Outcome of `solve`. `exit_code` is 0, 3 or 4; the document describes
/// the trace in every case.
struct SolveOutcome {
    int exit_code = exit_success;
    Json document;
    std::optional<IterationTrace> trace;
    std::string message;
};

SolveOutcome solve(const Problem& problem, double tol, const SolveOptions& options);

/// One row per step: n, step_norm, r_n, rho_n, rho_next, step_bound,
/// apriori_bound, center_bound.
void write_trace_csv(const IterationTrace& trace, std::ostream& out);

/// Plot data for the zone diagrams.
struct ZonesOutput {
    /// r, a_plus, a_minus, bisectrix.
    std::string curves;
    /// name, value, status (closed | open | absent).
    std::string markers;
    /// label, a, r, a_plus, bisectrix; multilinear problems only.
    std::optional<std::string> family;
};

ZonesOutput zones_data(const Problem& problem, std::size_t samples, double tol);

/// Banach-Caccioppoli zones against the majorization zones.
Json compare_document(const Problem& problem, double tol);

/// Entry point of the `majorant` executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace majorant::cli
