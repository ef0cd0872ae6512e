#include "majorant/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "majorant/discretize.hpp"
#include "majorant/operators.hpp"

namespace majorant::cli {

namespace {

Json optional_number(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json step_json(const StepRecord& s) {
    Json row = Json::object();
    row["n"] = s.n;
    row["step_norm"] = s.step_norm;
    row["r_n"] = s.r;
    row["rho_n"] = s.rho;
    row["rho_next"] = s.rho_next;
    row["step_bound"] = s.step_bound;
    row["apriori_bound"] = s.apriori_bound;
    row["center_bound"] = s.center_bound;
    return row;
}

Json trace_json(const IterationTrace& trace) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) steps.push_back(step_json(s));
    return steps;
}

std::ostream& precise(std::ostream& os) {
    os << std::setprecision(17);
    return os;
}

}  // namespace

Json interval_json(const Interval& zone) {
    Json out = Json::object();
    out["empty"] = zone.is_empty;
    if (zone.is_empty) {
        out["text"] = zone.to_string();
        return out;
    }
    out["lower"] = zone.lower;
    out["upper"] = zone.upper;
    out["lower_closed"] = zone.lower_closed;
    out["upper_closed"] = zone.upper_closed;
    out["text"] = zone.to_string();
    return out;
}

Json analyze_document(const Problem& problem, double tol) {
    const auto& profile = problem.profile();
    const ZoneReport report = analyze(profile, tol);
    Json doc = Json::object();
    doc["problem"] = problem.config.name;
    doc["kind"] = to_string(problem.config.kind);
    doc["a"] = report.a;
    doc["R"] = report.radius;
    doc["tol"] = tol;
    doc["modulus"] = profile.modulus().describe();
    doc["existence_certified"] = report.existence_certified;
    doc["r_lower_star"] = optional_number(report.r_lower);
    doc["r_star"] = optional_number(report.r_star);
    doc["r_double_star"] = optional_number(report.r_double_star);
    doc["r_double_star_closed"] = report.r_double_star_closed;
    doc["degenerate"] = report.degenerate;
    doc["r_cr"] = optional_number(report.r_cr);
    doc["zones"] = {{"existence", interval_json(report.e_zone)},
                    {"uniqueness", interval_json(report.u_zone)},
                    {"banach", interval_json(report.bc_zone)}};
    doc["min_gap"] = {{"gap", report.min_gap.gap}, {"at", report.min_gap.at}};
    if (problem.multilinear) {
        const auto& m = *problem.multilinear;
        doc["multilinear"] = {{"norm", m.norm},
                              {"degree", m.degree},
                              {"a_cr", finite_or_null(m.critical_a)},
                              {"a_exceeds_a_cr", report.a > m.critical_a}};
    }
    return doc;
}

SolveOutcome solve(const Problem& problem, double tol, const SolveOptions& options) {
    const auto& op = problem.op;
    State xi0 = op.center;
    if (options.start_offset) {
        for (double& v : xi0) v += *options.start_offset;
    }
    StoppingRule rule;
    rule.bound_tol = options.bound_tol;
    rule.max_steps = options.max_steps;

    SolveOutcome outcome;
    Json& doc = outcome.document;
    doc["problem"] = problem.config.name;
    doc["kind"] = to_string(problem.config.kind);
    doc["bound_tol"] = options.bound_tol;
    doc["max_steps"] = options.max_steps;
    doc["rho0"] = op.distance(xi0, op.center);
    try {
        auto result = iterate(op, xi0, rule, BoundSlack{}, tol);
        const auto& trace = result.trace;
        const Certificate cert = certify_trace(trace, problem.reference, op.norm);
        doc["status"] = to_string(trace.status);
        doc["r_star"] = trace.r_star;
        doc["steps"] = trace.step_count();
        doc["final_apriori_bound"] = trace.final_apriori_bound();
        doc["final_center_bound"] = trace.final_center_bound();
        doc["solution_norm"] = op.norm(result.x_star);
        doc["distance_from_center"] = op.distance(result.x_star, op.center);
        if (problem.reference) doc["reference_error"] = op.distance(result.x_star, *problem.reference);
        doc["certificate"] = {{"all_pass", cert.all_pass},
                              {"checks", cert.checks.size()},
                              {"worst_slack", finite_or_null(cert.worst_slack)},
                              {"first_violation", cert.first_violation ? Json(*cert.first_violation) : Json(nullptr)}};
        doc["trace"] = trace_json(trace);
        doc["solution"] = result.x_star;
        outcome.trace = std::move(result.trace);
    } catch (const NoExistence& e) {
        doc["status"] = "no_existence";
        doc["min_gap"] = {{"gap", e.witness().gap}, {"at", e.witness().at}};
        outcome.exit_code = exit_inadmissible_start;
        outcome.message = std::string("no admissible start: ") + e.what();
    } catch (const InadmissibleStart& e) {
        doc["status"] = "inadmissible_start";
        outcome.exit_code = exit_inadmissible_start;
        outcome.message = e.what();
    } catch (const BoundViolation& e) {
        const auto& trace = e.trace();
        doc["status"] = to_string(TraceStatus::bound_violated);
        doc["r_star"] = trace.r_star;
        doc["trace"] = trace_json(trace);
        doc["violation"] = trace.steps.empty() ? Json(nullptr) : step_json(trace.steps.back());
        outcome.exit_code = exit_bound_violation;
        outcome.message = e.what();
        outcome.trace = trace;
    }
    if (!outcome.message.empty()) doc["message"] = outcome.message;
    return outcome;
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
    precise(out) << "n,step_norm,r_n,rho_n,rho_next,step_bound,apriori_bound,center_bound\n";
    for (const auto& s : trace.steps) {
        out << s.n << ',' << s.step_norm << ',' << s.r << ',' << s.rho << ',' << s.rho_next << ',' << s.step_bound
            << ',' << s.apriori_bound << ',' << s.center_bound << '\n';
    }
}

ZonesOutput zones_data(const Problem& problem, std::size_t samples, double tol) {
    if (samples < 2) throw ConfigError("--samples must be at least 2");
    const auto& profile = problem.profile();
    const double big_r = profile.radius();
    auto radius_at = [&](std::size_t i) {
        return i + 1 == samples ? big_r : big_r * static_cast<double>(i) / static_cast<double>(samples - 1);
    };

    ZonesOutput out;
    std::ostringstream curves;
    precise(curves) << "r,a_plus,a_minus,bisectrix\n";
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = radius_at(i);
        const auto v = eval_majorants(profile, r);
        curves << r << ',' << v.a_plus << ',' << v.a_minus << ',' << r << '\n';
    }
    out.curves = curves.str();

    const ZoneReport report = analyze(profile, tol);
    std::ostringstream markers;
    precise(markers) << "name,value,status\n";
    auto marker = [&](const char* name, const std::optional<double>& v, bool closed) {
        markers << name << ',';
        if (v) markers << *v << ',' << (closed ? "closed" : "open") << '\n';
        else markers << ",absent\n";
    };
    marker("r_lower_star", report.r_lower, true);
    marker("r_star", report.r_star, true);
    marker("r_cr", report.r_cr, true);
    marker("r_double_star", report.r_double_star, report.r_double_star_closed);
    marker("R", big_r, true);
    out.markers = markers.str();

    if (problem.multilinear && std::isfinite(problem.multilinear->critical_a)) {
        const double a_cr = problem.multilinear->critical_a;
        std::ostringstream family;
        precise(family) << "label,a,r,a_plus,bisectrix\n";
        const std::pair<const char*, double> regimes[] = {
            {"a0", 0.0}, {"a1", 0.5 * a_cr}, {"a2", a_cr}, {"a3", 1.5 * a_cr}};
        for (const auto& [label, a] : regimes) {
            const MajorantProfile member(a, profile.modulus(), big_r);
            for (std::size_t i = 0; i < samples; ++i) {
                const double r = radius_at(i);
                family << label << ',' << a << ',' << r << ',' << member.a_plus(r) << ',' << r << '\n';
            }
        }
        out.family = family.str();
    }
    return out;
}

Json compare_document(const Problem& problem, double tol) {
    const auto& profile = problem.profile();
    const ZoneReport report = analyze(profile, tol);
    // Uniqueness zone of the contraction-mapping argument: the ball where
    // k < 1, provided the map sends its existence ball into itself.
    Interval banach_unique = Interval::empty();
    if (!report.bc_zone.is_empty) {
        banach_unique = report.r_cr ? Interval::make(0.0, *report.r_cr, true, false)
                                    : Interval::make(0.0, profile.radius(), true, true);
    }
    Json doc = Json::object();
    doc["problem"] = problem.config.name;
    doc["kind"] = to_string(problem.config.kind);
    doc["a"] = report.a;
    doc["R"] = report.radius;
    doc["existence_certified"] = report.existence_certified;
    doc["r_star"] = optional_number(report.r_star);
    doc["r_cr"] = optional_number(report.r_cr);
    doc["r_double_star"] = optional_number(report.r_double_star);
    doc["banach"] = {{"existence_zone", interval_json(report.bc_zone)},
                     {"uniqueness_zone", interval_json(banach_unique)}};
    doc["majorization"] = {{"existence_zone", interval_json(report.e_zone)},
                           {"uniqueness_zone", interval_json(report.u_zone)}};
    const bool applicable = !report.bc_zone.is_empty;
    const bool wider = report.u_zone.includes(banach_unique) && !(report.u_zone == banach_unique);
    doc["verdict"] = {{"banach_applicable", applicable},
                      {"majorization_strictly_wider", wider},
                      {"zones_coincide", report.u_zone == banach_unique}};
    return doc;
}

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    auto* config = cmd->add_option("--config", args.config_path, "problem configuration (JSON)");
    auto* preset = cmd->add_option("--preset", args.preset, "named built-in problem");
    config->excludes(preset);
    cmd->add_option("--out", args.out_path, "output file (default: stdout)");
    cmd->add_option("--tol", args.tol, "radius tolerance")->check(CLI::PositiveNumber);
}

ProblemConfig load(const CommonArgs& args) {
    if (!args.preset.empty()) return load_preset(args.preset);
    if (!args.config_path.empty()) return load_config_file(args.config_path);
    throw ConfigError("one of --config or --preset is required");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw ConfigError("cannot write '" + path + "'");
    file << text;
}

std::string sibling(const std::string& path, const std::string& suffix) {
    const std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix + ".csv")).string();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fixed-point radii, zones and certified iteration for operators with a variable Lipschitz modulus",
                 "majorant"};
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", "majorant 0.1.0");

    CommonArgs analyze_args, solve_args, zones_args, compare_args;
    SolveOptions solve_opts;
    std::string trace_path;
    std::size_t samples = 201;
    bool list = false;

    app.add_flag("--list-presets", list, "print the built-in preset names");
    auto* analyze_cmd = app.add_subcommand("analyze", "radii, zones and existence verdict");
    add_common(analyze_cmd, analyze_args);
    auto* solve_cmd = app.add_subcommand("solve", "certified successive approximations");
    add_common(solve_cmd, solve_args);
    solve_cmd->add_option("--bound-tol", solve_opts.bound_tol, "stop once the a-priori bound is below this")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--max-steps", solve_opts.max_steps, "iteration cap")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--start-offset", solve_opts.start_offset, "start at x0 + offset * (1, ..., 1)");
    solve_cmd->add_option("--trace", trace_path, "also write the step table as CSV");
    auto* zones_cmd = app.add_subcommand("zones", "plot data for the zone diagrams");
    add_common(zones_cmd, zones_args);
    zones_cmd->add_option("--samples", samples, "radius samples on [0, R]")->check(CLI::Range(2, 10000000));
    auto* compare_cmd = app.add_subcommand("compare", "contraction-mapping zones against majorization zones");
    add_common(compare_cmd, compare_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_config_error;
    }
    if (list) {
        for (const auto& name : preset_names()) out << name << '\n';
        return exit_success;
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return exit_config_error;
    }

    try {
        if (analyze_cmd->parsed()) {
            const Problem problem = build_problem(load(analyze_args));
            const double tol = analyze_args.tol.value_or(problem.config.tol);
            emit(analyze_document(problem, tol).dump(2) + "\n", analyze_args.out_path, out);
        } else if (solve_cmd->parsed()) {
            const Problem problem = build_problem(load(solve_args));
            const double tol = solve_args.tol.value_or(problem.config.tol);
            const SolveOutcome outcome = solve(problem, tol, solve_opts);
            emit(outcome.document.dump(2) + "\n", solve_args.out_path, out);
            if (!trace_path.empty() && outcome.trace) {
                std::ostringstream csv;
                write_trace_csv(*outcome.trace, csv);
                emit(csv.str(), trace_path, out);
            }
            if (!outcome.message.empty()) err << "majorant: " << outcome.message << '\n';
            return outcome.exit_code;
        } else if (zones_cmd->parsed()) {
            const Problem problem = build_problem(load(zones_args));
            const double tol = zones_args.tol.value_or(problem.config.tol);
            const ZonesOutput data = zones_data(problem, samples, tol);
            if (zones_args.out_path.empty()) {
                out << data.curves << '\n' << data.markers;
                if (data.family) out << '\n' << *data.family;
            } else {
                emit(data.curves, zones_args.out_path, out);
                emit(data.markers, sibling(zones_args.out_path, "_markers"), out);
                if (data.family) emit(*data.family, sibling(zones_args.out_path, "_family"), out);
            }
        } else if (compare_cmd->parsed()) {
            const Problem problem = build_problem(load(compare_args));
            const double tol = compare_args.tol.value_or(problem.config.tol);
            emit(compare_document(problem, tol).dump(2) + "\n", compare_args.out_path, out);
        }
    } catch (const ConfigError& e) {
        err << "majorant: config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        err << "majorant: config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const Json::exception& e) {
        err << "majorant: config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "majorant: " << e.what() << '\n';
        return 1;
    }
    return exit_success;
}

}  // namespace majorant::cli
