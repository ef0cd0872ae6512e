#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "majorant/iteration.hpp"
#include "majorant/majorant.hpp"

namespace majorant::cli {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent problem configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ProblemKind { multilinear, hammerstein_c, hammerstein_lp, urysohn, composition, scalar_profile };

std::string to_string(ProblemKind kind);

/// A schema-checked problem document. `document` keeps the original
/// fields; `build_problem` turns it into an operator.
struct ProblemConfig {
    std::string name;
    ProblemKind kind = ProblemKind::scalar_profile;
    double radius = 1.0;
    double tol = kDefaultRadiusTol;
    Json document;
};

/// Checks the schema of a parsed document. Throws ConfigError.
ProblemConfig parse_config(const Json& document, std::string name = "config");
ProblemConfig load_config_file(const std::string& path);
ProblemConfig load_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Extra facts about a multilinear problem, reported by `analyze`.
struct MultilinearFacts {
    double norm;
    int degree;
    double critical_a;
};

struct Problem {
    ProblemConfig config;
    OperatorHandle op;
    /// Known solution of the discrete problem, when one is available in
    /// closed form.
    std::optional<State> reference;
    std::optional<MultilinearFacts> multilinear;
    /// For one-dimensional problems: the scalar map itself, used by the
    /// exclusion-zone sweep.
    std::function<double(double)> scalar_map;

    [[nodiscard]] const MajorantProfile& profile() const { return op.profile; }
};

/// Builds the operator. Throws ConfigError for anything the schema check
/// could not catch (non-monotone moduli, bad tables, missing files).
Problem build_problem(const ProblemConfig& config);

}  // namespace majorant::cli
