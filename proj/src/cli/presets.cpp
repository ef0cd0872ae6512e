#include <map>

#include "majorant/cli/config.hpp"

namespace majorant::cli {

namespace {

const std::map<std::string, const char*>& presets() {
    static const std::map<std::string, const char*> table{
        {"quadratic", R"({
            "kind": "scalar_profile", "R": 1, "a": 0.1875,
            "modulus": {"type": "power_sum", "terms": [[2, 1]]}})"},
        {"tangency", R"({
            "kind": "scalar_profile", "R": 1, "a": 0.25,
            "modulus": {"type": "power_sum", "terms": [[2, 1]]}})"},
        {"banach", R"({
            "kind": "scalar_profile", "R": 10, "a": 1,
            "modulus": {"type": "constant", "q": 0.5}})"},
        {"zero_offset", R"({
            "kind": "scalar_profile", "R": 1, "a": 0,
            "modulus": {"type": "constant", "q": 0.5}})"},
        {"nonexistent_quadratic", R"({
            "kind": "scalar_profile", "R": 1, "a": 0.5,
            "modulus": {"type": "power_sum", "terms": [[2, 1]]}})"},
        {"tabulated_plateau", R"({
            "kind": "scalar_profile", "R": 1, "a": 0.1,
            "modulus": {"type": "tabulated", "r": [0, 0.5, 1], "k": [0, 1, 1]}})"},
        {"lr_quadratic", R"({
            "kind": "multilinear", "R": 1, "dimension": 1, "degree": 2,
            "tensor": [1], "eta": [0.1875]})"},
        {"lr_cubic", R"({
            "kind": "multilinear", "R": 1, "dimension": 1, "degree": 3,
            "tensor": [1], "eta": [0.2]})"},
        {"lr_nonexistent", R"({
            "kind": "multilinear", "R": 1, "dimension": 1, "degree": 2,
            "tensor": [1], "eta": [0.5]})"},
        {"lr_planar", R"({
            "kind": "multilinear", "R": 1, "dimension": 2, "degree": 2,
            "tensor": [0.5, 0, 0, -0.5, 0, 0.5, 0.5, 0], "eta": [0.2, 0.1]})"},
        {"lr_corrupted", R"({
            "kind": "multilinear", "R": 1, "dimension": 1, "degree": 2,
            "tensor": [1], "eta": [0.25], "norm": 0.5,
            "description": "declared norm is half the true one; iteration must report a bound violation"})"},
        {"hammerstein_separable", R"({
            "kind": "hammerstein_c", "R": 3, "interval": [0, 1],
            "grid": {"nodes": 201, "rule": "simpson"}, "lambda": 0.1, "forcing": "identity",
            "terms": [{"kernel": "product", "nonlinearity": "square"}]})"},
        {"hammerstein_lp_sin", R"({
            "kind": "hammerstein_lp", "R": 5, "p": 2, "interval": [0, 1],
            "grid": {"nodes": 101, "rule": "simpson"}, "lambda": 0.5, "forcing": "one",
            "terms": [{"kernel": "exp_decay", "nonlinearity": "sin", "q": 2, "pairs": [[1, 0]]}]})"},
        {"hammerstein_lp_square", R"({
            "kind": "hammerstein_lp", "R": 3, "p": 2, "interval": [0, 1],
            "grid": {"nodes": 101, "rule": "simpson"}, "lambda": 0.1, "forcing": "identity",
            "terms": [{"kernel": "product", "nonlinearity": "square", "q": 1, "pairs": [[0, 2]],
                       "zaanen_norm": 0.5773502691896258}]})"},
        {"urysohn_quadratic", R"({
            "kind": "urysohn", "R": 2, "interval": [0, 1],
            "grid": {"nodes": 101, "rule": "simpson"}, "demo": "quadratic_mixed"})"},
        {"composition_affine", R"({
            "kind": "composition", "R": 2, "interval": [0, 1],
            "grid": {"nodes": 101, "rule": "simpson"}, "demo": "affine_square"})"},
    };
    return table;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : presets()) out.push_back(name);
    return out;
}

ProblemConfig load_preset(const std::string& name) {
    const auto it = presets().find(name);
    if (it == presets().end()) throw ConfigError("unknown preset '" + name + "'");
    return parse_config(Json::parse(it->second), name);
}

}  // namespace majorant::cli
