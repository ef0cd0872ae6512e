#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "majorant/cli/commands.hpp"

using namespace majorant;
using namespace majorant::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "majorant");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(MAJORANT_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "majorant_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto path = scratch(name);
    std::ofstream(path) << text;
    return path.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line) && !line.empty();) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Cli, AnalyzeQuadraticPreset) {
    const auto r = run({"analyze", "--preset", "quadratic"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    EXPECT_NEAR(doc["r_lower_star"].get<double>(), 0.161438, 1e-6);
    EXPECT_NEAR(doc["r_star"].get<double>(), 0.25, 1e-12);
    EXPECT_NEAR(doc["r_cr"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(doc["r_double_star"].get<double>(), 0.75, 1e-12);
    EXPECT_FALSE(doc["r_double_star_closed"].get<bool>());
    EXPECT_TRUE(doc["existence_certified"].get<bool>());
}

TEST(Cli, NonExistenceIsACertificate) {
    const auto r = run({"analyze", "--preset", "lr_nonexistent"});
    ASSERT_EQ(r.code, 0);
    const auto doc = Json::parse(r.out);
    EXPECT_FALSE(doc["existence_certified"].get<bool>());
    EXPECT_TRUE(doc["r_star"].is_null());
    EXPECT_NEAR(doc["multilinear"]["a_cr"].get<double>(), 0.25, 1e-15);
    EXPECT_TRUE(doc["multilinear"]["a_exceeds_a_cr"].get<bool>());
    EXPECT_GT(doc["min_gap"]["gap"].get<double>(), 0.0);
}

TEST(Cli, ZeroOffsetRadii) {
    const auto doc = Json::parse(run({"analyze", "--preset", "zero_offset"}).out);
    EXPECT_EQ(doc["r_star"].get<double>(), 0.0);
    EXPECT_EQ(doc["r_lower_star"].get<double>(), 0.0);
    EXPECT_EQ(doc["r_double_star"].get<double>(), 1.0);
    EXPECT_TRUE(doc["r_double_star_closed"].get<bool>());
}

TEST(Cli, SolveSeparableHammerstein) {
    const auto r = run({"solve", "--preset", "hammerstein_separable", "--bound-tol", "1e-8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    EXPECT_EQ(doc["status"], "converged");
    const double norm = doc["solution_norm"].get<double>();
    EXPECT_NEAR(norm, (1.0 - std::sqrt(0.9)) / 0.05, 1e-6);
    EXPECT_GE(norm, 0.954451);
    EXPECT_LE(norm, 1.055729);
    EXPECT_TRUE(doc["certificate"]["all_pass"].get<bool>());
}

TEST(Cli, SolveQuadraticStepsAreTight) {
    const auto trace_path = scratch("quadratic_trace.csv").string();
    const auto r = run({"solve", "--preset", "quadratic", "--trace", trace_path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = Json::parse(r.out);
    const auto& steps = doc["trace"];
    ASSERT_GT(steps.size(), 2u);
    for (std::size_t n = 0; n + 1 < steps.size(); ++n) {
        const double dr = steps[n + 1]["r_n"].get<double>() - steps[n]["r_n"].get<double>();
        EXPECT_NEAR(steps[n]["step_norm"].get<double>(), dr, 1e-16);
    }
    std::ifstream in(trace_path);
    std::stringstream text;
    text << in.rdbuf();
    const auto rows = csv_rows(text.str());
    EXPECT_EQ(rows.size(), steps.size() + 1);
    EXPECT_EQ(rows[0][0], "n");
}

TEST(Cli, SolveZeroOffsetTakesNoSteps) {
    const auto doc = Json::parse(run({"solve", "--preset", "zero_offset"}).out);
    EXPECT_EQ(doc["steps"].get<int>(), 0);
    EXPECT_EQ(doc["final_apriori_bound"].get<double>(), 0.0);
}

TEST(Cli, ZonesRoundTrip) {
    const auto out = scratch("quadratic_zones.csv").string();
    const auto r = run({"zones", "--preset", "quadratic", "--samples", "101", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    const auto rows = csv_rows(text.str());
    ASSERT_EQ(rows.size(), 102u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"r", "a_plus", "a_minus", "bisectrix"}));
    const MajorantProfile p(0.1875, LipschitzModulus::power_sum({{2.0, 1.0}}), 1.0);
    bool saw_half = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double rr = std::stod(rows[i][0]);
        EXPECT_NEAR(std::stod(rows[i][1]), eval_majorants(p, rr).a_plus, 1e-12);
        if (rr == 0.5) {
            saw_half = true;
            EXPECT_EQ(std::stod(rows[i][1]), 0.4375);
        }
    }
    EXPECT_TRUE(saw_half);
    EXPECT_TRUE(std::filesystem::exists(scratch("quadratic_zones_markers.csv")));
}

TEST(Cli, TangencyMarkers) {
    const auto r = run({"zones", "--preset", "tangency", "--samples", "11"});
    ASSERT_EQ(r.code, 0);
    const auto markers = r.out.substr(r.out.find("name,value,status"));
    EXPECT_NE(markers.find("r_star,0.5,closed"), std::string::npos);
    EXPECT_NE(markers.find("r_cr,0.5,closed"), std::string::npos);
    EXPECT_NE(markers.find("r_double_star,0.5,open"), std::string::npos);
}

TEST(Cli, ZeroOffsetCurveStartsAtZero) {
    const auto rows = csv_rows(run({"zones", "--preset", "zero_offset", "--samples", "3"}).out);
    EXPECT_EQ(rows[1][0], "0");
    EXPECT_EQ(rows[1][1], "0");
}

TEST(Cli, MultilinearFamily) {
    const auto out = scratch("lr_zones.csv").string();
    ASSERT_EQ(run({"zones", "--preset", "lr_quadratic", "--samples", "11", "--out", out}).code, 0);
    std::ifstream in(scratch("lr_zones_family.csv"));
    std::stringstream text;
    text << in.rdbuf();
    const auto rows = csv_rows(text.str());
    EXPECT_EQ(rows.size(), 1u + 4u * 11u);
    EXPECT_EQ(rows[1 + 2 * 11][0], "a2");
    EXPECT_EQ(std::stod(rows[1 + 2 * 11][1]), 0.25);
}

TEST(Cli, CompareVerdicts) {
    const auto tangency = Json::parse(run({"compare", "--preset", "tangency"}).out);
    EXPECT_FALSE(tangency["verdict"]["banach_applicable"].get<bool>());
    EXPECT_TRUE(tangency["verdict"]["majorization_strictly_wider"].get<bool>());

    const auto banach = Json::parse(run({"compare", "--preset", "banach"}).out);
    EXPECT_TRUE(banach["verdict"]["banach_applicable"].get<bool>());
    EXPECT_TRUE(banach["verdict"]["zones_coincide"].get<bool>());

    const auto zero = Json::parse(run({"compare", "--preset", "zero_offset"}).out);
    EXPECT_TRUE(zero["verdict"]["banach_applicable"].get<bool>());
}

TEST(Cli, ConfigFileWithCsvKernel) {
    const auto csv = write_file("kernel.csv", "t,s,value\n0,0,0\n0,1,0\n1,0,0\n1,1,1\n");
    Json doc = Json::parse(R"({"kind": "hammerstein_c", "R": 3, "interval": [0, 1],
        "grid": {"nodes": 201, "rule": "simpson"}, "lambda": 0.1, "forcing": "identity",
        "terms": [{"nonlinearity": "square"}]})");
    doc["terms"][0]["kernel"] = {{"csv", csv}};
    const auto path = write_file("csv_problem.json", doc.dump());
    const auto r = run({"analyze", "--config", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(Json::parse(r.out)["r_star"].get<double>(), 1.0557280900008, 1e-6);
}

TEST(Cli, SchemaErrors) {
    const std::vector<std::string> bad{
        R"({"kind": "scalar_profile", "R": 1, "a": 0.1, "modulus": {"type": "constant", "q": 0.5}, "extra": 1})",
        R"({"kind": "scalar_profile", "a": 0.1, "modulus": {"type": "constant", "q": 0.5}})",
        R"({"kind": "scalar_profile", "R": 1, "a": 0.1, "modulus": {"type": "tabulated", "r": [0, 1], "k": [1, 0]}})",
        R"({"kind": "hammerstein_c", "R": 1, "interval": [0, 1], "grid": {"nodes": 10}, "lambda": 1,
            "forcing": "one", "terms": [{"kernel": "one", "nonlinearity": "sin"}]})",
        R"({"kind": "hammerstein_c", "R": 1, "interval": [0, 1], "grid": {"nodes": 11}, "lambda": 1,
            "forcing": "one", "terms": [{"kernel": "nope", "nonlinearity": "sin"}]})",
        R"({"kind": "hammerstein_lp", "R": 1, "p": 2, "interval": [0, 1], "grid": {"nodes": 11}, "lambda": 1,
            "forcing": "one", "terms": [{"kernel": "one", "nonlinearity": "sin", "q": 1, "pairs": [[1, 0]]}]})",
        R"({"kind": "multilinear", "R": 1, "dimension": 2, "degree": 2, "tensor": [1], "eta": [0, 0]})",
        R"({"kind": "teapot", "R": 1})",
        R"([1, 2, 3])",
    };
    for (const auto& text : bad) {
        EXPECT_THROW(parse_config(Json::parse(text)), ConfigError) << text;
    }
    const auto broken = write_file("broken.json", "{\"kind\": ");
    EXPECT_EQ(run({"analyze", "--config", broken}).code, exit_config_error);
    EXPECT_EQ(run({"analyze", "--config", scratch("missing.json").string()}).code, exit_config_error);
    EXPECT_EQ(run({"analyze"}).code, exit_config_error);
    EXPECT_EQ(run({"frobnicate"}).code, exit_config_error);
}

TEST(Cli, EveryPresetLoads) {
    for (const auto& name : preset_names()) {
        EXPECT_NO_THROW(build_problem(load_preset(name))) << name;
    }
}

TEST(Cli, ExitCodesOfTheBinary) {
    EXPECT_EQ(run_binary("analyze --preset quadratic"), 0);
    EXPECT_EQ(run_binary("analyze --preset lr_nonexistent"), 0);
    EXPECT_EQ(run_binary("analyze --preset does_not_exist"), 2);
    EXPECT_EQ(run_binary("solve --preset quadratic --start-offset 0.9"), 3);
    EXPECT_EQ(run_binary("solve --preset lr_corrupted"), 4);
}
