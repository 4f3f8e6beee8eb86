#pragma once

#include <filesystem>

#include "bhdyn/model.hpp"

namespace bhdyn {

// Configuration or usage problems (unknown keys, malformed values); the CLI
// maps these to exit code 2, while runtime check failures map to 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One declarative experiment: a model point (or sweep), an initial state
// direction, a time grid and a set of engines to run side by side.
//
// JSON schema (unknown keys are errors at every level):
// {
//   "name":   "label",                      // optional, default "run"
//   "model":  { "sites": 2, "eps": 1.0,     // sites optional (default 2)
//               "g": 0.5,                   // exactly one of g | u
//               "n_total": 100 },
//   "state":  { "kind": "number",           // "number" | "coherent"
//               "lambda": [[1,0],[0,0]] },  // relative site amplitudes;
//                                           // rescaled so the total
//                                           // occupation equals n_total
//   "grid":   { "t_max": 12.56, "dt": 0.01 },
//   "engines": ["ed", "pendulum"],
//   "output_dir": "out",                    // optional
//   "sweep":  { "g": [...], "n_total": [...] }   // optional
// }
struct ExperimentConfig {
    std::string name = "run";
    int sites = 2;
    double eps = 1.0;
    double g = 0.0;          // always resolved; u = g / n_total
    int n_total = 0;
    bool coupling_given_as_u = false;
    InitialState::Kind state_kind = InitialState::Kind::Number;
    std::vector<cplx> lambda_direction;  // defaults to all on site 1
    TimeGrid grid;
    std::vector<std::string> engines;
    std::string output_dir = "out";
    std::vector<double> sweep_g;
    std::vector<int> sweep_n;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::filesystem::path& path);
    void validate() const;
};

// Engines: ed, gp, gp_number, pendulum, double_well, revival,
// revival_frozen, envelope, zero_d.
const std::vector<std::string>& known_engines();

struct DeviationEntry {
    std::string engine_a, engine_b, column;
    double sup = 0.0;
};

struct SweepPointResult {
    double g = 0.0;
    int n_total = 0;
    std::string regime;
    std::vector<std::pair<std::string, TrajectorySeries>> runs;  // engine -> series
    std::vector<DeviationEntry> deviations;
};

struct ExperimentReport {
    std::string name;
    std::vector<SweepPointResult> points;
    std::vector<std::string> csv_files;
};

// Environment variable that overrides every configured output directory.
inline constexpr const char* kOutputDirEnvVar = "BHDYN_OUTPUT_DIR";

// Runs all sweep points, writes one CSV per (point, engine) plus a JSON
// report, and returns the in-memory report.  `write_files = false` skips the
// filesystem side entirely (used by tests).
ExperimentReport run_experiment(const ExperimentConfig& config, bool write_files = true);

// First column t, then the series columns in insertion order; fixed "%.12g"
// formatting keeps reruns byte-identical.
void write_csv(const std::filesystem::path& path, const TrajectorySeries& series);

std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name, bool full);

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double tolerance = 0.0;
};

struct VerifyOptions {
    // Test hook: breaks the hopping symmetry fed to the invariance checks,
    // which must then fail (guards against vacuous checks).
    bool perturb_hopping = false;
};

std::vector<CheckResult> verify_suite(const VerifyOptions& options = {});

}  // namespace bhdyn
