#pragma once

#include <nonlocal_evolve/harness.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlevolve::cli {

enum ExitCode : int { kOk = 0, kError = 1, kUnknownSolvability = 2 };

/// Problem and study description read from a JSON config.  Keys left out
/// keep the values of `example` (or the defaults below when it is 0).
struct CliConfig {
    int example = 0;
    std::string op = "spectral";  // spectral | fd | green
    std::size_t n = 1;
    double phi = kPi / 6;
    std::optional<double> rho0;
    std::optional<double> rho1;
    double margin = 0.95;
    double rho1_fraction = 0.5;
    std::vector<double> alphas;
    std::vector<double> times;
    double horizon = 1.0;
    std::string initial = "sin";  // sin | x_log_x | example
    std::string source = "none";  // none | example | decay
    double smoothness = 0.5;

    int N = 64;
    std::vector<int> N_list = {4, 8, 16, 32, 64, 128};
    std::vector<double> x = {0.5};
    double t = 0.3;
    std::string mode = "uniform";  // uniform | fixed-t | inverse-sqrt-n
    double c1 = 1.0;
    bool force = false;
    std::string output;
    std::string format = "csv";  // csv | jsonl
};

/// Starts from the preset named by "example" and applies every other key.
/// Throws InvalidArgument on unknown keys or ill-typed values.
CliConfig parse_config(const std::string& json_text);

Problem build_problem(const CliConfig& cfg);
PlanOptions build_plan_options(const CliConfig& cfg);
SpectralCharacteristics build_characteristics(const CliConfig& cfg);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nlevolve::cli
