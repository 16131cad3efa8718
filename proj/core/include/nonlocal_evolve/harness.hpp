#pragma once

#include "examples.hpp"
#include "solver_hom.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlevolve {

struct StudyConfig {
    /// 1, 2, 3, or 0 for a custom problem.
    int example_id = 1;
    std::vector<int> N_list;
    double x = 0.5;
    double t = 0.3;
    PlanOptions plan;
    unsigned threads = 1;
    std::string output_path;

    void validate() const;
};

struct ReportRow {
    int N = 0;
    double value = 0;
    std::optional<double> error;
    std::optional<double> rate_c;
    bool floor_flag = false;
    /// Non-empty when the solver failed for this N.
    std::string failure;

    bool operator==(const ReportRow&) const = default;
};

struct ConvergenceReport {
    std::vector<ReportRow> rows;
    /// JSON object echoing the configuration.
    std::string metadata = "{}";
};

/// Solve `problem` for every N in the list and tabulate value, error and
/// pairwise rate constants.  Solver errors are recorded per row.
ConvergenceReport run_study(const StudyConfig& cfg, const Problem& problem);

/// Value of the computed solution at (cfg.x, cfg.t) for a single N.
double solve_point(const Problem& problem, int N, double x, double t,
                   const PlanOptions& plan, unsigned threads = 1);

/// error <= 100 eps |value|
bool at_precision_floor(double error, double value);

enum class ReportFormat { Csv, JsonLines };

/// Columns N,value_re,error,rate_c,floor_flag; numbers in %.16e.
void write_report(const ConvergenceReport& report, ReportFormat format,
                  std::ostream& out);
/// Overwrites `path`; throws Io when it cannot be written.
void write_report(const ConvergenceReport& report, ReportFormat format,
                  const std::string& path);
ConvergenceReport parse_report(std::istream& in, ReportFormat format);

//---------------------------------------------------------------------------//
// Reproduction of the reference convergence studies
//---------------------------------------------------------------------------//

StudyConfig reproduction_config(int example_id);

struct ReproductionCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<ReproductionCheck> check_reproduction(int example_id,
                                                  const ConvergenceReport& report);

}  // namespace nlevolve
