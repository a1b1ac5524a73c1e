#pragma once

#include <map>
#include <string>
#include <vector>

#include "divrect/solve.hpp"

namespace divrect {

inline constexpr double kFailureSentinel = 2e6;

enum class CostMetric { Evaluations, Time, Iterations };

/// Solver x problem cost matrix; failures carry the 2e6 sentinel and a flag.
struct CostMatrix {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  // t[s][p]: cost of solver s on problem p.
  std::vector<std::vector<double>> t;
  std::vector<std::vector<bool>> failed;
  // n/a pairs (class-incompatible) are excluded from ratios and aggregates.
  std::vector<std::vector<bool>> not_applicable;

  double& at(std::size_t s, std::size_t p) { return t[s][p]; }
  double at(std::size_t s, std::size_t p) const { return t[s][p]; }
};

struct SuiteRow {
  std::string problem;
  std::string algorithm;
  int n = 0;
  std::string klass;  // box | linear | nonlinear | hidden | engineering
  RunStatus status = RunStatus::BudgetExceeded;
  bool not_applicable = false;
  long long fevals = 0;
  long long iters = 0;
  double time_s = 0.0;
  double f_min = kInf;
};

struct SuiteResult {
  std::vector<SuiteRow> rows;
  CostMatrix matrix(CostMetric metric) const;
};

/// Runs every (algorithm, problem) pair; incompatible pairs are recorded as
/// not-applicable. Failed runs keep the sentinel cost.
SuiteResult run_suite(const std::vector<std::string>& algorithms,
                      const std::vector<std::string>& problems, const RunConfig& base_cfg,
                      int concurrency = 1);

/// Problem names belonging to a named suite (box, linear, nonlinear, hidden,
/// engineering).
std::vector<std::string> suite_problems(const std::string& suite);

struct ProfileData {
  std::vector<std::string> solvers;
  std::vector<double> beta;                  // log-spaced grid on [1, B]
  std::vector<std::vector<double>> lambda;   // [solver][problem], +inf for failures
  std::vector<std::vector<double>> chi;      // [solver][grid]
};

/// Performance profiles: per-problem ratios against the best solver and the
/// cumulative curves on a log grid.
ProfileData perf_profile(const CostMatrix& m, double beta_max = 1e4, int grid_points = 200);

/// chi_v(beta) for one solver evaluated exactly (no grid).
double chi_at(const ProfileData& p, std::size_t solver, double beta);

// --- emit ---
void write_csv(const SuiteResult& result, const std::string& path);
SuiteResult read_csv(const std::string& path);
std::string aggregate_report(const SuiteResult& result);
void write_profile_svg(const ProfileData& p, const std::string& path);
void write_profile_csv(const ProfileData& p, const std::string& path);

}  // namespace divrect
