#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divrect/types.hpp"

namespace divrect {

enum class ProblemTag { Box, Linear, Nonlinear, Equality, Engineering, Symmetric };

/// Affine inequality system A x <= b, used by the simplicial feasible-cover
/// construction for linearly constrained problems.
struct LinearSystem {
  Eigen::MatrixXd A;
  Vec b;
};

/// A single optimization problem: objective, box bounds, optional constraint
/// functions, optional hidden-feasibility oracle, and known-optimum metadata.
struct ProblemSpec {
  std::string name;
  int n = 0;
  Vec lower;
  Vec upper;
  std::function<double(const Vec&)> objective;
  std::vector<std::function<double(const Vec&)>> ineq_constraints;
  std::vector<std::function<double(const Vec&)>> eq_constraints;
  std::function<bool(const Vec&)> hidden_oracle;  // empty = no hidden constraint
  std::optional<double> known_fstar;
  std::optional<Vec> known_xstar;
  std::vector<int> active_constraints;  // indices into ineq_constraints
  std::set<ProblemTag> tags;
  std::optional<LinearSystem> linear_ineq;  // set when all constraints are affine

  bool has_tag(ProblemTag t) const { return tags.count(t) > 0; }
  bool is_box() const { return ineq_constraints.empty() && eq_constraints.empty() && !hidden_oracle; }
  int num_ineq() const { return static_cast<int>(ineq_constraints.size()); }
  int num_eq() const { return static_cast<int>(eq_constraints.size()); }

  /// Throws DomainError unless the structural invariants hold. The optimum
  /// cross-check costs one objective call, so solver internals skip it.
  void validate(bool check_optimum = true) const;
};

/// Damped-sinusoid fitting instance; the induced problem has dimension 3s.
struct RegressionConfig {
  int s = 1;       // number of sinusoids
  int T = 10;      // number of samples
  std::vector<double> d;      // damping, each in [-1, 0]
  std::vector<double> omega;  // frequency, each in [0, 1]
  std::vector<double> theta;  // phase, each in [0, 1]
};

/// Looks up a registered problem. `n` must be given for scalable families and
/// must be omitted (or match) for fixed-dimension problems.
ProblemSpec lookup_problem(const std::string& name, std::optional<int> n = std::nullopt);

/// All registered problem names, sorted.
std::vector<std::string> registered_problems();

/// Evaluates the objective at a point in original coordinates. Out-of-bounds
/// points are an error; a hidden-infeasible point yields the infeasible marker.
double evaluate_objective(const ProblemSpec& spec, const Vec& x);

/// Evaluates all constraints; first = inequality values g, second = equality values h.
std::pair<std::vector<double>, std::vector<double>> evaluate_constraints(const ProblemSpec& spec,
                                                                         const Vec& x);

/// Replaces every equality h_i(x) = 0 by the inequality |h_i(x)| - eps_h <= 0.
/// Identity on specs without equalities.
ProblemSpec transform_equalities(const ProblemSpec& spec, double eps_h = 1e-8);

/// Boolean feasibility verdict: the hidden oracle if present, otherwise the
/// sign test over the constraint values (g <= 0 and h = 0).
bool hidden_feasibility(const ProblemSpec& spec, const Vec& x);

/// Wraps a constrained problem so the solver sees only f plus a feasibility
/// oracle; constraint values are consulted internally and never exposed.
ProblemSpec hidden_wrapper(const ProblemSpec& spec);

/// Builds the damped-sinusoid regression problem of dimension 3s.
ProblemSpec build_regression_problem(const RegressionConfig& cfg);

/// Parses a plain-text problem descriptor: first line `name [n]`, then one
/// `lower upper` pair per line to re-bound the registered objective.
ProblemSpec parse_problem_descriptor(const std::string& text);

}  // namespace divrect
