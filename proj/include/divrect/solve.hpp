#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "divrect/constraints.hpp"
#include "divrect/partition.hpp"
#include "divrect/problem.hpp"
#include "divrect/selection.hpp"

namespace divrect {

enum class Partitioner { TrisectAll, TrisectOne, BisectDiagonal, BisectVertices, SimplexTrisect };
enum class SelectionKind { Hull, Aggressive, Plor, GL, GlobalOnly, LocalOnly };
enum class HybridKind { None, EveryPoh, OnImprovement };
enum class ConstraintHandling {
  BoxOnly,
  L1Penalty,
  Glc,
  Glce,
  LcCover,
  HiddenBarrier,
  HiddenSubBarrier,
  HiddenNas,
  HiddenGlh
};
enum class EpsilonPolicy { Fixed, Restart, Levels };
enum class SymmetryRule { None, Wedge, WedgeStrict };

/// Wiring of one named algorithm: partitioning, sampling, measure, selection,
/// constraint handling and the hybrid local-search trigger.
struct AlgorithmSpec {
  std::string id;
  Partitioner partitioner = Partitioner::TrisectAll;
  SampleScheme scheme = SampleScheme::Midpoint;
  MeasureKind measure = MeasureKind::EuclidHalfDiagonal;
  SelectionKind selection = SelectionKind::Hull;
  PerGroup per_group = PerGroup::AllTies;
  Scaling scaling = Scaling::None;
  EpsilonPolicy eps_policy = EpsilonPolicy::Fixed;
  double default_epsilon = 1e-4;
  std::array<double, 3> level_epsilons{1e-4, 1e-4, 1e-4};  // indexed by level
  bool globally_biased = false;
  SymmetryRule symmetry = SymmetryRule::None;
  HybridKind hybrid = HybridKind::None;
  ConstraintHandling constraints = ConstraintHandling::BoxOnly;
  bool uses_epsilon = true;

  bool simplicial() const { return partitioner == Partitioner::SimplexTrisect; }
  bool two_sample() const {
    return scheme == SampleScheme::TwoDiagonalThirds || scheme == SampleScheme::TwoDiagonalVertices;
  }
};

/// Returns the wiring for one of the named algorithms; throws on unknown ids.
const AlgorithmSpec& catalog(const std::string& id);
std::vector<std::string> catalog_ids();
/// Throws unless the algorithm can run on the problem's constraint class.
void check_compatibility(const AlgorithmSpec& alg, const ProblemSpec& spec);

enum class RunStatus { Solved, BudgetExceeded, TimeExceeded, IterCapped };
std::string to_string(RunStatus status);

struct RunConfig {
  std::string algorithm = "DIRECT";
  std::optional<double> epsilon;  // overrides the catalog default
  double eps_pe = 1e-2;           // percent-error tolerance
  bool pe_stop = true;            // stop as soon as pe <= eps_pe
  long long max_evals = 2'000'000;
  double max_time = kInf;  // seconds
  long long max_iters = std::numeric_limits<long long>::max();
  int workers = 1;
  StoreBackend storage = StoreBackend::StaticPool;
  double eps_h = 1e-8;            // equality-to-inequality tolerance
  double l1_gamma = 1e3;          // penalty weight for every constraint
  HiddenConfig hidden;
};

struct TraceRecord {
  long long iteration = 0;
  long long evals = 0;
  double f_min = kInf;  // best feasible objective so far
  double elapsed_s = 0.0;
};

struct RunResult {
  std::string algorithm;
  std::string problem;
  double f_min = kInf;
  Vec x_min;  // original coordinates
  long long evals = 0;
  long long iters = 0;
  double elapsed_s = 0.0;
  RunStatus status = RunStatus::BudgetExceeded;
  long long evals_to_solve = -1;  // evaluation ordinal that first reached pe <= eps_pe
  std::vector<TraceRecord> trace;
};

/// Percent error against a known optimum (the zero-optimum branch returns
/// 100 f).
double percent_error(double f, double fstar);

/// Executes one algorithm on one problem.
RunResult run(const ProblemSpec& spec, const RunConfig& cfg);

/// Writes the trace as line-delimited JSON records.
void write_trace(const RunResult& result, const std::string& path);

/// Bounded derivative-free descent from x0 (original coordinates); every
/// objective evaluation counts against `budget`. Constrained problems are
/// polished on the L1-penalized value with fixed weights.
struct LocalSearchResult {
  Vec x;
  double f = kInf;
  long long used = 0;
};
LocalSearchResult local_search(const ProblemSpec& spec, const Vec& x0, long long budget);

/// Core pattern search on the unit cube; evaluate() must return the value to
/// minimize. `on_eval` (when set) is called after every evaluation and may
/// return false to abort.
LocalSearchResult pattern_search(const std::function<double(const Vec&)>& evaluate, const Vec& u0,
                                 double f0, long long budget,
                                 const std::function<bool()>& keep_going = nullptr);

/// Balanced contiguous split of poh indices into rho shares (sizes differ by
/// at most one, earlier shares no smaller).
std::vector<std::pair<std::size_t, std::size_t>> split_shares(std::size_t count, int rho);

}  // namespace divrect
