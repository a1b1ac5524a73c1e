#include <map>

#include "divrect/solve.hpp"

namespace divrect {

namespace {

AlgorithmSpec base_direct(const std::string& id) {
  AlgorithmSpec a;
  a.id = id;
  return a;
}

std::map<std::string, AlgorithmSpec> build_catalog() {
  std::map<std::string, AlgorithmSpec> c;
  auto add = [&c](AlgorithmSpec a) { c[a.id] = std::move(a); };

  // --- box constrained, trisection + midpoint ---
  add(base_direct("DIRECT"));
  add(base_direct("glbSolve"));
  {
    AlgorithmSpec a = base_direct("DIRECT-restart");
    a.eps_policy = EpsilonPolicy::Restart;
    a.default_epsilon = 0.0;  // switches to 0.01 after five stagnant iterations
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-m");
    a.scaling = Scaling::Median;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-a");
    a.scaling = Scaling::Average;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-l");
    a.measure = MeasureKind::LongestSide;
    a.per_group = PerGroup::OnePerGroup;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-rev");
    a.partitioner = Partitioner::TrisectOne;
    a.per_group = PerGroup::OnePerGroup;
    a.hybrid = HybridKind::OnImprovement;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRMIN");
    a.hybrid = HybridKind::EveryPoh;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("PLOR");
    a.selection = SelectionKind::Plor;
    a.uses_epsilon = false;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("Aggressive DIRECT");
    a.selection = SelectionKind::Aggressive;
    a.uses_epsilon = false;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("glbSolve-sym");
    a.symmetry = SymmetryRule::Wedge;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("glbSolve-sym2");
    a.symmetry = SymmetryRule::WedgeStrict;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("MrDIRECT");
    a.eps_policy = EpsilonPolicy::Levels;
    a.level_epsilons = {1e-4, 1e-4, 1e-4};
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("MrDIRECT075");
    a.eps_policy = EpsilonPolicy::Levels;
    a.level_epsilons = {0.0, 1e-7, 1e-5};  // levels 0, 1, 2
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("Gb-glbSolve");
    a.globally_biased = true;
    add(a);
  }

  // --- box constrained, enhanced global/local selection ---
  {
    AlgorithmSpec a = base_direct("DIRECT-G");
    a.selection = SelectionKind::GlobalOnly;
    a.uses_epsilon = false;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-L");
    a.selection = SelectionKind::LocalOnly;
    a.uses_epsilon = false;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-GL");
    a.selection = SelectionKind::GL;
    a.uses_epsilon = false;
    add(a);
  }

  // --- box constrained, diagonal bisection ---
  {
    AlgorithmSpec a = base_direct("BIRECT");
    a.partitioner = Partitioner::BisectDiagonal;
    a.scheme = SampleScheme::TwoDiagonalThirds;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("Gb-BIRECT");
    a.partitioner = Partitioner::BisectDiagonal;
    a.scheme = SampleScheme::TwoDiagonalThirds;
    a.globally_biased = true;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("BIRMIN");
    a.partitioner = Partitioner::BisectDiagonal;
    a.scheme = SampleScheme::TwoDiagonalThirds;
    a.globally_biased = true;
    a.hybrid = HybridKind::OnImprovement;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("ADC");
    a.partitioner = Partitioner::BisectVertices;
    a.scheme = SampleScheme::TwoDiagonalVertices;
    a.globally_biased = true;
    add(a);
  }

  // --- box constrained, simplicial ---
  for (bool vertices : {false, true}) {
    const std::string suffix = vertices ? "V" : "C";
    AlgorithmSpec a = base_direct("DISIMPL-" + suffix);
    a.partitioner = Partitioner::SimplexTrisect;
    a.scheme = vertices ? SampleScheme::SimplexVertices : SampleScheme::SimplexCenter;
    add(a);
    a.id = "GB-DISIMPL-" + suffix;
    a.globally_biased = true;
    add(a);
    a.id = "Lc-DISIMPL-" + suffix;
    a.globally_biased = false;
    a.constraints = ConstraintHandling::LcCover;
    add(a);
  }

  // --- generally constrained ---
  {
    AlgorithmSpec a = base_direct("DIRECT-L1");
    a.constraints = ConstraintHandling::L1Penalty;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-GLc");
    a.selection = SelectionKind::GL;
    a.uses_epsilon = false;
    a.constraints = ConstraintHandling::Glc;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-GLce");
    a.selection = SelectionKind::GL;
    a.uses_epsilon = false;
    a.constraints = ConstraintHandling::Glce;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-GLce-min");
    a.selection = SelectionKind::GL;
    a.uses_epsilon = false;
    a.constraints = ConstraintHandling::Glce;
    a.hybrid = HybridKind::OnImprovement;
    add(a);
  }

  // --- hidden constraints ---
  {
    AlgorithmSpec a = base_direct("DIRECT-Barrier");
    a.constraints = ConstraintHandling::HiddenBarrier;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("subDIRECT-Barrier");
    a.constraints = ConstraintHandling::HiddenSubBarrier;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-NAS");
    a.constraints = ConstraintHandling::HiddenNas;
    add(a);
  }
  {
    AlgorithmSpec a = base_direct("DIRECT-GLh");
    a.selection = SelectionKind::GL;
    a.uses_epsilon = false;
    a.constraints = ConstraintHandling::HiddenGlh;
    add(a);
  }
  return c;
}

const std::map<std::string, AlgorithmSpec>& catalog_map() {
  static const std::map<std::string, AlgorithmSpec> c = build_catalog();
  return c;
}

}  // namespace

const AlgorithmSpec& catalog(const std::string& id) {
  const auto& c = catalog_map();
  auto it = c.find(id);
  if (it == c.end()) throw DomainError("unknown algorithm: " + id);
  return it->second;
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, alg] : catalog_map()) ids.push_back(id);
  return ids;
}

void check_compatibility(const AlgorithmSpec& alg, const ProblemSpec& spec) {
  const bool has_exposed = !spec.ineq_constraints.empty() || !spec.eq_constraints.empty();
  const bool has_hidden = static_cast<bool>(spec.hidden_oracle);
  switch (alg.constraints) {
    case ConstraintHandling::BoxOnly:
      require(!has_exposed && !has_hidden,
              alg.id + " handles box-constrained problems only (" + spec.name + " is constrained)");
      break;
    case ConstraintHandling::L1Penalty:
    case ConstraintHandling::Glc:
    case ConstraintHandling::Glce:
      require(!has_hidden, alg.id + " needs constraint values; " + spec.name +
                               " exposes only a hidden feasibility oracle");
      break;
    case ConstraintHandling::LcCover:
      require(!has_hidden, alg.id + " cannot handle hidden constraints");
      require(spec.eq_constraints.empty(), alg.id + " cannot handle equality constraints");
      require(!has_exposed || spec.linear_ineq.has_value(),
              alg.id + " requires affine constraints (" + spec.name + " is nonlinear)");
      break;
    case ConstraintHandling::HiddenBarrier:
    case ConstraintHandling::HiddenSubBarrier:
    case ConstraintHandling::HiddenNas:
    case ConstraintHandling::HiddenGlh:
      require(!has_exposed, alg.id + " consumes a hidden feasibility oracle; wrap " + spec.name +
                                " to hide its constraints");
      break;
  }
  if (alg.symmetry != SymmetryRule::None)
    require(spec.has_tag(ProblemTag::Symmetric),
            alg.id + " requires a coordinate-permutation symmetric problem");
  if (alg.simplicial()) {
    require(spec.n <= 8, alg.id + ": simplicial cover infeasible beyond n = 8");
  }
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Solved:
      return "solved";
    case RunStatus::BudgetExceeded:
      return "budget_exceeded";
    case RunStatus::TimeExceeded:
      return "time_exceeded";
    case RunStatus::IterCapped:
      return "iter_capped";
  }
  return "unknown";
}

}  // namespace divrect
