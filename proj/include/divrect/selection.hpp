#pragma once

#include <optional>
#include <set>
#include <vector>

#include "divrect/partition.hpp"
#include "divrect/types.hpp"

namespace divrect {

enum class Scaling { None, Median, Average };
enum class PerGroup { AllTies, OnePerGroup };
enum class ExtremesMode { Aggressive, Plor };

/// Ordered ids selected for subdivision (largest measure first, then id).
using PohSet = std::vector<ElemId>;

/// Globally biased phase bookkeeping: after the incumbent's element has been
/// refined `R` times without improvement, selection is restricted to elements
/// at least as large as the threshold until the incumbent improves.
struct GbState {
  bool global_phase = false;
  int refinement_count = 0;
  double delta_threshold = 0.0;
  int refinements_to_enter = 10;
  double entry_multiplier = 4.0;
};

/// MrDIRECT level machinery; the cycle string is fixed.
struct LevelState {
  int cycle_pos = 0;
  static constexpr char kCycle[9] = "21011012";
};

struct SelectionContext {
  double epsilon = 1e-4;
  double f_best = kInf;   // incumbent selection value
  Vec x_best;             // incumbent point, normalized coordinates
  ElemId best_elem = kNoElem;
  double f_median = 0.0;
  double f_average = 0.0;
  int no_improve_count = 0;  // DIRECT-restart
  LevelState level;
  GbState gb;
};

/// Restriction of a store to a subset of elements.
struct StoreFilter {
  const std::set<ElemId>* excluded = nullptr;
  const std::set<ElemId>* included = nullptr;
  double min_key = 0.0;

  bool pass(ElemId id, double key) const {
    if (key < min_key) return false;
    if (excluded && excluded->count(id)) return false;
    if (included && !included->count(id)) return false;
    return true;
  }
  bool trivial() const { return !excluded && !included && min_key <= 0.0; }
};

/// Potentially-optimal selection: lower-right hull of the per-group minima
/// with the epsilon cut applied from the smallest hull measure upward.
PohSet select_convex_hull(const PartitionStore& store, const SelectionContext& ctx, Scaling scaling,
                          PerGroup per_group, const StoreFilter& filter = {});

/// Aggressive (best of every group) and PLOR (best of the largest and the
/// smallest groups only).
PohSet select_group_extremes(const PartitionStore& store, ExtremesMode mode,
                             const StoreFilter& filter = {});

/// Enhanced global + local selection: per group at and above the incumbent's
/// measure, the best-value element and the element nearest the incumbent.
/// The store's distance index must target ctx.x_best.
PohSet select_gl(const PartitionStore& store, const SelectionContext& ctx,
                 const StoreFilter& filter = {}, bool global_set = true, bool local_set = true);

/// One level-cycle step: advances the cycle and materializes the level view.
struct LevelView {
  int level = 2;
  double epsilon = 1e-4;
  std::set<ElemId> excluded;                 // level 1 and 0
  std::optional<std::set<ElemId>> included;  // level 0 only
  StoreFilter filter() const {
    StoreFilter f;
    if (!excluded.empty()) f.excluded = &excluded;
    if (included) f.included = &*included;
    return f;
  }
};
LevelView level_step(const PartitionStore& store, SelectionContext& ctx,
                     const std::array<double, 3>& eps_per_level);

/// DIRECT-restart: zero epsilon while improving, 0.01 after five consecutive
/// non-improving iterations, reset on improvement.
double restart_epsilon_update(SelectionContext& ctx, bool improved);

/// Advances the globally biased phase machine.
void update_gb_state(GbState& gb, bool improved, bool incumbent_refined, double incumbent_delta);

/// Filter for the current gb phase (restricts to large elements when global).
StoreFilter gb_filter(const GbState& gb);

/// True when the element lies strictly outside the canonical wedge
/// x1 <= x2 <= ... <= xn; `degenerate_too` also discards boundary-degenerate
/// elements (the sym2 rule).
bool symmetric_discard(const HyperRect& elem, bool degenerate_too = false);

}  // namespace divrect
