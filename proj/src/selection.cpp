#include "divrect/selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace divrect {

namespace {

struct GroupPoint {
  double key = 0.0;
  double delta = 0.0;
  double value = 0.0;
  ElemId id = kNoElem;
};

// Per-group minima that survive the filter, ascending measure.
std::vector<GroupPoint> filtered_minima(const PartitionStore& store, const StoreFilter& filter) {
  std::vector<GroupPoint> out;
  store.for_each_group([&](double key, const std::multiset<std::pair<double, ElemId>>& by_value) {
    if (key < filter.min_key) return;
    for (const auto& [value, id] : by_value) {
      if (!filter.pass(id, key)) continue;
      out.push_back({key, store.delta_of(id), value, id});
      return;
    }
  });
  return out;
}

void order_poh(std::vector<std::pair<double, ElemId>>& picks, PohSet& out) {
  std::sort(picks.begin(), picks.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;  // measure descending
    return a.second < b.second;
  });
  out.reserve(picks.size());
  for (const auto& [key, id] : picks) out.push_back(id);
}

// All elements tying the group minimum, ascending id.
std::vector<ElemId> group_ties(const PartitionStore& store, double key, double min_value,
                               const StoreFilter& filter) {
  std::vector<ElemId> ids;
  const auto* by_value = store.group_by_value(key);
  if (!by_value) return ids;
  for (const auto& [value, id] : *by_value) {
    if (value > min_value) break;
    if (filter.pass(id, key)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

PohSet select_convex_hull(const PartitionStore& store, const SelectionContext& ctx, Scaling scaling,
                          PerGroup per_group, const StoreFilter& filter) {
  require(!store.empty(), "selection on an empty partition");
  std::vector<GroupPoint> pts = filtered_minima(store, filter);
  require(!pts.empty(), "selection view is empty");

  // Chain start: smallest value; among ties the largest measure.
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].value <= pts[start].value) start = i;

  // Lower convex hull over (delta, value), keeping collinear points.
  std::vector<const GroupPoint*> chain;
  for (std::size_t i = start; i < pts.size(); ++i) {
    const GroupPoint* p = &pts[i];
    while (chain.size() >= 2) {
      const GroupPoint* a = chain[chain.size() - 2];
      const GroupPoint* b = chain[chain.size() - 1];
      // pop b when slope(a,b) strictly exceeds slope(b,p)
      const double lhs = (b->value - a->value) * (p->delta - b->delta);
      const double rhs = (p->value - b->value) * (b->delta - a->delta);
      if (lhs > rhs)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  }

  // Epsilon cut (the refinement-protection rule) applied from the smallest
  // hull measure upward; the largest-measure point always stays.
  double scale = std::abs(ctx.f_best);
  if (scaling == Scaling::Median) scale = std::abs(ctx.f_best - ctx.f_median);
  if (scaling == Scaling::Average) scale = std::abs(ctx.f_best - ctx.f_average);
  const double rhs_bound = ctx.f_best - ctx.epsilon * scale;
  const double slack = 1e-12 * (1.0 + std::abs(rhs_bound));

  std::vector<std::pair<double, ElemId>> picks;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    bool keep = true;
    if (i + 1 < chain.size()) {
      const double slope =
          (chain[i + 1]->value - chain[i]->value) / (chain[i + 1]->delta - chain[i]->delta);
      keep = chain[i]->value - slope * chain[i]->delta <= rhs_bound + slack;
    }
    if (!keep) continue;
    if (per_group == PerGroup::OnePerGroup) {
      picks.emplace_back(chain[i]->key,
                         group_ties(store, chain[i]->key, chain[i]->value, filter).front());
    } else {
      for (ElemId id : group_ties(store, chain[i]->key, chain[i]->value, filter))
        picks.emplace_back(chain[i]->key, id);
    }
  }

  PohSet out;
  order_poh(picks, out);
  return out;
}

PohSet select_group_extremes(const PartitionStore& store, ExtremesMode mode,
                             const StoreFilter& filter) {
  require(!store.empty(), "selection on an empty partition");
  std::vector<GroupPoint> pts = filtered_minima(store, filter);
  require(!pts.empty(), "selection view is empty");

  std::vector<std::pair<double, ElemId>> picks;
  if (mode == ExtremesMode::Aggressive) {
    for (const GroupPoint& p : pts) picks.emplace_back(p.key, p.id);
  } else {
    // The two extreme rate constants: as L grows unbounded the largest
    // element wins; as L vanishes the best value wins (ties to the larger
    // measure, then the lower id).
    picks.emplace_back(pts.back().key, pts.back().id);
    const GroupPoint* best = &pts.front();
    for (const GroupPoint& p : pts)
      if (p.value < best->value || (p.value == best->value && p.delta > best->delta)) best = &p;
    picks.emplace_back(best->key, best->id);
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());

  PohSet out;
  order_poh(picks, out);
  return out;
}

PohSet select_gl(const PartitionStore& store, const SelectionContext& ctx, const StoreFilter& filter,
                 bool global_set, bool local_set) {
  require(!store.empty(), "selection on an empty partition");
  require(ctx.best_elem != kNoElem && store.contains(ctx.best_elem),
          "GL selection requires the incumbent's element");
  const double base_key = store.key_of(ctx.best_elem);

  std::vector<std::pair<double, ElemId>> picks;
  store.for_each_group([&](double key, const std::multiset<std::pair<double, ElemId>>& by_value) {
    if (key < base_key || key < filter.min_key) return;
    if (global_set) {
      for (const auto& [value, id] : by_value) {
        if (filter.pass(id, key)) {
          picks.emplace_back(key, id);
          break;
        }
      }
    }
    if (local_set) {
      const auto* by_dist = store.group_by_dist(key);
      require(by_dist != nullptr, "GL selection requires the distance index");
      for (const auto& [dist, id] : *by_dist) {
        if (filter.pass(id, key)) {
          picks.emplace_back(key, id);
          break;
        }
      }
    }
  });

  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  PohSet out;
  order_poh(picks, out);
  return out;
}

LevelView level_step(const PartitionStore& store, SelectionContext& ctx,
                     const std::array<double, 3>& eps_per_level) {
  LevelView view;
  view.level = LevelState::kCycle[ctx.level.cycle_pos] - '0';
  ctx.level.cycle_pos = (ctx.level.cycle_pos + 1) % 8;
  view.epsilon = eps_per_level[view.level];
  if (view.level == 2 || store.empty()) return view;

  // Drop the worst 10% (by value, round up) of the largest-measure group.
  std::vector<PartitionStore::GroupMin> minima = store.group_minima();
  const double top_key = minima.back().key;
  const auto* top = store.group_by_value(top_key);
  const std::size_t drop = (top->size() + 9) / 10;
  if (drop < store.size()) {
    std::size_t taken = 0;
    for (auto it = top->rbegin(); it != top->rend() && taken < drop; ++it, ++taken)
      view.excluded.insert(it->second);
  }

  if (view.level == 0) {
    // Best 10% (by value, round up) of the level-1 view.
    std::vector<std::pair<double, ElemId>> rest;
    store.for_each_group([&](double key, const std::multiset<std::pair<double, ElemId>>& by_value) {
      (void)key;
      for (const auto& [value, id] : by_value)
        if (!view.excluded.count(id)) rest.emplace_back(value, id);
    });
    std::sort(rest.begin(), rest.end());
    const std::size_t keep = std::max<std::size_t>(1, (rest.size() + 9) / 10);
    view.included.emplace();
    for (std::size_t i = 0; i < keep && i < rest.size(); ++i) view.included->insert(rest[i].second);
  }
  return view;
}

double restart_epsilon_update(SelectionContext& ctx, bool improved) {
  if (improved)
    ctx.no_improve_count = 0;
  else
    ctx.no_improve_count += 1;
  return ctx.no_improve_count >= 5 ? 0.01 : 0.0;
}

void update_gb_state(GbState& gb, bool improved, bool incumbent_refined, double incumbent_delta) {
  if (improved) {
    gb.global_phase = false;
    gb.refinement_count = 0;
    return;
  }
  if (gb.global_phase) return;
  if (incumbent_refined) {
    gb.refinement_count += 1;
    if (gb.refinement_count >= gb.refinements_to_enter) {
      gb.global_phase = true;
      gb.delta_threshold = incumbent_delta * gb.entry_multiplier;
    }
  }
}

StoreFilter gb_filter(const GbState& gb) {
  StoreFilter f;
  if (gb.global_phase) f.min_key = group_key(gb.delta_threshold);
  return f;
}

bool symmetric_discard(const HyperRect& elem, bool degenerate_too) {
  for (int j = 0; j + 1 < elem.dim(); ++j) {
    if (elem.lo[j] > elem.hi[j + 1]) return true;
    if (degenerate_too && elem.lo[j] >= elem.hi[j + 1]) return true;
  }
  return false;
}

}  // namespace divrect
