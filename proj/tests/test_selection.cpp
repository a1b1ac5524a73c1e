#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "divrect/selection.hpp"
#include "oracles.hpp"

using namespace divrect;

namespace {

// The published 13-element fourth-iteration partition (values at centers);
// ids are assigned in insertion order 0..12.
struct FigItem {
  const char* label;
  int lx, ly;
  double f;
};
const std::vector<FigItem> kFigItems{
    {"c3", 2, 2, 158.5},     {"c12", 2, 2, 4631.58}, {"c13", 2, 2, 9734.18},
    {"c10", 1, 2, 19.61},    {"c11", 1, 2, 852.94},  {"c1", 1, 1, 1408.5},
    {"c2", 1, 1, 7658.5},    {"c4", 1, 1, 1418.5},   {"c5", 1, 1, 288948.5},
    {"c6", 1, 1, 168.5},     {"c7", 1, 1, 237698.5}, {"c8", 1, 1, 7668.5},
    {"c9", 1, 1, 345198.5}};

PartitionStore make_fig_store(std::vector<ElemId>* label_ids = nullptr) {
  PartitionStore store;
  for (const FigItem& it : kFigItems) {
    HyperRect r;
    r.lo = Vec::Zero(2);
    r.side_levels = IVec(2);
    r.side_levels << it.lx, it.ly;
    r.hi = Vec(2);
    r.hi << std::pow(3.0, -it.lx), std::pow(3.0, -it.ly);
    r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
    r.samples.push_back({r.center(), it.f});
    const ElemId id = store.insert(std::move(r), it.f);
    if (label_ids) label_ids->push_back(id);
  }
  return store;
}

ElemId fig_id(const char* label) {
  for (std::size_t i = 0; i < kFigItems.size(); ++i)
    if (std::string(label) == kFigItems[i].label) return static_cast<ElemId>(i);
  throw std::runtime_error("bad label");
}

SelectionContext fig_ctx() {
  SelectionContext ctx;
  ctx.epsilon = 1e-4;
  ctx.f_best = 19.61;
  ctx.best_elem = fig_id("c10");
  return ctx;
}

}  // namespace

TEST_CASE("hull selection on the published partition picks the two marked cells") {
  PartitionStore store = make_fig_store();
  SelectionContext ctx = fig_ctx();
  PohSet poh = select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies);
  std::vector<ElemId> sorted(poh.begin(), poh.end());
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<ElemId>{fig_id("c10"), fig_id("c6")});
  // ordering contract: larger measure first
  CHECK(poh.front() == fig_id("c6"));
}

TEST_CASE("single-element partition: selection is trivial") {
  PartitionStore store;
  auto sampler = [](const Vec& u) { return u.squaredNorm(); };
  HyperRect root = root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::Midpoint);
  const double sel = root.best_value();
  const ElemId id = store.insert(std::move(root), sel);
  SelectionContext ctx;
  ctx.f_best = sel;
  ctx.best_elem = id;
  PohSet poh = select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies);
  CHECK(poh == PohSet{id});
}

TEST_CASE("hull selection equals the rate-constant enumeration oracle") {
  std::mt19937_64 rng(20240801);
  for (int trial = 0; trial < 200; ++trial) {
    PartitionStore store;
    auto rp = oracles::random_partition(rng, store);
    SelectionContext ctx;
    ctx.epsilon = (trial % 3 == 0) ? 0.0 : 1e-4;
    ctx.f_best = rp.f_best;
    PohSet poh = select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies);
    std::vector<ElemId> mine(poh.begin(), poh.end());
    std::sort(mine.begin(), mine.end());
    const auto expect =
        oracles::poh_bruteforce(rp.points, rp.f_best, ctx.epsilon, std::abs(rp.f_best));
    CAPTURE(trial);
    CHECK(mine == expect);
  }
}

TEST_CASE("hull selection: scale invariances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    PartitionStore store;
    auto rp = oracles::random_partition(rng, store);

    // epsilon = 0: invariant under positive affine maps of f
    SelectionContext ctx;
    ctx.epsilon = 0.0;
    ctx.f_best = rp.f_best;
    PohSet base = select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies);

    const double a = 3.25, b = -41.0;
    PartitionStore scaled;
    std::vector<oracles::OraclePoint> spts;
    for (const auto& p : rp.points) {
      HyperRect r;
      r.lo = Vec::Zero(2);
      r.side_levels = IVec(2);
      const int level = static_cast<int>(std::round(-std::log(p.delta * std::sqrt(2.0)) / std::log(3.0)));
      r.side_levels << level, level;
      r.hi = Vec::Constant(2, std::pow(3.0, -level));
      r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
      r.samples.push_back({r.center(), a * p.f + b});
      scaled.insert(std::move(r), a * p.f + b);
    }
    SelectionContext ctx2;
    ctx2.epsilon = 0.0;
    ctx2.f_best = a * rp.f_best + b;
    PohSet mapped = select_convex_hull(scaled, ctx2, Scaling::None, PerGroup::AllTies);
    CHECK(base == mapped);
  }
}

TEST_CASE("median scaling: shift invariance with positive epsilon") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    PartitionStore store, shifted;
    auto rp = oracles::random_partition(rng, store);
    const double shift = 1000.0;
    std::vector<double> values;
    for (const auto& p : rp.points) values.push_back(p.f);
    std::sort(values.begin(), values.end());
    const double median = values.size() % 2 == 1
                              ? values[values.size() / 2]
                              : 0.5 * (values[values.size() / 2 - 1] + values[values.size() / 2]);

    for (const auto& p : rp.points) {
      HyperRect r;
      r.lo = Vec::Zero(2);
      r.side_levels = IVec(2);
      const int level = static_cast<int>(std::round(-std::log(p.delta * std::sqrt(2.0)) / std::log(3.0)));
      r.side_levels << level, level;
      r.hi = Vec::Constant(2, std::pow(3.0, -level));
      r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
      r.samples.push_back({r.center(), p.f + shift});
      shifted.insert(std::move(r), p.f + shift);
    }

    SelectionContext ctx;
    ctx.epsilon = 1e-3;
    ctx.f_best = rp.f_best;
    ctx.f_median = median;
    PohSet base = select_convex_hull(store, ctx, Scaling::Median, PerGroup::AllTies);

    SelectionContext ctx2 = ctx;
    ctx2.f_best = rp.f_best + shift;
    ctx2.f_median = median + shift;
    PohSet moved = select_convex_hull(shifted, ctx2, Scaling::Median, PerGroup::AllTies);
    CHECK(base == moved);
  }
}

TEST_CASE("per-group tie handling: all ties versus one representative") {
  PartitionStore store;
  std::vector<ElemId> ids;
  for (int i = 0; i < 3; ++i) {
    HyperRect r;
    r.lo = Vec::Zero(2);
    r.hi = Vec::Ones(2);
    r.side_levels = IVec::Zero(2);
    r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
    const double f = (i < 2) ? 1.0 : 4.0;  // two elements tie the group minimum
    r.samples.push_back({r.center(), f});
    ids.push_back(store.insert(std::move(r), f));
  }
  SelectionContext ctx;
  ctx.epsilon = 0.0;
  ctx.f_best = 1.0;
  PohSet all = select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies);
  CHECK(all.size() == 2);
  PohSet one = select_convex_hull(store, ctx, Scaling::None, PerGroup::OnePerGroup);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == ids[0]);  // lowest id among the tied minima
}

TEST_CASE("aggressive and PLOR group extremes") {
  PartitionStore store = make_fig_store();
  PohSet agg = select_group_extremes(store, ExtremesMode::Aggressive);
  std::vector<ElemId> sorted(agg.begin(), agg.end());
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<ElemId>{fig_id("c3"), fig_id("c10"), fig_id("c6")});

  // the two extreme rate constants: the largest-group best and the incumbent
  PohSet plor = select_group_extremes(store, ExtremesMode::Plor);
  std::vector<ElemId> ps(plor.begin(), plor.end());
  std::sort(ps.begin(), ps.end());
  CHECK(ps == std::vector<ElemId>{fig_id("c10"), fig_id("c6")});
}

TEST_CASE("aggressive contains the zero-epsilon hull set") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    PartitionStore store;
    auto rp = oracles::random_partition(rng, store);
    SelectionContext ctx;
    ctx.epsilon = 0.0;
    ctx.f_best = rp.f_best;
    PohSet hull = select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies);
    PohSet agg = select_group_extremes(store, ExtremesMode::Aggressive);
    std::set<ElemId> agg_set(agg.begin(), agg.end());
    for (ElemId id : hull) {
      // hull group representatives are group minima; ties may select siblings
      const double v = store.sel_value(id);
      const double key = store.key_of(id);
      bool covered = false;
      for (ElemId a : agg)
        covered = covered || (store.key_of(a) == key && store.sel_value(a) == v);
      CHECK(covered);
    }
    CHECK(select_group_extremes(store, ExtremesMode::Plor).size() <= 2);
  }
}

TEST_CASE("one group: both extreme modes return the same single element") {
  PartitionStore store;
  for (int i = 0; i < 3; ++i) {
    HyperRect r;
    r.lo = Vec::Zero(2);
    r.hi = Vec::Ones(2);
    r.side_levels = IVec::Zero(2);
    r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
    r.samples.push_back({r.center(), 5.0 + i});
    store.insert(std::move(r), 5.0 + i);
  }
  CHECK(select_group_extremes(store, ExtremesMode::Aggressive) ==
        select_group_extremes(store, ExtremesMode::Plor));
  CHECK(select_group_extremes(store, ExtremesMode::Plor).size() == 1);
}

TEST_CASE("global/local selection on the published partition") {
  PartitionStore store = make_fig_store();
  SelectionContext ctx = fig_ctx();
  ctx.x_best = store.rep_point(fig_id("c10"));
  store.set_distance_point(ctx.x_best);

  PohSet g = select_gl(store, ctx, {}, true, false);
  std::vector<ElemId> gs(g.begin(), g.end());
  std::sort(gs.begin(), gs.end());
  CHECK(gs == std::vector<ElemId>{fig_id("c10"), fig_id("c6")});

  PohSet l = select_gl(store, ctx, {}, false, true);
  CHECK(std::find(l.begin(), l.end(), fig_id("c10")) != l.end());  // distance zero

  PohSet gl = select_gl(store, ctx);
  std::set<ElemId> gset(g.begin(), g.end()), lset(l.begin(), l.end()), glset(gl.begin(), gl.end());
  std::set<ElemId> expected = gset;
  expected.insert(lset.begin(), lset.end());
  CHECK(glset == expected);
}

TEST_CASE("level cycle: order, trimming, and epsilons") {
  PartitionStore store = make_fig_store();
  SelectionContext ctx;
  const std::array<double, 3> eps075{0.0, 1e-7, 1e-5};
  std::vector<int> levels;
  for (int i = 0; i < 8; ++i) levels.push_back(level_step(store, ctx, eps075).level);
  CHECK(levels == std::vector<int>{2, 1, 0, 1, 1, 0, 1, 2});
  // the cycle repeats with period 8
  for (int i = 0; i < 8; ++i) CHECK(level_step(store, ctx, eps075).level == levels[i]);

  SelectionContext c2;
  c2.level.cycle_pos = 1;  // level 1 next
  LevelView v1 = level_step(store, c2, eps075);
  CHECK(v1.level == 1);
  CHECK(v1.epsilon == 1e-7);
  // largest group has 8 members; ceil(0.8) = 1 removed
  CHECK(v1.excluded.size() == 1);
  CHECK(v1.excluded.count(fig_id("c9")) == 1);  // worst value in the largest group

  SelectionContext c0;
  c0.level.cycle_pos = 2;  // level 0 next
  LevelView v0 = level_step(store, c0, eps075);
  CHECK(v0.level == 0);
  CHECK(v0.epsilon == 0.0);
  REQUIRE(v0.included.has_value());
  // 12 remain after the level-1 trim; ceil(1.2) = 2 best kept (19.61 and 158.5)
  CHECK(v0.included->size() == 2);
  CHECK(v0.included->count(fig_id("c10")) == 1);
  CHECK(v0.included->count(fig_id("c3")) == 1);
}

TEST_CASE("level 1 on a ten-element single group retains nine") {
  PartitionStore store;
  for (int i = 0; i < 10; ++i) {
    HyperRect r;
    r.lo = Vec::Zero(2);
    r.hi = Vec::Ones(2);
    r.side_levels = IVec::Zero(2);
    r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
    r.samples.push_back({r.center(), static_cast<double>(i)});
    store.insert(std::move(r), static_cast<double>(i));
  }
  SelectionContext ctx;
  ctx.level.cycle_pos = 1;
  LevelView v = level_step(store, ctx, {1e-4, 1e-4, 1e-4});
  CHECK(v.level == 1);
  CHECK(v.excluded.size() == 1);
  StoreFilter f = v.filter();
  int visible = 0;
  store.for_each([&](ElemId id) { visible += f.pass(id, store.key_of(id)) ? 1 : 0; });
  CHECK(visible == 9);
}

TEST_CASE("restart epsilon schedule") {
  SelectionContext ctx;
  double eps = 0.0;
  for (int i = 0; i < 4; ++i) eps = restart_epsilon_update(ctx, false);
  CHECK(eps == 0.0);
  eps = restart_epsilon_update(ctx, false);  // fifth consecutive
  CHECK(eps == 0.01);
  eps = restart_epsilon_update(ctx, false);
  CHECK(eps == 0.01);
  eps = restart_epsilon_update(ctx, true);
  CHECK(eps == 0.0);
  CHECK(ctx.no_improve_count == 0);
}

TEST_CASE("globally biased phase machine") {
  GbState gb;
  for (int i = 0; i < 9; ++i) update_gb_state(gb, false, true, 0.05);
  CHECK_FALSE(gb.global_phase);
  CHECK(gb_filter(gb).trivial());
  update_gb_state(gb, false, true, 0.05);
  CHECK(gb.global_phase);
  CHECK(gb.delta_threshold == doctest::Approx(0.2));

  PartitionStore store = make_fig_store();
  StoreFilter f = gb_filter(gb);
  int visible = 0;
  store.for_each([&](ElemId id) { visible += f.pass(id, store.key_of(id)) ? 1 : 0; });
  CHECK(visible == 8);  // only the 0.236 group

  update_gb_state(gb, true, false, 0.01);
  CHECK_FALSE(gb.global_phase);
  CHECK(gb.refinement_count == 0);
}

TEST_CASE("symmetric wedge discard") {
  HyperRect keep;
  keep.lo = Vec(2);
  keep.hi = Vec(2);
  keep.lo << 0.0, 2.0 / 3.0;
  keep.hi << 1.0 / 3.0, 1.0;
  CHECK_FALSE(symmetric_discard(keep));

  HyperRect drop;
  drop.lo = Vec(2);
  drop.hi = Vec(2);
  drop.lo << 2.0 / 3.0, 0.0;
  drop.hi << 1.0, 1.0 / 3.0;
  CHECK(symmetric_discard(drop));

  HyperRect cube;
  cube.lo = Vec::Zero(3);
  cube.hi = Vec::Ones(3);
  CHECK_FALSE(symmetric_discard(cube));

  HyperRect boundary;
  boundary.lo = Vec(2);
  boundary.hi = Vec(2);
  boundary.lo << 1.0 / 3.0, 0.0;
  boundary.hi << 2.0 / 3.0, 1.0 / 3.0;
  CHECK_FALSE(symmetric_discard(boundary));       // touches the wedge boundary
  CHECK(symmetric_discard(boundary, true));       // sym2 drops degenerate touchers
}

TEST_CASE("every selected id exists in the store") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    PartitionStore store;
    auto rp = oracles::random_partition(rng, store);
    SelectionContext ctx;
    ctx.f_best = rp.f_best;
    for (const auto& p : rp.points)
      if (p.f == rp.f_best) ctx.best_elem = p.id;
    ctx.x_best = store.rep_point(ctx.best_elem);
    store.set_distance_point(ctx.x_best);
    for (PohSet poh : {select_convex_hull(store, ctx, Scaling::None, PerGroup::AllTies),
                       select_group_extremes(store, ExtremesMode::Aggressive),
                       select_group_extremes(store, ExtremesMode::Plor), select_gl(store, ctx)}) {
      CHECK_FALSE(poh.empty());
      std::set<ElemId> seen;
      for (ElemId id : poh) {
        CHECK(store.contains(id));
        CHECK(seen.insert(id).second);  // no duplicates
      }
    }
  }
}
