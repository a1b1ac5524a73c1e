#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Dense>

#include "divrect/partition.hpp"

using namespace divrect;

namespace {

std::function<double(const Vec&)> rosenbrock_on(const DomainMap& map) {
  return [map](const Vec& u) {
    const Vec x = map.to_original(u);
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
      s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
    return s;
  };
}

DomainMap rosen_map(int n) {
  DomainMap m;
  m.lower = Vec::Constant(n, -5.0);
  m.range = Vec::Constant(n, 15.0);
  return m;
}

double total_volume(const std::vector<HyperRect>& rects) {
  double v = 0.0;
  for (const auto& r : rects) v += (r.hi - r.lo).prod();
  return v;
}

}  // namespace

TEST_CASE("normalize_domain maps the unit cube onto the original box") {
  ProblemSpec p = lookup_problem("rosenbrock", 2);
  DomainMap map = normalize_domain(p);
  Vec u(2);
  u << 0.5, 0.5;
  CHECK(map.to_original(u)[0] == doctest::Approx(2.5));
  u << 0.0, 0.0;
  CHECK(map.to_original(u)[0] == -5.0);
  u << 1.0, 1.0;
  CHECK(map.to_original(u)[1] == 10.0);
  u << 0.5, 5.0 / 6.0;
  const Vec x = map.to_original(u);
  CHECK(p.objective(x) == doctest::Approx(158.5).epsilon(1e-12));
}

TEST_CASE("measure kinds") {
  HyperRect unit;
  unit.lo = Vec::Zero(2);
  unit.hi = Vec::Ones(2);
  CHECK(measure(unit, MeasureKind::EuclidHalfDiagonal) == doctest::Approx(std::sqrt(2.0) / 2.0));

  HyperRect third;
  third.lo = Vec::Zero(2);
  third.hi = Vec::Constant(2, 1.0 / 3.0);
  CHECK(measure(third, MeasureKind::EuclidHalfDiagonal) == doctest::Approx(0.2357).epsilon(1e-3));

  HyperRect slab;
  slab.lo = Vec::Zero(2);
  slab.hi = Vec::Ones(2);
  slab.hi[0] = 1.0 / 3.0;
  CHECK(measure(slab, MeasureKind::LongestSide) == doctest::Approx(1.0));

  HyperRect thin;
  thin.lo = Vec::Zero(2);
  thin.hi = Vec(2);
  thin.hi << 1.0 / 3.0, 1.0 / 9.0;
  CHECK(measure(thin, MeasureKind::EuclidHalfDiagonal) == doctest::Approx(0.1757).epsilon(1e-3));
}

TEST_CASE("first trisection reproduces the published 2D values") {
  auto f = rosenbrock_on(rosen_map(2));
  std::vector<double> sampled;
  auto sampler = [&](const Vec& u) {
    const double v = f(u);
    sampled.push_back(v);
    return v;
  };
  HyperRect root = root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::Midpoint);
  CHECK(root.samples[0].value == doctest::Approx(1408.5).epsilon(1e-9));

  auto children = trisect(root, SplitAxes::AllLongest, sampler, MeasureKind::EuclidHalfDiagonal);
  REQUIRE(children.size() == 5);
  REQUIRE(sampled.size() == 5);  // center + four flanking points

  std::multiset<double> values(sampled.begin(), sampled.end());
  const std::multiset<double> expected{1408.5, 7658.5, 158.5, 1418.5, 288948.5};
  auto it = expected.begin();
  for (double v : values) CHECK(v == doctest::Approx(*it++).epsilon(1e-9));

  // the best flanking value lands in a full-width slab (largest child)
  for (const auto& c : children) {
    if (c.best_value() == doctest::Approx(158.5)) {
      CHECK((c.hi - c.lo).maxCoeff() == doctest::Approx(1.0));
    }
  }
  CHECK(total_volume(children) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first trisection reproduces the published 3D values") {
  auto f = rosenbrock_on(rosen_map(3));
  std::vector<double> sampled;
  auto sampler = [&](const Vec& u) {
    const double v = f(u);
    sampled.push_back(v);
    return v;
  };
  HyperRect root = root_rect(3, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::Midpoint);
  CHECK(root.samples[0].value == doctest::Approx(2817.0).epsilon(1e-9));
  auto children = trisect(root, SplitAxes::AllLongest, sampler, MeasureKind::EuclidHalfDiagonal);
  CHECK(children.size() == 7);

  std::vector<double> news(sampled.begin() + 1, sampled.end());
  std::sort(news.begin(), news.end());
  std::vector<double> expected{9067, 1567, 9077, 289107, 2827, 290357};
  std::sort(expected.begin(), expected.end());
  REQUIRE(news.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(news[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("one-dimensional trisection keeps the middle sample") {
  auto sampler = [](const Vec& u) { return u[0]; };
  HyperRect root = root_rect(1, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::Midpoint);
  auto children = trisect(root, SplitAxes::AllLongest, sampler, MeasureKind::EuclidHalfDiagonal);
  REQUIRE(children.size() == 3);
  const HyperRect& middle = children.back();
  CHECK(middle.lo[0] == doctest::Approx(1.0 / 3.0));
  CHECK(middle.hi[0] == doctest::Approx(2.0 / 3.0));
  CHECK(middle.samples[0].point[0] == 0.5);  // inherited, not re-evaluated
}

TEST_CASE("repeated trisection tiles the cube and shrinks measures strictly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto sampler = [&](const Vec& u) { return std::sin(17.0 * u.sum()); };

  for (MeasureKind kind : {MeasureKind::EuclidHalfDiagonal, MeasureKind::LongestSide}) {
    std::vector<HyperRect> rects;
    rects.push_back(root_rect(3, sampler, kind, SampleScheme::Midpoint));
    for (int step = 0; step < 100; ++step) {
      const std::size_t pick = static_cast<std::size_t>(unif(rng) * rects.size()) % rects.size();
      HyperRect parent = rects[pick];
      rects.erase(rects.begin() + pick);
      auto children = trisect(parent, SplitAxes::AllLongest, sampler, kind);
      for (auto& c : children) {
        // Strict shrinkage holds for the half-diagonal measure; the longest
        // side survives in slab children, so only non-increase holds there.
        if (kind == MeasureKind::EuclidHalfDiagonal)
          CHECK(c.delta < parent.delta);
        else
          CHECK(c.delta <= parent.delta);
        CHECK(measure(c, kind) == doctest::Approx(c.delta).epsilon(1e-12));
        rects.push_back(std::move(c));
      }
    }
    CHECK(total_volume(rects) == doctest::Approx(1.0).epsilon(1e-9));

    // every random point lands in exactly one element
    for (int t = 0; t < 1000; ++t) {
      Vec p(3);
      for (int j = 0; j < 3; ++j) p[j] = unif(rng);
      int hits = 0;
      for (const auto& r : rects) {
        bool in = true;
        for (int j = 0; j < 3; ++j) in = in && p[j] >= r.lo[j] && p[j] < r.hi[j];
        if (in) ++hits;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("trisection levels move by one on split axes") {
  auto sampler = [](const Vec& u) { return u.squaredNorm(); };
  HyperRect root = root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::Midpoint);
  auto children = trisect(root, SplitAxes::AllLongest, sampler, MeasureKind::EuclidHalfDiagonal);
  CHECK(children.size() == 5);  // 2k + 1 with k = 2
  for (const auto& c : children) {
    const int raised = (c.side_levels[0] - root.side_levels[0]) + (c.side_levels[1] - root.side_levels[1]);
    CHECK(c.side_levels.minCoeff() >= 0);
    CHECK((raised == 1 || raised == 2));
  }
}

TEST_CASE("diagonal bisection: initial samples and child inheritance") {
  std::vector<Vec> evaluated;
  auto sampler = [&](const Vec& u) {
    evaluated.push_back(u);
    return u.squaredNorm();
  };
  HyperRect root =
      root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::TwoDiagonalThirds);
  REQUIRE(root.samples.size() == 2);
  CHECK(root.samples[0].point[0] == doctest::Approx(1.0 / 3.0));
  CHECK(root.samples[0].point[1] == doctest::Approx(1.0 / 3.0));
  CHECK(root.samples[1].point[0] == doctest::Approx(2.0 / 3.0));

  auto children = bisect_diagonal(root, sampler, MeasureKind::EuclidHalfDiagonal);
  REQUIRE(children.size() == 2);
  CHECK(children[0].hi[0] == doctest::Approx(0.5));
  CHECK(children[1].lo[0] == doctest::Approx(0.5));
  for (const auto& c : children) {
    REQUIRE(c.samples.size() == 2);
    // one inherited point plus its reflection through the child center
    const Vec sum = c.samples[0].point + c.samples[1].point;
    CHECK(sum[0] == doctest::Approx(c.lo[0] + c.hi[0]));
    CHECK(sum[1] == doctest::Approx(c.lo[1] + c.hi[1]));
  }
  // left child inherits (1/3, 1/3); the fresh point is (1/6, 2/3)
  CHECK(children[0].samples[0].point[0] == doctest::Approx(1.0 / 3.0));
  CHECK(children[0].samples[1].point[0] == doctest::Approx(1.0 / 6.0));
  CHECK(children[0].samples[1].point[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("one-dimensional bisection inherits thirds") {
  auto sampler = [](const Vec& u) { return u[0]; };
  HyperRect root =
      root_rect(1, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::TwoDiagonalThirds);
  CHECK(root.samples[0].point[0] == doctest::Approx(1.0 / 3.0));
  CHECK(root.samples[1].point[0] == doctest::Approx(2.0 / 3.0));
  auto children = bisect_diagonal(root, sampler, MeasureKind::EuclidHalfDiagonal);
  CHECK(children[0].samples[0].point[0] == doctest::Approx(1.0 / 3.0));
  CHECK(children[1].samples[0].point[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("bisection never re-evaluates a sample point") {
  std::vector<Vec> evaluated;
  auto sampler = [&](const Vec& u) {
    for (const Vec& seen : evaluated)
      REQUIRE_FALSE(std::equal(seen.data(), seen.data() + seen.size(), u.data()));
    evaluated.push_back(u);
    return std::cos(u.sum() * 13.0);
  };
  std::vector<HyperRect> rects;
  rects.push_back(root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal,
                            SampleScheme::TwoDiagonalThirds));
  std::mt19937_64 rng(3);
  for (int step = 0; step < 60; ++step) {
    const std::size_t pick = rng() % rects.size();
    HyperRect parent = rects[pick];
    rects.erase(rects.begin() + pick);
    for (auto& c : bisect_diagonal(parent, sampler, MeasureKind::EuclidHalfDiagonal))
      rects.push_back(std::move(c));
  }
  CHECK(total_volume(rects) == doctest::Approx(1.0).epsilon(1e-9));
  // evaluations = distinct sample points: 2 initial + 2 per bisection
  CHECK(evaluated.size() == 2 + 2 * 60);
}

TEST_CASE("two-vertex sampling and bisection") {
  auto sampler = [](const Vec& u) { return u.sum(); };
  HyperRect root =
      root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::TwoDiagonalVertices);
  CHECK(root.samples[0].point == Vec::Zero(2));
  CHECK(root.samples[1].point == Vec::Ones(2));
  auto children = bisect_vertices(root, sampler, MeasureKind::EuclidHalfDiagonal);
  for (const auto& c : children) {
    REQUIRE(c.samples.size() == 2);
    CHECK(c.samples[0].point != c.samples[1].point);
  }
}

TEST_CASE("sample_points schemes") {
  HyperRect unit;
  unit.lo = Vec::Zero(2);
  unit.hi = Vec::Ones(2);
  auto mid = sample_points(unit, SampleScheme::Midpoint);
  CHECK(mid.size() == 1);
  CHECK(mid[0][0] == 0.5);
  auto corners = sample_points(unit, SampleScheme::TwoDiagonalVertices);
  CHECK(corners[0] == Vec::Zero(2));
  CHECK(corners[1] == Vec::Ones(2));
  CHECK_THROWS_AS(sample_points(unit, SampleScheme::SimplexCenter), DomainError);

  Simplex sx;
  sx.vertices = {Vec::Zero(2), (Vec(2) << 1, 0).finished(), Vec::Ones(2)};
  auto c = sample_points(sx, SampleScheme::SimplexCenter);
  CHECK(c[0][0] == doctest::Approx(2.0 / 3.0));
  CHECK(c[0][1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("initial simplicial cover") {
  auto two = initial_simplices(2);
  REQUIRE(two.size() == 2);

  auto three = initial_simplices(3);
  CHECK(three.size() == 6);
  // each permutation simplex has volume 1/n!
  for (const auto& sx : three) {
    Eigen::MatrixXd M(3, 3);
    for (int k = 0; k < 3; ++k) M.col(k) = sx.vertices[k + 1] - sx.vertices[0];
    CHECK(std::abs(M.determinant()) / 6.0 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }

  auto one = initial_simplices(1);
  CHECK(one.size() == 1);
  CHECK_THROWS_AS(initial_simplices(9), DomainError);

  // up to n = 5: n! simplices of equal volume 1/n! tile the cube
  for (int n : {4, 5}) {
    auto cover = initial_simplices(n);
    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= k;
    CHECK(cover.size() == static_cast<std::size_t>(factorial));
    double total = 0.0;
    for (const auto& sx : cover) {
      Eigen::MatrixXd M(n, n);
      for (int k = 0; k < n; ++k) M.col(k) = sx.vertices[k + 1] - sx.vertices[0];
      const double vol = std::abs(M.determinant()) / factorial;
      CHECK(vol == doctest::Approx(1.0 / factorial).epsilon(1e-9));
      total += vol;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  // pairwise-disjoint interiors, union covers the cube (Monte Carlo)
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    Vec p(3);
    for (int j = 0; j < 3; ++j) p[j] = unif(rng);
    int hits = 0;
    for (const auto& sx : three) {
      Eigen::MatrixXd M(3, 3);
      for (int k = 0; k < 3; ++k) M.col(k) = sx.vertices[k + 1] - sx.vertices[0];
      Vec lambda = M.fullPivLu().solve(p - sx.vertices[0]);
      if (lambda.minCoeff() >= 0.0 && lambda.sum() <= 1.0) ++hits;
    }
    CHECK(hits >= 1);  // boundary points may register in two closed simplices
  }
}

TEST_CASE("simplex subdivision preserves area across repeats") {
  Simplex half;
  half.vertices = {Vec::Zero(2), (Vec(2) << 1, 0).finished(), Vec::Ones(2)};
  half.delta = simplex_measure(half);

  auto area = [](const Simplex& sx) {
    Eigen::Matrix2d M;
    M.col(0) = sx.vertices[1] - sx.vertices[0];
    M.col(1) = sx.vertices[2] - sx.vertices[0];
    return std::abs(M.determinant()) / 2.0;
  };

  auto kids = subdivide_simplex(half);
  REQUIRE(kids.size() == 3);
  for (const auto& k : kids) CHECK(area(k) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // adjacent siblings share exactly n vertices; the outer pair shares n-1
  auto shared_count = [](const Simplex& a, const Simplex& b) {
    int shared = 0;
    for (const Vec& va : a.vertices)
      for (const Vec& vb : b.vertices)
        if (va == vb) ++shared;
    return shared;
  };
  CHECK(shared_count(kids[0], kids[1]) == 2);
  CHECK(shared_count(kids[1], kids[2]) == 2);
  CHECK(shared_count(kids[0], kids[2]) == 1);

  std::vector<Simplex> pool{half};
  std::mt19937_64 rng(5);
  for (int round = 0; round < 5; ++round) {
    std::vector<Simplex> next;
    for (auto& sx : pool)
      for (auto& k : subdivide_simplex(sx)) next.push_back(std::move(k));
    pool = std::move(next);
  }
  double total = 0.0;
  for (const auto& sx : pool) total += area(sx);
  CHECK(total == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("feasible cover: triangle, box, and empty region") {
  ProblemSpec tri;
  tri.name = "tri";
  tri.n = 2;
  tri.lower = Vec::Zero(2);
  tri.upper = Vec::Ones(2);
  tri.objective = [](const Vec& x) { return x.sum(); };
  Eigen::MatrixXd A(1, 2);
  A << 1.0, 1.0;
  tri.linear_ineq = LinearSystem{A, Vec::Ones(1)};
  tri.ineq_constraints = {[](const Vec& x) { return x[0] + x[1] - 1.0; }};
  auto cover = feasible_cover_simplices(tri);
  REQUIRE(cover.size() == 1);
  CHECK(cover[0].vertices.size() == 3);

  ProblemSpec box = tri;
  box.linear_ineq.reset();
  box.ineq_constraints.clear();
  auto boxcover = feasible_cover_simplices(box);
  CHECK(boxcover.size() == 2);
  double area = 0.0;
  for (const auto& sx : boxcover) {
    Eigen::Matrix2d M;
    M.col(0) = sx.vertices[1] - sx.vertices[0];
    M.col(1) = sx.vertices[2] - sx.vertices[0];
    area += std::abs(M.determinant()) / 2.0;
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-12));

  ProblemSpec empty = tri;
  Eigen::MatrixXd A2(1, 2);
  A2 << 1.0, 1.0;
  empty.linear_ineq = LinearSystem{A2, Vec::Constant(1, -1.0)};
  empty.ineq_constraints = {[](const Vec& x) { return x[0] + x[1] + 1.0; }};
  CHECK_THROWS_AS(feasible_cover_simplices(empty), DomainError);
}

TEST_CASE("store: grouping, minima, and backend equivalence") {
  for (StoreBackend backend : {StoreBackend::StaticPool, StoreBackend::Dynamic}) {
    PartitionStore store(backend);
    CHECK(store.groups().empty());

    // Rebuild the published 13-element partition layout from its side levels.
    struct Item {
      int lx, ly;
      double f;
    };
    // (levels per axis, value): three 1/9-square cells, two 1/3 x 1/9 cells,
    // eight 1/3-square cells
    std::vector<Item> items{{2, 2, 158.5},  {2, 2, 4631.58},  {2, 2, 9734.18}, {1, 2, 19.61},
                            {1, 2, 852.94}, {1, 1, 1408.5},   {1, 1, 7658.5},  {1, 1, 1418.5},
                            {1, 1, 288948.5}, {1, 1, 168.5},  {1, 1, 237698.5}, {1, 1, 7668.5},
                            {1, 1, 345198.5}};
    for (const Item& it : items) {
      HyperRect r;
      r.lo = Vec::Zero(2);
      r.hi = Vec(2);
      r.hi << std::pow(3.0, -it.lx), std::pow(3.0, -it.ly);
      r.side_levels = IVec(2);
      r.side_levels << it.lx, it.ly;
      r.delta = measure_from_levels(r.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
      r.samples.push_back({r.center(), it.f});
      store.insert(std::move(r), it.f);
    }

    auto groups = store.groups();
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].measure == doctest::Approx(0.0786).epsilon(1e-2));
    CHECK(groups[1].measure == doctest::Approx(0.1757).epsilon(1e-2));
    CHECK(groups[2].measure == doctest::Approx(0.2357).epsilon(1e-2));
    CHECK(groups[0].members.size() == 3);
    CHECK(groups[1].members.size() == 2);
    CHECK(groups[2].members.size() == 8);

    CHECK(store.min_f_in_group(0.1757) == doctest::Approx(19.61));
    CHECK(store.min_f_in_group(0.2357) == doctest::Approx(168.5));

    store.remove(0);
    CHECK(store.groups()[0].members.size() == 2);
    CHECK_THROWS_AS(store.remove(0), DomainError);
    CHECK_THROWS_AS(store.remove(999), DomainError);
  }
}

TEST_CASE("store: backend enumeration identical for the same insertions") {
  PartitionStore a(StoreBackend::StaticPool), b(StoreBackend::Dynamic);
  auto sampler = [](const Vec& u) { return u.squaredNorm(); };
  for (int i = 0; i < 4; ++i) {
    HyperRect root = root_rect(2, sampler, MeasureKind::EuclidHalfDiagonal, SampleScheme::Midpoint);
    root.side_levels << i, i;
    root.delta = measure_from_levels(root.side_levels, MeasureKind::EuclidHalfDiagonal, 3);
    HyperRect copy = root;
    const double val = static_cast<double>(10 - i);
    a.insert(std::move(root), val);
    b.insert(std::move(copy), val);
  }
  a.remove(2);
  b.remove(2);
  std::vector<ElemId> ia, ib;
  a.for_each([&](ElemId id) { ia.push_back(id); });
  b.for_each([&](ElemId id) { ib.push_back(id); });
  CHECK(ia == ib);
  auto ga = a.groups();
  auto gb = b.groups();
  REQUIRE(ga.size() == gb.size());
  for (std::size_t i = 0; i < ga.size(); ++i) {
    CHECK(ga[i].measure == gb[i].measure);
    CHECK(ga[i].members == gb[i].members);
  }
}
