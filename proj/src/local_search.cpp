#include <algorithm>
#include <cmath>
#include <numeric>

#include "divrect/solve.hpp"

namespace divrect {

// Bounded Nelder-Mead descent on the unit cube. Candidate points are clamped
// into the box; ordering ties break on insertion index so runs are
// reproducible bit-for-bit.
LocalSearchResult pattern_search(const std::function<double(const Vec&)>& evaluate, const Vec& u0,
                                 double f0, long long budget,
                                 const std::function<bool()>& keep_going) {
  LocalSearchResult res{u0, f0, 0};
  if (budget <= 0) return res;
  const int n = static_cast<int>(u0.size());

  struct Point {
    Vec x;
    double f;
  };
  std::vector<Point> simplex;
  simplex.push_back({u0, f0});

  bool aborted = false;
  auto eval = [&](const Vec& x) {
    const double f = evaluate(x);
    ++res.used;
    if (keep_going && !keep_going()) aborted = true;
    return f;
  };
  auto out_of_budget = [&] { return aborted || res.used >= budget; };

  const double step = 0.05;
  for (int j = 0; j < n && !out_of_budget(); ++j) {
    Vec x = u0;
    x[j] = (u0[j] + step <= 1.0) ? u0[j] + step : u0[j] - step;
    simplex.push_back({x, eval(x)});
  }

  auto clamp01 = [](Vec x) {
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], 0.0, 1.0);
    return x;
  };
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Point& a, const Point& b) { return a.f < b.f; });
  };

  order();
  while (!out_of_budget() && static_cast<int>(simplex.size()) == n + 1) {
    const Point& best = simplex.front();
    const Point& worst = simplex.back();
    // Convergence: simplex collapsed in x or in f.
    double diam = 0.0;
    for (const Point& p : simplex) diam = std::max(diam, (p.x - best.x).lpNorm<Eigen::Infinity>());
    if (diam < 1e-11 || std::abs(worst.f - best.f) <= 1e-14 * (1.0 + std::abs(best.f))) break;

    Vec centroid = Vec::Zero(n);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i].x;
    centroid /= static_cast<double>(n);

    const Vec xr = clamp01(centroid + (centroid - worst.x));
    const double fr = eval(xr);
    if (out_of_budget() && fr >= best.f) break;

    if (fr < best.f) {
      if (!out_of_budget()) {
        const Vec xe = clamp01(centroid + 2.0 * (centroid - worst.x));
        const double fe = eval(xe);
        simplex.back() = fe < fr ? Point{xe, fe} : Point{xr, fr};
      } else {
        simplex.back() = {xr, fr};
      }
    } else if (fr < simplex[simplex.size() - 2].f) {
      simplex.back() = {xr, fr};
    } else {
      // Contract toward the centroid, outside or inside of the worst point.
      const bool outside = fr < worst.f;
      const Vec xc = clamp01(centroid + 0.5 * ((outside ? xr : worst.x) - centroid));
      if (out_of_budget()) break;
      const double fc = eval(xc);
      if (fc < std::min(fr, worst.f)) {
        simplex.back() = {xc, fc};
      } else {
        for (std::size_t i = 1; i < simplex.size() && !out_of_budget(); ++i) {
          simplex[i].x = clamp01(best.x + 0.5 * (simplex[i].x - best.x));
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
    order();
  }

  order();
  if (simplex.front().f < res.f) {
    res.x = simplex.front().x;
    res.f = simplex.front().f;
  }
  return res;
}

LocalSearchResult local_search(const ProblemSpec& spec, const Vec& x0, long long budget) {
  spec.validate(false);
  const DomainMap map = normalize_domain(spec);
  Vec u0 = ((x0 - spec.lower).array() / map.range.array()).matrix();
  for (int j = 0; j < spec.n; ++j) {
    require(u0[j] >= -1e-12 && u0[j] <= 1.0 + 1e-12, "local_search: start point outside bounds");
    u0[j] = std::clamp(u0[j], 0.0, 1.0);
  }
  if (budget <= 0) return {x0, spec.objective(x0), 0};

  const std::size_t m = spec.ineq_constraints.size();
  const std::size_t r = spec.eq_constraints.size();
  const std::vector<double> gamma(m + r, 1e3);
  auto value = [&](const Vec& u) {
    const Vec x = map.to_original(u);
    const double f = spec.objective(x);
    if (m == 0 && r == 0) return f;
    auto [g, h] = evaluate_constraints(spec, x);
    return l1_value(f, g, h, gamma);
  };

  LocalSearchResult inner = pattern_search(value, u0, value(u0), budget - 1);
  inner.used += 1;  // the start-point evaluation
  inner.x = map.to_original(inner.x);
  inner.f = spec.objective(inner.x);
  return inner;
}

std::vector<std::pair<std::size_t, std::size_t>> split_shares(std::size_t count, int rho) {
  require(rho >= 1, "worker count must be positive");
  std::vector<std::pair<std::size_t, std::size_t>> shares;
  const std::size_t k = static_cast<std::size_t>(rho);
  const std::size_t base = count / k;
  const std::size_t extra = count % k;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < k; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    shares.emplace_back(begin, begin + len);
    begin += len;
  }
  return shares;
}

}  // namespace divrect
