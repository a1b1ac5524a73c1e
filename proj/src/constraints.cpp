#include "divrect/constraints.hpp"

#include <algorithm>
#include <cmath>

namespace divrect {

double phi(const std::vector<double>& g, const std::vector<double>& h) {
  double s = 0.0;
  for (double gi : g) s += std::max(gi, 0.0);
  for (double hi : h) s += std::abs(hi);
  return s;
}

double l1_value(double f, const std::vector<double>& g, const std::vector<double>& h,
                const std::vector<double>& gamma) {
  require(gamma.size() == g.size() + h.size(), "l1_value: gamma length mismatch");
  double s = f;
  for (std::size_t i = 0; i < g.size(); ++i) s += std::max(gamma[i] * g[i], 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) s += gamma[g.size() + i] * std::abs(h[i]);
  return s;
}

double glce_value(double f, double phi_x, const GlceState& state, GlceMode mode) {
  require(state.have_feasible, "glce_value called before a feasible point exists");
  if (phi_x <= state.eps_phi) return f;
  if (mode == GlceMode::Glce && f <= state.f_best_feas && phi_x <= state.eps_cons) return f;
  return f + phi_x + std::abs(f - state.f_best_feas);
}

GlceState update_glce_state(GlceState state, const GlceIterationSummary& summary) {
  if (summary.any_feasible) {
    state.have_feasible = true;
    state.phase = GlcePhase::Improve;
    state.f_best_feas = std::min(state.f_best_feas, summary.best_feasible_f);
  }
  if (summary.min_phi_undercutting == kInf) {
    state.eps_cons = state.eps_phi;  // no undercutting infeasible point sampled
  } else {
    const double cap = 1e-2 * (std::abs(state.f_best_feas) + 1.0);
    state.eps_cons = std::max(state.eps_phi, std::min(summary.min_phi_undercutting, cap));
  }
  return state;
}

double barrier_value(const HiddenConfig& cfg) { return cfg.barrier_value; }

double nas_value(const Vec& center, const Vec& elem_lo, const Vec& elem_hi,
                 const std::vector<NeighborPoint>& feasible_points, double f_max,
                 const HiddenConfig& cfg) {
  const int n = static_cast<int>(center.size());
  Vec lo = elem_lo, hi = elem_hi;
  while (true) {
    double best = kInf;
    for (const NeighborPoint& p : feasible_points) {
      bool inside = true;
      for (int j = 0; j < n && inside; ++j)
        if (p.point[j] < lo[j] || p.point[j] > hi[j]) inside = false;
      if (inside) best = std::min(best, p.value);
    }
    if (best < kInf) return best + cfg.nas_epsilon * std::abs(best);

    bool covers_cube = true;
    for (int j = 0; j < n; ++j)
      if (lo[j] > 0.0 || hi[j] < 1.0) covers_cube = false;
    if (covers_cube) break;

    // Double each side about the fixed center, then clip to the cube.
    for (int j = 0; j < n; ++j) {
      lo[j] = std::max(0.0, center[j] - 2.0 * (center[j] - lo[j]));
      hi[j] = std::min(1.0, center[j] + 2.0 * (hi[j] - center[j]));
    }
  }
  return f_max + cfg.nas_lambda;
}

double glh_value(double f_best, const Vec& center, const Vec& x_best) {
  return f_best + (center - x_best).norm();
}

bool sub_step_due(long long iteration, int base) {
  require(base >= 2, "sub_step_due: base must be at least 2");
  if (iteration < base) return false;
  long long p = base;
  while (p < iteration) p *= base;
  return p == iteration;
}

}  // namespace divrect
