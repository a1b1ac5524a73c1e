#pragma once

#include <vector>

#include "divrect/types.hpp"

namespace divrect {

/// Violation sum: sum of positive inequality parts plus absolute equality
/// residuals; zero exactly on feasible points.
double phi(const std::vector<double>& g, const std::vector<double>& h);

/// Exact L1 penalty value; gamma holds the m inequality weights followed by
/// the r equality weights.
double l1_value(double f, const std::vector<double>& g, const std::vector<double>& h,
                const std::vector<double>& gamma);

enum class GlcePhase { FindFeasible, Improve };
enum class GlceMode { Glc, Glce };

/// Two-phase auxiliary-function state: minimize the violation sum until a
/// feasible point exists, then steer by f plus the auxiliary penalty.
struct GlceState {
  double f_best_feas = kInf;
  double eps_phi = 1e-8;
  double eps_cons = 1e-8;
  GlcePhase phase = GlcePhase::FindFeasible;
  bool have_feasible = false;
};

/// Auxiliary value at a sampled point given the current state. Only valid in
/// the improve phase (the first phase minimizes phi directly).
double glce_value(double f, double phi_x, const GlceState& state, GlceMode mode);

/// Per-iteration state update: adopts the best feasible value, flips the
/// phase on the first feasible point, and re-derives eps_cons from the
/// sampled infeasible points that undercut the incumbent.
struct GlceIterationSummary {
  double best_feasible_f = kInf;      // best feasible objective seen so far
  bool any_feasible = false;
  double min_phi_undercutting = kInf; // smallest phi among infeasible points with f <= f_best_feas
};
GlceState update_glce_state(GlceState state, const GlceIterationSummary& summary);

enum class HiddenHandler { Barrier, Nas, Glh };

struct HiddenConfig {
  double barrier_value = 1e9;
  double nas_epsilon = 1e-6;
  double nas_lambda = 1.0;
  int sub_base = 2;
};

/// Barrier assignment for a hidden-infeasible point.
double barrier_value(const HiddenConfig& cfg);

/// Neighborhood assignment: grow a box around the infeasible center by
/// doubling each side (clipped to the unit cube) until it contains a feasible
/// sampled point; assign the bumped best neighbor value, or f_max + lambda
/// when none exists anywhere.
struct NeighborPoint {
  Vec point;
  double value;
};
double nas_value(const Vec& center, const Vec& elem_lo, const Vec& elem_hi,
                 const std::vector<NeighborPoint>& feasible_points, double f_max,
                 const HiddenConfig& cfg);

/// Distance-based assignment: the incumbent value plus the Euclidean distance
/// from the infeasible center to the incumbent point.
double glh_value(double f_best, const Vec& center, const Vec& x_best);

/// True when iteration k equals base^j for some positive integer j (the
/// extra subdivision trigger of the barrier variant).
bool sub_step_due(long long iteration, int base);

}  // namespace divrect
