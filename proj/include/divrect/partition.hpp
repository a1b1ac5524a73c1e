#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "divrect/problem.hpp"
#include "divrect/types.hpp"

namespace divrect {

/// A sampled point in the normalized cube with its objective value.
struct Sample {
  Vec point;
  double value = 0.0;
};

enum class MeasureKind { EuclidHalfDiagonal, LongestSide };
enum class SplitAxes { AllLongest, OneLongest };
enum class SampleScheme { Midpoint, TwoDiagonalThirds, TwoDiagonalVertices, SimplexCenter, SimplexVertices };

/// Axis-aligned box in [0,1]^n. side_levels[j] counts how often axis j has
/// been split (thirds for trisection, halves for bisection); the measure is
/// derived canonically from the levels so equal shapes group bit-identically.
struct HyperRect {
  Vec lo;
  Vec hi;
  std::vector<Sample> samples;
  double delta = 0.0;
  IVec side_levels;
  ElemId id = kNoElem;

  int dim() const { return static_cast<int>(lo.size()); }
  Vec center() const { return ((lo + hi) / 2.0).eval(); }
  double best_value() const;
  const Sample& best_sample() const;
};

/// Simplex in [0,1]^n held by its n+1 vertices; measure is half the longest
/// edge length.
struct Simplex {
  std::vector<Vec> vertices;
  std::vector<Sample> samples;
  double delta = 0.0;
  ElemId id = kNoElem;

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  Vec centroid() const;
  double best_value() const;
  const Sample& best_sample() const;
};

/// Normalization of a problem domain to the unit cube.
struct DomainMap {
  Vec lower;
  Vec range;  // upper - lower

  Vec to_original(const Vec& u) const { return (lower.array() + u.array() * range.array()).matrix(); }
};

DomainMap normalize_domain(const ProblemSpec& spec);

/// Canonical measure from integer side levels; base is 3 for trisection and
/// 2 for bisection. Summation order is fixed so equal level multisets give
/// bit-identical results.
double measure_from_levels(const IVec& levels, MeasureKind kind, int base);

double measure(const HyperRect& elem, MeasureKind kind);
double simplex_measure(const Simplex& sx);

/// Quantizes a measure to a grouping key (40 mantissa bits, ~1e-12 relative).
double group_key(double delta);

/// Fresh unit-cube root with its midpoint sample evaluated by `sampler`.
HyperRect root_rect(int n, const std::function<double(const Vec&)>& sampler, MeasureKind kind,
                    SampleScheme scheme);

/// Trisects along all longest axes (Jones order: the axis with the better
/// flanking value is split first so the best values keep the largest boxes)
/// or along exactly one longest axis. The parent center migrates to the
/// middle child without re-evaluation.
std::vector<HyperRect> trisect(const HyperRect& elem, SplitAxes axes,
                               const std::function<double(const Vec&)>& sampler, MeasureKind kind);

/// Halves one longest side; each child inherits the parent diagonal sample it
/// contains and gains its point-reflection through the child center.
std::vector<HyperRect> bisect_diagonal(const HyperRect& elem,
                                       const std::function<double(const Vec&)>& sampler,
                                       MeasureKind kind);

/// Halves one longest side for the two-vertex scheme; children reuse the
/// parent corner they contain and evaluate the opposite corner.
std::vector<HyperRect> bisect_vertices(const HyperRect& elem,
                                       const std::function<double(const Vec&)>& sampler,
                                       MeasureKind kind);

/// Deterministic sample positions for a scheme (no evaluation).
std::vector<Vec> sample_points(const HyperRect& elem, SampleScheme scheme);
std::vector<Vec> sample_points(const Simplex& sx, SampleScheme scheme);

/// The n! combinatorial-triangulation simplices covering the unit cube.
std::vector<Simplex> initial_simplices(int n, int cap = 8);

/// Longest-edge trisection into three children tiling the parent; the middle
/// child's centroid equals the parent's.
std::vector<Simplex> subdivide_simplex(const Simplex& sx);

/// Enumerates the vertices of {lower <= x <= upper, A x <= b} and fan-
/// triangulates the polytope. Requires affine constraints and small n, m.
std::vector<Simplex> feasible_cover_simplices(const ProblemSpec& spec, int n_cap = 6, int m_cap = 12);

enum class StoreBackend { StaticPool, Dynamic };

/// Partition bookkeeping: elements grouped by quantized measure, each group
/// indexed by selection value (and optionally by distance to the incumbent).
/// Static and dynamic backends differ only in allocation strategy.
class PartitionStore {
 public:
  explicit PartitionStore(StoreBackend backend = StoreBackend::StaticPool);

  ElemId insert(HyperRect rect, double sel_value);
  ElemId insert(Simplex sx, double sel_value);
  void remove(ElemId id);

  bool contains(ElemId id) const;
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  const HyperRect& rect(ElemId id) const;
  const Simplex& simplex(ElemId id) const;
  bool is_rect(ElemId id) const;
  double sel_value(ElemId id) const;
  double delta_of(ElemId id) const;
  double key_of(ElemId id) const;
  /// Point of the best-valued sample of the element.
  const Vec& rep_point(ElemId id) const;

  struct GroupView {
    double measure = 0.0;               // smallest actual delta in the group
    std::vector<ElemId> members;        // ascending id
  };
  /// Distinct measures ascending with members; test/diagnostic convenience.
  std::vector<GroupView> groups() const;
  /// Minimum selection value in the group whose measure matches `delta`
  /// within 1e-3 relative.
  double min_f_in_group(double delta) const;

  std::size_t group_count() const { return groups_.size(); }
  /// Visits groups ascending by key: f(key, by_value multiset).
  void for_each_group(
      const std::function<void(double, const std::multiset<std::pair<double, ElemId>>&)>& fn) const;
  /// Group minima (key, value, id) ascending by key.
  struct GroupMin {
    double key;
    double value;
    ElemId id;
  };
  std::vector<GroupMin> group_minima() const;
  const std::multiset<std::pair<double, ElemId>>* group_by_value(double key) const;
  const std::multiset<std::pair<double, ElemId>>* group_by_dist(double key) const;

  /// Recomputes every stored sample's value through `value_at` and re-derives
  /// element selection values (constraint handlers call this when their
  /// transform parameters move).
  void refresh_values(const std::function<double(const Vec&)>& value_at);

  /// Maintains a per-group distance ordering toward `point` until disabled.
  void set_distance_point(const Vec& point);
  void clear_distance_index();
  bool has_distance_index() const { return distance_enabled_; }

  /// Visits all elements in ascending id order: f(id).
  void for_each(const std::function<void(ElemId)>& fn) const;

  StoreBackend backend() const { return backend_; }

 private:
  struct Entry {
    std::variant<HyperRect, Simplex> geom;
    double sel_value = 0.0;
    double delta = 0.0;
    double key = 0.0;
    double dist = 0.0;
  };
  struct Group {
    std::multiset<std::pair<double, ElemId>> by_value;
    std::multiset<std::pair<double, ElemId>> by_dist;
    double min_delta = kInf;
  };

  Entry& entry(ElemId id);
  const Entry& entry(ElemId id) const;
  ElemId insert_entry(Entry e);
  void index_entry(ElemId id);
  void unindex_entry(ElemId id);
  double distance_to(const Entry& e) const;

  StoreBackend backend_;
  std::vector<std::unique_ptr<Entry>> pool_;       // static backend, id-indexed slots
  std::map<ElemId, std::unique_ptr<Entry>> nodes_; // dynamic backend
  std::map<double, Group> groups_;
  ElemId next_id_ = 0;
  std::size_t count_ = 0;
  bool distance_enabled_ = false;
  Vec distance_point_;
};

}  // namespace divrect
