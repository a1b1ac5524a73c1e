#include "divrect/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace divrect {

namespace {

// base^-k, computed iteratively so equal levels give bit-identical sides.
double inv_power(int base, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v /= base;
  return v;
}

const Sample& best_of(const std::vector<Sample>& samples) {
  require(!samples.empty(), "element has no samples");
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].value < samples[best].value) best = i;
  return samples[best];
}

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

double HyperRect::best_value() const { return best_of(samples).value; }
const Sample& HyperRect::best_sample() const { return best_of(samples); }

Vec Simplex::centroid() const {
  Vec c = Vec::Zero(dim());
  for (const Vec& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

double Simplex::best_value() const { return best_of(samples).value; }
const Sample& Simplex::best_sample() const { return best_of(samples); }

DomainMap normalize_domain(const ProblemSpec& spec) {
  spec.validate(false);
  return DomainMap{spec.lower, (spec.upper - spec.lower).eval()};
}

double measure_from_levels(const IVec& levels, MeasureKind kind, int base) {
  if (kind == MeasureKind::LongestSide) {
    int min_level = levels[0];
    for (Eigen::Index j = 1; j < levels.size(); ++j) min_level = std::min(min_level, levels[j]);
    return inv_power(base, min_level);
  }
  std::vector<int> sorted(levels.data(), levels.data() + levels.size());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (int l : sorted) {
    const double side = inv_power(base, l);
    sum += side * side;
  }
  return 0.5 * std::sqrt(sum);
}

double measure(const HyperRect& elem, MeasureKind kind) {
  if (kind == MeasureKind::LongestSide) return (elem.hi - elem.lo).maxCoeff();
  return 0.5 * (elem.hi - elem.lo).norm();
}

double simplex_measure(const Simplex& sx) {
  double longest = 0.0;
  const std::size_t m = sx.vertices.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      longest = std::max(longest, (sx.vertices[i] - sx.vertices[j]).norm());
  return 0.5 * longest;
}

double group_key(double delta) {
  if (delta == 0.0) return 0.0;
  int exp = 0;
  const double mantissa = std::frexp(delta, &exp);
  const double quantized = std::round(mantissa * 0x1p40) * 0x1p-40;
  return std::ldexp(quantized, exp);
}

HyperRect root_rect(int n, const std::function<double(const Vec&)>& sampler, MeasureKind kind,
                    SampleScheme scheme) {
  HyperRect r;
  r.lo = Vec::Zero(n);
  r.hi = Vec::Ones(n);
  r.side_levels = IVec::Zero(n);
  const int base = (scheme == SampleScheme::Midpoint) ? 3 : 2;
  r.delta = measure_from_levels(r.side_levels, kind, base);
  for (const Vec& p : sample_points(r, scheme)) r.samples.push_back({p, sampler(p)});
  return r;
}

std::vector<HyperRect> trisect(const HyperRect& elem, SplitAxes axes,
                               const std::function<double(const Vec&)>& sampler, MeasureKind kind) {
  require(elem.samples.size() == 1, "trisect requires a single center sample");
  const int n = elem.dim();
  const Vec c = elem.samples[0].point;

  // Longest axes = minimal trisection level; ties keep ascending axis order.
  int min_level = elem.side_levels.minCoeff();
  std::vector<int> split_axes;
  for (int j = 0; j < n; ++j)
    if (elem.side_levels[j] == min_level) split_axes.push_back(j);
  if (axes == SplitAxes::OneLongest) split_axes.resize(1);

  struct Flank {
    int axis;
    Sample minus, plus;
    double w;
  };
  std::vector<Flank> flanks;
  flanks.reserve(split_axes.size());
  for (int j : split_axes) {
    const double third = (elem.hi[j] - elem.lo[j]) / 3.0;
    Vec pm = c, pp = c;
    pm[j] = c[j] - third;
    pp[j] = c[j] + third;
    Flank f;
    f.axis = j;
    f.minus = {pm, sampler(pm)};
    f.plus = {pp, sampler(pp)};
    f.w = std::min(f.minus.value, f.plus.value);
    flanks.push_back(std::move(f));
  }
  std::stable_sort(flanks.begin(), flanks.end(),
                   [](const Flank& a, const Flank& b) { return a.w < b.w; });

  std::vector<HyperRect> out;
  out.reserve(2 * flanks.size() + 1);
  HyperRect cur = elem;
  cur.id = kNoElem;
  for (const Flank& f : flanks) {
    const int j = f.axis;
    const double w = cur.hi[j] - cur.lo[j];
    const double m1 = cur.lo[j] + w / 3.0;
    const double m2 = cur.hi[j] - w / 3.0;

    HyperRect lo_child = cur;
    lo_child.hi[j] = m1;
    lo_child.side_levels[j] += 1;
    lo_child.samples = {f.minus};
    lo_child.delta = measure_from_levels(lo_child.side_levels, kind, 3);

    HyperRect hi_child = cur;
    hi_child.lo[j] = m2;
    hi_child.side_levels[j] += 1;
    hi_child.samples = {f.plus};
    hi_child.delta = measure_from_levels(hi_child.side_levels, kind, 3);

    out.push_back(std::move(lo_child));
    out.push_back(std::move(hi_child));

    cur.lo[j] = m1;
    cur.hi[j] = m2;
    cur.side_levels[j] += 1;
  }
  cur.delta = measure_from_levels(cur.side_levels, kind, 3);
  out.push_back(std::move(cur));  // middle child keeps the parent's sample
  return out;
}

namespace {

std::vector<HyperRect> bisect_common(const HyperRect& elem,
                                     const std::function<double(const Vec&)>& sampler,
                                     MeasureKind kind, bool diagonal_scheme) {
  require(elem.samples.size() == 2, "bisection requires two samples");
  const int n = elem.dim();

  int j = 0;
  for (int k = 1; k < n; ++k)
    if (elem.side_levels[k] < elem.side_levels[j]) j = k;

  const double mid = (elem.lo[j] + elem.hi[j]) / 2.0;

  HyperRect left = elem;
  left.id = kNoElem;
  left.hi[j] = mid;
  left.side_levels[j] += 1;
  left.delta = measure_from_levels(left.side_levels, kind, 2);
  left.samples.clear();

  HyperRect right = elem;
  right.id = kNoElem;
  right.lo[j] = mid;
  right.side_levels[j] += 1;
  right.delta = measure_from_levels(right.side_levels, kind, 2);
  right.samples.clear();

  for (const Sample& s : elem.samples) {
    HyperRect& child = (s.point[j] <= mid) ? left : right;
    child.samples.push_back(s);
  }
  require(left.samples.size() == 1 && right.samples.size() == 1,
          "bisection expects one inherited sample per child");

  for (HyperRect* child : {&left, &right}) {
    const Vec& inherited = child->samples[0].point;
    Vec fresh;
    if (diagonal_scheme) {
      fresh = (child->lo + child->hi - inherited).eval();  // reflect through center
    } else {
      // Two-vertex scheme: the inherited sample is one corner, the new one is
      // the opposite corner.
      fresh = Vec(n);
      for (int k = 0; k < n; ++k)
        fresh[k] = (inherited[k] == child->lo[k]) ? child->hi[k] : child->lo[k];
    }
    child->samples.push_back({fresh, sampler(fresh)});
  }

  std::vector<HyperRect> out;
  out.push_back(std::move(left));
  out.push_back(std::move(right));
  return out;
}

}  // namespace

std::vector<HyperRect> bisect_diagonal(const HyperRect& elem,
                                       const std::function<double(const Vec&)>& sampler,
                                       MeasureKind kind) {
  return bisect_common(elem, sampler, kind, true);
}

std::vector<HyperRect> bisect_vertices(const HyperRect& elem,
                                       const std::function<double(const Vec&)>& sampler,
                                       MeasureKind kind) {
  return bisect_common(elem, sampler, kind, false);
}

std::vector<Vec> sample_points(const HyperRect& elem, SampleScheme scheme) {
  switch (scheme) {
    case SampleScheme::Midpoint:
      return {elem.center()};
    case SampleScheme::TwoDiagonalThirds: {
      const Vec d = elem.hi - elem.lo;
      return {(elem.lo + d / 3.0).eval(), (elem.lo + 2.0 * d / 3.0).eval()};
    }
    case SampleScheme::TwoDiagonalVertices:
      return {elem.lo, elem.hi};
    default:
      throw DomainError("sample scheme incompatible with a hyper-rectangle");
  }
}

std::vector<Vec> sample_points(const Simplex& sx, SampleScheme scheme) {
  switch (scheme) {
    case SampleScheme::SimplexCenter:
      return {sx.centroid()};
    case SampleScheme::SimplexVertices:
      return sx.vertices;
    default:
      throw DomainError("sample scheme incompatible with a simplex");
  }
}

std::vector<Simplex> initial_simplices(int n, int cap) {
  require(n >= 1, "dimension must be positive");
  require(n <= cap, "initial simplicial cover: dimension cap exceeded");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Simplex> out;
  do {
    Simplex sx;
    Vec v = Vec::Zero(n);
    sx.vertices.push_back(v);
    for (int k = 0; k < n; ++k) {
      v[perm[k]] = 1.0;
      sx.vertices.push_back(v);
    }
    sx.delta = simplex_measure(sx);
    out.push_back(std::move(sx));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Simplex> subdivide_simplex(const Simplex& sx) {
  const std::size_t m = sx.vertices.size();
  require(m >= 2, "simplex needs at least two vertices");

  std::size_t ia = 0, ib = 1;
  double best_len = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool ij_order = lex_less(sx.vertices[i], sx.vertices[j]);
      const Vec& a = ij_order ? sx.vertices[i] : sx.vertices[j];
      const Vec& b = ij_order ? sx.vertices[j] : sx.vertices[i];
      const double len = (sx.vertices[i] - sx.vertices[j]).norm();
      if (len > best_len) {
        best_len = len;
        ia = i;
        ib = j;
      } else if (len == best_len) {
        const bool cur_order = lex_less(sx.vertices[ia], sx.vertices[ib]);
        const Vec& ca = cur_order ? sx.vertices[ia] : sx.vertices[ib];
        const Vec& cb = cur_order ? sx.vertices[ib] : sx.vertices[ia];
        if (lex_less(a, ca) || (!lex_less(ca, a) && lex_less(b, cb))) {
          ia = i;
          ib = j;
        }
      }
    }
  }
  // Canonical edge direction: smaller endpoint first.
  const bool order = lex_less(sx.vertices[ia], sx.vertices[ib]);
  const Vec va = order ? sx.vertices[ia] : sx.vertices[ib];
  const Vec vb = order ? sx.vertices[ib] : sx.vertices[ia];
  const Vec q1 = (va + (vb - va) / 3.0).eval();
  const Vec q2 = (va + 2.0 * (vb - va) / 3.0).eval();

  auto child_with = [&](const Vec& first, const Vec& second) {
    Simplex child;
    child.vertices.push_back(first);
    child.vertices.push_back(second);
    for (std::size_t k = 0; k < m; ++k)
      if (k != ia && k != ib) child.vertices.push_back(sx.vertices[k]);
    child.delta = simplex_measure(child);
    return child;
  };

  std::vector<Simplex> out;
  out.push_back(child_with(va, q1));
  out.push_back(child_with(q1, q2));  // middle child: centroid equals the parent's
  out.push_back(child_with(q2, vb));
  return out;
}

// ---------------------------------------------------------------------------
// Polytope vertex enumeration + fan triangulation (Lc-DISIMPL initial cover)
// ---------------------------------------------------------------------------

namespace {

struct HalfSpace {
  Eigen::RowVectorXd a;
  double b;
};

int affine_rank(const std::vector<Vec>& verts, const std::vector<int>& ids) {
  if (ids.size() <= 1) return 0;
  Eigen::MatrixXd M(static_cast<Eigen::Index>(ids.size()) - 1, verts[ids[0]].size());
  for (std::size_t i = 1; i < ids.size(); ++i) M.row(i - 1) = (verts[ids[i]] - verts[ids[0]]).transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

void triangulate_face(const std::vector<Vec>& verts, const std::vector<HalfSpace>& cons,
                      const std::vector<int>& face, int dim, std::vector<bool> active,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(face.size()) == dim + 1) {
    out.push_back(face);
    return;
  }
  const int apex = face.front();  // faces are kept sorted by vertex lex order
  std::set<std::vector<int>> seen;
  for (std::size_t c = 0; c < cons.size(); ++c) {
    if (active[c]) continue;
    std::vector<int> sub;
    bool apex_in = false;
    for (int v : face) {
      if (std::abs(cons[c].a.dot(verts[v]) - cons[c].b) <= 1e-8 * std::max(1.0, std::abs(cons[c].b))) {
        sub.push_back(v);
        if (v == apex) apex_in = true;
      }
    }
    if (apex_in || static_cast<int>(sub.size()) < dim) continue;
    if (affine_rank(verts, sub) != dim - 1) continue;
    if (!seen.insert(sub).second) continue;
    auto sub_active = active;
    sub_active[c] = true;
    std::vector<std::vector<int>> sub_tris;
    triangulate_face(verts, cons, sub, dim - 1, sub_active, sub_tris);
    for (auto& t : sub_tris) {
      t.push_back(apex);
      out.push_back(std::move(t));
    }
  }
}

}  // namespace

std::vector<Simplex> feasible_cover_simplices(const ProblemSpec& spec, int n_cap, int m_cap) {
  spec.validate();
  const int n = spec.n;
  const int m = spec.linear_ineq ? static_cast<int>(spec.linear_ineq->A.rows()) : 0;
  if (!spec.ineq_constraints.empty() || !spec.eq_constraints.empty())
    require(spec.linear_ineq &&
                static_cast<int>(spec.ineq_constraints.size()) == m && spec.eq_constraints.empty(),
            spec.name + ": feasible cover requires affine inequality constraints only");
  require(n <= n_cap, "feasible cover: dimension cap exceeded");
  require(m <= m_cap, "feasible cover: constraint cap exceeded");

  // Work in normalized coordinates: bounds become the unit cube and each
  // affine row is rescaled accordingly.
  const DomainMap map = normalize_domain(spec);
  std::vector<HalfSpace> cons;
  for (int j = 0; j < n; ++j) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(n);
    r[j] = -1.0;
    cons.push_back({r, 0.0});  // -u_j <= 0
    Eigen::RowVectorXd r2 = Eigen::RowVectorXd::Zero(n);
    r2[j] = 1.0;
    cons.push_back({r2, 1.0});  // u_j <= 1
  }
  if (m > 0) {
    for (int i = 0; i < m; ++i) {
      Eigen::RowVectorXd r(n);
      for (int j = 0; j < n; ++j) r[j] = spec.linear_ineq->A(i, j) * map.range[j];
      const double b = spec.linear_ineq->b[i] - spec.linear_ineq->A.row(i).dot(map.lower);
      cons.push_back({r, b});
    }
  }

  // Vertex enumeration over all n-subsets of the bounding hyperplanes.
  const int M = static_cast<int>(cons.size());
  std::vector<Vec> verts;
  std::vector<int> idx(n);
  std::function<void(int, int)> combos = [&](int start, int k) {
    if (k == n) {
      Eigen::MatrixXd A(n, n);
      Vec b(n);
      for (int i = 0; i < n; ++i) {
        A.row(i) = cons[idx[i]].a;
        b[i] = cons[idx[i]].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      lu.setThreshold(1e-9);
      if (lu.rank() < n) return;
      Vec x = lu.solve(b);
      for (const auto& hs : cons)
        if (hs.a.dot(x) - hs.b > 1e-9 * std::max(1.0, std::abs(hs.b))) return;
      for (const Vec& v : verts)
        if ((v - x).norm() <= 1e-8) return;
      verts.push_back(std::move(x));
      return;
    }
    for (int i = start; i <= M - (n - k); ++i) {
      idx[k] = i;
      combos(i + 1, k + 1);
    }
  };
  combos(0, 0);

  require(!verts.empty(), spec.name + ": empty feasible region");
  std::sort(verts.begin(), verts.end(), lex_less);
  std::vector<int> all(verts.size());
  std::iota(all.begin(), all.end(), 0);
  require(affine_rank(verts, all) == n, spec.name + ": feasible region is degenerate");

  std::vector<std::vector<int>> tris;
  if (static_cast<int>(verts.size()) == n + 1) {
    tris.push_back(all);
  } else {
    triangulate_face(verts, cons, all, n, std::vector<bool>(cons.size(), false), tris);
  }

  std::vector<Simplex> out;
  out.reserve(tris.size());
  for (auto& t : tris) {
    std::sort(t.begin(), t.end());
    Simplex sx;
    for (int v : t) sx.vertices.push_back(verts[v]);
    sx.delta = simplex_measure(sx);
    out.push_back(std::move(sx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// PartitionStore
// ---------------------------------------------------------------------------

PartitionStore::PartitionStore(StoreBackend backend) : backend_(backend) {
  if (backend_ == StoreBackend::StaticPool) pool_.reserve(std::size_t{1} << 14);
}

PartitionStore::Entry& PartitionStore::entry(ElemId id) {
  return const_cast<Entry&>(static_cast<const PartitionStore*>(this)->entry(id));
}

const PartitionStore::Entry& PartitionStore::entry(ElemId id) const {
  if (backend_ == StoreBackend::StaticPool) {
    require(id >= 0 && id < static_cast<ElemId>(pool_.size()) && pool_[id] != nullptr,
            "unknown element id");
    return *pool_[id];
  }
  auto it = nodes_.find(id);
  require(it != nodes_.end(), "unknown element id");
  return *it->second;
}

bool PartitionStore::contains(ElemId id) const {
  if (backend_ == StoreBackend::StaticPool)
    return id >= 0 && id < static_cast<ElemId>(pool_.size()) && pool_[id] != nullptr;
  return nodes_.count(id) > 0;
}

ElemId PartitionStore::insert_entry(Entry e) {
  const ElemId id = next_id_++;
  if (backend_ == StoreBackend::StaticPool) {
    if (static_cast<std::size_t>(id) >= pool_.capacity())
      pool_.reserve(std::max(pool_.capacity() * 2, static_cast<std::size_t>(id) + 1));
    pool_.resize(static_cast<std::size_t>(id) + 1);
    pool_[id] = std::make_unique<Entry>(std::move(e));
  } else {
    nodes_.emplace(id, std::make_unique<Entry>(std::move(e)));
  }
  ++count_;
  index_entry(id);
  return id;
}

ElemId PartitionStore::insert(HyperRect rect, double sel_value) {
  Entry e;
  e.delta = rect.delta;
  e.key = group_key(rect.delta);
  e.sel_value = sel_value;
  e.geom = std::move(rect);
  const ElemId id = insert_entry(std::move(e));
  std::get<HyperRect>(entry(id).geom).id = id;
  return id;
}

ElemId PartitionStore::insert(Simplex sx, double sel_value) {
  Entry e;
  e.delta = sx.delta;
  e.key = group_key(sx.delta);
  e.sel_value = sel_value;
  e.geom = std::move(sx);
  const ElemId id = insert_entry(std::move(e));
  std::get<Simplex>(entry(id).geom).id = id;
  return id;
}

void PartitionStore::index_entry(ElemId id) {
  Entry& e = entry(id);
  Group& g = groups_[e.key];
  g.by_value.emplace(e.sel_value, id);
  g.min_delta = std::min(g.min_delta, e.delta);
  if (distance_enabled_) {
    e.dist = distance_to(e);
    g.by_dist.emplace(e.dist, id);
  }
}

void PartitionStore::unindex_entry(ElemId id) {
  const Entry& e = entry(id);
  auto it = groups_.find(e.key);
  require(it != groups_.end(), "element group missing");
  it->second.by_value.erase({e.sel_value, id});
  if (distance_enabled_) it->second.by_dist.erase({e.dist, id});
  if (it->second.by_value.empty()) groups_.erase(it);
}

void PartitionStore::remove(ElemId id) {
  require(contains(id), "remove of unknown element id");
  unindex_entry(id);
  if (backend_ == StoreBackend::StaticPool)
    pool_[id].reset();
  else
    nodes_.erase(id);
  --count_;
}

const HyperRect& PartitionStore::rect(ElemId id) const { return std::get<HyperRect>(entry(id).geom); }
const Simplex& PartitionStore::simplex(ElemId id) const { return std::get<Simplex>(entry(id).geom); }
bool PartitionStore::is_rect(ElemId id) const {
  return std::holds_alternative<HyperRect>(entry(id).geom);
}
double PartitionStore::sel_value(ElemId id) const { return entry(id).sel_value; }
double PartitionStore::delta_of(ElemId id) const { return entry(id).delta; }
double PartitionStore::key_of(ElemId id) const { return entry(id).key; }

const Vec& PartitionStore::rep_point(ElemId id) const {
  const Entry& e = entry(id);
  if (std::holds_alternative<HyperRect>(e.geom)) return std::get<HyperRect>(e.geom).best_sample().point;
  return std::get<Simplex>(e.geom).best_sample().point;
}

std::vector<PartitionStore::GroupView> PartitionStore::groups() const {
  std::vector<GroupView> out;
  out.reserve(groups_.size());
  for (const auto& [key, g] : groups_) {
    GroupView view;
    view.measure = g.min_delta;
    for (const auto& [value, id] : g.by_value) view.members.push_back(id);
    std::sort(view.members.begin(), view.members.end());
    out.push_back(std::move(view));
  }
  return out;
}

double PartitionStore::min_f_in_group(double delta) const {
  for (const auto& [key, g] : groups_) {
    if (std::abs(g.min_delta - delta) <= 1e-3 * std::max(std::abs(delta), std::abs(g.min_delta)))
      return g.by_value.begin()->first;
  }
  throw DomainError("no group with the requested measure");
}

void PartitionStore::for_each_group(
    const std::function<void(double, const std::multiset<std::pair<double, ElemId>>&)>& fn) const {
  for (const auto& [key, g] : groups_) fn(key, g.by_value);
}

std::vector<PartitionStore::GroupMin> PartitionStore::group_minima() const {
  std::vector<GroupMin> out;
  out.reserve(groups_.size());
  for (const auto& [key, g] : groups_) {
    const auto& [value, id] = *g.by_value.begin();
    out.push_back({key, value, id});
  }
  return out;
}

const std::multiset<std::pair<double, ElemId>>* PartitionStore::group_by_value(double key) const {
  auto it = groups_.find(key);
  return it == groups_.end() ? nullptr : &it->second.by_value;
}

const std::multiset<std::pair<double, ElemId>>* PartitionStore::group_by_dist(double key) const {
  auto it = groups_.find(key);
  return it == groups_.end() ? nullptr : &it->second.by_dist;
}

void PartitionStore::refresh_values(const std::function<double(const Vec&)>& value_at) {
  std::map<double, std::vector<std::pair<double, ElemId>>> fresh;
  for_each([&](ElemId id) {
    Entry& e = entry(id);
    std::vector<Sample>* samples = std::holds_alternative<HyperRect>(e.geom)
                                       ? &std::get<HyperRect>(e.geom).samples
                                       : &std::get<Simplex>(e.geom).samples;
    double sel = kInf;
    for (Sample& s : *samples) {
      s.value = value_at(s.point);
      sel = std::min(sel, s.value);
    }
    e.sel_value = sel;
    fresh[e.key].emplace_back(sel, id);
  });
  for (auto& [key, pairs] : fresh) {
    std::sort(pairs.begin(), pairs.end());
    groups_[key].by_value = std::multiset<std::pair<double, ElemId>>(pairs.begin(), pairs.end());
  }
}

double PartitionStore::distance_to(const Entry& e) const {
  const Vec* p;
  if (std::holds_alternative<HyperRect>(e.geom))
    p = &std::get<HyperRect>(e.geom).best_sample().point;
  else
    p = &std::get<Simplex>(e.geom).best_sample().point;
  return (*p - distance_point_).norm();
}

void PartitionStore::set_distance_point(const Vec& point) {
  if (distance_enabled_ && distance_point_.size() == point.size() &&
      std::equal(point.data(), point.data() + point.size(), distance_point_.data()))
    return;
  distance_point_ = point;
  distance_enabled_ = true;
  std::map<double, std::vector<std::pair<double, ElemId>>> fresh;
  for_each([&](ElemId id) {
    Entry& e = entry(id);
    e.dist = distance_to(e);
    fresh[e.key].emplace_back(e.dist, id);
  });
  for (auto& [key, g] : groups_) g.by_dist.clear();
  for (auto& [key, pairs] : fresh) {
    std::sort(pairs.begin(), pairs.end());
    groups_[key].by_dist = std::multiset<std::pair<double, ElemId>>(pairs.begin(), pairs.end());
  }
}

void PartitionStore::clear_distance_index() {
  distance_enabled_ = false;
  for (auto& [key, g] : groups_) g.by_dist.clear();
}

void PartitionStore::for_each(const std::function<void(ElemId)>& fn) const {
  if (backend_ == StoreBackend::StaticPool) {
    for (ElemId id = 0; id < static_cast<ElemId>(pool_.size()); ++id)
      if (pool_[id]) fn(id);
  } else {
    for (const auto& [id, e] : nodes_) fn(id);
  }
}

}  // namespace divrect
