#include "divrect/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_map>

namespace divrect {

namespace {

using Clock = std::chrono::steady_clock;

struct PointKey {
  std::uint64_t h1 = 0, h2 = 0;
  bool operator==(const PointKey&) const = default;
};
struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    return static_cast<std::size_t>(k.h1 ^ (k.h2 * 0x9e3779b97f4a7c15ULL));
  }
};

PointKey make_key(const Vec& u) {
  PointKey k{1469598103934665603ULL, 0x2b992ddfa23249d6ULL};
  const auto* p = reinterpret_cast<const unsigned char*>(u.data());
  const std::size_t bytes = sizeof(double) * static_cast<std::size_t>(u.size());
  for (std::size_t i = 0; i < bytes; ++i) {
    k.h1 = (k.h1 ^ p[i]) * 1099511628211ULL;
    k.h2 = (k.h2 ^ p[i]) * 0x100000001b3ULL;
    k.h2 ^= k.h2 >> 29;
  }
  return k;
}

struct EvalOutcome {
  double f = kInf;       // raw objective; infinite for hidden-infeasible points
  double phi = 0.0;      // constraint violation sum
  double l1pen = 0.0;    // L1 penalty term with the configured weights
  bool feasible = true;
};

bool bits_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() && std::equal(a.data(), a.data() + a.size(), b.data());
}

struct PendingEval {
  Vec point;
  EvalOutcome out;
};

struct Batch {
  ElemId parent = kNoElem;
  std::vector<HyperRect> rect_children;
  std::vector<Simplex> sx_children;
  std::vector<PendingEval> evals;
};

// Streaming median over all sampled values (two balanced multisets).
class RunningMedian {
 public:
  void add(double v) {
    if (low_.empty() || v <= *low_.rbegin())
      low_.insert(v);
    else
      high_.insert(v);
    if (low_.size() > high_.size() + 1) {
      high_.insert(*low_.rbegin());
      low_.erase(std::prev(low_.end()));
    } else if (high_.size() > low_.size()) {
      low_.insert(*high_.begin());
      high_.erase(high_.begin());
    }
  }
  double median() const {
    if (low_.empty()) return 0.0;
    if (low_.size() > high_.size()) return *low_.rbegin();
    return 0.5 * (*low_.rbegin() + *high_.begin());
  }

 private:
  std::multiset<double> low_, high_;
};

class Runner {
 public:
  Runner(const ProblemSpec& problem, const RunConfig& cfg)
      : alg_(catalog(cfg.algorithm)), cfg_(cfg), store_(cfg.storage) {
    check_compatibility(alg_, problem);
    spec_ = problem;
    if (!spec_.eq_constraints.empty() &&
        (alg_.constraints == ConstraintHandling::L1Penalty ||
         alg_.constraints == ConstraintHandling::Glc || alg_.constraints == ConstraintHandling::Glce))
      spec_ = transform_equalities(spec_, cfg_.eps_h);
    map_ = normalize_domain(spec_);
    gamma_.assign(spec_.ineq_constraints.size() + spec_.eq_constraints.size(), cfg_.l1_gamma);
    ctx_.epsilon = cfg_.epsilon.value_or(alg_.default_epsilon);
    glce_.eps_phi = 1e-8;
    glce_.eps_cons = glce_.eps_phi;
    needs_distance_ =
        alg_.selection == SelectionKind::GL || alg_.selection == SelectionKind::LocalOnly;
  }

  RunResult run();

 private:
  // --- evaluation ---
  EvalOutcome raw_evaluate(const Vec& u) const;
  EvalOutcome frozen_eval(const Vec& u, std::unordered_map<PointKey, EvalOutcome, PointKeyHash>* memo) const;
  EvalOutcome record_eval(const Vec& u);  // master path: cache + count + incumbents
  void absorb_outcome(const Vec& u, const EvalOutcome& o);
  double sel_value_of(const Vec& u, const EvalOutcome& o) const;
  double current_value_at(const Vec& u) const;  // via cache, current handler state

  // --- iteration machinery ---
  void initialize_partition();
  PohSet select_poh();
  Batch subdivide(ElemId id, std::unordered_map<PointKey, EvalOutcome, PointKeyHash>* memo) const;
  bool merge_batch(const Batch& batch);  // returns false to halt
  void rebuild_selection_incumbent();
  void refresh_all_values();
  void pre_iteration_handler_pass(long long iteration);
  void post_iteration_handler_pass();
  void run_local_searches(const std::vector<std::pair<Vec, double>>& starts, long long per_budget);
  bool hit_hard_stop() const {
    return solved_at_ >= 0 || eval_count_ >= cfg_.max_evals || elapsed() >= cfg_.max_time;
  }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - t0_).count(); }
  double public_pe() const {
    return spec_.known_fstar ? percent_error(f_pub_, *spec_.known_fstar) : kInf;
  }
  double local_metric(const EvalOutcome& o) const {
    if (!o.feasible && !std::isfinite(o.f)) return kInf;
    return gamma_.empty() ? o.f : o.f + o.l1pen;
  }

  AlgorithmSpec alg_;
  ProblemSpec spec_;
  RunConfig cfg_;
  DomainMap map_;
  PartitionStore store_;
  SelectionContext ctx_;
  GlceState glce_;
  std::vector<double> gamma_;
  bool needs_distance_ = false;

  std::unordered_map<PointKey, EvalOutcome, PointKeyHash> cache_;
  long long eval_count_ = 0;
  long long solved_at_ = -1;

  double f_pub_ = kInf;  // best feasible objective
  Vec x_pub_;            // normalized
  bool have_pub_ = false;
  double f_max_feas_ = -kInf;

  RunningMedian median_;
  double value_sum_ = 0.0;
  long long value_count_ = 0;

  bool improved_this_iter_ = false;
  bool incumbent_refined_ = false;
  bool xbest_changed_ = false;
  std::vector<std::pair<double, double>> infeasible_f_phi_;  // GLce eps_cons tracking
  double min_phi_undercut_ = kInf;

  Clock::time_point t0_;
};

EvalOutcome Runner::raw_evaluate(const Vec& u) const {
  const Vec x = map_.to_original(u);
  EvalOutcome o;
  if (spec_.hidden_oracle && !spec_.hidden_oracle(x)) {
    o.f = kInf;
    o.feasible = false;
    return o;
  }
  o.f = spec_.objective(x);
  if (!spec_.ineq_constraints.empty() || !spec_.eq_constraints.empty()) {
    auto [g, h] = evaluate_constraints(spec_, x);
    o.phi = phi(g, h);
    o.l1pen = l1_value(0.0, g, h, gamma_);
    o.feasible = o.phi <= glce_.eps_phi;
  }
  return o;
}

EvalOutcome Runner::frozen_eval(const Vec& u,
                                std::unordered_map<PointKey, EvalOutcome, PointKeyHash>* memo) const {
  const PointKey key = make_key(u);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (memo) {
    if (auto it = memo->find(key); it != memo->end()) return it->second;
    EvalOutcome o = raw_evaluate(u);
    memo->emplace(key, o);
    return o;
  }
  return raw_evaluate(u);
}

void Runner::absorb_outcome(const Vec& u, const EvalOutcome& o) {
  if (std::isfinite(o.f)) {
    median_.add(o.f);
    value_sum_ += o.f;
    value_count_ += 1;
  }
  if (o.feasible) {
    f_max_feas_ = std::max(f_max_feas_, o.f);
    if (o.f < f_pub_) {
      f_pub_ = o.f;
      x_pub_ = u;
      have_pub_ = true;
      improved_this_iter_ = true;
      if (!infeasible_f_phi_.empty()) {
        min_phi_undercut_ = kInf;
        for (const auto& [f, p] : infeasible_f_phi_)
          if (f <= f_pub_) {
            min_phi_undercut_ = std::min(min_phi_undercut_, p);
          }
      }
    }
  } else if (std::isfinite(o.f)) {
    infeasible_f_phi_.emplace_back(o.f, o.phi);
    if (o.f <= f_pub_) {
      min_phi_undercut_ = std::min(min_phi_undercut_, o.phi);
    }
  }
  if (solved_at_ < 0 && cfg_.pe_stop && o.feasible && spec_.known_fstar &&
      percent_error(o.f, *spec_.known_fstar) <= cfg_.eps_pe)
    solved_at_ = eval_count_;
}

EvalOutcome Runner::record_eval(const Vec& u) {
  const PointKey key = make_key(u);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  EvalOutcome o = raw_evaluate(u);
  cache_.emplace(key, o);
  eval_count_ += 1;
  absorb_outcome(u, o);
  return o;
}

double Runner::sel_value_of(const Vec& u, const EvalOutcome& o) const {
  switch (alg_.constraints) {
    case ConstraintHandling::BoxOnly:
    case ConstraintHandling::LcCover:
      return o.f;
    case ConstraintHandling::L1Penalty:
      return o.f + o.l1pen;
    case ConstraintHandling::Glc:
    case ConstraintHandling::Glce:
      if (glce_.phase == GlcePhase::FindFeasible) return o.phi;
      return glce_value(o.f, o.phi, glce_,
                        alg_.constraints == ConstraintHandling::Glc ? GlceMode::Glc : GlceMode::Glce);
    case ConstraintHandling::HiddenBarrier:
    case ConstraintHandling::HiddenSubBarrier:
      return o.feasible ? o.f : cfg_.hidden.barrier_value;
    case ConstraintHandling::HiddenNas:
      // Provisional for points sampled this iteration; the pre-iteration pass
      // re-derives all infeasible assignments from the partition.
      return o.feasible ? o.f : (f_max_feas_ > -kInf ? f_max_feas_ : 0.0) + cfg_.hidden.nas_lambda;
    case ConstraintHandling::HiddenGlh:
      if (o.feasible) return o.f;
      if (!have_pub_) return 0.0;  // uniform exploration until a feasible point exists
      return glh_value(f_pub_, u, x_pub_);
  }
  return o.f;
}

double Runner::current_value_at(const Vec& u) const {
  auto it = cache_.find(make_key(u));
  require(it != cache_.end(), "internal: refresh on an unseen point");
  return sel_value_of(u, it->second);
}

void Runner::initialize_partition() {
  auto sampler = [this](const Vec& u) {
    const EvalOutcome o = record_eval(u);
    return sel_value_of(u, o);
  };

  if (alg_.simplicial()) {
    std::vector<Simplex> cover = (alg_.constraints == ConstraintHandling::LcCover && spec_.linear_ineq)
                                     ? feasible_cover_simplices(spec_)
                                     : initial_simplices(spec_.n);
    for (Simplex& sx : cover) {
      for (const Vec& p : sample_points(sx, alg_.scheme)) sx.samples.push_back({p, sampler(p)});
      const double sel = sx.best_value();
      store_.insert(std::move(sx), sel);
    }
  } else {
    HyperRect root = root_rect(spec_.n, sampler, alg_.measure, alg_.scheme);
    const double sel = root.best_value();
    store_.insert(std::move(root), sel);
  }
  rebuild_selection_incumbent();
}

void Runner::rebuild_selection_incumbent() {
  ctx_.f_best = kInf;
  ctx_.best_elem = kNoElem;
  for (const auto& gm : store_.group_minima()) {
    if (gm.value < ctx_.f_best || (gm.value == ctx_.f_best && gm.id < ctx_.best_elem)) {
      ctx_.f_best = gm.value;
      ctx_.best_elem = gm.id;
    }
  }
  if (ctx_.best_elem != kNoElem) {
    ctx_.x_best = store_.rep_point(ctx_.best_elem);
    if (needs_distance_) store_.set_distance_point(ctx_.x_best);
  }
}

void Runner::refresh_all_values() {
  store_.refresh_values([this](const Vec& p) { return current_value_at(p); });
  rebuild_selection_incumbent();
}

PohSet Runner::select_poh() {
  StoreFilter filter;
  if (alg_.globally_biased) filter = gb_filter(ctx_.gb);
  LevelView level;
  if (alg_.eps_policy == EpsilonPolicy::Levels) {
    level = level_step(store_, ctx_, alg_.level_epsilons);
    ctx_.epsilon = level.epsilon;
    StoreFilter lf = level.filter();
    lf.min_key = filter.min_key;
    filter = lf;
  }

  // Guard empty views (over-restrictive gb threshold or level trim).
  bool any = false;
  store_.for_each_group([&](double key, const std::multiset<std::pair<double, ElemId>>& by_value) {
    if (any || key < filter.min_key) return;
    for (const auto& [v, id] : by_value)
      if (filter.pass(id, key)) {
        any = true;
        return;
      }
  });
  if (!any) filter = StoreFilter{};

  switch (alg_.selection) {
    case SelectionKind::Hull:
      return select_convex_hull(store_, ctx_, alg_.scaling, alg_.per_group, filter);
    case SelectionKind::Aggressive:
      return select_group_extremes(store_, ExtremesMode::Aggressive, filter);
    case SelectionKind::Plor:
      return select_group_extremes(store_, ExtremesMode::Plor, filter);
    case SelectionKind::GL:
      return select_gl(store_, ctx_, filter, true, true);
    case SelectionKind::GlobalOnly:
      return select_gl(store_, ctx_, filter, true, false);
    case SelectionKind::LocalOnly:
      return select_gl(store_, ctx_, filter, false, true);
  }
  return {};
}

Batch Runner::subdivide(ElemId id,
                        std::unordered_map<PointKey, EvalOutcome, PointKeyHash>* memo) const {
  Batch batch;
  batch.parent = id;
  auto sampler = [this, &batch, memo](const Vec& u) {
    const EvalOutcome o = frozen_eval(u, memo);
    batch.evals.push_back({u, o});
    return sel_value_of(u, o);
  };

  if (alg_.simplicial()) {
    const Simplex& parent = store_.simplex(id);
    std::vector<Simplex> children = subdivide_simplex(parent);
    for (std::size_t i = 0; i < children.size(); ++i) {
      Simplex& child = children[i];
      if (alg_.scheme == SampleScheme::SimplexCenter) {
        if (i == 1) {
          child.samples = parent.samples;  // shared centroid
        } else {
          const Vec c = child.centroid();
          child.samples.push_back({c, sampler(c)});
        }
      } else {
        for (const Vec& v : child.vertices) {
          bool inherited = false;
          for (const Sample& s : parent.samples) {
            if (bits_equal(s.point, v)) {
              child.samples.push_back(s);
              inherited = true;
              break;
            }
          }
          if (!inherited) child.samples.push_back({v, sampler(v)});
        }
      }
      batch.sx_children.push_back(std::move(child));
    }
    return batch;
  }

  const HyperRect& parent = store_.rect(id);
  switch (alg_.partitioner) {
    case Partitioner::TrisectAll:
      batch.rect_children = trisect(parent, SplitAxes::AllLongest, sampler, alg_.measure);
      break;
    case Partitioner::TrisectOne:
      batch.rect_children = trisect(parent, SplitAxes::OneLongest, sampler, alg_.measure);
      break;
    case Partitioner::BisectDiagonal:
      batch.rect_children = bisect_diagonal(parent, sampler, alg_.measure);
      break;
    case Partitioner::BisectVertices:
      batch.rect_children = bisect_vertices(parent, sampler, alg_.measure);
      break;
    case Partitioner::SimplexTrisect:
      break;
  }
  return batch;
}

bool Runner::merge_batch(const Batch& batch) {
  for (const PendingEval& pe : batch.evals) {
    const PointKey key = make_key(pe.point);
    if (cache_.find(key) != cache_.end()) continue;
    cache_.emplace(key, pe.out);
    eval_count_ += 1;
    absorb_outcome(pe.point, pe.out);
  }

  const bool was_best = batch.parent == ctx_.best_elem;
  store_.remove(batch.parent);

  auto track_incumbents = [&](ElemId id, const std::vector<Sample>& samples) {
    if (was_best && ctx_.best_elem == batch.parent) {
      for (const Sample& s : samples) {
        if (bits_equal(s.point, ctx_.x_best)) {
          ctx_.best_elem = id;
          incumbent_refined_ = true;
          break;
        }
      }
    }
    for (const Sample& s : samples) {
      if (s.value < ctx_.f_best) {
        ctx_.f_best = s.value;
        ctx_.x_best = s.point;
        ctx_.best_elem = id;
        xbest_changed_ = true;
      }
    }
  };

  if (alg_.simplicial()) {
    for (Simplex child : batch.sx_children) {
      const double sel = child.best_value();
      std::vector<Sample> samples = child.samples;
      const ElemId id = store_.insert(std::move(child), sel);
      track_incumbents(id, samples);
    }
  } else {
    for (HyperRect child : batch.rect_children) {
      if (alg_.symmetry != SymmetryRule::None &&
          symmetric_discard(child, alg_.symmetry == SymmetryRule::WedgeStrict))
        continue;
      const double sel = child.best_value();
      std::vector<Sample> samples = child.samples;
      const ElemId id = store_.insert(std::move(child), sel);
      track_incumbents(id, samples);
    }
  }

  // Dangling incumbent after a symmetric discard: re-derive it.
  if (ctx_.best_elem == batch.parent || !store_.contains(ctx_.best_elem))
    rebuild_selection_incumbent();

  return !hit_hard_stop();
}

void Runner::pre_iteration_handler_pass(long long iteration) {
  (void)iteration;
  if (alg_.constraints == ConstraintHandling::HiddenNas) {
    // Re-derive every infeasible midpoint value from the current partition:
    // grow the element's box about its fixed center until it contains a
    // feasible sampled point.
    std::vector<NeighborPoint> feasible;
    std::vector<std::pair<PointKey, double>> assigned;
    store_.for_each([&](ElemId id) {
      const HyperRect& r = store_.rect(id);
      for (const Sample& s : r.samples) {
        auto it = cache_.find(make_key(s.point));
        if (it != cache_.end() && it->second.feasible)
          feasible.push_back({s.point, it->second.f});
      }
    });
    const double fmax = f_max_feas_ > -kInf ? f_max_feas_ : 0.0;
    store_.for_each([&](ElemId id) {
      const HyperRect& r = store_.rect(id);
      for (const Sample& s : r.samples) {
        auto it = cache_.find(make_key(s.point));
        if (it == cache_.end() || it->second.feasible) continue;
        assigned.emplace_back(make_key(s.point),
                              nas_value(s.point, r.lo, r.hi, feasible, fmax, cfg_.hidden));
      }
    });
    std::unordered_map<PointKey, double, PointKeyHash> nas_map(assigned.begin(), assigned.end());
    store_.refresh_values([&](const Vec& p) {
      const PointKey key = make_key(p);
      if (auto it = nas_map.find(key); it != nas_map.end()) return it->second;
      auto it = cache_.find(key);
      require(it != cache_.end(), "internal: unseen sample");
      return it->second.f;
    });
    rebuild_selection_incumbent();
  }
}

void Runner::post_iteration_handler_pass() {
  if (alg_.constraints == ConstraintHandling::Glc || alg_.constraints == ConstraintHandling::Glce) {
    GlceIterationSummary summary;
    summary.any_feasible = have_pub_;
    summary.best_feasible_f = f_pub_;
    const GlceState next = update_glce_state(glce_, summary);
    // Stored auxiliary values are recomputed only when the best feasible
    // value moves (or the phase flips); eps_cons drift alone applies to new
    // samples until the next improvement re-syncs the partition.
    const bool changed = next.phase != glce_.phase || next.f_best_feas != glce_.f_best_feas;
    glce_ = next;
    if (changed) refresh_all_values();
  } else if (alg_.constraints == ConstraintHandling::HiddenGlh) {
    if (improved_this_iter_) refresh_all_values();
  }
  if (needs_distance_ && xbest_changed_) store_.set_distance_point(ctx_.x_best);
  xbest_changed_ = false;
}

void Runner::run_local_searches(const std::vector<std::pair<Vec, double>>& starts,
                                long long per_budget) {
  for (const auto& [u0, f0] : starts) {
    if (hit_hard_stop()) return;
    const long long budget = std::min(per_budget, cfg_.max_evals - eval_count_);
    if (budget <= 0) return;
    auto evaluate = [this](const Vec& u) { return local_metric(record_eval(u)); };
    auto keep_going = [this] { return !hit_hard_stop(); };
    pattern_search(evaluate, u0, f0, budget, keep_going);
  }
}

RunResult Runner::run() {
  t0_ = Clock::now();
  RunResult result;
  result.algorithm = alg_.id;
  result.problem = spec_.name;

  initialize_partition();
  if (alg_.constraints == ConstraintHandling::Glc || alg_.constraints == ConstraintHandling::Glce)
    post_iteration_handler_pass();  // adopt a feasible initial point immediately

  result.trace.push_back({0, eval_count_, f_pub_, elapsed()});

  std::optional<RunStatus> status;
  long long iteration = 0;
  while (true) {
    if (solved_at_ >= 0) {
      status = RunStatus::Solved;
      break;
    }
    if (eval_count_ >= cfg_.max_evals) {
      status = RunStatus::BudgetExceeded;
      break;
    }
    if (elapsed() >= cfg_.max_time) {
      status = RunStatus::TimeExceeded;
      break;
    }
    if (iteration + 1 > cfg_.max_iters) {
      status = RunStatus::IterCapped;
      break;
    }
    iteration += 1;

    const double f_pub_before = f_pub_;
    improved_this_iter_ = false;
    incumbent_refined_ = false;

    pre_iteration_handler_pass(iteration);
    ctx_.f_median = median_.median();
    ctx_.f_average = value_count_ > 0 ? value_sum_ / static_cast<double>(value_count_) : 0.0;

    PohSet poh = select_poh();
    if (alg_.constraints == ConstraintHandling::HiddenSubBarrier &&
        sub_step_due(iteration, cfg_.hidden.sub_base)) {
      std::set<ElemId> in_poh(poh.begin(), poh.end());
      std::vector<ElemId> extra;
      store_.for_each([&](ElemId id) {
        if (in_poh.count(id)) return;
        const auto it = cache_.find(make_key(store_.rep_point(id)));
        if (it != cache_.end() && !it->second.feasible) extra.push_back(id);
      });
      poh.insert(poh.end(), extra.begin(), extra.end());
    }

    // Capture hybrid start points before the parents disappear.
    std::vector<std::pair<Vec, double>> dirmin_starts;
    if (alg_.hybrid == HybridKind::EveryPoh) {
      for (ElemId id : poh) {
        const Vec& p = store_.rep_point(id);
        auto it = cache_.find(make_key(p));
        require(it != cache_.end(), "internal: unseen midpoint");
        dirmin_starts.emplace_back(p, local_metric(it->second));
      }
    }

    // Sampling + subdivision, shared across workers by contiguous slices.
    std::vector<Batch> batches(poh.size());
    const auto shares = split_shares(poh.size(), cfg_.workers);
    if (cfg_.workers <= 1 || poh.size() <= 1) {
      std::unordered_map<PointKey, EvalOutcome, PointKeyHash> memo;
      for (std::size_t i = 0; i < poh.size(); ++i) batches[i] = subdivide(poh[i], &memo);
    } else {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(shares.size());
      for (std::size_t w = 0; w < shares.size(); ++w) {
        threads.emplace_back([&, w] {
          try {
            std::unordered_map<PointKey, EvalOutcome, PointKeyHash> memo;
            for (std::size_t i = shares[w].first; i < shares[w].second; ++i)
              batches[i] = subdivide(poh[i], &memo);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    }

    bool keep_running = true;
    for (const Batch& batch : batches) {
      keep_running = merge_batch(batch);
      if (!keep_running) break;
    }

    if (keep_running && alg_.hybrid != HybridKind::None) {
      if (alg_.hybrid == HybridKind::EveryPoh) {
        run_local_searches(dirmin_starts, 100LL * spec_.n);
      } else if (improved_this_iter_ && have_pub_) {
        auto it = cache_.find(make_key(x_pub_));
        run_local_searches({{x_pub_, local_metric(it->second)}}, 1000LL * spec_.n);
      }
    }

    post_iteration_handler_pass();

    if (alg_.eps_policy == EpsilonPolicy::Restart)
      ctx_.epsilon = restart_epsilon_update(ctx_, f_pub_ < f_pub_before);
    if (alg_.globally_biased) {
      update_gb_state(ctx_.gb, f_pub_ < f_pub_before, incumbent_refined_,
                      ctx_.best_elem != kNoElem ? store_.delta_of(ctx_.best_elem) : 0.0);
    }

    result.trace.push_back({iteration, eval_count_, f_pub_, elapsed()});
  }

  result.f_min = f_pub_;
  if (have_pub_) result.x_min = map_.to_original(x_pub_);
  result.evals = eval_count_;
  result.iters = iteration;
  result.elapsed_s = elapsed();
  result.status = *status;
  result.evals_to_solve = solved_at_;
  if (result.trace.empty() || result.trace.back().iteration != iteration)
    result.trace.push_back({iteration, eval_count_, f_pub_, result.elapsed_s});
  return result;
}

}  // namespace

double percent_error(double f, double fstar) {
  if (fstar != 0.0) return 100.0 * (f - fstar) / std::abs(fstar);
  return 100.0 * f;
}

RunResult run(const ProblemSpec& spec, const RunConfig& cfg) {
  spec.validate(false);
  require(cfg.max_evals > 0 && cfg.max_iters > 0 && cfg.max_time > 0, "budgets must be positive");
  require(cfg.workers >= 1, "workers must be at least 1");
  Runner runner(spec, cfg);
  return runner.run();
}

void write_trace(const RunResult& result, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  require(out != nullptr, "cannot open trace file: " + path);
  for (const TraceRecord& r : result.trace) {
    if (std::isfinite(r.f_min))
      std::fprintf(out, "{\"iteration\":%lld,\"evals\":%lld,\"f_min\":%.17g,\"elapsed_s\":%.6f}\n",
                   r.iteration, r.evals, r.f_min, r.elapsed_s);
    else
      std::fprintf(out, "{\"iteration\":%lld,\"evals\":%lld,\"f_min\":null,\"elapsed_s\":%.6f}\n",
                   r.iteration, r.evals, r.elapsed_s);
  }
  std::fclose(out);
}

}  // namespace divrect
