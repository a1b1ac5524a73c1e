#include "divrect/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace divrect {

namespace {

std::string problem_class(const ProblemSpec& spec) {
  if (spec.hidden_oracle) return "hidden";
  if (spec.has_tag(ProblemTag::Engineering)) return "engineering";
  if (spec.has_tag(ProblemTag::Linear)) return "linear";
  if (spec.has_tag(ProblemTag::Nonlinear) || spec.has_tag(ProblemTag::Equality)) return "nonlinear";
  return "box";
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

SuiteResult run_suite(const std::vector<std::string>& algorithms,
                      const std::vector<std::string>& problems, const RunConfig& base_cfg,
                      int concurrency) {
  require(concurrency >= 1, "suite concurrency must be positive");
  struct Task {
    std::size_t row;
    std::string alg;
    std::string prob;
  };
  std::vector<Task> tasks;
  SuiteResult result;
  result.rows.resize(algorithms.size() * problems.size());
  for (std::size_t a = 0; a < algorithms.size(); ++a)
    for (std::size_t p = 0; p < problems.size(); ++p)
      tasks.push_back({a * problems.size() + p, algorithms[a], problems[p]});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      SuiteRow row;
      row.problem = task.prob;
      row.algorithm = task.alg;
      ProblemSpec spec = lookup_problem(task.prob);
      row.n = spec.n;
      row.klass = problem_class(spec);
      try {
        check_compatibility(catalog(task.alg), spec);
      } catch (const std::exception&) {
        row.not_applicable = true;
        result.rows[task.row] = std::move(row);
        continue;
      }
      RunConfig cfg = base_cfg;
      cfg.algorithm = task.alg;
      try {
        RunResult r = run(spec, cfg);
        row.status = r.status;
        row.fevals = r.status == RunStatus::Solved ? r.evals
                                                   : static_cast<long long>(kFailureSentinel);
        row.iters = r.iters;
        row.time_s = r.elapsed_s;
        row.f_min = r.f_min;
      } catch (const std::exception&) {
        row.status = RunStatus::BudgetExceeded;  // recorded as a failure
        row.fevals = static_cast<long long>(kFailureSentinel);
        row.f_min = kInf;
      }
      result.rows[task.row] = std::move(row);
    }
  };
  if (concurrency == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < concurrency; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

CostMatrix SuiteResult::matrix(CostMetric metric) const {
  CostMatrix m;
  for (const SuiteRow& row : rows) {
    if (std::find(m.solvers.begin(), m.solvers.end(), row.algorithm) == m.solvers.end())
      m.solvers.push_back(row.algorithm);
    if (std::find(m.problems.begin(), m.problems.end(), row.problem) == m.problems.end())
      m.problems.push_back(row.problem);
  }
  const std::size_t S = m.solvers.size(), P = m.problems.size();
  m.t.assign(S, std::vector<double>(P, kFailureSentinel));
  m.failed.assign(S, std::vector<bool>(P, true));
  m.not_applicable.assign(S, std::vector<bool>(P, false));
  for (const SuiteRow& row : rows) {
    const std::size_t s =
        std::find(m.solvers.begin(), m.solvers.end(), row.algorithm) - m.solvers.begin();
    const std::size_t p =
        std::find(m.problems.begin(), m.problems.end(), row.problem) - m.problems.begin();
    if (row.not_applicable) {
      m.not_applicable[s][p] = true;
      continue;
    }
    const bool failed = row.status != RunStatus::Solved;
    m.failed[s][p] = failed;
    if (failed) {
      m.t[s][p] = kFailureSentinel;
    } else {
      switch (metric) {
        case CostMetric::Evaluations:
          m.t[s][p] = static_cast<double>(row.fevals);
          break;
        case CostMetric::Time:
          m.t[s][p] = row.time_s;
          break;
        case CostMetric::Iterations:
          m.t[s][p] = static_cast<double>(row.iters);
          break;
      }
    }
  }
  return m;
}

std::vector<std::string> suite_problems(const std::string& suite) {
  std::vector<std::string> out;
  for (const std::string& name : registered_problems()) {
    ProblemSpec spec = lookup_problem(name);
    const std::string klass = problem_class(spec);
    if (suite == "box" && klass == "box" && !spec.has_tag(ProblemTag::Engineering)) out.push_back(name);
    if (suite == "linear" && klass == "linear") out.push_back(name);
    if (suite == "nonlinear" && klass == "nonlinear") out.push_back(name);
    if (suite == "hidden" && klass == "hidden") out.push_back(name);
    if (suite == "engineering" && spec.has_tag(ProblemTag::Engineering)) out.push_back(name);
  }
  require(!out.empty(), "unknown or empty suite: " + suite);
  return out;
}

ProfileData perf_profile(const CostMatrix& m, double beta_max, int grid_points) {
  require(beta_max >= 1.0 && grid_points >= 2, "profile grid invalid");
  const std::size_t S = m.solvers.size(), P = m.problems.size();
  require(S >= 1 && P >= 1, "profile needs a nonempty matrix");

  ProfileData out;
  out.solvers = m.solvers;
  out.lambda.assign(S, std::vector<double>(P, kInf));
  for (std::size_t p = 0; p < P; ++p) {
    double best = kInf;
    for (std::size_t s = 0; s < S; ++s)
      if (!m.failed[s][p] && !m.not_applicable[s][p]) best = std::min(best, m.t[s][p]);
    for (std::size_t s = 0; s < S; ++s) {
      if (m.failed[s][p] || m.not_applicable[s][p] || best == kInf) continue;
      out.lambda[s][p] = m.t[s][p] / best;
    }
  }
  out.beta.resize(grid_points);
  for (int i = 0; i < grid_points; ++i)
    out.beta[i] = std::pow(10.0, std::log10(beta_max) * i / (grid_points - 1));
  out.chi.assign(S, std::vector<double>(grid_points, 0.0));
  for (std::size_t s = 0; s < S; ++s)
    for (int i = 0; i < grid_points; ++i) {
      std::size_t count = 0;
      for (std::size_t p = 0; p < P; ++p)
        if (out.lambda[s][p] <= out.beta[i] * (1.0 + 1e-12)) ++count;
      out.chi[s][i] = static_cast<double>(count) / static_cast<double>(P);
    }
  return out;
}

double chi_at(const ProfileData& p, std::size_t solver, double beta) {
  const std::size_t P = p.lambda.empty() ? 0 : p.lambda[solver].size();
  std::size_t count = 0;
  for (double l : p.lambda[solver])
    if (l <= beta * (1.0 + 1e-12)) ++count;
  return P == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(P);
}

// ---------------------------------------------------------------------------
// CSV / report / SVG
// ---------------------------------------------------------------------------

void write_csv(const SuiteResult& result, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  require(out != nullptr, "cannot open output file: " + path);
  std::fprintf(out, "problem,algorithm,n,class,status,fevals,iters,time_s,f_min\n");
  for (const SuiteRow& r : result.rows) {
    const std::string status = r.not_applicable ? "not_applicable" : to_string(r.status);
    std::fprintf(out, "%s,%s,%d,%s,%s,%lld,%lld,%.17g,%.17g\n", r.problem.c_str(),
                 r.algorithm.c_str(), r.n, r.klass.c_str(), status.c_str(), r.fevals, r.iters,
                 r.time_s, r.f_min);
  }
  std::fclose(out);
}

SuiteResult read_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read csv: " + path);
  SuiteResult result;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    require(fields.size() == 9, "malformed csv row: " + line);
    SuiteRow r;
    r.problem = fields[0];
    r.algorithm = fields[1];
    r.n = std::stoi(fields[2]);
    r.klass = fields[3];
    if (fields[4] == "not_applicable") {
      r.not_applicable = true;
    } else if (fields[4] == "solved") {
      r.status = RunStatus::Solved;
    } else if (fields[4] == "time_exceeded") {
      r.status = RunStatus::TimeExceeded;
    } else if (fields[4] == "iter_capped") {
      r.status = RunStatus::IterCapped;
    } else {
      r.status = RunStatus::BudgetExceeded;
    }
    r.fevals = std::stoll(fields[5]);
    r.iters = std::stoll(fields[6]);
    r.time_s = std::stod(fields[7]);
    r.f_min = std::stod(fields[8]);
    result.rows.push_back(std::move(r));
  }
  return result;
}

namespace {

struct Stats {
  std::vector<double> fevals, time, iters;
  int failed = 0;
  int total = 0;
};

void append_report_block(std::ostringstream& os, const std::string& label,
                         const std::map<std::string, Stats>& per_alg) {
  os << "== " << label << " ==\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-22s %-8s %12s %10s %10s %12s %10s\n", "algorithm", "failed",
                "avg_fevals", "avg_time", "avg_iter", "med_fevals", "med_time");
  os << buf;
  for (const auto& [alg, st] : per_alg) {
    if (st.total == 0) continue;
    std::snprintf(buf, sizeof(buf), "%-22s %3d/%-4d %12.1f %10.3f %10.1f %12.1f %10.3f\n",
                  alg.c_str(), st.failed, st.total, mean_of(st.fevals), mean_of(st.time),
                  mean_of(st.iters), median_of(st.fevals), median_of(st.time));
    os << buf;
  }
  os << "\n";
}

}  // namespace

std::string aggregate_report(const SuiteResult& result) {
  auto collect = [&](const std::function<bool(const SuiteRow&)>& pred) {
    std::map<std::string, Stats> per_alg;
    for (const SuiteRow& r : result.rows) {
      if (r.not_applicable || !pred(r)) continue;
      Stats& st = per_alg[r.algorithm];
      st.total += 1;
      if (r.status != RunStatus::Solved) st.failed += 1;
      st.fevals.push_back(static_cast<double>(r.fevals));
      st.time.push_back(r.time_s);
      st.iters.push_back(static_cast<double>(r.iters));
    }
    return per_alg;
  };

  std::ostringstream os;
  append_report_block(os, "All problems", collect([](const SuiteRow&) { return true; }));
  append_report_block(os, "Average results (n <= 4)",
                      collect([](const SuiteRow& r) { return r.n <= 4; }));
  append_report_block(os, "Average results (n >= 5)",
                      collect([](const SuiteRow& r) { return r.n >= 5; }));
  append_report_block(os, "Linearly constrained",
                      collect([](const SuiteRow& r) { return r.klass == "linear"; }));
  append_report_block(os, "Nonlinearly constrained",
                      collect([](const SuiteRow& r) { return r.klass == "nonlinear"; }));
  return os.str();
}

namespace {

const char* kCurveColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_profile_svg(const ProfileData& p, const std::string& path) {
  const double W = 860, H = 520, L = 70, R = 200, T = 30, B = 50;
  const double plot_w = W - L - R, plot_h = H - T - B;
  const double beta_max = p.beta.back();
  auto xmap = [&](double beta) { return L + plot_w * std::log10(beta) / std::log10(beta_max); };
  auto ymap = [&](double chi) { return T + plot_h * (1.0 - chi); };

  std::FILE* out = std::fopen(path.c_str(), "w");
  require(out != nullptr, "cannot open output file: " + path);
  std::fprintf(out,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
               "viewBox=\"0 0 %.0f %.0f\">\n<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
               W, H, W, H);
  // axes
  std::fprintf(out,
               "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
               "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
               L, T + plot_h, L + plot_w, T + plot_h, L, T, L, T + plot_h);
  for (double tick = 0.0; tick <= 1.0001; tick += 0.2) {
    std::fprintf(out,
                 "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"end\">%.1f</text>\n",
                 L - 6, ymap(tick) + 4, tick);
    std::fprintf(out, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n", L,
                 ymap(tick), L + plot_w, ymap(tick));
  }
  for (double b = 1.0; b <= beta_max * 1.0001; b *= 10.0) {
    std::fprintf(out,
                 "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\">1e%d</text>\n",
                 xmap(b), T + plot_h + 18, static_cast<int>(std::round(std::log10(b))));
  }
  std::fprintf(out,
               "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\">performance "
               "ratio</text>\n",
               L + plot_w / 2, H - 12);

  for (std::size_t s = 0; s < p.solvers.size(); ++s) {
    // true step curve over the solver's finite ratios
    std::vector<double> lams;
    for (double l : p.lambda[s])
      if (std::isfinite(l) && l <= beta_max) lams.push_back(std::max(l, 1.0));
    std::sort(lams.begin(), lams.end());
    const double total = static_cast<double>(p.lambda[s].size());
    std::string d;
    char seg[128];
    double y = static_cast<double>(std::upper_bound(lams.begin(), lams.end(), 1.0 + 1e-12) -
                                   lams.begin()) /
               std::max(total, 1.0);
    std::snprintf(seg, sizeof(seg), "M %.2f %.2f", xmap(1.0), ymap(y));
    d += seg;
    for (std::size_t i = 0; i < lams.size(); ++i) {
      if (lams[i] <= 1.0 + 1e-12) continue;
      const double ny = static_cast<double>(i + 1) / total;
      std::snprintf(seg, sizeof(seg), " L %.2f %.2f L %.2f %.2f", xmap(lams[i]), ymap(y),
                    xmap(lams[i]), ymap(ny));
      d += seg;
      y = ny;
    }
    std::snprintf(seg, sizeof(seg), " L %.2f %.2f", xmap(beta_max), ymap(y));
    d += seg;
    const char* color = kCurveColors[s % 10];
    std::fprintf(out, "<path d=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.7\"/>\n",
                 d.c_str(), color);
    std::fprintf(out,
                 "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                 "stroke-width=\"2\"/>\n<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%s</text>\n",
                 W - R + 10, T + 16.0 * s + 8, W - R + 34, T + 16.0 * s + 8, color, W - R + 40,
                 T + 16.0 * s + 12, p.solvers[s].c_str());
  }
  std::fprintf(out, "</svg>\n");
  std::fclose(out);
}

void write_profile_csv(const ProfileData& p, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  require(out != nullptr, "cannot open output file: " + path);
  std::fprintf(out, "beta");
  for (const std::string& s : p.solvers) std::fprintf(out, ",%s", s.c_str());
  std::fprintf(out, "\n");
  for (std::size_t i = 0; i < p.beta.size(); ++i) {
    std::fprintf(out, "%.17g", p.beta[i]);
    for (std::size_t s = 0; s < p.solvers.size(); ++s) std::fprintf(out, ",%.17g", p.chi[s][i]);
    std::fprintf(out, "\n");
  }
  std::fclose(out);
}

}  // namespace divrect
