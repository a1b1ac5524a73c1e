#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "divrect/bench.hpp"
#include "divrect/solve.hpp"

using namespace divrect;

namespace {

int default_workers() {
  if (const char* env = std::getenv("DIVRECT_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divrect: derivative-free global optimization (dividing-rectangles family)"};
  app.require_subcommand(1);

  // --- solve ---
  auto* solve_cmd = app.add_subcommand("solve", "run one algorithm on one problem");
  std::string alg = "DIRECT", problem, descriptor_path, trace_path, storage = "static";
  int dim = 0;
  RunConfig cfg;
  cfg.workers = default_workers();
  double max_time = 0.0;
  bool no_pe_stop = false;
  solve_cmd->add_option("--alg", alg, "algorithm id (see list-algs)");
  solve_cmd->add_option("--problem", problem, "registered problem name");
  solve_cmd->add_option("--descriptor", descriptor_path, "plain-text problem descriptor file");
  solve_cmd->add_option("--n", dim, "dimension for scalable families");
  solve_cmd->add_option("--eps", cfg.epsilon, "balance parameter override");
  solve_cmd->add_option("--eps-pe", cfg.eps_pe, "percent-error stopping tolerance");
  solve_cmd->add_flag("--no-pe-stop", no_pe_stop, "run to the budget even when pe is reached");
  solve_cmd->add_option("--max-evals", cfg.max_evals, "objective evaluation budget");
  solve_cmd->add_option("--max-iters", cfg.max_iters, "iteration cap");
  solve_cmd->add_option("--max-time", max_time, "wall-clock budget in seconds");
  solve_cmd->add_option("--workers", cfg.workers, "parallel sampling workers");
  solve_cmd->add_option("--storage", storage, "partition backend: static|dynamic");
  solve_cmd->add_option("--trace", trace_path, "write per-iteration history (JSON lines)");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "run an algorithm x problem matrix");
  std::string algs_csv, suite = "box", out_csv = "results.csv", problems_csv;
  int jobs = 1;
  RunConfig bench_cfg;
  bench_cmd->add_option("--algs", algs_csv, "comma-separated algorithm ids")->required();
  bench_cmd->add_option("--suite", suite, "box|linear|nonlinear|hidden|engineering");
  bench_cmd->add_option("--problems", problems_csv, "explicit comma-separated problem list");
  bench_cmd->add_option("--out", out_csv, "output csv path");
  bench_cmd->add_option("--eps-pe", bench_cfg.eps_pe, "percent-error stopping tolerance");
  bench_cmd->add_option("--max-evals", bench_cfg.max_evals, "evaluation budget per run");
  bench_cmd->add_option("--max-time", max_time, "wall-clock budget per run in seconds");
  bench_cmd->add_option("--jobs", jobs, "concurrent runs");

  // --- profile ---
  auto* prof_cmd = app.add_subcommand("profile", "performance profiles from a results csv");
  std::string in_csv, metric = "fevals", out_svg = "profile.svg";
  double beta_max = 1e4;
  prof_cmd->add_option("--in", in_csv, "results csv from bench")->required();
  prof_cmd->add_option("--metric", metric, "fevals|time");
  prof_cmd->add_option("--out", out_svg, "output svg path (a .csv twin is written too)");
  prof_cmd->add_option("--beta-max", beta_max, "profile upper ratio bound");

  // --- listings ---
  auto* list_algs = app.add_subcommand("list-algs", "print the algorithm catalog");
  auto* list_problems = app.add_subcommand("list-problems", "print registered problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_algs->parsed()) {
      for (const auto& id : catalog_ids()) std::printf("%s\n", id.c_str());
      return 0;
    }
    if (list_problems->parsed()) {
      for (const auto& name : registered_problems()) {
        ProblemSpec p = lookup_problem(name);
        std::printf("%-28s n=%d\n", name.c_str(), p.n);
      }
      return 0;
    }
    if (solve_cmd->parsed()) {
      ProblemSpec spec;
      if (!descriptor_path.empty()) {
        std::ifstream in(descriptor_path);
        if (!in.good()) {
          std::fprintf(stderr, "cannot read descriptor: %s\n", descriptor_path.c_str());
          return 1;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        spec = parse_problem_descriptor(buffer.str());
      } else if (!problem.empty()) {
        spec = lookup_problem(problem, dim > 0 ? std::optional<int>(dim) : std::nullopt);
      } else {
        std::fprintf(stderr, "solve: either --problem or --descriptor is required\n");
        return 1;
      }
      cfg.algorithm = alg;
      cfg.pe_stop = !no_pe_stop;
      if (max_time > 0) cfg.max_time = max_time;
      cfg.storage = storage == "dynamic" ? StoreBackend::Dynamic : StoreBackend::StaticPool;
      RunResult r = run(spec, cfg);
      if (!trace_path.empty()) write_trace(r, trace_path);
      std::printf("algorithm: %s\nproblem:   %s (n=%d)\nstatus:    %s\n", r.algorithm.c_str(),
                  r.problem.c_str(), spec.n, to_string(r.status).c_str());
      std::printf("f_min:     %.10g\n", r.f_min);
      if (r.x_min.size() > 0) {
        std::printf("x_min:    ");
        for (int j = 0; j < r.x_min.size(); ++j) std::printf(" %.10g", r.x_min[j]);
        std::printf("\n");
      }
      std::printf("evals:     %lld\niters:     %lld\ntime_s:    %.3f\n", r.evals, r.iters,
                  r.elapsed_s);
      if (spec.known_fstar)
        std::printf("pe:        %.4g%%\n", percent_error(r.f_min, *spec.known_fstar));
      return r.status == RunStatus::Solved ? 0 : 2;
    }
    if (bench_cmd->parsed()) {
      const std::vector<std::string> algorithms = split_list(algs_csv);
      const std::vector<std::string> problems =
          problems_csv.empty() ? suite_problems(suite) : split_list(problems_csv);
      if (max_time > 0) bench_cfg.max_time = max_time;
      SuiteResult result = run_suite(algorithms, problems, bench_cfg, jobs);
      write_csv(result, out_csv);
      std::printf("%s", aggregate_report(result).c_str());
      std::printf("wrote %s (%zu rows)\n", out_csv.c_str(), result.rows.size());
      return 0;
    }
    if (prof_cmd->parsed()) {
      SuiteResult result = read_csv(in_csv);
      const CostMetric m = metric == "time" ? CostMetric::Time : CostMetric::Evaluations;
      ProfileData prof = perf_profile(result.matrix(m), beta_max);
      write_profile_svg(prof, out_svg);
      std::string csv_twin = out_svg;
      const auto dot = csv_twin.rfind('.');
      csv_twin = (dot == std::string::npos ? csv_twin : csv_twin.substr(0, dot)) + ".csv";
      write_profile_csv(prof, csv_twin);
      std::printf("wrote %s and %s\n", out_svg.c_str(), csv_twin.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
