#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "divrect/bench.hpp"

using namespace divrect;

namespace {

CostMatrix worked_matrix() {
  CostMatrix m;
  m.solvers = {"s1", "s2"};
  m.problems = {"p1", "p2"};
  m.t = {{100.0, 200.0}, {300.0, 100.0}};
  m.failed = {{false, false}, {false, false}};
  m.not_applicable = {{false, false}, {false, false}};
  return m;
}

}  // namespace

TEST_CASE("profile arithmetic on the worked 2x2 matrix") {
  ProfileData p = perf_profile(worked_matrix());
  CHECK(p.lambda[0][0] == 1.0);
  CHECK(p.lambda[0][1] == 2.0);
  CHECK(p.lambda[1][0] == 3.0);
  CHECK(p.lambda[1][1] == 1.0);
  CHECK(chi_at(p, 0, 1.0) == 0.5);
  CHECK(chi_at(p, 1, 1.0) == 0.5);
  CHECK(chi_at(p, 0, 2.0) == 1.0);
  CHECK(chi_at(p, 1, 3.0) == 1.0);
  CHECK(chi_at(p, 1, 2.9) == 0.5);
}

TEST_CASE("single solver: every ratio is one") {
  CostMatrix m;
  m.solvers = {"only"};
  m.problems = {"a", "b", "c"};
  m.t = {{5.0, 7.0, 11.0}};
  m.failed = {{false, false, false}};
  m.not_applicable = {{false, false, false}};
  ProfileData p = perf_profile(m);
  for (double l : p.lambda[0]) CHECK(l == 1.0);
  CHECK(chi_at(p, 0, 1.0) == 1.0);
}

TEST_CASE("cost ties count both solvers as winners") {
  CostMatrix m = worked_matrix();
  m.t = {{100.0, 100.0}, {100.0, 400.0}};
  ProfileData p = perf_profile(m);
  CHECK(p.lambda[0][0] == 1.0);
  CHECK(p.lambda[1][0] == 1.0);
  CHECK(chi_at(p, 0, 1.0) == 1.0);
  CHECK(chi_at(p, 1, 1.0) == 0.5);
}

TEST_CASE("failures get infinite ratios and cap the curves below one") {
  CostMatrix m = worked_matrix();
  m.failed[1][1] = true;
  m.t[1][1] = kFailureSentinel;
  ProfileData p = perf_profile(m);
  CHECK(std::isinf(p.lambda[1][1]));
  CHECK(chi_at(p, 1, 1e12) == 0.5);
  CHECK(chi_at(p, 0, 1e12) == 1.0);
}

TEST_CASE("profile curves are monotone and bounded on random matrices") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(1.0, 1e5);
  for (int trial = 0; trial < 1000; ++trial) {
    CostMatrix m;
    const int S = 1 + static_cast<int>(rng() % 4), P = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < S; ++s) m.solvers.push_back("s" + std::to_string(s));
    for (int p = 0; p < P; ++p) m.problems.push_back("p" + std::to_string(p));
    m.t.assign(S, std::vector<double>(P));
    m.failed.assign(S, std::vector<bool>(P, false));
    m.not_applicable.assign(S, std::vector<bool>(P, false));
    for (int s = 0; s < S; ++s)
      for (int p = 0; p < P; ++p) {
        m.t[s][p] = unif(rng);
        if (rng() % 10 == 0) {
          m.failed[s][p] = true;
          m.t[s][p] = kFailureSentinel;
        }
      }
    ProfileData prof = perf_profile(m, 1e4, 60);
    for (int s = 0; s < S; ++s) {
      double prev = -1.0;
      for (double chi : prof.chi[s]) {
        CHECK(chi >= prev);
        CHECK(chi >= 0.0);
        CHECK(chi <= 1.0);
        prev = chi;
      }
    }
    // per problem the minimum-cost solver has ratio one
    for (int p = 0; p < P; ++p) {
      bool any = false;
      for (int s = 0; s < S; ++s) any = any || prof.lambda[s][p] == 1.0;
      bool all_failed = true;
      for (int s = 0; s < S; ++s) all_failed = all_failed && m.failed[s][p];
      if (!all_failed) CHECK(any);
    }
  }
}

TEST_CASE("suite runs, aggregates, and csv round trip") {
  RunConfig cfg;
  cfg.eps_pe = 1e-2;
  cfg.max_evals = 30000;
  SuiteResult result =
      run_suite({"DIRECT", "DIRECT-GL"}, {"branin", "six_hump_camel", "booth"}, cfg, 2);
  REQUIRE(result.rows.size() == 6);
  int solved = 0;
  for (const SuiteRow& r : result.rows) {
    CHECK_FALSE(r.not_applicable);
    if (r.status == RunStatus::Solved) ++solved;
  }
  CHECK(solved >= 5);

  const std::string path = "bench_test.csv";
  write_csv(result, path);
  SuiteResult back = read_csv(path);
  REQUIRE(back.rows.size() == result.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    CHECK(back.rows[i].problem == result.rows[i].problem);
    CHECK(back.rows[i].algorithm == result.rows[i].algorithm);
    CHECK(back.rows[i].fevals == result.rows[i].fevals);
    CHECK(back.rows[i].time_s == result.rows[i].time_s);  // exact via %.17g
    CHECK(back.rows[i].f_min == result.rows[i].f_min);
  }
  // matrices reconstructed from the csv match exactly
  CostMatrix a = result.matrix(CostMetric::Evaluations);
  CostMatrix b = back.matrix(CostMetric::Evaluations);
  CHECK(a.t == b.t);
  CHECK(a.failed == b.failed);
  std::remove(path.c_str());

  const std::string report = aggregate_report(result);
  CHECK(report.find("DIRECT-GL") != std::string::npos);
  CHECK(report.find("0/3") != std::string::npos);  // all solved for at least one algorithm
}

TEST_CASE("incompatible pairs are excluded as not applicable") {
  RunConfig cfg;
  cfg.max_evals = 2000;
  SuiteResult result = run_suite({"Lc-DISIMPL-V"}, {"g06", "hs024"}, cfg, 1);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].not_applicable);   // nonlinear constraints
  CHECK_FALSE(result.rows[1].not_applicable);
  CostMatrix m = result.matrix(CostMetric::Evaluations);
  CHECK(m.not_applicable[0][0]);
}

TEST_CASE("suite listings cover all five classes") {
  CHECK(!suite_problems("box").empty());
  CHECK(!suite_problems("linear").empty());
  CHECK(!suite_problems("nonlinear").empty());
  CHECK(!suite_problems("hidden").empty());
  CHECK(suite_problems("engineering").size() >= 11);
  CHECK_THROWS_AS(suite_problems("bogus"), DomainError);
}

TEST_CASE("profile emitters write svg and csv") {
  ProfileData p = perf_profile(worked_matrix());
  write_profile_svg(p, "prof_test.svg");
  write_profile_csv(p, "prof_test.csv");
  std::ifstream svg("prof_test.svg");
  std::string all((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(all.find("<svg") != std::string::npos);
  CHECK(all.find("<path") != std::string::npos);
  CHECK(all.find("s1") != std::string::npos);
  std::ifstream csv("prof_test.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "beta,s1,s2");
  std::remove("prof_test.svg");
  std::remove("prof_test.csv");
}
