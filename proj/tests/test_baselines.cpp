#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fdcop/baselines.hpp"
#include "fdcop/bench.hpp"
#include "fdcop/oracle.hpp"
#include "fixtures.hpp"

using namespace fdcop;

TEST_SUITE_BEGIN("baselines");

TEST_CASE("cocoa commits raw points on the walkthrough instance") {
  Problem p = fixtures::diamond();
  SolverConfig cfg;
  cfg.k = 2;
  RunOptions opts;
  opts.forced_points = fixtures::diamond_points();
  opts.forced_order = {0, 1, 2, 3};

  const SolveResult res = cocoa_solve(p, cfg, opts);
  CHECK(res.assignment.at(0) == 1.0);
  CHECK(res.assignment.at(1) == 3.0);
  CHECK(res.assignment.at(2) == 7.0);
  CHECK(res.assignment.at(3) == 5.0);
  CHECK(res.cost == doctest::Approx(283.0).epsilon(1e-12));

  CHECK(res.metrics.counts.update_state == 16);
  CHECK(res.metrics.counts.inquiry == 8);
  CHECK(res.metrics.counts.cost_map == 8);
  CHECK(res.metrics.counts.set_value == 8);
  CHECK(res.metrics.hold_events == 0);
}

TEST_CASE("cocoa values always come from the drawn points") {
  Rng gen(41);
  Problem p = gen_erdos_renyi(9, 0.35, gen);
  SolverConfig cfg;
  cfg.k = 4;
  cfg.seed = 13;
  std::vector<std::vector<double>> drawn;
  {
    Rng probe(cfg.seed);
    for (int i = 0; i < p.num_agents(); ++i) drawn.push_back(discretize(p.domain(i), cfg.k, probe));
  }
  RunOptions opts;
  opts.forced_points = drawn;
  const SolveResult res = cocoa_solve(p, cfg, opts);
  for (int i = 0; i < p.num_agents(); ++i) {
    const auto& pts = drawn[i];
    CHECK(std::find(pts.begin(), pts.end(), res.assignment.at(i)) != pts.end());
  }
}

TEST_CASE("refinement improves on the discrete baseline in the mean") {
  Rng gen(3);
  SolverConfig cfg;
  cfg.k = 3;
  double sum_cc = 0.0, sum_co = 0.0;
  for (int inst = 0; inst < 8; ++inst) {
    Problem p = gen_erdos_renyi(8, 0.3, gen);
    cfg.seed = 100 + inst;
    sum_cc += ccocoa_solve(p, cfg).cost;
    sum_co += cocoa_solve(p, cfg).cost;
  }
  CHECK(sum_cc < sum_co);
}

TEST_CASE("hcms message accounting is exactly 4|E| per round") {
  Rng gen(8);
  Problem p = gen_erdos_renyi(8, 0.3, gen);
  SolverConfig cfg;
  cfg.k = 3;
  cfg.seed = 4;
  cfg.max_sum_iters = 17;
  const SolveResult res = hcms_solve(p, cfg);
  const long long e = p.num_edges();
  CHECK(res.metrics.counts.maxsum_q == 2 * e * 17);
  CHECK(res.metrics.counts.maxsum_r == 2 * e * 17);
  CHECK(res.metrics.counts.update_state == 0);
  CHECK(res.metrics.counts.inquiry == 0);
  CHECK(res.metrics.counts.cost_map == 0);
  CHECK(res.metrics.counts.set_value == 0);
  CHECK(res.metrics.counts.total() == 4 * e * 17);
  CHECK(p.complete(res.assignment));

  cfg.max_sum_iters = 0;
  const SolveResult none = hcms_solve(p, cfg);
  CHECK(none.metrics.counts.total() == 0);
  CHECK(p.complete(none.assignment));
}

TEST_CASE("maxsum messages are normalized to zero minimum") {
  Problem p = fixtures::diamond();
  MaxSumState ms(p, fixtures::diamond_points());
  MessageCounts counts;
  ms.step(counts);
  ms.step(counts);
  for (int e = 0; e < p.num_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      const auto& q = ms.q_message(e, side);
      const auto& r = ms.r_message(e, side);
      REQUIRE(q.size() == 2);
      REQUIRE(r.size() == 2);
      CHECK(*std::min_element(q.begin(), q.end()) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(*std::min_element(r.begin(), r.end()) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  CHECK(counts.maxsum_q == 2 * 4 * 2);
  CHECK(counts.maxsum_r == 2 * 4 * 2);
}

TEST_CASE("plain min-sum is exact on a tree grid") {
  std::vector<IntervalDomain> domains(4, IntervalDomain(-10.0, 10.0));
  std::vector<Edge> edges{
      {0, 1, {1.0, 0.7, 1.2}},
      {1, 2, {0.9, -0.8, 1.1}},
      {2, 3, {1.3, 0.5, 0.8}},
  };
  Problem p(std::move(domains), std::move(edges));

  const std::vector<double> grid{-10.0, -3.0, 4.0};
  SolverConfig cfg;
  cfg.k = 3;
  cfg.max_sum_iters = 30;
  cfg.maxsum_adjust = false;
  RunOptions opts;
  opts.forced_points = {grid, grid, grid, grid};
  const SolveResult res = hcms_solve(p, cfg, opts);

  const GridResult truth = exhaustive_search(p, {grid, grid, grid, grid});
  CHECK(res.cost == doctest::Approx(truth.cost).epsilon(1e-12));
  CHECK(truth.evaluated == 81);
}

TEST_CASE("min-sum finds the matching pair on a single edge") {
  Problem p = fixtures::single_edge({1.0, -2.0, 1.0});  // (x - y)^2
  SolverConfig cfg;
  cfg.k = 2;
  cfg.max_sum_iters = 5;
  cfg.maxsum_adjust = false;
  RunOptions opts;
  opts.forced_points = {{-1.0, 1.0}, {-1.0, 1.0}};
  const SolveResult res = hcms_solve(p, cfg, opts);
  CHECK(res.cost == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.assignment.at(0) == res.assignment.at(1));
}

TEST_CASE("gradient adjustment beats the frozen grid") {
  Problem p = fixtures::single_edge({1.0, 1.0, 1.0});
  SolverConfig cfg;
  cfg.k = 2;
  cfg.max_sum_iters = 100;
  RunOptions opts;
  opts.forced_points = {{2.0, 3.0}, {2.0, 3.0}};

  cfg.maxsum_adjust = false;
  const SolveResult frozen = hcms_solve(p, cfg, opts);
  CHECK(frozen.cost == doctest::Approx(12.0).epsilon(1e-12));

  cfg.maxsum_adjust = true;
  const SolveResult adjusted = hcms_solve(p, cfg, opts);
  CHECK(adjusted.cost < frozen.cost);
  CHECK(adjusted.cost < 1.0);
  for (int i = 0; i < 2; ++i) CHECK(p.domain(i).contains(adjusted.assignment.at(i)));
}

TEST_CASE("hcms is deterministic per seed") {
  Rng gen(77);
  Problem p = gen_erdos_renyi(10, 0.3, gen);
  SolverConfig cfg;
  cfg.k = 5;
  cfg.seed = 21;
  cfg.max_sum_iters = 40;
  const SolveResult a = hcms_solve(p, cfg);
  const SolveResult b = hcms_solve(p, cfg);
  CHECK(a.assignment == b.assignment);
  CHECK(a.cost == b.cost);
  cfg.seed = 22;
  const SolveResult c = hcms_solve(p, cfg);
  CHECK(a.assignment != c.assignment);
}

TEST_SUITE_END();
