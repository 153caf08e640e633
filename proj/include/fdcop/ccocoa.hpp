#pragma once

#include <cstdint>

#include "fdcop/engine.hpp"
#include "fdcop/rng.hpp"

namespace fdcop {

struct SolverConfig {
  int k = 10;                   // discretization points per variable
  int beta0 = 1;                // initial uniqueness bound
  double alpha = 0.01;          // gradient step size
  int max_refine_iters = 100;   // refinement iteration cap
  double refine_tol = 1e-8;     // stop when the largest update falls below this
  double tie_tol = 1e-9;        // relative tolerance for cost-total ties
  int max_sum_iters = 100;      // rounds for the max-sum baseline
  bool maxsum_adjust = true;    // enable its per-round gradient adjustment
  std::uint64_t seed = 1;

  void validate() const;
};

// Test and tracing hooks for otherwise randomized choices.
struct RunOptions {
  std::vector<std::vector<double>> forced_points;  // per-agent discretizations
  std::vector<int> forced_order;                   // activation order prefix
  TraceFn trace;
};

// k distinct values drawn uniformly from the domain, in draw order.
std::vector<double> discretize(const IntervalDomain& d, int k, Rng& rng);

// Cost map computed by `responder` for `inquirer`: for each of the inquirer's
// points, the cheapest responder candidate on their shared edge and its cost.
// Ties go to the earliest candidate.
CostMap inquiry_reply(const Problem& p, int responder, int inquirer,
                      const std::vector<double>& inquirer_points,
                      const std::vector<double>& responder_candidates);

struct Aggregated {
  std::vector<double> totals;  // per inquirer point, summed over cost maps
  double delta = 0.0;          // minimum total
  std::vector<int> rho;        // indices within tie tolerance of delta
};
Aggregated aggregate(const std::vector<CostMap>& maps, double tie_tol);

enum class Decision { Assign, Hold };

// Assign when the minimum is unique enough (|rho| <= beta) or no neighbor can
// still move (idle_active_neighbors == 0); picks uniformly within rho.
Decision unique_first(const Aggregated& agg, int beta, int idle_active_neighbors, Rng& rng,
                      int* chosen_index);

struct RefineResult {
  double value = 0.0;  // refined value of the agent's own variable
  int iters = 0;
};

// Projected gradient descent on the agent's local objective over its own
// variable and its neighbors' variables, all updated simultaneously each
// iteration and clamped to their domains. Variables listed in `frozen` stay
// constant. Neighbor results are discarded; only the agent's value returns.
// If `objective_log` is given it receives the objective value at start and
// after every iteration.
RefineResult local_refine(const Problem& p, int var, const Assignment& start,
                          const std::vector<int>& frozen, const SolverConfig& cfg,
                          std::vector<double>* objective_log = nullptr);

// Shared sequential protocol: semi-greedy activation with cost-map inquiries,
// unique-first commitment and hold/beta deadlock handling. With refine=false
// agents commit their best discretized point as is.
SolveResult run_cocoa_protocol(const Problem& p, const SolverConfig& cfg, const RunOptions& opts,
                               bool refine);

SolveResult ccocoa_solve(const Problem& p, const SolverConfig& cfg, const RunOptions& opts = {});

}  // namespace fdcop
