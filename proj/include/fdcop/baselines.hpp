#pragma once

#include <array>

#include "fdcop/ccocoa.hpp"

namespace fdcop {

// Discrete CoCoA: the same unique-first protocol, but agents commit their
// best discretized point without gradient refinement.
SolveResult cocoa_solve(const Problem& p, const SolverConfig& cfg, const RunOptions& opts = {});

// Synchronous min-sum over the factor graph induced by the discretized
// problem: one variable node per agent (k states, its current points), one
// function node per edge. Messages are normalized each round so their minimum
// entry is zero.
class MaxSumState {
 public:
  MaxSumState(const Problem& p, std::vector<std::vector<double>> points);

  // One synchronous round: all variable-to-function messages, then all
  // function-to-variable messages. Counts 2|E| of each kind.
  void step(MessageCounts& counts);

  // Index of each agent's best point under current beliefs (first on ties).
  std::vector<int> select() const;

  // One gradient step of every point against the given assignment, clamped
  // to the domain. Function tables follow the moved points automatically.
  void adjust(const std::vector<double>& against, double alpha);

  const std::vector<double>& points(int agent) const { return points_[agent]; }
  const std::vector<double>& q_message(int edge, int endpoint) const;
  const std::vector<double>& r_message(int edge, int endpoint) const;

 private:
  const Problem* p_;
  int k_;
  std::vector<std::vector<double>> points_;
  // Indexed [edge][endpoint 0=x_var, 1=y_var][point index].
  std::vector<std::array<std::vector<double>, 2>> q_, r_;
};

// Hybrid continuous max-sum: max_sum_iters rounds, each followed (when
// cfg.maxsum_adjust is set) by a gradient adjustment of the discretization
// against the round's best-response assignment, with step size cfg.alpha.
SolveResult hcms_solve(const Problem& p, const SolverConfig& cfg, const RunOptions& opts = {});

}  // namespace fdcop
