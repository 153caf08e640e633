#pragma once

#include <vector>

#include "fdcop/model.hpp"

namespace fixtures {

// Four agents on [-20, 20] with the quadratic costs used across the tests:
//   f(x0,x1) = x0^2 - 2 x0 x1 + 2 x1^2
//   f(x0,x2) = x0 x2 + 3 x2^2
//   f(x0,x3) = x0 x3 + x3^2
//   f(x1,x2) = x1^2 - x1 x2 + 2 x2^2
inline fdcop::Problem diamond() {
  std::vector<fdcop::IntervalDomain> domains(4, fdcop::IntervalDomain(-20.0, 20.0));
  std::vector<fdcop::Edge> edges{
      {0, 1, {1.0, -2.0, 2.0}},
      {0, 2, {0.0, 1.0, 3.0}},
      {0, 3, {0.0, 1.0, 1.0}},
      {1, 2, {1.0, -1.0, 2.0}},
  };
  return fdcop::Problem(std::move(domains), std::move(edges));
}

// The fixed discretization used by the diamond walkthrough tests.
inline std::vector<std::vector<double>> diamond_points() {
  return {{1.0, 2.0}, {3.0, 4.0}, {7.0, 8.0}, {5.0, 9.0}};
}

inline fdcop::Problem single_edge(fdcop::QuadraticCost c, double lb = -10.0, double ub = 10.0) {
  std::vector<fdcop::IntervalDomain> domains(2, fdcop::IntervalDomain(lb, ub));
  std::vector<fdcop::Edge> edges{{0, 1, c}};
  return fdcop::Problem(std::move(domains), std::move(edges));
}

// Path 0-1-2 where every edge costs x^2 + y^2; all cost totals tie for
// symmetric points, which exercises the hold/beta machinery.
inline fdcop::Problem tie_path() {
  std::vector<fdcop::IntervalDomain> domains(3, fdcop::IntervalDomain(-10.0, 10.0));
  std::vector<fdcop::Edge> edges{
      {0, 1, {1.0, 0.0, 1.0}},
      {1, 2, {1.0, 0.0, 1.0}},
  };
  return fdcop::Problem(std::move(domains), std::move(edges));
}

}  // namespace fixtures
