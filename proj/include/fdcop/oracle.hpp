#pragma once

#include <functional>

#include "fdcop/model.hpp"

namespace fdcop {

struct GridSpec {
  int points_per_variable = 11;
  long long max_joint_points = 10'000'000;
};

struct GridResult {
  Assignment argmin;
  double cost = 0.0;
  long long evaluated = 0;
};

// Evenly spaced points including both endpoints; a single point means the
// domain midpoint.
std::vector<double> grid_points(const IntervalDomain& d, int count);

// Exhaustive evaluation over the joint uniform grid, lexicographic order,
// first minimum kept. Throws if the joint grid exceeds max_joint_points.
GridResult grid_search(const Problem& p, const GridSpec& spec = {});

// Exhaustive evaluation over explicit per-variable candidate lists.
GridResult exhaustive_search(const Problem& p, const std::vector<std::vector<double>>& candidates);

// Hessian of the total cost: H[i][i] = 2 * sum of incident a or c
// coefficients, H[i][j] = the b coefficient of edge (i, j). The total cost is
// the quadratic form x^T H x / 2.
std::vector<std::vector<double>> cost_hessian(const Problem& p);

enum class Definiteness { PositiveDefinite, Indefinite };

struct QuadMinResult {
  Definiteness definiteness = Definiteness::Indefinite;
  Assignment minimizer;  // meaningful only when positive definite
  double cost = 0.0;
  bool feasible = false;  // minimizer lies inside every domain
};

// Analytic unconstrained minimum of the quadratic objective. Costs have no
// linear part, so a positive definite Hessian puts the minimum at the
// solution of the homogeneous zero-gradient system. Singular or indefinite
// Hessians report Indefinite.
QuadMinResult quadratic_global_min(const Problem& p);

// Gaussian elimination with partial pivoting; throws on (near) singularity.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b);

// Attempted Cholesky factorization; false on any nonpositive pivot.
bool cholesky_spd(std::vector<std::vector<double>> a);

struct GradCheckResult {
  double max_rel_err = 0.0;
  int worst_index = -1;
};

// Central-difference check of an analytic gradient. The per-coordinate error
// is |fd - g| / max(1, |g|), so tiny gradients are judged absolutely.
GradCheckResult finite_diff_check(const std::function<double(const std::vector<double>&)>& f,
                                  const std::vector<double>& point,
                                  const std::vector<double>& analytic_grad, double h = 1e-5);

}  // namespace fdcop
