#include "fdcop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdcop {

std::vector<double> grid_points(const IntervalDomain& d, int count) {
  if (count < 1) throw FdcopError("grid needs at least one point per variable");
  if (count == 1) return {d.midpoint()};
  std::vector<double> pts(count);
  const double step = d.width() / (count - 1);
  for (int t = 0; t < count; ++t) pts[t] = d.lb + step * t;
  pts.back() = d.ub;
  return pts;
}

GridResult exhaustive_search(const Problem& p,
                             const std::vector<std::vector<double>>& candidates) {
  const int n = p.num_agents();
  if (static_cast<int>(candidates.size()) != n) {
    throw FdcopError("exhaustive_search: candidates must cover every agent");
  }
  for (const auto& c : candidates) {
    if (c.empty()) throw FdcopError("exhaustive_search: empty candidate list");
  }

  std::vector<int> idx(n, 0);
  Assignment a;
  for (int v = 0; v < n; ++v) a.set(v, candidates[v][0]);

  GridResult best;
  best.cost = std::numeric_limits<double>::infinity();
  while (true) {
    const double cost = global_cost(p, a);
    ++best.evaluated;
    if (cost < best.cost) {
      best.cost = cost;
      best.argmin = a;
    }
    // Odometer with the last variable fastest: lexicographic enumeration.
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < static_cast<int>(candidates[pos].size())) {
        a.set(pos, candidates[pos][idx[pos]]);
        break;
      }
      idx[pos] = 0;
      a.set(pos, candidates[pos][0]);
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

GridResult grid_search(const Problem& p, const GridSpec& spec) {
  if (spec.points_per_variable < 1) throw FdcopError("grid needs at least one point per variable");
  long long joint = 1;
  for (int v = 0; v < p.num_agents(); ++v) {
    joint *= spec.points_per_variable;
    if (joint > spec.max_joint_points) {
      throw FdcopError("joint grid exceeds cap of " + std::to_string(spec.max_joint_points) +
                       " points");
    }
  }
  std::vector<std::vector<double>> candidates;
  candidates.reserve(p.num_agents());
  for (int v = 0; v < p.num_agents(); ++v) {
    candidates.push_back(grid_points(p.domain(v), spec.points_per_variable));
  }
  return exhaustive_search(p, candidates);
}

std::vector<std::vector<double>> cost_hessian(const Problem& p) {
  const int n = p.num_agents();
  std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
  for (const Edge& e : p.edges()) {
    h[e.x_var][e.x_var] += 2.0 * e.cost.a;
    h[e.y_var][e.y_var] += 2.0 * e.cost.c;
    h[e.x_var][e.y_var] += e.cost.b;
    h[e.y_var][e.x_var] += e.cost.b;
  }
  return h;
}

std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  if (static_cast<int>(a.size()) != n) throw FdcopError("solve_linear: shape mismatch");
  double scale = 0.0;
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) throw FdcopError("solve_linear: shape mismatch");
    for (double v : row) scale = std::max(scale, std::fabs(v));
  }
  const double tiny = 1e-12 * std::max(1.0, scale);

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (std::fabs(a[pivot][col]) <= tiny) throw FdcopError("solve_linear: singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c2 = col; c2 < n; ++c2) a[row][c2] -= f * a[col][c2];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double s = b[row];
    for (int c2 = row + 1; c2 < n; ++c2) s -= a[row][c2] * x[c2];
    x[row] = s / a[row][row];
  }
  return x;
}

bool cholesky_spd(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a[i][i]));
  const double tiny = 1e-12 * std::max(1.0, scale);
  for (int j = 0; j < n; ++j) {
    double d = a[j][j];
    for (int r = 0; r < j; ++r) d -= a[j][r] * a[j][r];
    if (d <= tiny) return false;
    const double root = std::sqrt(d);
    a[j][j] = root;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (int r = 0; r < j; ++r) s -= a[i][r] * a[j][r];
      a[i][j] = s / root;
    }
  }
  return true;
}

QuadMinResult quadratic_global_min(const Problem& p) {
  QuadMinResult out;
  const auto h = cost_hessian(p);
  if (!cholesky_spd(h)) {
    out.definiteness = Definiteness::Indefinite;
    return out;
  }
  out.definiteness = Definiteness::PositiveDefinite;
  const std::vector<double> x = solve_linear(h, std::vector<double>(p.num_agents(), 0.0));
  out.feasible = true;
  for (int v = 0; v < p.num_agents(); ++v) {
    out.minimizer.set(v, x[v]);
    if (!p.domain(v).contains(x[v])) out.feasible = false;
  }
  out.cost = global_cost(p, out.minimizer);
  return out;
}

GradCheckResult finite_diff_check(const std::function<double(const std::vector<double>&)>& f,
                                  const std::vector<double>& point,
                                  const std::vector<double>& analytic_grad, double h) {
  if (point.size() != analytic_grad.size()) {
    throw FdcopError("finite_diff_check: gradient size mismatch");
  }
  GradCheckResult out;
  std::vector<double> probe = point;
  for (std::size_t i = 0; i < point.size(); ++i) {
    probe[i] = point[i] + h;
    const double fp = f(probe);
    probe[i] = point[i] - h;
    const double fm = f(probe);
    probe[i] = point[i];
    const double fd = (fp - fm) / (2.0 * h);
    const double err = std::fabs(fd - analytic_grad[i]) / std::max(1.0, std::fabs(analytic_grad[i]));
    if (err > out.max_rel_err) {
      out.max_rel_err = err;
      out.worst_index = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace fdcop
