#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdcop {

struct FdcopError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed interval [lb, ub] with lb < ub.
struct IntervalDomain {
  double lb = 0.0;
  double ub = 1.0;

  IntervalDomain() = default;
  IntervalDomain(double lo, double hi);

  bool contains(double x) const { return lb <= x && x <= ub; }
  double clamp(double x) const { return x < lb ? lb : (x > ub ? ub : x); }
  double width() const { return ub - lb; }
  double midpoint() const { return lb + 0.5 * (ub - lb); }
};

// Binary cost f(x, y) = a*x^2 + b*x*y + c*y^2.
struct QuadraticCost {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double value(double x, double y) const { return a * x * x + b * x * y + c * y * y; }

  // (df/dx, df/dy)
  std::pair<double, double> gradient(double x, double y) const {
    return {2.0 * a * x + b * y, b * x + 2.0 * c * y};
  }
};

// Constraint between two variables; x_var plays the x role in the cost.
struct Edge {
  int x_var = -1;
  int y_var = -1;
  QuadraticCost cost;

  double value_at(double x_value, double y_value) const { return cost.value(x_value, y_value); }
};

// Partial assignment of variables to values.
class Assignment {
 public:
  bool has(int var) const { return values_.count(var) != 0; }
  double at(int var) const;
  void set(int var, double value) { values_[var] = value; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<int, double> values_;
};

// One variable per agent, indices 0..n-1. The constraint graph must be
// connected, free of self loops and duplicate pairs, with at least one edge.
class Problem {
 public:
  Problem(std::vector<IntervalDomain> domains, std::vector<Edge> edges);

  int num_agents() const { return static_cast<int>(domains_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const IntervalDomain& domain(int var) const { return domains_.at(var); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int var) const { return neighbors_.at(var); }
  const std::vector<int>& incident_edges(int var) const { return incident_.at(var); }

  bool are_neighbors(int u, int v) const { return edge_index_.count(key(u, v)) != 0; }
  const Edge& edge_between(int u, int v) const;

  bool complete(const Assignment& a) const;

 private:
  static std::pair<int, int> key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

  std::vector<IntervalDomain> domains_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> incident_;
  std::map<std::pair<int, int>, int> edge_index_;
};

// Sum of all edge costs. Requires a value for every variable that appears in
// an edge; throws FdcopError naming the first missing variable otherwise.
double global_cost(const Problem& p, const Assignment& a);

struct LocalObjective {
  double value = 0.0;
  std::map<int, double> gradient;  // over {var} and its neighbors
};

// Objective seen by one agent: the sum of its incident edge costs, with
// partial derivatives for the agent's variable and each neighbor variable.
LocalObjective local_objective(const Problem& p, int var, const Assignment& a);

}  // namespace fdcop
