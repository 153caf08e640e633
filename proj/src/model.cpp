#include "fdcop/model.hpp"

#include <algorithm>
#include <queue>

namespace fdcop {

IntervalDomain::IntervalDomain(double lo, double hi) : lb(lo), ub(hi) {
  if (!(lb < ub)) {
    throw FdcopError("domain requires lb < ub, got [" + std::to_string(lb) + ", " +
                     std::to_string(ub) + "]");
  }
}

double Assignment::at(int var) const {
  auto it = values_.find(var);
  if (it == values_.end()) throw FdcopError("no value assigned to x" + std::to_string(var));
  return it->second;
}

Problem::Problem(std::vector<IntervalDomain> domains, std::vector<Edge> edges)
    : domains_(std::move(domains)), edges_(std::move(edges)) {
  const int n = num_agents();
  if (n == 0) throw FdcopError("problem has no agents");
  neighbors_.resize(n);
  incident_.resize(n);
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.x_var < 0 || ed.x_var >= n || ed.y_var < 0 || ed.y_var >= n) {
      throw FdcopError("edge endpoint out of range");
    }
    if (ed.x_var == ed.y_var) {
      throw FdcopError("self edge on x" + std::to_string(ed.x_var));
    }
    auto [ins, fresh] = edge_index_.emplace(key(ed.x_var, ed.y_var), e);
    if (!fresh) {
      throw FdcopError("duplicate edge between x" + std::to_string(ed.x_var) + " and x" +
                       std::to_string(ed.y_var));
    }
    neighbors_[ed.x_var].push_back(ed.y_var);
    neighbors_[ed.y_var].push_back(ed.x_var);
    incident_[ed.x_var].push_back(e);
    incident_[ed.y_var].push_back(e);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());

  // Connectivity; a lone agent with no edges is rejected here too.
  if (num_edges() == 0) throw FdcopError("constraint graph is disconnected (no edges)");
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : neighbors_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  if (reached != n) throw FdcopError("constraint graph is disconnected");
}

const Edge& Problem::edge_between(int u, int v) const {
  auto it = edge_index_.find(key(u, v));
  if (it == edge_index_.end()) {
    throw FdcopError("no edge between x" + std::to_string(u) + " and x" + std::to_string(v));
  }
  return edges_[it->second];
}

bool Problem::complete(const Assignment& a) const {
  for (int i = 0; i < num_agents(); ++i) {
    if (!a.has(i)) return false;
  }
  return true;
}

double global_cost(const Problem& p, const Assignment& a) {
  double total = 0.0;
  for (const Edge& e : p.edges()) {
    total += e.value_at(a.at(e.x_var), a.at(e.y_var));
  }
  return total;
}

LocalObjective local_objective(const Problem& p, int var, const Assignment& a) {
  LocalObjective out;
  out.gradient[var] = 0.0;
  for (int ei : p.incident_edges(var)) {
    const Edge& e = p.edges()[ei];
    const double xv = a.at(e.x_var);
    const double yv = a.at(e.y_var);
    out.value += e.cost.value(xv, yv);
    const auto [gx, gy] = e.cost.gradient(xv, yv);
    out.gradient[e.x_var] += gx;
    out.gradient[e.y_var] += gy;
  }
  return out;
}

}  // namespace fdcop
