#include "fdcop/bench.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <ostream>
#include <set>
#include <utility>

#include "fdcop/baselines.hpp"

namespace fdcop {
namespace {

QuadraticCost random_cost(Rng& rng, const GeneratorConfig& gc) {
  QuadraticCost c;
  c.a = rng.uniform(gc.coeff_lo, gc.coeff_hi);
  c.b = rng.uniform(gc.coeff_lo, gc.coeff_hi);
  c.c = rng.uniform(gc.coeff_lo, gc.coeff_hi);
  return c;
}

Problem assemble(int n, const std::vector<std::pair<int, int>>& pairs, Rng& rng,
                 const GeneratorConfig& gc) {
  std::vector<IntervalDomain> domains(n, IntervalDomain(gc.domain_lo, gc.domain_hi));
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    Edge e;
    e.x_var = u;
    e.y_var = v;
    e.cost = random_cost(rng, gc);
    edges.push_back(e);
  }
  return Problem(std::move(domains), std::move(edges));
}

std::vector<int> component_labels(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : pairs) parent[find(u)] = find(v);
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = find(i);
  return label;
}

}  // namespace

Problem gen_erdos_renyi(int n, double p, Rng& rng, const GeneratorConfig& gc) {
  if (n < 2) throw FdcopError("generator needs at least 2 agents");
  if (p < 0.0 || p > 1.0) throw FdcopError("edge probability must lie in [0, 1]");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) pairs.emplace_back(u, v);
    }
  }
  // Connect leftover components with random cross edges.
  while (true) {
    const std::vector<int> label = component_labels(n, pairs);
    std::set<int> comps(label.begin(), label.end());
    if (comps.size() == 1) break;
    int u, v;
    do {
      u = static_cast<int>(rng.uniform_index(n));
      v = static_cast<int>(rng.uniform_index(n));
    } while (label[u] == label[v]);
    pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  return assemble(n, pairs, rng, gc);
}

Problem gen_scale_free(int n, int attach, Rng& rng, const GeneratorConfig& gc) {
  if (n < 2) throw FdcopError("generator needs at least 2 agents");
  if (attach < 1 || attach >= n) throw FdcopError("attach must lie in [1, n)");
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> degree(n, 0);
  for (int u = 0; u < attach; ++u) {
    for (int v = u + 1; v < attach; ++v) {
      pairs.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  }
  for (int node = attach; node < n; ++node) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < attach) {
      long long total = 0;
      for (int v = 0; v < node; ++v) {
        if (!targets.count(v)) total += degree[v];
      }
      int pick = -1;
      if (total == 0) {
        // Degenerate early graph (single seed node): fall back to uniform.
        do {
          pick = static_cast<int>(rng.uniform_index(node));
        } while (targets.count(pick));
      } else {
        long long ticket = static_cast<long long>(rng.uniform_index(total));
        for (int v = 0; v < node; ++v) {
          if (targets.count(v)) continue;
          ticket -= degree[v];
          if (ticket < 0) {
            pick = v;
            break;
          }
        }
      }
      targets.insert(pick);
    }
    for (int t : targets) {
      pairs.emplace_back(t, node);
      ++degree[t];
      ++degree[node];
    }
  }
  return assemble(n, pairs, rng, gc);
}

Problem gen_random_tree(int n, Rng& rng, const GeneratorConfig& gc) {
  if (n < 2) throw FdcopError("generator needs at least 2 agents");
  std::vector<std::pair<int, int>> pairs;
  if (n == 2) {
    pairs.emplace_back(0, 1);
    return assemble(n, pairs, rng, gc);
  }
  // Prufer decode: degree = multiplicity in the sequence + 1.
  std::vector<int> prufer(n - 2);
  for (int& s : prufer) s = static_cast<int>(rng.uniform_index(n));
  std::vector<int> degree(n, 1);
  for (int s : prufer) ++degree[s];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  for (int s : prufer) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    pairs.emplace_back(std::min(leaf, s), std::max(leaf, s));
    if (--degree[s] == 1) leaves.insert(s);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  pairs.emplace_back(std::min(a, b), std::max(a, b));
  return assemble(n, pairs, rng, gc);
}

const char* to_string(Algo a) {
  switch (a) {
    case Algo::CCoCoA: return "ccocoa";
    case Algo::CoCoA: return "cocoa";
    case Algo::Hcms: return "hcms";
  }
  return "?";
}

Algo algo_from_string(const std::string& name) {
  if (name == "ccocoa") return Algo::CCoCoA;
  if (name == "cocoa") return Algo::CoCoA;
  if (name == "hcms") return Algo::Hcms;
  throw FdcopError("unknown algorithm '" + name + "'");
}

const char* to_string(Topology t) {
  switch (t) {
    case Topology::Sparse: return "sparse";
    case Topology::Dense: return "dense";
    case Topology::ScaleFree: return "scalefree";
    case Topology::Tree: return "tree";
  }
  return "?";
}

Topology topology_from_string(const std::string& name) {
  if (name == "sparse") return Topology::Sparse;
  if (name == "dense") return Topology::Dense;
  if (name == "scalefree") return Topology::ScaleFree;
  if (name == "tree") return Topology::Tree;
  throw FdcopError("unknown topology '" + name + "'");
}

Problem generate_topology(Topology t, int n, double er_p, int attach, Rng& rng,
                          const GeneratorConfig& gc) {
  switch (t) {
    case Topology::Sparse:
    case Topology::Dense: return gen_erdos_renyi(n, er_p, rng, gc);
    case Topology::ScaleFree: return gen_scale_free(n, attach, rng, gc);
    case Topology::Tree: return gen_random_tree(n, rng, gc);
  }
  throw FdcopError("unknown topology");
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.instances < 1) throw FdcopError("experiment needs at least one instance");
  if (spec.algos.empty()) throw FdcopError("experiment needs at least one algorithm");
  spec.solver.validate();

  std::vector<ResultRow> rows;
  struct Tally {
    double cost = 0, messages = 0, holds = 0, time = 0;
    int ok = 0;
  };
  std::vector<Tally> tally(spec.algos.size());

  for (int inst = 0; inst < spec.instances; ++inst) {
    const std::uint64_t seed = spec.solver.seed + static_cast<std::uint64_t>(inst);
    Rng gen_rng(seed);
    const Problem problem =
        generate_topology(spec.topology, spec.n, spec.er_p, spec.attach, gen_rng, spec.generator);

    for (std::size_t ai = 0; ai < spec.algos.size(); ++ai) {
      SolverConfig cfg = spec.solver;
      cfg.seed = seed;
      ResultRow row;
      row.topology = to_string(spec.topology);
      row.n = spec.n;
      row.k = cfg.k;
      row.algo = to_string(spec.algos[ai]);
      row.seed = seed;
      try {
        SolveResult res;
        switch (spec.algos[ai]) {
          case Algo::CCoCoA: res = ccocoa_solve(problem, cfg); break;
          case Algo::CoCoA: res = cocoa_solve(problem, cfg); break;
          case Algo::Hcms: res = hcms_solve(problem, cfg); break;
        }
        row.cost = res.cost;
        row.messages = static_cast<double>(res.metrics.counts.total());
        row.hold_events = static_cast<double>(res.metrics.hold_events);
        row.time_s = res.metrics.elapsed_s;
        row.status = "ok";
        tally[ai].cost += row.cost;
        tally[ai].messages += row.messages;
        tally[ai].holds += row.hold_events;
        tally[ai].time += row.time_s;
        ++tally[ai].ok;
      } catch (const FdcopError&) {
        row.status = "error";
      }
      rows.push_back(std::move(row));
    }
  }

  for (std::size_t ai = 0; ai < spec.algos.size(); ++ai) {
    ResultRow row;
    row.topology = to_string(spec.topology);
    row.n = spec.n;
    row.k = spec.solver.k;
    row.algo = to_string(spec.algos[ai]);
    row.status = "aggregate";
    if (tally[ai].ok > 0) {
      row.cost = tally[ai].cost / tally[ai].ok;
      row.messages = tally[ai].messages / tally[ai].ok;
      row.hold_events = tally[ai].holds / tally[ai].ok;
      row.time_s = tally[ai].time / tally[ai].ok;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* const kCsvHeader = "topology,n,k,algo,seed,cost,messages,hold_events,time_s,status";

namespace {

void put_double(std::ostream& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
  (void)ec;
}

}  // namespace

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.topology << ',' << r.n << ',' << r.k << ',' << r.algo << ',';
    if (r.status != "aggregate") out << r.seed;
    out << ',';
    if (r.status != "error") {
      put_double(out, r.cost);
      out << ',';
      put_double(out, r.messages);
      out << ',';
      put_double(out, r.hold_events);
    } else {
      out << ",,";
    }
    out << ',';
    put_double(out, r.time_s);
    out << ',' << r.status << '\n';
  }
}

}  // namespace fdcop
