#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdcop/baselines.hpp"
#include "fdcop/bench.hpp"
#include "fdcop/ccocoa.hpp"
#include "fdcop/oracle.hpp"
#include "fdcop/problem_io.hpp"

using namespace fdcop;

namespace {

void print_message(const Message& m) {
  std::cout << to_string(m.kind) << " a" << m.sender << " -> a" << m.receiver;
  switch (m.kind) {
    case MessageKind::UpdateState:
      std::cout << " state=" << to_string(m.state);
      break;
    case MessageKind::Inquiry: {
      std::cout << " cpa={";
      bool first = true;
      for (const auto& [var, val] : m.cpa) {
        std::cout << (first ? "" : ", ") << "x" << var << "=" << val;
        first = false;
      }
      std::cout << "}";
      break;
    }
    case MessageKind::CostMap: {
      std::cout << " entries=[";
      for (std::size_t i = 0; i < m.cost_map.size(); ++i) {
        std::cout << (i ? ", " : "") << "(" << m.cost_map[i].value << ", " << m.cost_map[i].cost
                  << ")";
      }
      std::cout << "]";
      break;
    }
    case MessageKind::SetValue:
      std::cout << " x" << m.variable << "=" << m.value;
      break;
  }
  std::cout << "\n";
}

int run_solve(const std::string& problem_path, const std::string& algo_name,
              const SolverConfig& cfg, bool trace) {
  const Problem p = parse_problem_file(problem_path);
  const Algo algo = algo_from_string(algo_name);

  RunOptions opts;
  if (trace) opts.trace = print_message;

  SolveResult res;
  switch (algo) {
    case Algo::CCoCoA: res = ccocoa_solve(p, cfg, opts); break;
    case Algo::CoCoA: res = cocoa_solve(p, cfg, opts); break;
    case Algo::Hcms: res = hcms_solve(p, cfg, opts); break;
  }

  for (const auto& [var, val] : res.assignment) std::cout << "x" << var << " = " << val << "\n";
  std::cout << "cost " << res.cost << "\n";
  const MessageCounts& c = res.metrics.counts;
  std::cout << "messages " << c.total();
  if (algo == Algo::Hcms) {
    std::cout << " (q " << c.maxsum_q << ", r " << c.maxsum_r << ")\n";
  } else {
    std::cout << " (update_state " << c.update_state << ", inquiry " << c.inquiry << ", cost_map "
              << c.cost_map << ", set_value " << c.set_value << ")\n";
    std::cout << "hold_events " << res.metrics.hold_events << "\n";
    std::cout << "beta_final " << res.metrics.beta_final << "\n";
  }
  std::cout << "time_s " << res.metrics.elapsed_s << "\n";
  return 0;
}

int run_bench(const ExperimentSpec& spec, const std::string& out_path) {
  const std::vector<ResultRow> rows = run_experiment(spec);

  for (const Algo algo : spec.algos) {
    const std::string name = to_string(algo);
    int errors = 0;
    for (const ResultRow& r : rows) {
      if (r.algo == name && r.status == "error") ++errors;
    }
    if (errors > 0) {
      std::cerr << name << ": excluded " << errors << "/" << spec.instances
                << " failed runs from the aggregate\n";
    }
  }

  if (out_path.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw FdcopError("cannot open " + out_path + " for writing");
    write_csv(rows, out);
    std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
  }
  return 0;
}

int run_gen(Topology topology, int agents, double p, int attach, std::uint64_t seed,
            const std::string& out_path) {
  Rng rng(seed);
  const Problem problem = generate_topology(topology, agents, p, attach, rng);
  if (out_path.empty()) {
    serialize_problem(problem, std::cout);
  } else {
    write_problem_file(problem, out_path);
    std::cerr << "wrote " << problem.num_agents() << " agents, " << problem.num_edges()
              << " edges to " << out_path << "\n";
  }
  return 0;
}

int run_verify_grid(const std::string& problem_path, int points) {
  const Problem p = parse_problem_file(problem_path);
  GridSpec spec;
  spec.points_per_variable = points;
  const GridResult res = grid_search(p, spec);
  std::cout << "grid " << points << " points/var, " << res.evaluated << " joint points\n";
  for (const auto& [var, val] : res.argmin) std::cout << "x" << var << " = " << val << "\n";
  std::cout << "cost " << res.cost << "\n";
  return 0;
}

int run_verify_quadmin(const std::string& problem_path) {
  const Problem p = parse_problem_file(problem_path);
  const QuadMinResult res = quadratic_global_min(p);
  if (res.definiteness != Definiteness::PositiveDefinite) {
    std::cout << "hessian indefinite or singular; no interior analytic minimum\n";
    return 0;
  }
  std::cout << "hessian positive definite\n";
  for (const auto& [var, val] : res.minimizer) std::cout << "x" << var << " = " << val << "\n";
  std::cout << "cost " << res.cost << "\n";
  std::cout << (res.feasible ? "minimizer inside all domains\n"
                             : "minimizer outside some domain\n");
  return 0;
}

int run_verify_gradcheck(const std::string& problem_path, int trials, std::uint64_t seed) {
  const Problem p = parse_problem_file(problem_path);
  Rng rng(seed);
  double worst = 0.0;
  int worst_edge = -1;
  for (int t = 0; t < trials; ++t) {
    for (int e = 0; e < p.num_edges(); ++e) {
      const Edge& ed = p.edges()[e];
      const std::vector<double> at{rng.uniform(p.domain(ed.x_var).lb, p.domain(ed.x_var).ub),
                                   rng.uniform(p.domain(ed.y_var).lb, p.domain(ed.y_var).ub)};
      const auto [gx, gy] = ed.cost.gradient(at[0], at[1]);
      const GradCheckResult res = finite_diff_check(
          [&](const std::vector<double>& v) { return ed.cost.value(v[0], v[1]); }, at, {gx, gy});
      if (res.max_rel_err > worst) {
        worst = res.max_rel_err;
        worst_edge = e;
      }
    }
  }
  std::cout << "worst relative error " << worst << " (edge " << worst_edge << ", " << trials
            << " trials per edge)\n";
  std::cout << (worst < 1e-6 ? "gradients consistent\n" : "gradients inconsistent\n");
  return worst < 1e-6 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdcop: continuous DCOP solvers and benchmarks"};
  app.require_subcommand(1);

  SolverConfig cfg;
  std::string problem_path, algo_name = "ccocoa", out_path;
  bool trace = false;

  CLI::App* solve = app.add_subcommand("solve", "solve a problem file");
  solve->add_option("--problem", problem_path, "problem file")->required();
  solve->add_option("--algo", algo_name, "ccocoa|cocoa|hcms")->capture_default_str();
  solve->add_option("--k", cfg.k, "discretization points per agent")->capture_default_str();
  solve->add_option("--alpha", cfg.alpha, "gradient step size")->capture_default_str();
  solve->add_option("--refine-iters", cfg.max_refine_iters, "max refinement iterations")
      ->capture_default_str();
  solve->add_option("--maxsum-iters", cfg.max_sum_iters, "hcms rounds")->capture_default_str();
  solve->add_option("--beta0", cfg.beta0, "initial commitment bound")->capture_default_str();
  solve->add_option("--seed", cfg.seed, "rng seed")->capture_default_str();
  solve->add_flag("--trace", trace, "print every message in delivery order");

  ExperimentSpec spec;
  std::string topology_name = "sparse";
  std::vector<std::string> algo_names;

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark experiment, emit CSV");
  bench->add_option("--topology", topology_name, "sparse|dense|scalefree|tree")
      ->capture_default_str();
  bench->add_option("--agents", spec.n, "agents per instance")->capture_default_str();
  bench->add_option("--p", spec.er_p, "edge probability (sparse/dense)")->capture_default_str();
  bench->add_option("--attach", spec.attach, "attachments per node (scalefree)")
      ->capture_default_str();
  bench->add_option("--instances", spec.instances, "instances per algorithm")
      ->capture_default_str();
  bench->add_option("--k", spec.solver.k, "discretization points per agent")
      ->capture_default_str();
  bench->add_option("--algos", algo_names, "algorithms to compare")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--maxsum-iters", spec.solver.max_sum_iters, "hcms rounds")
      ->capture_default_str();
  bench->add_option("--seed", spec.solver.seed, "base seed; instance i uses seed+i")
      ->capture_default_str();
  bench->add_option("--out", out_path, "CSV path (stdout when omitted)");

  int gen_agents = 15;
  std::uint64_t gen_seed = 1;
  double gen_p = 0.2;
  int gen_attach = 2;
  CLI::App* gen = app.add_subcommand("gen", "generate a problem file");
  gen->add_option("--topology", topology_name, "sparse|dense|scalefree|tree")
      ->capture_default_str();
  gen->add_option("--agents", gen_agents, "number of agents")->capture_default_str();
  gen->add_option("--p", gen_p, "edge probability (sparse/dense)")->capture_default_str();
  gen->add_option("--attach", gen_attach, "attachments per node (scalefree)")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "rng seed")->capture_default_str();
  gen->add_option("--out", out_path, "problem path (stdout when omitted)");

  CLI::App* verify = app.add_subcommand("verify", "check a problem against the oracles");
  verify->require_subcommand(1);
  std::string verify_problem;
  verify->add_option("--problem", verify_problem, "problem file")->required();

  int grid_count = 11;
  CLI::App* vgrid = verify->add_subcommand("grid", "exhaustive uniform grid search");
  vgrid->add_option("--points", grid_count, "points per variable")->capture_default_str();

  verify->add_subcommand("quadmin", "analytic quadratic minimum");

  int trials = 100;
  std::uint64_t gc_seed = 1;
  CLI::App* vgrad = verify->add_subcommand("gradcheck", "finite-difference gradient check");
  vgrad->add_option("--trials", trials, "random points per edge")->capture_default_str();
  vgrad->add_option("--seed", gc_seed, "rng seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) {
      cfg.validate();
      return run_solve(problem_path, algo_name, cfg, trace);
    }
    if (bench->parsed()) {
      spec.topology = topology_from_string(topology_name);
      if (!algo_names.empty()) {
        spec.algos.clear();
        for (const std::string& name : algo_names) spec.algos.push_back(algo_from_string(name));
      }
      spec.solver.validate();
      return run_bench(spec, out_path);
    }
    if (gen->parsed()) {
      return run_gen(topology_from_string(topology_name), gen_agents, gen_p, gen_attach, gen_seed,
                     out_path);
    }
    if (verify->parsed()) {
      if (vgrid->parsed()) return run_verify_grid(verify_problem, grid_count);
      if (vgrad->parsed()) return run_verify_gradcheck(verify_problem, trials, gc_seed);
      return run_verify_quadmin(verify_problem);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
