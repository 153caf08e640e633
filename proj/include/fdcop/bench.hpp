#pragma once

#include <iosfwd>
#include <string>

#include "fdcop/ccocoa.hpp"

namespace fdcop {

struct GeneratorConfig {
  double coeff_lo = -5.0;
  double coeff_hi = 5.0;
  double domain_lo = -50.0;
  double domain_hi = 50.0;
};

// Erdos-Renyi G(n, p); if the draw is disconnected, random edges between
// components are added until it is connected.
Problem gen_erdos_renyi(int n, double p, Rng& rng, const GeneratorConfig& gc = {});

// Preferential attachment: a complete seed of `attach` nodes, then each new
// node attaches to `attach` distinct existing nodes weighted by degree.
Problem gen_scale_free(int n, int attach, Rng& rng, const GeneratorConfig& gc = {});

// Uniform random labeled tree via a random Prufer sequence.
Problem gen_random_tree(int n, Rng& rng, const GeneratorConfig& gc = {});

enum class Algo { CCoCoA, CoCoA, Hcms };
const char* to_string(Algo a);
Algo algo_from_string(const std::string& name);

enum class Topology { Sparse, Dense, ScaleFree, Tree };
const char* to_string(Topology t);
Topology topology_from_string(const std::string& name);

Problem generate_topology(Topology t, int n, double er_p, int attach, Rng& rng,
                          const GeneratorConfig& gc = {});

struct ExperimentSpec {
  Topology topology = Topology::Sparse;
  int n = 15;
  double er_p = 0.2;
  int attach = 2;
  int instances = 25;
  std::vector<Algo> algos = {Algo::CCoCoA, Algo::CoCoA, Algo::Hcms};
  SolverConfig solver;  // solver.seed is the base seed; instance i uses seed + i
  GeneratorConfig generator;
};

struct ResultRow {
  std::string topology;
  int n = 0;
  int k = 0;
  std::string algo;
  std::uint64_t seed = 0;
  double cost = 0.0;
  double messages = 0.0;
  double hold_events = 0.0;
  double time_s = 0.0;
  std::string status;  // ok, error, aggregate
};

// Runs every algorithm on every generated instance (instances share the
// generated problem across algorithms) and appends one aggregate row per
// algorithm averaging its ok runs. Failed runs get status=error and are
// excluded from the aggregates.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

extern const char* const kCsvHeader;
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

}  // namespace fdcop
