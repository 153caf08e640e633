#include "fdcop/baselines.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>

namespace fdcop {

SolveResult cocoa_solve(const Problem& p, const SolverConfig& cfg, const RunOptions& opts) {
  return run_cocoa_protocol(p, cfg, opts, false);
}

MaxSumState::MaxSumState(const Problem& p, std::vector<std::vector<double>> points)
    : p_(&p), points_(std::move(points)) {
  if (static_cast<int>(points_.size()) != p.num_agents()) {
    throw FdcopError("max-sum: points must cover every agent");
  }
  k_ = static_cast<int>(points_.front().size());
  for (const auto& pts : points_) {
    if (static_cast<int>(pts.size()) != k_ || k_ == 0) {
      throw FdcopError("max-sum: every agent needs the same nonzero point count");
    }
  }
  q_.resize(p.num_edges());
  r_.resize(p.num_edges());
  for (int e = 0; e < p.num_edges(); ++e) {
    for (int side = 0; side < 2; ++side) {
      q_[e][side].assign(k_, 0.0);
      r_[e][side].assign(k_, 0.0);
    }
  }
}

namespace {

void normalize(std::vector<double>& msg) {
  const double m = *std::min_element(msg.begin(), msg.end());
  for (double& v : msg) v -= m;
}

}  // namespace

void MaxSumState::step(MessageCounts& counts) {
  const Problem& p = *p_;
  // Variable-to-function from the previous round's function-to-variable.
  for (int e = 0; e < p.num_edges(); ++e) {
    const Edge& ed = p.edges()[e];
    const std::array<int, 2> vars = {ed.x_var, ed.y_var};
    for (int side = 0; side < 2; ++side) {
      const int v = vars[side];
      std::vector<double>& out = q_[e][side];
      std::fill(out.begin(), out.end(), 0.0);
      for (int other : p.incident_edges(v)) {
        if (other == e) continue;
        const Edge& oe = p.edges()[other];
        const int oside = (oe.x_var == v) ? 0 : 1;
        const std::vector<double>& in = r_[other][oside];
        for (int l = 0; l < k_; ++l) out[l] += in[l];
      }
      normalize(out);
      ++counts.maxsum_q;
    }
  }
  // Function-to-variable from this round's variable-to-function.
  for (int e = 0; e < p.num_edges(); ++e) {
    const Edge& ed = p.edges()[e];
    for (int side = 0; side < 2; ++side) {
      const int self = side == 0 ? ed.x_var : ed.y_var;
      const int other = side == 0 ? ed.y_var : ed.x_var;
      const std::vector<double>& q_other = q_[e][1 - side];
      std::vector<double>& out = r_[e][side];
      for (int l = 0; l < k_; ++l) {
        double best = std::numeric_limits<double>::infinity();
        for (int m = 0; m < k_; ++m) {
          const double xv = side == 0 ? points_[self][l] : points_[other][m];
          const double yv = side == 0 ? points_[other][m] : points_[self][l];
          best = std::min(best, ed.cost.value(xv, yv) + q_other[m]);
        }
        out[l] = best;
      }
      normalize(out);
      ++counts.maxsum_r;
    }
  }
}

std::vector<int> MaxSumState::select() const {
  const Problem& p = *p_;
  std::vector<int> picks(p.num_agents(), 0);
  for (int v = 0; v < p.num_agents(); ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < k_; ++l) {
      double belief = 0.0;
      for (int e : p.incident_edges(v)) {
        const int side = (p.edges()[e].x_var == v) ? 0 : 1;
        belief += r_[e][side][l];
      }
      if (belief < best) {
        best = belief;
        picks[v] = l;
      }
    }
  }
  return picks;
}

void MaxSumState::adjust(const std::vector<double>& against, double alpha) {
  const Problem& p = *p_;
  for (int v = 0; v < p.num_agents(); ++v) {
    for (int l = 0; l < k_; ++l) {
      double g = 0.0;
      for (int e : p.incident_edges(v)) {
        const Edge& ed = p.edges()[e];
        if (ed.x_var == v) {
          g += ed.cost.gradient(points_[v][l], against[ed.y_var]).first;
        } else {
          g += ed.cost.gradient(against[ed.x_var], points_[v][l]).second;
        }
      }
      points_[v][l] = p.domain(v).clamp(points_[v][l] - alpha * g);
    }
  }
}

const std::vector<double>& MaxSumState::q_message(int edge, int endpoint) const {
  return q_.at(edge).at(endpoint);
}

const std::vector<double>& MaxSumState::r_message(int edge, int endpoint) const {
  return r_.at(edge).at(endpoint);
}

SolveResult hcms_solve(const Problem& p, const SolverConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const int n = p.num_agents();

  std::vector<std::vector<double>> points;
  if (!opts.forced_points.empty()) {
    if (static_cast<int>(opts.forced_points.size()) != n) {
      throw FdcopError("forced_points must cover every agent");
    }
    points = opts.forced_points;
  } else {
    Rng rng(cfg.seed);
    points.reserve(n);
    for (int i = 0; i < n; ++i) points.push_back(discretize(p.domain(i), cfg.k, rng));
  }

  MaxSumState state(p, std::move(points));
  MessageCounts counts;
  std::vector<int> picks = state.select();
  for (int round = 0; round < cfg.max_sum_iters; ++round) {
    state.step(counts);
    picks = state.select();
    if (cfg.maxsum_adjust) {
      std::vector<double> against(n);
      for (int v = 0; v < n; ++v) against[v] = state.points(v)[picks[v]];
      state.adjust(against, cfg.alpha);
    }
  }

  SolveResult out;
  for (int v = 0; v < n; ++v) out.assignment.set(v, state.points(v)[picks[v]]);
  out.cost = global_cost(p, out.assignment);
  out.metrics.counts = counts;
  out.metrics.beta_final = 0;
  out.metrics.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace fdcop
