#include "fdcop/ccocoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

namespace fdcop {

void SolverConfig::validate() const {
  if (k < 1) throw FdcopError("config: k must be at least 1");
  if (beta0 < 1) throw FdcopError("config: beta0 must be at least 1");
  if (!(alpha > 0.0)) throw FdcopError("config: alpha must be positive");
  if (max_refine_iters < 0) throw FdcopError("config: max_refine_iters must be nonnegative");
  if (!(refine_tol >= 0.0)) throw FdcopError("config: refine_tol must be nonnegative");
  if (!(tie_tol >= 0.0)) throw FdcopError("config: tie_tol must be nonnegative");
  if (max_sum_iters < 0) throw FdcopError("config: max_sum_iters must be nonnegative");
}

std::vector<double> discretize(const IntervalDomain& d, int k, Rng& rng) {
  if (k < 1) throw FdcopError("discretize: k must be at least 1");
  std::vector<double> pts;
  pts.reserve(k);
  long long guard = 0;
  while (static_cast<int>(pts.size()) < k) {
    const double v = rng.uniform(d.lb, d.ub);
    if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(v);
    if (++guard > 1000LL * k) throw FdcopError("discretize: cannot draw distinct points");
  }
  return pts;
}

CostMap inquiry_reply(const Problem& p, int responder, int inquirer,
                      const std::vector<double>& inquirer_points,
                      const std::vector<double>& responder_candidates) {
  if (inquirer_points.empty()) throw FdcopError("inquiry_reply: no inquirer points");
  if (responder_candidates.empty()) throw FdcopError("inquiry_reply: no candidates");
  const Edge& e = p.edge_between(inquirer, responder);
  const bool inquirer_is_x = (e.x_var == inquirer);

  CostMap zeta;
  zeta.reserve(inquirer_points.size());
  for (double pt : inquirer_points) {
    double best_cost = std::numeric_limits<double>::infinity();
    double best_value = responder_candidates.front();
    for (double cand : responder_candidates) {
      const double cost =
          inquirer_is_x ? e.cost.value(pt, cand) : e.cost.value(cand, pt);
      if (cost < best_cost) {
        best_cost = cost;
        best_value = cand;
      }
    }
    zeta.push_back({best_value, best_cost});
  }
  return zeta;
}

Aggregated aggregate(const std::vector<CostMap>& maps, double tie_tol) {
  if (maps.empty()) throw FdcopError("aggregate: no cost maps");
  const std::size_t k = maps.front().size();
  if (k == 0) throw FdcopError("aggregate: empty cost map");
  Aggregated agg;
  agg.totals.assign(k, 0.0);
  for (const CostMap& m : maps) {
    if (m.size() != k) throw FdcopError("aggregate: cost map size mismatch");
    for (std::size_t l = 0; l < k; ++l) agg.totals[l] += m[l].cost;
  }
  agg.delta = *std::min_element(agg.totals.begin(), agg.totals.end());
  const double slack = tie_tol * std::max(1.0, std::fabs(agg.delta));
  for (std::size_t l = 0; l < k; ++l) {
    if (agg.totals[l] - agg.delta <= slack) agg.rho.push_back(static_cast<int>(l));
  }
  return agg;
}

Decision unique_first(const Aggregated& agg, int beta, int idle_active_neighbors, Rng& rng,
                      int* chosen_index) {
  if (agg.rho.empty()) throw FdcopError("unique_first: empty rho");
  if (static_cast<int>(agg.rho.size()) <= beta || idle_active_neighbors == 0) {
    const std::size_t pick =
        agg.rho.size() == 1 ? 0 : static_cast<std::size_t>(rng.uniform_index(agg.rho.size()));
    if (chosen_index) *chosen_index = agg.rho[pick];
    return Decision::Assign;
  }
  return Decision::Hold;
}

RefineResult local_refine(const Problem& p, int var, const Assignment& start,
                          const std::vector<int>& frozen, const SolverConfig& cfg,
                          std::vector<double>* objective_log) {
  const auto& nbrs = p.neighbors(var);
  std::set<int> frozen_set(frozen.begin(), frozen.end());
  if (frozen_set.count(var)) throw FdcopError("local_refine: cannot freeze the refined variable");
  for (int f : frozen_set) {
    if (std::find(nbrs.begin(), nbrs.end(), f) == nbrs.end()) {
      throw FdcopError("local_refine: frozen x" + std::to_string(f) + " is not a neighbor");
    }
  }
  Assignment vals;
  vals.set(var, start.at(var));
  for (int j : nbrs) vals.set(j, start.at(j));

  if (objective_log) objective_log->push_back(local_objective(p, var, vals).value);

  int it = 0;
  while (it < cfg.max_refine_iters) {
    const LocalObjective lo = local_objective(p, var, vals);
    Assignment next = vals;
    double max_step = 0.0;
    for (const auto& [v, g] : lo.gradient) {
      if (frozen_set.count(v)) continue;
      const double nv = p.domain(v).clamp(vals.at(v) - cfg.alpha * g);
      max_step = std::max(max_step, std::fabs(nv - vals.at(v)));
      next.set(v, nv);
    }
    vals = next;
    ++it;
    if (objective_log) objective_log->push_back(local_objective(p, var, vals).value);
    if (max_step < cfg.refine_tol) break;
  }
  return {vals.at(var), it};
}

namespace {

class ProtocolRun {
 public:
  ProtocolRun(const Problem& p, const SolverConfig& cfg, const RunOptions& opts, bool refine)
      : p_(p), cfg_(cfg), opts_(opts), refine_(refine), net_(p, opts.trace), rng_(cfg.seed) {}

  SolveResult run();

 private:
  void setup_points();
  int pick_agent();
  void activate(int i);
  // Processes everything pending at `agent`; reports whether the hold/hold
  // deadlock condition fired there.
  bool drain(int agent);
  void reopen_holds();
  std::vector<int> frozen_for(int i) const;

  const Problem& p_;
  const SolverConfig& cfg_;
  const RunOptions& opts_;
  bool refine_;
  Network net_;
  Rng rng_;
  std::vector<std::vector<double>> points_;
  std::vector<char> reopened_;
  std::vector<CostMap> collected_;  // replies to the currently active agent
  std::size_t forced_pos_ = 0;
  int beta_ = 1;
  long long hold_events_ = 0;
  long long activations_ = 0;
};

void ProtocolRun::setup_points() {
  const int n = p_.num_agents();
  if (!opts_.forced_points.empty()) {
    if (static_cast<int>(opts_.forced_points.size()) != n) {
      throw FdcopError("forced_points must cover every agent");
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(opts_.forced_points[i].size()) != cfg_.k) {
        throw FdcopError("forced_points for x" + std::to_string(i) + " must have k entries");
      }
      for (double v : opts_.forced_points[i]) {
        if (!p_.domain(i).contains(v)) {
          throw FdcopError("forced point outside domain of x" + std::to_string(i));
        }
      }
    }
    points_ = opts_.forced_points;
    return;
  }
  points_.reserve(n);
  for (int i = 0; i < n; ++i) points_.push_back(discretize(p_.domain(i), cfg_.k, rng_));
}

int ProtocolRun::pick_agent() {
  std::vector<int> eligible;
  for (int i = 0; i < p_.num_agents(); ++i) {
    const AgentState s = net_.state(i);
    if (s == AgentState::Idle || (s == AgentState::Hold && reopened_[i])) eligible.push_back(i);
  }
  if (eligible.empty()) throw EngineError("no eligible agent before completion");
  if (forced_pos_ < opts_.forced_order.size()) {
    const int i = opts_.forced_order[forced_pos_++];
    if (std::find(eligible.begin(), eligible.end(), i) == eligible.end()) {
      throw EngineError("forced activation of ineligible agent " + std::to_string(i));
    }
    return i;
  }
  return eligible[rng_.uniform_index(eligible.size())];
}

bool ProtocolRun::drain(int agent) {
  bool deadlock = false;
  while (auto msg = net_.receive(agent)) {
    const Message& m = *msg;
    switch (m.kind) {
      case MessageKind::UpdateState: {
        net_.record_view(agent, m.sender, m.state);
        if (m.state == AgentState::Hold && net_.state(agent) == AgentState::Hold &&
            net_.idle_active_neighbors(agent) == 0) {
          deadlock = true;
        }
        break;
      }
      case MessageKind::Inquiry: {
        // A committed responder answers with its fixed value; the inquirer's
        // CPA is the authority on whether that commitment is known to it.
        std::vector<double> candidates;
        if (m.cpa.has(agent)) {
          if (!net_.committed(agent) || net_.committed_value(agent) != m.cpa.at(agent)) {
            throw EngineError("inquirer CPA disagrees with responder commitment");
          }
          candidates = {m.cpa.at(agent)};
        } else {
          if (net_.committed(agent)) {
            throw EngineError("commitment of agent " + std::to_string(agent) +
                              " missing from inquirer CPA");
          }
          candidates = points_[agent];
        }
        Message reply;
        reply.sender = agent;
        reply.receiver = m.sender;
        reply.kind = MessageKind::CostMap;
        reply.cost_map = inquiry_reply(p_, agent, m.sender, points_[m.sender], candidates);
        net_.send(std::move(reply));
        break;
      }
      case MessageKind::CostMap:
        throw EngineError("unexpected cost map at agent " + std::to_string(agent));
      case MessageKind::SetValue: {
        net_.learn(agent, m.variable, m.value);
        break;
      }
    }
  }
  return deadlock;
}

void ProtocolRun::reopen_holds() {
  for (int i = 0; i < p_.num_agents(); ++i) {
    if (net_.state(i) == AgentState::Hold) reopened_[i] = 1;
  }
}

std::vector<int> ProtocolRun::frozen_for(int i) const {
  // The most recently committed neighbor stays fixed during refinement;
  // earlier committers rejoin the descent from their committed values.
  const auto& order = net_.commit_order();
  const auto& nbrs = p_.neighbors(i);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (std::find(nbrs.begin(), nbrs.end(), *it) != nbrs.end()) return {*it};
  }
  return {};
}

void ProtocolRun::activate(int i) {
  net_.set_state(i, AgentState::Active);
  reopened_[i] = 0;
  const auto& nbrs = p_.neighbors(i);

  for (int j : nbrs) {
    Message up;
    up.sender = i;
    up.receiver = j;
    up.kind = MessageKind::UpdateState;
    up.state = AgentState::Active;
    net_.send(std::move(up));
    Message inq;
    inq.sender = i;
    inq.receiver = j;
    inq.kind = MessageKind::Inquiry;
    inq.cpa = net_.cpa(i);
    net_.send(std::move(inq));
  }
  for (int j : nbrs) drain(j);

  // Collect the replies, one per neighbor, in neighbor order.
  collected_.assign(nbrs.size(), {});
  while (auto msg = net_.receive(i)) {
    if (msg->kind != MessageKind::CostMap) {
      throw EngineError("active agent expected cost maps only");
    }
    const auto pos = std::find(nbrs.begin(), nbrs.end(), msg->sender) - nbrs.begin();
    collected_[pos] = std::move(msg->cost_map);
  }
  for (const CostMap& m : collected_) {
    if (m.empty()) throw EngineError("missing cost map reply");
  }

  const Aggregated agg = aggregate(collected_, cfg_.tie_tol);
  int chosen = -1;
  const Decision decision =
      unique_first(agg, beta_, net_.idle_active_neighbors(i), rng_, &chosen);

  if (decision == Decision::Assign) {
    const double theta = points_[i][chosen];
    double value = theta;
    if (refine_) {
      Assignment chi;
      chi.set(i, theta);
      for (std::size_t jx = 0; jx < nbrs.size(); ++jx) {
        chi.set(nbrs[jx], collected_[jx][chosen].value);
      }
      value = local_refine(p_, i, chi, frozen_for(i), cfg_).value;
    }
    net_.commit(i, value);
    net_.set_state(i, AgentState::Done);
    for (int j : nbrs) {
      Message up;
      up.sender = i;
      up.receiver = j;
      up.kind = MessageKind::UpdateState;
      up.state = AgentState::Done;
      net_.send(std::move(up));
      Message sv;
      sv.sender = i;
      sv.receiver = j;
      sv.kind = MessageKind::SetValue;
      sv.variable = i;
      sv.value = value;
      sv.cpa = net_.cpa(i);
      net_.send(std::move(sv));
    }
    for (int j : nbrs) drain(j);
    reopen_holds();
  } else {
    net_.set_state(i, AgentState::Hold);
    ++hold_events_;
    for (int j : nbrs) {
      Message up;
      up.sender = i;
      up.receiver = j;
      up.kind = MessageKind::UpdateState;
      up.state = AgentState::Hold;
      net_.send(std::move(up));
    }
    bool deadlock = false;
    for (int j : nbrs) deadlock = drain(j) || deadlock;
    if (deadlock) {
      ++beta_;
      reopen_holds();
    }
  }
}

SolveResult ProtocolRun::run() {
  cfg_.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const int n = p_.num_agents();
  setup_points();
  reopened_.assign(n, 0);
  beta_ = cfg_.beta0;

  const long long budget = 2LL * n * (n + cfg_.k + 2) + 16;
  while (static_cast<int>(net_.commit_order().size()) < n) {
    if (beta_ > cfg_.k) {
      throw EngineError("livelock: beta " + std::to_string(beta_) + " exceeds k " +
                        std::to_string(cfg_.k));
    }
    if (++activations_ > budget) throw EngineError("activation budget exceeded");
    activate(pick_agent());
  }

  if (net_.pending() != 0) throw EngineError("run finished with undelivered messages");
  for (int i = 0; i < n; ++i) {
    if (!net_.mailbox_empty(i)) throw EngineError("run finished with a nonempty mailbox");
  }

  SolveResult out;
  for (int i = 0; i < n; ++i) out.assignment.set(i, net_.committed_value(i));
  out.cost = global_cost(p_, out.assignment);
  out.metrics.counts = net_.counts();
  out.metrics.hold_events = hold_events_;
  out.metrics.activations = activations_;
  out.metrics.beta_final = beta_;
  out.metrics.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

SolveResult run_cocoa_protocol(const Problem& p, const SolverConfig& cfg, const RunOptions& opts,
                               bool refine) {
  return ProtocolRun(p, cfg, opts, refine).run();
}

SolveResult ccocoa_solve(const Problem& p, const SolverConfig& cfg, const RunOptions& opts) {
  return run_cocoa_protocol(p, cfg, opts, true);
}

}  // namespace fdcop
