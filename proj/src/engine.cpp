#include "fdcop/engine.hpp"

#include <cmath>

namespace fdcop {

const char* to_string(AgentState s) {
  switch (s) {
    case AgentState::Idle: return "IDLE";
    case AgentState::Active: return "ACTIVE";
    case AgentState::Hold: return "HOLD";
    case AgentState::Done: return "DONE";
  }
  return "?";
}

const char* to_string(MessageKind k) {
  switch (k) {
    case MessageKind::UpdateState: return "UPDATE_STATE";
    case MessageKind::Inquiry: return "INQUIRY";
    case MessageKind::CostMap: return "COST_MAP";
    case MessageKind::SetValue: return "SET_VALUE";
  }
  return "?";
}

Network::Network(const Problem& p, TraceFn trace) : problem_(&p), trace_(std::move(trace)) {
  agents_.resize(p.num_agents());
  for (int i = 0; i < p.num_agents(); ++i) {
    for (int j : p.neighbors(i)) agents_[i].view[j] = AgentState::Idle;
  }
}

void Network::send(Message m) {
  if (m.sender < 0 || m.sender >= num_agents() || m.receiver < 0 || m.receiver >= num_agents()) {
    throw EngineError("message endpoint out of range");
  }
  if (m.sender == m.receiver) {
    throw EngineError("agent " + std::to_string(m.sender) + " sent a message to itself");
  }
  if (!problem_->are_neighbors(m.sender, m.receiver)) {
    throw EngineError("delivery between non-neighbors " + std::to_string(m.sender) + " and " +
                      std::to_string(m.receiver));
  }
  switch (m.kind) {
    case MessageKind::UpdateState: ++counts_.update_state; break;
    case MessageKind::Inquiry: ++counts_.inquiry; break;
    case MessageKind::CostMap: ++counts_.cost_map; break;
    case MessageKind::SetValue: ++counts_.set_value; break;
  }
  ++sent_;
  if (trace_) trace_(m);
  agents_[m.receiver].mailbox.push_back(std::move(m));
}

std::optional<Message> Network::receive(int agent) {
  auto& box = agents_.at(agent).mailbox;
  if (box.empty()) return std::nullopt;
  Message m = std::move(box.front());
  box.pop_front();
  ++consumed_;
  return m;
}

void Network::set_state(int agent, AgentState next) {
  const AgentState cur = agents_.at(agent).state;
  const bool ok = (cur == AgentState::Idle && next == AgentState::Active) ||
                  (cur == AgentState::Active && next == AgentState::Hold) ||
                  (cur == AgentState::Active && next == AgentState::Done) ||
                  (cur == AgentState::Hold && next == AgentState::Active);
  if (!ok) {
    throw EngineError(std::string("illegal state transition ") + to_string(cur) + " -> " +
                      to_string(next) + " at agent " + std::to_string(agent));
  }
  agents_[agent].state = next;
}

void Network::learn(int agent, int variable, double value) {
  auto& rt = agents_.at(agent);
  if (rt.cpa.has(variable)) {
    if (rt.cpa.at(variable) != value) {
      throw EngineError("agent " + std::to_string(agent) + " saw x" + std::to_string(variable) +
                        " change after assignment");
    }
    return;
  }
  rt.cpa.set(variable, value);
}

double Network::committed_value(int agent) const {
  const auto& rt = agents_.at(agent);
  if (!rt.committed) throw EngineError("agent " + std::to_string(agent) + " has not committed");
  return rt.value;
}

void Network::commit(int agent, double value) {
  auto& rt = agents_.at(agent);
  if (rt.committed) throw EngineError("agent " + std::to_string(agent) + " committed twice");
  if (!std::isfinite(value) || !problem_->domain(agent).contains(value)) {
    throw EngineError("agent " + std::to_string(agent) + " committed out-of-domain value");
  }
  rt.committed = true;
  rt.value = value;
  commit_order_.push_back(agent);
}

AgentState Network::neighbor_view(int agent, int neighbor) const {
  return agents_.at(agent).view.at(neighbor);
}

void Network::record_view(int agent, int neighbor, AgentState s) {
  agents_.at(agent).view.at(neighbor) = s;
}

int Network::idle_active_neighbors(int agent) const {
  int count = 0;
  for (const auto& [j, s] : agents_.at(agent).view) {
    if (s == AgentState::Idle || s == AgentState::Active) ++count;
  }
  return count;
}

}  // namespace fdcop
