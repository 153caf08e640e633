#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "fdcop/model.hpp"

namespace fdcop {

struct EngineError : FdcopError {
  using FdcopError::FdcopError;
};

enum class AgentState { Idle, Active, Hold, Done };
const char* to_string(AgentState s);

enum class MessageKind { UpdateState, Inquiry, CostMap, SetValue };
const char* to_string(MessageKind k);

// One (candidate value, cost) pair of a cost map reply.
struct CostMapEntry {
  double value = 0.0;
  double cost = 0.0;
};
using CostMap = std::vector<CostMapEntry>;

struct Message {
  int sender = -1;
  int receiver = -1;
  MessageKind kind = MessageKind::UpdateState;
  AgentState state = AgentState::Idle;  // UpdateState
  Assignment cpa;                       // Inquiry, SetValue
  CostMap cost_map;                     // CostMap
  int variable = -1;                    // SetValue
  double value = 0.0;                   // SetValue
};

struct MessageCounts {
  long long update_state = 0;
  long long inquiry = 0;
  long long cost_map = 0;
  long long set_value = 0;
  long long maxsum_q = 0;
  long long maxsum_r = 0;
  long long total() const {
    return update_state + inquiry + cost_map + set_value + maxsum_q + maxsum_r;
  }
};

struct RunMetrics {
  MessageCounts counts;
  long long hold_events = 0;
  long long activations = 0;
  int beta_final = 0;
  double elapsed_s = 0.0;
};

struct SolveResult {
  Assignment assignment;
  double cost = 0.0;
  RunMetrics metrics;
};

using TraceFn = std::function<void(const Message&)>;

// Deterministic sequential message substrate plus per-agent protocol state.
// Delivery between non-neighbors is a hard fault. Messages are counted by
// kind at send time and must all be consumed before a run finishes.
class Network {
 public:
  explicit Network(const Problem& p, TraceFn trace = nullptr);

  const Problem& problem() const { return *problem_; }
  int num_agents() const { return problem_->num_agents(); }

  void send(Message m);
  std::optional<Message> receive(int agent);
  bool mailbox_empty(int agent) const { return agents_[agent].mailbox.empty(); }
  long long pending() const { return sent_ - consumed_; }

  AgentState state(int agent) const { return agents_[agent].state; }
  void set_state(int agent, AgentState next);

  // Received knowledge of neighbor values; values only ever grow and a
  // variable's value never changes once learned.
  const Assignment& cpa(int agent) const { return agents_[agent].cpa; }
  void learn(int agent, int variable, double value);

  bool committed(int agent) const { return agents_[agent].committed; }
  double committed_value(int agent) const;
  void commit(int agent, double value);
  const std::vector<int>& commit_order() const { return commit_order_; }

  // Neighbor states as known to this agent via UpdateState messages.
  AgentState neighbor_view(int agent, int neighbor) const;
  void record_view(int agent, int neighbor, AgentState s);
  int idle_active_neighbors(int agent) const;

  MessageCounts& counts() { return counts_; }
  const MessageCounts& counts() const { return counts_; }

 private:
  struct AgentRt {
    AgentState state = AgentState::Idle;
    Assignment cpa;
    bool committed = false;
    double value = 0.0;
    std::deque<Message> mailbox;
    std::map<int, AgentState> view;
  };

  const Problem* problem_;
  std::vector<AgentRt> agents_;
  std::vector<int> commit_order_;
  MessageCounts counts_;
  long long sent_ = 0;
  long long consumed_ = 0;
  TraceFn trace_;
};

}  // namespace fdcop
