#include "doctest.h"

#include "fdcop/engine.hpp"
#include "fixtures.hpp"

using namespace fdcop;

namespace {

Message update(int from, int to, AgentState s) {
  Message m;
  m.sender = from;
  m.receiver = to;
  m.kind = MessageKind::UpdateState;
  m.state = s;
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("engine");

TEST_CASE("delivery is restricted to neighbors") {
  Problem p = fixtures::diamond();
  Network net(p);
  CHECK_NOTHROW(net.send(update(0, 1, AgentState::Active)));
  CHECK_THROWS_AS(net.send(update(1, 3, AgentState::Active)), EngineError);  // not neighbors
  CHECK_THROWS_AS(net.send(update(2, 2, AgentState::Active)), EngineError);  // self
  CHECK_THROWS_AS(net.send(update(0, 9, AgentState::Active)), EngineError);  // out of range
  CHECK_THROWS_AS(net.send(update(-1, 0, AgentState::Active)), EngineError);
}

TEST_CASE("mailboxes are FIFO and conserve messages") {
  Problem p = fixtures::diamond();
  Network net(p);
  net.send(update(0, 1, AgentState::Active));
  net.send(update(2, 1, AgentState::Hold));
  net.send(update(0, 1, AgentState::Done));
  CHECK(net.pending() == 3);
  CHECK(!net.mailbox_empty(1));

  auto m1 = net.receive(1);
  REQUIRE(m1.has_value());
  CHECK(m1->sender == 0);
  CHECK(m1->state == AgentState::Active);
  auto m2 = net.receive(1);
  REQUIRE(m2.has_value());
  CHECK(m2->sender == 2);
  auto m3 = net.receive(1);
  REQUIRE(m3.has_value());
  CHECK(m3->state == AgentState::Done);
  CHECK(net.pending() == 0);
  CHECK(!net.receive(1).has_value());
  CHECK(net.mailbox_empty(1));
}

TEST_CASE("messages are counted by kind at send time") {
  Problem p = fixtures::diamond();
  Network net(p);
  net.send(update(0, 1, AgentState::Active));
  Message inq;
  inq.sender = 0;
  inq.receiver = 1;
  inq.kind = MessageKind::Inquiry;
  net.send(inq);
  Message reply;
  reply.sender = 1;
  reply.receiver = 0;
  reply.kind = MessageKind::CostMap;
  reply.cost_map = {{3.0, 13.0}, {3.0, 10.0}};
  net.send(reply);
  Message sv;
  sv.sender = 0;
  sv.receiver = 1;
  sv.kind = MessageKind::SetValue;
  sv.variable = 0;
  sv.value = 1.0;
  net.send(sv);

  CHECK(net.counts().update_state == 1);
  CHECK(net.counts().inquiry == 1);
  CHECK(net.counts().cost_map == 1);
  CHECK(net.counts().set_value == 1);
  CHECK(net.counts().maxsum_q == 0);
  CHECK(net.counts().total() == 4);
}

TEST_CASE("state machine admits only the legal transitions") {
  Problem p = fixtures::diamond();
  Network net(p);
  CHECK(net.state(0) == AgentState::Idle);
  CHECK_THROWS_AS(net.set_state(0, AgentState::Hold), EngineError);
  CHECK_THROWS_AS(net.set_state(0, AgentState::Done), EngineError);
  net.set_state(0, AgentState::Active);
  CHECK_THROWS_AS(net.set_state(0, AgentState::Idle), EngineError);
  net.set_state(0, AgentState::Hold);
  CHECK_THROWS_AS(net.set_state(0, AgentState::Done), EngineError);  // hold cannot finish
  net.set_state(0, AgentState::Active);
  net.set_state(0, AgentState::Done);
  CHECK_THROWS_AS(net.set_state(0, AgentState::Active), EngineError);
}

TEST_CASE("learned values only ever grow") {
  Problem p = fixtures::diamond();
  Network net(p);
  CHECK(net.cpa(1).empty());
  net.learn(1, 0, -0.572);
  CHECK(net.cpa(1).at(0) == -0.572);
  CHECK_NOTHROW(net.learn(1, 0, -0.572));
  CHECK_THROWS_AS(net.learn(1, 0, 0.3), EngineError);
  CHECK(net.cpa(1).size() == 1);
}

TEST_CASE("commitment is single shot and domain checked") {
  Problem p = fixtures::diamond();
  Network net(p);
  CHECK(!net.committed(0));
  CHECK_THROWS_AS(net.committed_value(0), EngineError);
  net.commit(0, -0.572);
  CHECK(net.committed(0));
  CHECK(net.committed_value(0) == -0.572);
  CHECK_THROWS_AS(net.commit(0, -0.572), EngineError);
  CHECK_THROWS_AS(net.commit(1, 25.0), EngineError);  // outside [-20, 20]
  CHECK(net.commit_order() == std::vector<int>{0});
}

TEST_CASE("neighbor views drive idle_active_neighbors") {
  Problem p = fixtures::diamond();
  Network net(p);
  CHECK(net.idle_active_neighbors(0) == 3);
  CHECK(net.neighbor_view(0, 1) == AgentState::Idle);
  net.record_view(0, 1, AgentState::Done);
  CHECK(net.idle_active_neighbors(0) == 2);
  net.record_view(0, 2, AgentState::Hold);
  CHECK(net.idle_active_neighbors(0) == 1);
  net.record_view(0, 3, AgentState::Active);
  CHECK(net.idle_active_neighbors(0) == 1);
  net.record_view(0, 3, AgentState::Hold);
  CHECK(net.idle_active_neighbors(0) == 0);
  // Views are per agent and only cover neighbors.
  CHECK(net.idle_active_neighbors(1) == 2);
  CHECK_THROWS_AS(net.neighbor_view(1, 3), std::out_of_range);
}

TEST_CASE("trace observes sends in order") {
  Problem p = fixtures::diamond();
  std::vector<std::pair<int, int>> seen;
  Network net(p, [&](const Message& m) { seen.emplace_back(m.sender, m.receiver); });
  net.send(update(0, 1, AgentState::Active));
  net.send(update(0, 2, AgentState::Active));
  net.send(update(2, 1, AgentState::Hold));
  CHECK(seen == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {2, 1}});
}

TEST_CASE("state names") {
  CHECK(std::string(to_string(AgentState::Idle)) == "IDLE");
  CHECK(std::string(to_string(AgentState::Hold)) == "HOLD");
  CHECK(std::string(to_string(MessageKind::CostMap)) == "COST_MAP");
  CHECK(std::string(to_string(MessageKind::SetValue)) == "SET_VALUE");
}

TEST_SUITE_END();
