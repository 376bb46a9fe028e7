/* Copyright (c) 2026, PPTP Simulator Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Whole-network properties over randomly generated topologies.

#include "support.hpp"

#include "pptp/sim/scenario.hpp"
#include "pptp/sim/simulator.hpp"

#include <doctest.h>

#include <set>

using namespace pptp;
using namespace pptp::sim;

namespace {

std::vector<std::string>
ids(const std::vector<NodeId>& nodes)
{
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    out.push_back(n.value);
  }
  return out;
}

std::size_t
punishedCount(const ledger::Ledger& l)
{
  std::size_t n = 0;
  for (const auto& d : l.disputes()) {
    n += d.verdict.kind == ledger::VerdictKind::Punished;
  }
  return n;
}

} // namespace

TEST_SUITE("network properties")
{
  TEST_CASE("probe Data retraces its Interest and tags replay the probed path")
  {
    Rng rng(2026);
    std::size_t completedContent = 0;
    for (int round = 0; round < 40; ++round) {
      test::RandomScenarioParams params;
      params.loss = round % 3 == 0;
      auto gen = test::random_scenario(rng, params);
      Scenario sc = parse_scenario(gen.text);
      SimOptions opt = SimOptions::resolve(sc, 500 + round);
      opt.trace = true;
      Simulator sim(sc, opt);
      sim.run();

      const auto oracle = test::oracle::enumerate_paths(gen.graph, "C", "P");
      const auto* engine = sim.consumer_engine(NodeId{"C"});
      REQUIRE(engine);

      std::set<std::vector<std::string>> registered;
      for (const auto& [id, path] : engine->paths()) {
        std::vector<std::string> seq{"C"};
        for (const auto& h : ids(path.hops())) {
          seq.push_back(h);
        }
        CHECK_MESSAGE(oracle.count(seq) == 1, gen.text);
        registered.insert(seq);
      }

      for (const auto& [nonce, trace] : sim.traces()) {
        const auto in = ids(trace.interest_hops);
        const auto out = ids(trace.data_hops);
        REQUIRE_FALSE(in.empty());
        CHECK(in.front() == "C");
        if (!out.empty() && out.back() == "C") {
          std::vector<std::string> reversed(in.rbegin(), in.rend());
          CHECK(out == reversed);
        }
        if (in.back() == "P") {
          CHECK(oracle.count(in) == 1);
        }
      }

      // content Interests are the traces that follow an already registered
      // path; every one that reached the producer matches a registered path
      for (const auto& [nonce, trace] : sim.traces()) {
        const auto in = ids(trace.interest_hops);
        if (in.back() == "P" && registered.count(in) != 0) {
          ++completedContent;
        }
      }
      const auto* c = sim.consumer_counters(NodeId{"C"});
      CHECK(c->data_received + c->probe_replies <= sim.traces().size());
    }
    CHECK(completedContent > 0);
  }

  TEST_CASE("every content Interest that arrives follows a registered path")
  {
    // single-probe demand on a topology with several paths: the consumer
    // only knows the paths its probes returned, so any other route taken by
    // content traffic would show up here
    Rng rng(77);
    for (int round = 0; round < 20; ++round) {
      const std::size_t k = 2 + rng.below(3);
      std::vector<std::size_t> lengths;
      for (std::size_t i = 0; i < k; ++i) {
        lengths.push_back(1 + rng.below(3));
      }
      auto gen = test::disjoint_paths_scenario(lengths, 900 + round, 1 + rng.below(k), 0.3, 400);
      Scenario sc = parse_scenario(gen.text);
      SimOptions opt = SimOptions::resolve(sc);
      opt.trace = true;
      Simulator sim(sc, opt);
      sim.run();

      std::set<std::vector<std::string>> registered;
      for (const auto& [id, path] : sim.consumer_engine(NodeId{"C"})->paths()) {
        std::vector<std::string> seq{"C"};
        for (const auto& h : ids(path.hops())) {
          seq.push_back(h);
        }
        registered.insert(seq);
      }
      const auto* c = sim.consumer_counters(NodeId{"C"});
      std::uint64_t arrived = 0;
      for (const auto& [nonce, trace] : sim.traces()) {
        const auto in = ids(trace.interest_hops);
        if (in.back() == "P") {
          CHECK(registered.count(in) == 1);
          ++arrived;
        }
      }
      CHECK(arrived == c->probe_replies + c->data_received);
    }
  }

  TEST_CASE("honest random networks never see a punishment")
  {
    Rng rng(4242);
    for (int round = 0; round < 60; ++round) {
      test::RandomScenarioParams params;
      params.loss = round % 2 == 1;
      auto gen = test::random_scenario(rng, params);
      Scenario sc = parse_scenario(gen.text);
      Simulator sim(sc, SimOptions::resolve(sc, round));
      sim.run();
      CHECK_MESSAGE(punishedCount(sim.ledger()) == 0, gen.text);
      CHECK(sim.audits().empty());
    }
  }

  TEST_CASE("each injected equivocation burns one deposit")
  {
    Rng rng(4343);
    for (int round = 0; round < 30; ++round) {
      test::RandomScenarioParams params;
      params.fault = true;
      params.loss = round % 2 == 1;
      auto gen = test::random_scenario(rng, params);
      Scenario sc = parse_scenario(gen.text);
      REQUIRE(sc.faults.size() == 1);
      const NodeId culprit = sc.faults[0].node;
      const Tokens deposit = sc.find_node(culprit)->deposit;
      Simulator sim(sc, SimOptions::resolve(sc, round));
      sim.run();
      CHECK_MESSAGE(punishedCount(sim.ledger()) == 1, gen.text);
      CHECK(sim.ledger().account(culprit).flagged);
      CHECK(sim.ledger().account(culprit).security_deposit == Tokens(0));
      CHECK(sim.ledger().totals().burned == deposit);
    }
  }

  TEST_CASE("tokens are conserved across whole runs")
  {
    Rng rng(555);
    for (int round = 0; round < 40; ++round) {
      test::RandomScenarioParams params;
      params.loss = round % 2 == 0;
      params.fault = round % 5 == 0;
      auto gen = test::random_scenario(rng, params);
      Scenario sc = parse_scenario(gen.text);
      Simulator sim(sc, SimOptions::resolve(sc, 7 * round));
      sim.run();
      const auto t = sim.ledger().totals();
      CHECK(t.minted.value() == gen.minted);
      CHECK(t.escrow == Tokens(0));
      CHECK(test::oracle::ledger_holdings(sim.ledger()) == gen.minted);

      std::int64_t net = 0;
      for (std::size_t i = 0; i < sim.node_count(); ++i) {
        net += sim.revenue(sim.node_spec(i).id);
      }
      CHECK(net == 0);

      // a commitment lost on the last hop is never redeemed, so the consumer
      // pays at most what it issued
      const auto* c = sim.consumer_counters(NodeId{"C"});
      CHECK(-sim.revenue(NodeId{"C"}) <= static_cast<std::int64_t>(c->spent.value()));
      CHECK(-sim.revenue(NodeId{"C"}) >= 0);
    }
  }
}
