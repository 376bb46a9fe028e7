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

#pragma once

#include "pptp/consumer/consumer.hpp"
#include "pptp/forwarding/forwarder.hpp"
#include "pptp/ledger/ledger.hpp"
#include "pptp/payments/channel.hpp"
#include "pptp/sim/scenario.hpp"

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace pptp::sim {

struct SimOptions
{
  std::uint64_t seed = 1;
  Tick ticks = 1000;
  Tick report_window = 100;
  Tick pit_lifetime = 100;
  bool watcher = true; ///< audit observed advertisements and report conflicts
  bool trace = false;  ///< keep per-nonce hop sequences

  /// Scenario `run` values first, then any explicit overrides.
  static SimOptions
  resolve(const Scenario& sc, std::optional<std::uint64_t> seed = std::nullopt,
          std::optional<Tick> ticks = std::nullopt);
};

struct MetricsRow
{
  Tick tick = 0; ///< end of the reporting window
  NodeId consumer;
  consumer::PathId path_id = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t data_received = 0;
  std::optional<double> mean_latency;
  std::optional<double> frac_within_threshold;
  Tokens cost_spent;
  std::optional<double> v_measured;
  std::optional<double> u_measured;
};

struct LinkCounters
{
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t lost = 0;
  std::uint64_t queue_drops = 0;
  std::uint64_t max_sent_in_tick = 0; ///< largest single-direction count in one tick
  std::uint64_t early_arrivals = 0;   ///< deliveries before send + latency; always 0
};

struct LinkState
{
  LinkSpec spec;
  std::size_t node_a = 0; ///< index into the node table
  std::size_t node_b = 0;

  struct InFlight
  {
    Tick sent = 0;
    Tick arrival = 0;
    Packet packet;
  };

  struct Direction
  {
    std::deque<Packet> queue;
    std::deque<InFlight> in_flight;
  };

  Direction ab;
  Direction ba;
  LinkCounters counters;
};

struct ConsumerCounters
{
  std::uint64_t probes_sent = 0;
  std::uint64_t probe_rounds = 0;
  std::uint64_t probe_replies = 0;
  std::uint64_t path_rejects = 0;
  std::uint64_t interests_sent = 0;
  std::uint64_t data_received = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t paid_undelivered = 0;
  std::uint64_t send_failures = 0;
  std::uint64_t stray_data = 0;
  Tokens spent;
  std::map<consumer::PathId, std::uint64_t> selections;
  std::vector<consumer::PathId> choices; ///< every selection in order; kept only when tracing
};

/// Hop sequence of one nonce, for tests and debugging.
struct Trace
{
  std::vector<NodeId> interest_hops;
  std::vector<NodeId> data_hops;
};

struct AuditRecord
{
  Tick tick = 0;
  TagItem first;
  TagItem second;
  ledger::Verdict verdict;
};

/// One simulated network: nodes, links, channels and the mock ledger.
///
/// Every tick runs in a fixed order: faults, link deliveries (link order,
/// a-to-b before b-to-a), consumer actions, link transmissions, timeouts and
/// PIT expiry, then the reporting window close. After the last tick the
/// consumers stop issuing and the network drains before all channels settle.
class Simulator
{
public:
  Simulator(const Scenario& scenario, SimOptions options);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator&
  operator=(const Simulator&) = delete;

  /// Runs to completion. Throws Error(InvariantViolation) if a conservation or
  /// causality check fails.
  void
  run();

  bool
  finished() const noexcept
  {
    return m_finished;
  }

  const SimOptions&
  options() const noexcept
  {
    return m_options;
  }

  const Scenario&
  scenario() const noexcept
  {
    return m_scenario;
  }

  const std::vector<MetricsRow>&
  rows() const noexcept
  {
    return m_rows;
  }

  const ledger::Ledger&
  ledger() const noexcept
  {
    return m_ledger;
  }

  const payments::ChannelBook&
  channels() const noexcept
  {
    return m_channels;
  }

  const std::vector<LinkState>&
  links() const noexcept
  {
    return m_links;
  }

  std::size_t
  node_count() const noexcept
  {
    return m_nodes.size();
  }

  const NodeSpec&
  node_spec(std::size_t i) const;

  const fw::Forwarder&
  forwarder(std::size_t i) const;

  /// Consumer engine and counters of a consumer with a demand; nullptr
  /// otherwise.
  const consumer::ConsumerEngine*
  consumer_engine(const NodeId& id) const;

  const ConsumerCounters*
  consumer_counters(const NodeId& id) const;

  /// Net channel flow after settlement: final channel balances minus
  /// deposits, summed over the node's channels.
  std::int64_t
  revenue(const NodeId& id) const;

  const std::vector<AuditRecord>&
  audits() const noexcept
  {
    return m_audits;
  }

  const std::map<std::uint64_t, Trace>&
  traces() const noexcept
  {
    return m_traces;
  }

  /// Ticks spent after the last reporting tick waiting for the network to
  /// drain.
  Tick
  drain_ticks() const noexcept
  {
    return m_drainTicks;
  }

private:
  struct Node;
  struct ConsumerState;

  void
  setup();

  void
  buildFibs();

  void
  step(Tick now, bool issuing);

  void
  applyFaults(Tick now);

  void
  deliverLinks(Tick now);

  void
  deliver(std::size_t to, std::size_t from, Packet pkt, Tick now);

  void
  consumerReceive(ConsumerState& cs, Packet pkt, Tick now);

  void
  consumerAct(ConsumerState& cs, Tick now, bool issuing);

  void
  send(std::size_t from, FaceId face, Packet pkt, Tick now);

  void
  transmit(Tick now);

  void
  expire(Tick now);

  void
  closeWindow(Tick end, Tick length);

  void
  audit(const TagItem& item, Tick now);

  void
  auditTag(const PathTag& tag, Tick now);

  void
  traceHop(const Packet& pkt, const NodeId& at);

  bool
  quiescent() const;

  void
  checkInvariants() const;

  Scenario m_scenario;
  SimOptions m_options;
  Rng m_rng;
  ledger::Ledger m_ledger;
  payments::ChannelBook m_channels;
  std::vector<std::unique_ptr<Node>> m_nodes;
  std::map<NodeId, std::size_t> m_index;
  std::vector<LinkState> m_links;
  std::vector<std::unique_ptr<ConsumerState>> m_consumers;
  std::vector<MetricsRow> m_rows;
  std::vector<AuditRecord> m_audits;
  std::map<std::pair<NodeId, FaceId>, std::vector<TagItem>> m_seen;
  std::map<std::uint64_t, Trace> m_traces;
  Tick m_windowStart = 0;
  Tick m_drainTicks = 0;
  bool m_finished = false;
};

} // namespace pptp::sim
