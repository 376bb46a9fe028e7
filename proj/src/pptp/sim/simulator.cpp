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

#include "pptp/sim/simulator.hpp"
#include "pptp/core/crypto.hpp"
#include "pptp/pricing/price_book.hpp"

#include <algorithm>

namespace pptp::sim {

namespace {

constexpr std::size_t kQueueLimit = 4096;
const NodeId kWatcher{"watcher"};

} // namespace

struct Simulator::Node
{
  NodeSpec spec;
  fw::Forwarder fwd;
  std::map<FaceId, std::size_t> faceLink;
  ConsumerState* consumer = nullptr;
};

struct Simulator::ConsumerState
{
  struct Outstanding
  {
    consumer::PathId path = 0;
    Tick sent = 0;
  };

  std::size_t node = 0;
  DemandSpec demand;
  consumer::ConsumerEngine engine;
  std::set<std::uint64_t> probeNonces;
  std::optional<Tick> probeDeadline;
  std::map<std::uint64_t, Outstanding> outstanding;
  double credit = 0.0;
  std::uint64_t seq = 0;
  std::map<consumer::PathId, consumer::PathStats> window;
  std::map<consumer::PathId, Tokens> windowCost;
  std::map<consumer::PathId, std::uint64_t> windowTimeouts;
  ConsumerCounters counters;
};

SimOptions
SimOptions::resolve(const Scenario& sc, std::optional<std::uint64_t> seed, std::optional<Tick> ticks)
{
  SimOptions o;
  o.seed = seed.value_or(sc.run.seed.value_or(o.seed));
  o.ticks = ticks.value_or(sc.run.ticks.value_or(o.ticks));
  o.report_window = sc.run.report_window.value_or(o.report_window);
  o.pit_lifetime = sc.run.pit_lifetime.value_or(o.pit_lifetime);
  return o;
}

Simulator::Simulator(const Scenario& scenario, SimOptions options)
  : m_scenario(scenario)
  , m_options(options)
  , m_rng(options.seed)
{
  if (m_options.report_window == 0 || m_options.pit_lifetime == 0) {
    throw Error(Errc::InvalidArgument, "report window and PIT lifetime must be >= 1");
  }
  setup();
}

Simulator::~Simulator() = default;

void
Simulator::setup()
{
  for (const auto& spec : m_scenario.nodes) {
    KeyPair keys = derive_keypair(m_options.seed, spec.id.value);
    m_ledger.register_node(spec.id, keys.pub, spec.balance, spec.deposit);
    m_index.emplace(spec.id, m_nodes.size());
    m_nodes.push_back(std::make_unique<Node>(Node{spec, fw::Forwarder(spec.id, spec.role, keys), {}, nullptr}));
  }

  for (const auto& spec : m_scenario.links) {
    LinkState link;
    link.spec = spec;
    link.node_a = m_index.at(spec.a);
    link.node_b = m_index.at(spec.b);
    const std::size_t idx = m_links.size();
    m_nodes[link.node_a]->faceLink[m_nodes[link.node_a]->fwd.add_face(spec.b)] = idx;
    m_nodes[link.node_b]->faceLink[m_nodes[link.node_b]->fwd.add_face(spec.a)] = idx;
    m_links.push_back(std::move(link));
  }

  auto metricOf = [this](const NodeId& x, const NodeId& y) {
    const LinkSpec* l = m_scenario.find_link(x, y);
    return PerfMetric{l->bandwidth, l->latency};
  };

  std::set<NodeId> pricedProducers;
  for (const auto& c : m_scenario.contents) {
    Node& n = *m_nodes[m_index.at(c.producer)];
    n.fwd.add_content(c.prefix);
    if (pricedProducers.insert(c.producer).second) {
      for (const auto& [face, peer] : n.fwd.faces()) {
        n.fwd.prices().set_price(face, c.price, Window{0, kForever}, metricOf(c.producer, peer));
      }
    }
  }

  for (const auto& p : m_scenario.prices) {
    Node& n = *m_nodes[m_index.at(p.node)];
    n.fwd.prices().set_price(*n.fwd.face_to(p.peer()), p.price, p.window, metricOf(p.node, p.peer()));
  }

  buildFibs();

  for (const auto& c : m_scenario.channels) {
    const auto& ka = m_nodes[m_index.at(c.a)]->fwd.keys();
    const auto& kb = m_nodes[m_index.at(c.b)]->fwd.keys();
    try {
      m_channels.open(m_ledger, c.a, c.b, c.deposit_a, c.deposit_b, ka, kb);
    }
    catch (const Error& e) {
      if (e.code() == Errc::InsufficientOnChainFunds) {
        throw ScenarioError(ScenarioErrc::InsufficientFunds, c.line, e.what());
      }
      throw;
    }
  }

  for (const auto& d : m_scenario.demands) {
    const std::size_t idx = m_index.at(d.consumer);
    auto cs = std::make_unique<ConsumerState>(ConsumerState{
      idx, d, consumer::ConsumerEngine(d.consumer, m_nodes[idx]->fwd.keys(), d.model, d.bandit), {}, {}, {}, 0.0, 0,
      {}, {}, {}, {}});
    m_nodes[idx]->consumer = cs.get();
    m_consumers.push_back(std::move(cs));
  }
}

void
Simulator::buildFibs()
{
  std::vector<Name> prefixes;
  for (const auto& c : m_scenario.contents) {
    if (std::find(prefixes.begin(), prefixes.end(), c.prefix) == prefixes.end()) {
      prefixes.push_back(c.prefix);
    }
  }

  auto serves = [this](std::size_t node, const Name& prefix) {
    const auto& f = m_nodes[node]->fwd;
    return f.role() == fw::Role::Producer && std::find(f.content().begin(), f.content().end(), prefix) != f.content().end();
  };

  // Can `start` (a router) reach a producer of `prefix` through routers only,
  // never passing `avoid`?
  auto reaches = [&](std::size_t start, std::size_t avoid, const Name& prefix) {
    std::vector<bool> seen(m_nodes.size(), false);
    std::vector<std::size_t> stack{start};
    seen[start] = seen[avoid] = true;
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      for (const auto& [face, peer] : m_nodes[cur]->fwd.faces()) {
        std::size_t next = m_index.at(peer);
        if (serves(next, prefix)) {
          return true;
        }
        if (!seen[next] && m_nodes[next]->fwd.role() == fw::Role::Router) {
          seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    return false;
  };

  for (std::size_t n = 0; n < m_nodes.size(); ++n) {
    auto& fwd = m_nodes[n]->fwd;
    if (fwd.role() == fw::Role::Producer) {
      continue;
    }
    for (const auto& prefix : prefixes) {
      std::vector<FaceId> faces;
      for (const auto& [face, peer] : fwd.faces()) {
        std::size_t m = m_index.at(peer);
        if (serves(m, prefix) || (m_nodes[m]->fwd.role() == fw::Role::Router && reaches(m, n, prefix))) {
          faces.push_back(face);
        }
      }
      if (!faces.empty()) {
        fwd.fib().insert(prefix, std::move(faces));
      }
    }
  }
}

void
Simulator::run()
{
  if (m_finished) {
    throw Error(Errc::InvalidArgument, "simulation already ran");
  }
  const Tick ticks = m_options.ticks;
  const Tick window = m_options.report_window;

  for (Tick t = 0; t < ticks; ++t) {
    step(t, true);
    if ((t + 1) % window == 0 && t + 1 < ticks) {
      closeWindow(t + 1, window);
      m_windowStart = t + 1;
    }
  }

  Tick latencySum = 0;
  for (const auto& l : m_links) {
    latencySum += l.spec.latency;
  }
  const Tick drainLimit = 10 * (m_options.pit_lifetime + latencySum) + 1000;
  Tick t = ticks;
  while (!quiescent() && m_drainTicks < drainLimit) {
    step(t++, false);
    ++m_drainTicks;
  }

  if (ticks > m_windowStart) {
    closeWindow(ticks, ticks - m_windowStart);
  }

  m_channels.settle_all(m_ledger);
  m_finished = true;
  checkInvariants();
}

void
Simulator::step(Tick now, bool issuing)
{
  if (issuing) {
    applyFaults(now);
  }
  deliverLinks(now);
  for (auto& cs : m_consumers) {
    consumerAct(*cs, now, issuing);
  }
  transmit(now);
  expire(now);
}

void
Simulator::applyFaults(Tick now)
{
  for (const auto& f : m_scenario.faults) {
    if (f.at != now) {
      continue;
    }
    auto& prices = m_nodes[m_index.at(f.node)]->fwd.prices();
    FaceId face = *m_nodes[m_index.at(f.node)]->fwd.face_to(f.peer());
    if (prices.active_entry(face, now)) {
      audit(prices.advertise(face, now), now);
    }
    const LinkSpec* l = m_scenario.find_link(f.link_a, f.link_b);
    prices.set_fault_injection(true);
    TagItem forged = prices.equivocate_for_test(face, f.price, f.window, PerfMetric{l->bandwidth, l->latency});
    prices.set_fault_injection(false);
    audit(forged, now);
  }
}

void
Simulator::deliverLinks(Tick now)
{
  for (auto& link : m_links) {
    for (int dir = 0; dir < 2; ++dir) {
      auto& d = dir == 0 ? link.ab : link.ba;
      const std::size_t to = dir == 0 ? link.node_b : link.node_a;
      const std::size_t from = dir == 0 ? link.node_a : link.node_b;
      while (!d.in_flight.empty() && d.in_flight.front().arrival <= now) {
        LinkState::InFlight f = std::move(d.in_flight.front());
        d.in_flight.pop_front();
        if (now < f.sent + link.spec.latency) {
          ++link.counters.early_arrivals;
        }
        ++link.counters.delivered;
        deliver(to, from, std::move(f.packet), now);
      }
    }
  }
}

void
Simulator::deliver(std::size_t to, std::size_t from, Packet pkt, Tick now)
{
  Node& node = *m_nodes[to];
  traceHop(pkt, node.spec.id);
  const FaceId face = *node.fwd.face_to(m_nodes[from]->spec.id);
  fw::ForwardingContext ctx{m_ledger, &m_channels, m_options.pit_lifetime};

  if (!pkt.is_interest() && pkt.probe && pkt.tag) {
    auditTag(*pkt.tag, now);
  }

  if (node.fwd.role() == fw::Role::Consumer) {
    if (pkt.is_interest()) {
      node.fwd.on_interest(face, std::move(pkt), now, ctx);
    }
    else if (node.consumer != nullptr) {
      consumerReceive(*node.consumer, std::move(pkt), now);
    }
    return;
  }

  fw::ForwardAction action = pkt.is_interest() ? node.fwd.on_interest(face, std::move(pkt), now, ctx)
                                               : node.fwd.on_data(face, std::move(pkt), now, ctx);
  if (action.forwarded()) {
    send(to, action.face, std::move(action.packet), now);
  }
}

void
Simulator::consumerReceive(ConsumerState& cs, Packet pkt, Tick now)
{
  if (pkt.probe) {
    if (cs.probeNonces.erase(pkt.nonce) == 0) {
      ++cs.counters.stray_data;
      return;
    }
    ++cs.counters.probe_replies;
    try {
      cs.engine.register_path(pkt, now, m_ledger);
    }
    catch (const Error&) {
      ++cs.counters.path_rejects;
    }
    return;
  }

  auto it = cs.outstanding.find(pkt.nonce);
  if (it == cs.outstanding.end()) {
    ++cs.counters.stray_data;
    return;
  }
  cs.window[it->second.path].record_delivery(now - it->second.sent, cs.demand.model.threshold);
  ++cs.counters.data_received;
  cs.outstanding.erase(it);
}

void
Simulator::consumerAct(ConsumerState& cs, Tick now, bool issuing)
{
  if (!issuing || now < cs.demand.start) {
    return;
  }
  Node& node = *m_nodes[cs.node];

  if (cs.engine.paths().empty() && !cs.probeDeadline) {
    ++cs.counters.probe_rounds;
    for (auto& probe : cs.engine.launch_probes(cs.demand.prefix, cs.demand.probes, m_rng)) {
      FaceId face;
      try {
        face = node.fwd.probe_next_face(probe.name);
      }
      catch (const Error&) {
        ++cs.counters.send_failures;
        continue;
      }
      cs.probeNonces.insert(probe.nonce);
      ++cs.counters.probes_sent;
      send(cs.node, face, std::move(probe), now);
    }
    cs.probeDeadline = now + m_options.pit_lifetime;
  }
  if (cs.engine.paths().empty()) {
    return;
  }

  cs.credit += cs.demand.rate;
  while (cs.credit >= 1.0) {
    cs.credit -= 1.0;
    const consumer::PathId id = cs.engine.select_path(m_rng);
    ++cs.counters.selections[id];
    if (m_options.trace) {
      cs.counters.choices.push_back(id);
    }
    Packet pkt;
    try {
      pkt = cs.engine.build_content_interest(id, cs.demand.prefix, cs.seq, m_channels, m_rng);
    }
    catch (const Error&) {
      ++cs.counters.send_failures;
      continue;
    }
    ++cs.seq;
    const auto& path = cs.engine.path(id);
    auto face = node.fwd.face_to(path.items.front().advertiser);
    if (!face) {
      ++cs.counters.send_failures;
      continue;
    }
    cs.outstanding[pkt.nonce] = {id, now};
    ++cs.window[id].sent;
    cs.windowCost[id] += path.total_cost;
    ++cs.counters.interests_sent;
    cs.counters.spent += path.total_cost;
    send(cs.node, *face, std::move(pkt), now);
  }
}

void
Simulator::send(std::size_t from, FaceId face, Packet pkt, Tick)
{
  Node& node = *m_nodes[from];
  if (m_options.trace) {
    Trace& tr = m_traces[pkt.nonce];
    auto& hops = pkt.is_interest() ? tr.interest_hops : tr.data_hops;
    if (hops.empty()) {
      hops.push_back(node.spec.id);
    }
  }
  LinkState& link = m_links[node.faceLink.at(face)];
  auto& d = from == link.node_a ? link.ab : link.ba;
  if (d.queue.size() >= kQueueLimit) {
    ++link.counters.queue_drops;
    return;
  }
  d.queue.push_back(std::move(pkt));
}

void
Simulator::transmit(Tick now)
{
  for (auto& link : m_links) {
    for (auto* d : {&link.ab, &link.ba}) {
      std::uint64_t sentNow = 0;
      while (!d->queue.empty() && sentNow < link.spec.bandwidth) {
        Packet pkt = std::move(d->queue.front());
        d->queue.pop_front();
        ++sentNow;
        ++link.counters.sent;
        if (link.spec.loss > 0.0 && m_rng.uniform01() < link.spec.loss) {
          ++link.counters.lost;
          continue;
        }
        d->in_flight.push_back({now, now + link.spec.latency, std::move(pkt)});
      }
      link.counters.max_sent_in_tick = std::max(link.counters.max_sent_in_tick, sentNow);
    }
  }
}

void
Simulator::expire(Tick now)
{
  for (auto& n : m_nodes) {
    n->fwd.pit().expire(now);
  }
  for (auto& cs : m_consumers) {
    for (auto it = cs->outstanding.begin(); it != cs->outstanding.end();) {
      if (it->second.sent + m_options.pit_lifetime <= now) {
        ++cs->counters.timeouts;
        ++cs->counters.paid_undelivered;
        ++cs->windowTimeouts[it->second.path];
        it = cs->outstanding.erase(it);
      }
      else {
        ++it;
      }
    }
    if (cs->probeDeadline && *cs->probeDeadline <= now) {
      cs->counters.timeouts += cs->probeNonces.size();
      cs->probeNonces.clear();
      cs->probeDeadline.reset();
    }
  }
}

void
Simulator::closeWindow(Tick end, Tick length)
{
  for (auto& cs : m_consumers) {
    for (consumer::PathId id : cs->engine.path_order()) {
      const consumer::PathStats stats = cs->window[id];
      MetricsRow row;
      row.tick = end;
      row.consumer = cs->demand.consumer;
      row.path_id = id;
      row.interests_sent = stats.sent;
      row.data_received = stats.delivered;
      row.cost_spent = cs->windowCost[id];
      if (stats.delivered > 0) {
        const double n = static_cast<double>(stats.delivered);
        row.mean_latency = static_cast<double>(stats.latency_sum) / n;
        row.frac_within_threshold = static_cast<double>(stats.within_threshold) / n;
        row.v_measured = consumer::measured_v(stats, cs->engine.model(), length);
      }
      else if (cs->windowTimeouts[id] > 0) {
        row.v_measured = 0.0;
      }
      if (row.v_measured) {
        const auto& path = cs->engine.path(id);
        row.u_measured = consumer::utility(*row.v_measured, path.total_cost, cs->engine.model().eps_floor);
        cs->engine.bandit().update(id, *row.u_measured);
      }
      m_rows.push_back(std::move(row));
    }
    cs->window.clear();
    cs->windowCost.clear();
    cs->windowTimeouts.clear();
  }
}

void
Simulator::audit(const TagItem& item, Tick now)
{
  if (!m_options.watcher || !m_ledger.is_registered(item.advertiser)) {
    return;
  }
  auto& seen = m_seen[{item.advertiser, item.face}];
  if (std::find(seen.begin(), seen.end(), item) != seen.end()) {
    return;
  }
  for (const auto& prior : seen) {
    if (!pricing::terms_conflict(prior, item)) {
      continue;
    }
    if (m_ledger.account(item.advertiser).flagged) {
      break;
    }
    ledger::Verdict v = m_ledger.submit_conflict(prior, item, kWatcher);
    m_audits.push_back({now, prior, item, v});
    if (v.kind == ledger::VerdictKind::Punished) {
      break;
    }
  }
  seen.push_back(item);
}

void
Simulator::auditTag(const PathTag& tag, Tick now)
{
  for (const auto& item : tag.items()) {
    audit(item, now);
  }
}

void
Simulator::traceHop(const Packet& pkt, const NodeId& at)
{
  if (!m_options.trace) {
    return;
  }
  Trace& tr = m_traces[pkt.nonce];
  (pkt.is_interest() ? tr.interest_hops : tr.data_hops).push_back(at);
}

bool
Simulator::quiescent() const
{
  for (const auto& l : m_links) {
    if (!l.ab.queue.empty() || !l.ab.in_flight.empty() || !l.ba.queue.empty() || !l.ba.in_flight.empty()) {
      return false;
    }
  }
  for (const auto& cs : m_consumers) {
    if (!cs->outstanding.empty() || cs->probeDeadline) {
      return false;
    }
  }
  return true;
}

void
Simulator::checkInvariants() const
{
  const ledger::Totals t = m_ledger.totals();
  if (!t.conserved()) {
    throw Error(Errc::InvariantViolation, "ledger totals do not conserve minted tokens");
  }
  if (t.escrow != Tokens(0)) {
    throw Error(Errc::InvariantViolation, "escrow left after settlement");
  }
  std::int64_t flow = 0;
  for (const auto& n : m_nodes) {
    flow += revenue(n->spec.id);
  }
  if (flow != 0) {
    throw Error(Errc::InvariantViolation, "channel flows do not sum to zero");
  }
  for (const auto& l : m_links) {
    if (l.counters.early_arrivals != 0 || l.counters.max_sent_in_tick > l.spec.bandwidth) {
      throw Error(Errc::InvariantViolation, "link " + l.spec.a.value + "-" + l.spec.b.value + " broke causality or capacity");
    }
  }
}

const NodeSpec&
Simulator::node_spec(std::size_t i) const
{
  return m_nodes.at(i)->spec;
}

const fw::Forwarder&
Simulator::forwarder(std::size_t i) const
{
  return m_nodes.at(i)->fwd;
}

const consumer::ConsumerEngine*
Simulator::consumer_engine(const NodeId& id) const
{
  auto it = m_index.find(id);
  if (it == m_index.end() || m_nodes[it->second]->consumer == nullptr) {
    return nullptr;
  }
  return &m_nodes[it->second]->consumer->engine;
}

const ConsumerCounters*
Simulator::consumer_counters(const NodeId& id) const
{
  auto it = m_index.find(id);
  if (it == m_index.end() || m_nodes[it->second]->consumer == nullptr) {
    return nullptr;
  }
  return &m_nodes[it->second]->consumer->counters;
}

std::int64_t
Simulator::revenue(const NodeId& id) const
{
  std::int64_t total = 0;
  for (const auto& [_, ch] : m_channels.channels()) {
    if (!ch.is_party(id)) {
      continue;
    }
    const Tokens deposit = ch.party_of(id) == Party::A ? ch.deposit_a() : ch.deposit_b();
    total += static_cast<std::int64_t>(ch.balance_of(id).value()) - static_cast<std::int64_t>(deposit.value());
  }
  return total;
}

} // namespace pptp::sim
