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

#include "support.hpp"

#include "pptp/core/crypto.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace pptp::test {

KeyPair
Keyring::add(const std::string& id)
{
  KeyPair k = derive_keypair(0, id);
  m_keys[id] = k;
  return k;
}

const KeyPair&
Keyring::keys(const std::string& id) const
{
  return m_keys.at(id);
}

const PublicKey*
Keyring::find_key(const NodeId& node) const
{
  auto it = m_keys.find(node.value);
  return it == m_keys.end() ? nullptr : &it->second.pub;
}

NodeId
node(const std::string& id)
{
  return NodeId{id};
}

Name
name(const std::string& uri)
{
  return Name::parse(uri);
}

TagItem
random_item(Rng& rng)
{
  TagItem item;
  std::string adv;
  const std::size_t len = 1 + rng.below(12);
  for (std::size_t i = 0; i < len; ++i) {
    adv += static_cast<char>('a' + rng.below(26));
  }
  item.advertiser = NodeId{adv};
  item.face = FaceId{static_cast<std::uint32_t>(rng.next())};
  item.price = Tokens(rng.next());
  const Tick a = rng.next();
  const Tick b = rng.next();
  item.window = Window{std::min(a, b), std::max(a, b)};
  item.metric = PerfMetric{rng.next(), rng.next()};
  for (auto& byte : item.signature) {
    byte = static_cast<std::uint8_t>(rng.below(256));
  }
  return item;
}

CommitmentTx
random_commitment(Rng& rng)
{
  CommitmentTx tx;
  tx.channel = rng.next();
  tx.seq = rng.next();
  tx.balance_a = Tokens(rng.next() >> 1);
  tx.balance_b = Tokens(rng.next() >> 1);
  auto randomSig = [&rng] {
    Signature s{};
    for (auto& byte : s) {
      byte = static_cast<std::uint8_t>(rng.below(256));
    }
    return s;
  };
  if (rng.below(2) == 1) {
    tx.sig_a = randomSig();
  }
  if (rng.below(2) == 1) {
    tx.sig_b = randomSig();
  }
  return tx;
}

namespace oracle {

std::vector<std::uint64_t>
cheque_chain(const std::vector<std::uint64_t>& hop_prices)
{
  std::uint64_t total = 0;
  for (auto p : hop_prices) {
    total += p;
  }
  std::vector<std::uint64_t> out;
  std::uint64_t paidUpstream = 0;
  for (auto p : hop_prices) {
    out.push_back(total - paidUpstream);
    paidUpstream += p;
  }
  return out;
}

int
cross_sign(std::uint64_t v1, std::uint64_t c1, std::uint64_t v2, std::uint64_t c2)
{
  const unsigned __int128 lhs = static_cast<unsigned __int128>(v1) * c2;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(v2) * c1;
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

double
log_utility(double v, double c, double base)
{
  return (std::log(v) - std::log(c)) / std::log(base);
}

Bytes
tag_item_core_bytes(const TagItem& item)
{
  Bytes out;
  auto be = [&out](std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) {
      out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
    }
  };
  out.push_back('T');
  out.push_back(1);
  be(item.advertiser.value.size(), 2);
  for (char ch : item.advertiser.value) {
    out.push_back(static_cast<std::uint8_t>(ch));
  }
  be(item.face.value, 4);
  be(item.price.value(), 8);
  be(item.window.not_before, 8);
  be(item.window.not_after, 8);
  be(item.metric.adv_bandwidth, 8);
  be(item.metric.adv_latency, 8);
  return out;
}

void
Graph::add_node(const std::string& id, const std::string& role_name)
{
  ids.push_back(id);
  role[id] = role_name;
  adj[id];
}

void
Graph::add_edge(const std::string& a, const std::string& b)
{
  adj[a].insert(b);
  adj[b].insert(a);
}

std::set<std::vector<std::string>>
enumerate_paths(const Graph& g, const std::string& src, const std::string& dst)
{
  std::set<std::vector<std::string>> out;
  std::vector<std::string> path{src};
  std::set<std::string> onPath{src};
  std::function<void(const std::string&)> dfs = [&](const std::string& cur) {
    for (const auto& next : g.adj.at(cur)) {
      if (onPath.count(next) != 0) {
        continue;
      }
      if (next == dst) {
        path.push_back(next);
        out.insert(path);
        path.pop_back();
        continue;
      }
      if (g.role.at(next) != "router") {
        continue;
      }
      path.push_back(next);
      onPath.insert(next);
      dfs(next);
      onPath.erase(next);
      path.pop_back();
    }
  };
  dfs(src);
  return out;
}

std::uint64_t
ledger_holdings(const ledger::Ledger& l)
{
  std::uint64_t sum = 0;
  for (const auto& [_, acct] : l.accounts()) {
    sum += acct.balance.value() + acct.security_deposit.value();
  }
  for (const auto& [_, e] : l.escrows()) {
    if (!e.settled) {
      sum += e.deposit_a.value() + e.deposit_b.value();
    }
  }
  for (const auto& d : l.disputes()) {
    if (d.verdict.kind == ledger::VerdictKind::Punished) {
      sum += d.verdict.burned.value();
    }
  }
  return sum;
}

} // namespace oracle

namespace {

struct Writer
{
  std::ostringstream text;
  GeneratedScenario gen;

  void
  addNode(const std::string& id, const std::string& role, std::uint64_t balance, std::uint64_t deposit)
  {
    text << "node " << id << " role=" << role << " balance=" << balance << " deposit=" << deposit << "\n";
    gen.graph.add_node(id, role);
    gen.minted += balance + deposit;
  }

  void
  addLink(const std::string& a, const std::string& b, std::uint64_t latency, std::uint64_t bw, double loss)
  {
    text << "link " << a << " " << b << " latency=" << latency << " bw=" << bw;
    if (loss > 0.0) {
      text << " loss=" << loss;
    }
    text << "\n";
    gen.graph.add_edge(a, b);
  }
};

} // namespace

GeneratedScenario
disjoint_paths_scenario(const std::vector<std::size_t>& chain_lengths, std::uint64_t seed, std::size_t probes,
                        double rate, std::uint64_t ticks)
{
  Rng rng(seed);
  Writer w;
  w.gen.consumer = "C";
  w.gen.producer = "P";
  w.addNode("C", "consumer", 1000000, 0);
  w.addNode("P", "producer", 1000, 50);

  std::vector<std::vector<std::string>> chains;
  for (std::size_t i = 0; i < chain_lengths.size(); ++i) {
    std::vector<std::string> chain;
    for (std::size_t j = 0; j < chain_lengths[i]; ++j) {
      chain.push_back("R" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      w.addNode(chain.back(), "router", 10000, 50);
    }
    chains.push_back(chain);
  }

  std::ostringstream rest;
  for (const auto& chain : chains) {
    std::vector<std::string> hops{"C"};
    hops.insert(hops.end(), chain.begin(), chain.end());
    hops.push_back("P");
    for (std::size_t h = 0; h + 1 < hops.size(); ++h) {
      w.addLink(hops[h], hops[h + 1], 1 + rng.below(3), 10, 0.0);
      rest << "channel " << hops[h] << " " << hops[h + 1] << " dep_a=" << (h == 0 ? 100000 : 5000) << " dep_b=0\n";
      if (h > 0) {
        rest << "price " << hops[h] << " " << hops[h] << "-" << hops[h + 1] << " price=" << 1 + rng.below(5)
             << " window=0:1000000\n";
      }
    }
  }
  w.text << rest.str();
  w.text << "content P prefix=/data price=2\n";
  w.text << "demand C prefix=/data/item rate=" << rate << " model=delay probes=" << probes << "\n";
  w.text << "run ticks=" << ticks << " seed=" << seed << "\n";
  w.gen.text = w.text.str();
  return w.gen;
}

GeneratedScenario
random_scenario(Rng& rng, const RandomScenarioParams& params)
{
  Writer w;
  w.gen.consumer = "C";
  w.gen.producer = "P";
  const std::size_t routers = 1 + rng.below(std::max<std::size_t>(params.max_nodes, 3) - 2);
  std::vector<std::string> rs;
  w.addNode("C", "consumer", 1000000, 0);
  for (std::size_t i = 0; i < routers; ++i) {
    rs.push_back("R" + std::to_string(i + 1));
    w.addNode(rs.back(), "router", 100000, 10 + rng.below(91));
  }
  w.addNode("P", "producer", 1000, 10 + rng.below(91));

  std::set<std::pair<std::string, std::string>> links;
  auto link = [&](const std::string& a, const std::string& b) {
    if (a == b || links.count({a, b}) != 0 || links.count({b, a}) != 0) {
      return;
    }
    links.insert({a, b});
    const double loss = params.loss ? static_cast<double>(rng.below(11)) / 100.0 : 0.0;
    w.addLink(a, b, 1 + rng.below(5), 1 + rng.below(5), loss);
  };

  link("C", rs[rng.below(rs.size())]);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    link(rs[rng.below(i)], rs[i]);
  }
  link(rs[rng.below(rs.size())], "P");
  const std::size_t extras = rng.below(rs.size() + 1);
  for (std::size_t e = 0; e < extras; ++e) {
    const std::uint64_t kind = rng.below(3);
    if (kind == 0) {
      link("C", rs[rng.below(rs.size())]);
    }
    else if (kind == 1) {
      link(rs[rng.below(rs.size())], "P");
    }
    else {
      link(rs[rng.below(rs.size())], rs[rng.below(rs.size())]);
    }
  }

  std::ostringstream rest;
  // honest schedules: windows tile [0, 1000000] without overlap
  struct Entry
  {
    Tick from;
    Tick to;
    std::uint64_t price;
  };
  std::map<std::pair<std::string, std::string>, std::vector<Entry>> schedule;
  for (const auto& [a, b] : links) {
    for (const auto& [self, peer] : {std::pair{a, b}, std::pair{b, a}}) {
      if (w.gen.graph.role[self] != "router") {
        continue;
      }
      std::vector<Entry> entries;
      Tick from = 0;
      const std::size_t pieces = params.schedules ? 1 + rng.below(3) : 1;
      for (std::size_t k = 0; k < pieces; ++k) {
        Tick to = (k + 1 == pieces) ? 1000000 : from + 20 + rng.below(params.ticks);
        entries.push_back({from, to, rng.below(6)});
        rest << "price " << self << " " << a << "-" << b << " price=" << entries.back().price << " window=" << from
             << ":" << to << "\n";
        from = to + 1;
      }
      schedule[{self, peer}] = entries;
    }
  }

  for (const auto& [a, b] : links) {
    const bool consumerSide = a == "C" || b == "C";
    const std::string& payer = (b == "C") ? b : a;
    const std::string& payee = (b == "C") ? a : b;
    rest << "channel " << payer << " " << payee << " dep_a=" << (consumerSide ? 200000 : 5000)
         << " dep_b=" << (consumerSide || payee == "P" || payer == "P" ? 0 : 5000) << "\n";
  }

  rest << "content P prefix=/data price=" << 1 + rng.below(4) << "\n";
  static const char* rates[] = {"0.1", "0.2", "0.5"};
  rest << "demand C prefix=/data/x rate=" << rates[rng.below(3)]
       << " model=" << (rng.below(2) == 0 ? "delay" : "throughput") << " probes=" << 1 + rng.below(3) << "\n";

  if (params.fault) {
    // pick a router face with an honest price at the fault tick
    std::vector<std::pair<std::string, std::string>> faces;
    for (const auto& [key, _] : schedule) {
      faces.push_back(key);
    }
    const auto& [self, peer] = faces[rng.below(faces.size())];
    const Tick at = 5 + rng.below(params.ticks - 10);
    std::uint64_t honest = 0;
    for (const auto& e : schedule[{self, peer}]) {
      if (e.from <= at && at <= e.to) {
        honest = e.price;
      }
    }
    const Tick half = 1 + rng.below(50);
    rest << "fault equivocate " << self << " " << self << "-" << peer << " price=" << honest + 1 + rng.below(5)
         << " window=" << (at > half ? at - half : 0) << ":" << at + half << " at=" << at << "\n";
  }

  rest << "run ticks=" << params.ticks << "\n";
  w.text << rest.str();
  w.gen.text = w.text.str();
  return w.gen;
}

} // namespace pptp::test
