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

// Shared fixtures, generators and independent oracles for the test suites.
// Nothing here calls into the code under test to compute an expected value.

#pragma once

#include "pptp/core/rng.hpp"
#include "pptp/core/types.hpp"
#include "pptp/ledger/ledger.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pptp::test {

/// In-memory key directory for tests that do not need a ledger.
class Keyring : public IdentityDirectory
{
public:
  KeyPair
  add(const std::string& id);

  const KeyPair&
  keys(const std::string& id) const;

  const PublicKey*
  find_key(const NodeId& node) const override;

private:
  std::map<std::string, KeyPair> m_keys;
};

NodeId
node(const std::string& id);

Name
name(const std::string& uri);

/// A random TagItem with a random (not necessarily valid) signature.
TagItem
random_item(Rng& rng);

CommitmentTx
random_commitment(Rng& rng);

// ---- oracles ---------------------------------------------------------------

namespace oracle {

/// Cheque amount arriving at each node of a priced path: element i is the
/// total minus the prices of hops before i.
std::vector<std::uint64_t>
cheque_chain(const std::vector<std::uint64_t>& hop_prices);

/// Sign of v1*c2 - v2*c1 with exact integer arithmetic.
int
cross_sign(std::uint64_t v1, std::uint64_t c1, std::uint64_t v2, std::uint64_t c2);

/// log_base(v / c) computed as a ratio of natural logs of the operands.
double
log_utility(double v, double c, double base);

/// TagItem core laid out by hand, byte by byte.
Bytes
tag_item_core_bytes(const TagItem& item);

struct Graph
{
  std::vector<std::string> ids;
  std::map<std::string, std::string> role; ///< "consumer", "router", "producer"
  std::map<std::string, std::set<std::string>> adj;

  void
  add_node(const std::string& id, const std::string& role_name);

  void
  add_edge(const std::string& a, const std::string& b);
};

/// Every simple path from src to dst whose interior nodes are routers,
/// found by exhaustive depth-first search.
std::set<std::vector<std::string>>
enumerate_paths(const Graph& g, const std::string& src, const std::string& dst);

/// Minted tokens recomputed from raw accounts and escrows:
/// balances + deposits + open escrow + burned, where burned is the sum of
/// Punished verdict amounts.
std::uint64_t
ledger_holdings(const ledger::Ledger& l);

} // namespace oracle

// ---- generators ------------------------------------------------------------

struct GeneratedScenario
{
  std::string text;
  oracle::Graph graph;
  std::string consumer;
  std::string producer;
  std::uint64_t minted = 0; ///< sum of balance + deposit over all nodes
};

/// Consumer C and producer P joined by k router chains of the given lengths.
/// Every link gets a channel and every router a price.
GeneratedScenario
disjoint_paths_scenario(const std::vector<std::size_t>& chain_lengths, std::uint64_t seed, std::size_t probes,
                        double rate, std::uint64_t ticks);

struct RandomScenarioParams
{
  std::size_t max_nodes = 8;
  std::uint64_t ticks = 300;
  bool loss = false;
  bool fault = false;    ///< inject one equivocation
  bool schedules = true; ///< several price windows per face
};

/// A random connected topology: consumer C, producer P, 1-6 routers, random
/// extra links, honest price schedules with disjoint windows, channels on
/// every link. With `fault`, one router equivocates once with a price that
/// differs from its honest price at that time.
GeneratedScenario
random_scenario(Rng& rng, const RandomScenarioParams& params);

} // namespace pptp::test
