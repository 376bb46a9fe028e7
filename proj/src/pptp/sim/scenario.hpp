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

#include "pptp/consumer/bandit.hpp"
#include "pptp/consumer/utility.hpp"
#include "pptp/core/types.hpp"
#include "pptp/forwarding/forwarder.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pptp::sim {

enum class ScenarioErrc : std::uint8_t {
  SyntaxError,
  DanglingReference,
  DuplicateDirective,
  ConflictingPrice,
  InsufficientFunds, ///< a channel deposit exceeds the node's balance
};

std::string_view to_string(ScenarioErrc kind) noexcept;

class ScenarioError : public std::runtime_error
{
public:
  ScenarioError(ScenarioErrc kind, std::size_t line, const std::string& what);

  ScenarioErrc
  kind() const noexcept
  {
    return m_kind;
  }

  std::size_t
  line() const noexcept
  {
    return m_line;
  }

private:
  ScenarioErrc m_kind;
  std::size_t m_line;
};

struct NodeSpec
{
  NodeId id;
  fw::Role role = fw::Role::Router;
  Tokens balance;
  Tokens deposit;
  std::size_t line = 0;
};

struct LinkSpec
{
  NodeId a;
  NodeId b;
  Tick latency = 1;
  std::uint64_t bandwidth = 1; ///< packets per tick, each direction
  double loss = 0.0;
  std::size_t line = 0;

  bool
  joins(const NodeId& x, const NodeId& y) const
  {
    return (a == x && b == y) || (a == y && b == x);
  }
};

struct PriceSpec
{
  NodeId node;
  NodeId link_a;
  NodeId link_b;
  Tokens price;
  Window window;
  std::size_t line = 0;

  const NodeId&
  peer() const
  {
    return node == link_a ? link_b : link_a;
  }
};

struct ContentSpec
{
  NodeId producer;
  Name prefix;
  Tokens price;
  std::size_t line = 0;
};

struct DemandSpec
{
  NodeId consumer;
  Name prefix;
  double rate = 1.0; ///< content Interests per tick
  consumer::UtilityModel model;
  consumer::BanditParams bandit;
  std::size_t probes = 1;
  Tick start = 0;
  std::size_t line = 0;
};

struct ChannelSpec
{
  NodeId a;
  NodeId b;
  Tokens deposit_a;
  Tokens deposit_b;
  std::size_t line = 0;
};

/// `fault equivocate`: at tick `at` the node signs a second advertisement for
/// the face on link_a-link_b that ignores its own schedule.
struct FaultSpec
{
  NodeId node;
  NodeId link_a;
  NodeId link_b;
  Tokens price;
  Window window;
  Tick at = 0;
  std::size_t line = 0;

  const NodeId&
  peer() const
  {
    return node == link_a ? link_b : link_a;
  }
};

/// Optional `run` directive; command-line options take precedence.
struct RunSpec
{
  std::optional<Tick> ticks;
  std::optional<std::uint64_t> seed;
  std::optional<Tick> report_window;
  std::optional<Tick> pit_lifetime;
};

struct Scenario
{
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<PriceSpec> prices;
  std::vector<ContentSpec> contents;
  std::vector<DemandSpec> demands;
  std::vector<ChannelSpec> channels;
  std::vector<FaultSpec> faults;
  RunSpec run;

  const NodeSpec*
  find_node(const NodeId& id) const;

  const LinkSpec*
  find_link(const NodeId& x, const NodeId& y) const;
};

/// Parses the line-oriented scenario format (see docs/scenario-format.md).
/// Throws ScenarioError carrying the 1-based line number.
Scenario
parse_scenario(std::string_view text);

Scenario
load_scenario(const std::string& path);

} // namespace pptp::sim
