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

#include "pptp/sim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace pptp::sim {

std::string_view
to_string(ScenarioErrc kind) noexcept
{
  switch (kind) {
    case ScenarioErrc::SyntaxError: return "SyntaxError";
    case ScenarioErrc::DanglingReference: return "DanglingReference";
    case ScenarioErrc::DuplicateDirective: return "DuplicateDirective";
    case ScenarioErrc::ConflictingPrice: return "ConflictingPrice";
    case ScenarioErrc::InsufficientFunds: return "InsufficientFunds";
  }
  return "";
}

ScenarioError::ScenarioError(ScenarioErrc kind, std::size_t line, const std::string& what)
  : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) + ": " + what)
  , m_kind(kind)
  , m_line(line)
{
}

const NodeSpec*
Scenario::find_node(const NodeId& id) const
{
  for (const auto& n : nodes) {
    if (n.id == id) {
      return &n;
    }
  }
  return nullptr;
}

const LinkSpec*
Scenario::find_link(const NodeId& x, const NodeId& y) const
{
  for (const auto& l : links) {
    if (l.joins(x, y)) {
      return &l;
    }
  }
  return nullptr;
}

namespace {

struct Directive
{
  std::size_t line = 0;
  std::string keyword;
  std::vector<std::string> args;
  std::map<std::string, std::string> options;
};

[[noreturn]] void
fail(ScenarioErrc kind, std::size_t line, const std::string& what)
{
  throw ScenarioError(kind, line, what);
}

std::vector<Directive>
tokenize(std::string_view text)
{
  std::vector<Directive> out;
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineNo;

    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream in(line);
    std::string tok;
    Directive d;
    d.line = lineNo;
    while (in >> tok) {
      if (d.keyword.empty()) {
        d.keyword = tok;
        continue;
      }
      auto eq = tok.find('=');
      if (eq == std::string::npos) {
        d.args.push_back(tok);
        continue;
      }
      std::string key = tok.substr(0, eq);
      if (key.empty() || eq + 1 == tok.size()) {
        fail(ScenarioErrc::SyntaxError, lineNo, "malformed option '" + tok + "'");
      }
      if (!d.options.emplace(key, tok.substr(eq + 1)).second) {
        fail(ScenarioErrc::SyntaxError, lineNo, "option '" + key + "' given twice");
      }
    }
    if (!d.keyword.empty()) {
      out.push_back(std::move(d));
    }
  }
  return out;
}

class Reader
{
public:
  explicit Reader(Directive& d)
    : m_d(d)
  {
  }

  void
  expectArgs(std::size_t n) const
  {
    if (m_d.args.size() != n) {
      fail(ScenarioErrc::SyntaxError, m_d.line,
           "'" + m_d.keyword + "' takes " + std::to_string(n) + " positional argument(s)");
    }
  }

  NodeId
  nodeArg(std::size_t i) const
  {
    return checkId(m_d.args.at(i));
  }

  std::pair<NodeId, NodeId>
  linkArg(std::size_t i) const
  {
    const auto& s = m_d.args.at(i);
    auto dash = s.find('-');
    if (dash == std::string::npos) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "expected <a>-<b>, got '" + s + "'");
    }
    return {checkId(s.substr(0, dash)), checkId(s.substr(dash + 1))};
  }

  bool
  has(const std::string& key) const
  {
    return m_d.options.count(key) != 0;
  }

  std::string
  take(const std::string& key)
  {
    auto it = m_d.options.find(key);
    if (it == m_d.options.end()) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "missing option '" + key + "'");
    }
    std::string v = it->second;
    m_d.options.erase(it);
    return v;
  }

  std::uint64_t
  takeUint(const std::string& key)
  {
    return parseUint(take(key), key);
  }

  std::uint64_t
  takeUint(const std::string& key, std::uint64_t def)
  {
    return has(key) ? takeUint(key) : def;
  }

  double
  takeReal(const std::string& key)
  {
    std::string s = take(key);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "bad number for '" + key + "': " + s);
    }
    return v;
  }

  double
  takeReal(const std::string& key, double def)
  {
    return has(key) ? takeReal(key) : def;
  }

  Window
  takeWindow(const std::string& key)
  {
    std::string s = take(key);
    auto colon = s.find(':');
    if (colon == std::string::npos) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "window must be <t0>:<t1>");
    }
    Window w{parseUint(s.substr(0, colon), key), parseUint(s.substr(colon + 1), key)};
    if (!w.valid()) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "window start after end");
    }
    return w;
  }

  Name
  takeName(const std::string& key)
  {
    std::string s = take(key);
    try {
      return Name::parse(s);
    }
    catch (const Error&) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "bad name '" + s + "'");
    }
  }

  /// Rejects options nobody consumed.
  void
  done() const
  {
    if (!m_d.options.empty()) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "unknown option '" + m_d.options.begin()->first + "'");
    }
  }

private:
  NodeId
  checkId(const std::string& s) const
  {
    if (s.empty()) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "empty node id");
    }
    for (char c : s) {
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
      if (!ok) {
        fail(ScenarioErrc::SyntaxError, m_d.line, "node ids are [A-Za-z0-9_]+: '" + s + "'");
      }
    }
    return NodeId{s};
  }

  std::uint64_t
  parseUint(const std::string& s, const std::string& key) const
  {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail(ScenarioErrc::SyntaxError, m_d.line, "bad unsigned integer for '" + key + "': " + s);
    }
    return v;
  }

  Directive& m_d;
};

fw::Role
parseRole(const std::string& s, std::size_t line)
{
  if (s == "consumer") {
    return fw::Role::Consumer;
  }
  if (s == "router") {
    return fw::Role::Router;
  }
  if (s == "producer") {
    return fw::Role::Producer;
  }
  fail(ScenarioErrc::SyntaxError, line, "unknown role '" + s + "'");
}

class Builder
{
public:
  Scenario
  build(std::vector<Directive>& directives)
  {
    for (auto& d : directives) {
      if (d.keyword == "node") {
        node(d);
      }
    }
    if (m_sc.nodes.empty()) {
      fail(ScenarioErrc::SyntaxError, directives.empty() ? 1 : directives.back().line, "no nodes");
    }
    for (auto& d : directives) {
      if (d.keyword == "link") {
        link(d);
      }
    }
    for (auto& d : directives) {
      if (d.keyword == "node" || d.keyword == "link") {
        continue;
      }
      if (d.keyword == "price") {
        price(d);
      }
      else if (d.keyword == "content") {
        content(d);
      }
      else if (d.keyword == "demand") {
        demand(d);
      }
      else if (d.keyword == "channel") {
        channel(d);
      }
      else if (d.keyword == "fault") {
        fault(d);
      }
      else if (d.keyword == "run") {
        run(d);
      }
      else {
        fail(ScenarioErrc::SyntaxError, d.line, "unknown directive '" + d.keyword + "'");
      }
    }
    return std::move(m_sc);
  }

private:
  const NodeSpec&
  requireNode(const NodeId& id, std::size_t line) const
  {
    const NodeSpec* n = m_sc.find_node(id);
    if (n == nullptr) {
      fail(ScenarioErrc::DanglingReference, line, "unknown node '" + id.value + "'");
    }
    return *n;
  }

  const LinkSpec&
  requireLink(const NodeId& a, const NodeId& b, std::size_t line) const
  {
    requireNode(a, line);
    requireNode(b, line);
    const LinkSpec* l = m_sc.find_link(a, b);
    if (l == nullptr) {
      fail(ScenarioErrc::DanglingReference, line, "no link " + a.value + "-" + b.value);
    }
    return *l;
  }

  void
  node(Directive& d)
  {
    Reader r(d);
    r.expectArgs(1);
    NodeSpec n;
    n.id = r.nodeArg(0);
    n.line = d.line;
    n.role = parseRole(r.take("role"), d.line);
    n.balance = Tokens(r.takeUint("balance", 0));
    n.deposit = Tokens(r.takeUint("deposit", 0));
    r.done();
    if (m_sc.find_node(n.id) != nullptr) {
      fail(ScenarioErrc::DuplicateDirective, d.line, "node '" + n.id.value + "' already declared");
    }
    m_sc.nodes.push_back(std::move(n));
  }

  void
  link(Directive& d)
  {
    Reader r(d);
    r.expectArgs(2);
    LinkSpec l;
    l.a = r.nodeArg(0);
    l.b = r.nodeArg(1);
    l.line = d.line;
    l.latency = r.takeUint("latency");
    l.bandwidth = r.takeUint("bw");
    l.loss = r.takeReal("loss", 0.0);
    r.done();
    requireNode(l.a, d.line);
    requireNode(l.b, d.line);
    if (l.a == l.b) {
      fail(ScenarioErrc::SyntaxError, d.line, "self link");
    }
    if (l.latency == 0 || l.bandwidth == 0) {
      fail(ScenarioErrc::SyntaxError, d.line, "latency and bw must be >= 1");
    }
    if (!(l.loss >= 0.0 && l.loss < 1.0)) {
      fail(ScenarioErrc::SyntaxError, d.line, "loss must be in [0, 1)");
    }
    if (m_sc.find_link(l.a, l.b) != nullptr) {
      fail(ScenarioErrc::DuplicateDirective, d.line, "link " + l.a.value + "-" + l.b.value + " already declared");
    }
    m_sc.links.push_back(std::move(l));
  }

  void
  price(Directive& d)
  {
    Reader r(d);
    r.expectArgs(2);
    PriceSpec p;
    p.node = r.nodeArg(0);
    std::tie(p.link_a, p.link_b) = r.linkArg(1);
    p.line = d.line;
    p.price = Tokens(r.takeUint("price"));
    p.window = r.takeWindow("window");
    r.done();

    const NodeSpec& n = requireNode(p.node, d.line);
    requireLink(p.link_a, p.link_b, d.line);
    if (p.node != p.link_a && p.node != p.link_b) {
      fail(ScenarioErrc::DanglingReference, d.line, p.node.value + " is not an endpoint of that link");
    }
    if (n.role != fw::Role::Router) {
      fail(ScenarioErrc::SyntaxError, d.line, "price directives apply to routers (producers use content price=)");
    }
    for (const auto& q : m_sc.prices) {
      if (q.node != p.node || q.peer() != p.peer()) {
        continue;
      }
      if (q.window == p.window && q.price == p.price) {
        fail(ScenarioErrc::DuplicateDirective, d.line, "same price already declared on line " + std::to_string(q.line));
      }
      if (overlap(q.window, p.window) && q.price != p.price) {
        fail(ScenarioErrc::ConflictingPrice, d.line, "overlaps a different price on line " + std::to_string(q.line));
      }
    }
    m_sc.prices.push_back(std::move(p));
  }

  void
  content(Directive& d)
  {
    Reader r(d);
    r.expectArgs(1);
    ContentSpec c;
    c.producer = r.nodeArg(0);
    c.line = d.line;
    c.prefix = r.takeName("prefix");
    c.price = Tokens(r.takeUint("price"));
    r.done();
    if (requireNode(c.producer, d.line).role != fw::Role::Producer) {
      fail(ScenarioErrc::SyntaxError, d.line, c.producer.value + " is not a producer");
    }
    for (const auto& o : m_sc.contents) {
      if (o.producer != c.producer) {
        continue;
      }
      if (o.prefix == c.prefix) {
        fail(ScenarioErrc::DuplicateDirective, d.line, "content already declared on line " + std::to_string(o.line));
      }
      if (o.price != c.price) {
        fail(ScenarioErrc::ConflictingPrice, d.line, "a producer advertises one price on every face");
      }
    }
    m_sc.contents.push_back(std::move(c));
  }

  void
  demand(Directive& d)
  {
    Reader r(d);
    r.expectArgs(1);
    DemandSpec dm;
    dm.consumer = r.nodeArg(0);
    dm.line = d.line;
    dm.prefix = r.takeName("prefix");
    dm.rate = r.takeReal("rate");
    std::string model = r.take("model");
    if (model == "delay") {
      dm.model.kind = consumer::ModelKind::Delay;
    }
    else if (model == "throughput") {
      dm.model.kind = consumer::ModelKind::Throughput;
    }
    else {
      fail(ScenarioErrc::SyntaxError, d.line, "model must be delay or throughput");
    }
    dm.probes = r.takeUint("probes", 1);
    dm.start = r.takeUint("start", 0);
    dm.model.alpha = r.takeReal("alpha", dm.model.alpha);
    dm.model.beta = r.takeReal("beta", dm.model.beta);
    dm.model.eps_floor = r.takeReal("floor", dm.model.eps_floor);
    dm.model.threshold = r.takeUint("threshold", dm.model.threshold);
    dm.bandit.eps0 = r.takeReal("eps0", dm.bandit.eps0);
    dm.bandit.tau = r.takeReal("tau", dm.bandit.tau);
    dm.bandit.gamma = r.takeReal("gamma", dm.bandit.gamma);
    r.done();

    if (!(dm.rate > 0.0) || dm.probes == 0) {
      fail(ScenarioErrc::SyntaxError, d.line, "rate must be > 0 and probes >= 1");
    }
    try {
      dm.model.validate();
      dm.bandit.validate();
    }
    catch (const Error& e) {
      fail(ScenarioErrc::SyntaxError, d.line, e.what());
    }
    if (requireNode(dm.consumer, d.line).role != fw::Role::Consumer) {
      fail(ScenarioErrc::SyntaxError, d.line, dm.consumer.value + " is not a consumer");
    }
    for (const auto& o : m_sc.demands) {
      if (o.consumer == dm.consumer) {
        fail(ScenarioErrc::DuplicateDirective, d.line, "one demand per consumer (see line " + std::to_string(o.line) + ")");
      }
    }
    m_sc.demands.push_back(std::move(dm));
  }

  void
  channel(Directive& d)
  {
    Reader r(d);
    r.expectArgs(2);
    ChannelSpec c;
    c.a = r.nodeArg(0);
    c.b = r.nodeArg(1);
    c.line = d.line;
    c.deposit_a = Tokens(r.takeUint("dep_a"));
    c.deposit_b = Tokens(r.takeUint("dep_b"));
    r.done();
    requireLink(c.a, c.b, d.line);
    for (const auto& o : m_sc.channels) {
      if (o.a == c.a && o.b == c.b) {
        fail(ScenarioErrc::DuplicateDirective, d.line, "channel already declared on line " + std::to_string(o.line));
      }
    }
    m_sc.channels.push_back(std::move(c));
  }

  void
  fault(Directive& d)
  {
    Reader r(d);
    if (d.args.empty() || d.args.front() != "equivocate") {
      fail(ScenarioErrc::SyntaxError, d.line, "only 'fault equivocate' is supported");
    }
    r.expectArgs(3);
    FaultSpec f;
    f.node = r.nodeArg(1);
    std::tie(f.link_a, f.link_b) = r.linkArg(2);
    f.line = d.line;
    f.price = Tokens(r.takeUint("price"));
    f.window = r.takeWindow("window");
    f.at = r.takeUint("at");
    r.done();
    const NodeSpec& n = requireNode(f.node, d.line);
    requireLink(f.link_a, f.link_b, d.line);
    if (f.node != f.link_a && f.node != f.link_b) {
      fail(ScenarioErrc::DanglingReference, d.line, f.node.value + " is not an endpoint of that link");
    }
    if (n.role == fw::Role::Consumer) {
      fail(ScenarioErrc::SyntaxError, d.line, "consumers do not advertise prices");
    }
    m_sc.faults.push_back(std::move(f));
  }

  void
  run(Directive& d)
  {
    Reader r(d);
    r.expectArgs(0);
    if (m_seenRun) {
      fail(ScenarioErrc::DuplicateDirective, d.line, "'run' given twice");
    }
    m_seenRun = true;
    if (r.has("ticks")) {
      m_sc.run.ticks = r.takeUint("ticks");
    }
    if (r.has("seed")) {
      m_sc.run.seed = r.takeUint("seed");
    }
    if (r.has("window")) {
      m_sc.run.report_window = r.takeUint("window");
    }
    if (r.has("pit")) {
      m_sc.run.pit_lifetime = r.takeUint("pit");
    }
    r.done();
    if ((m_sc.run.report_window && *m_sc.run.report_window == 0) ||
        (m_sc.run.pit_lifetime && *m_sc.run.pit_lifetime == 0)) {
      fail(ScenarioErrc::SyntaxError, d.line, "window and pit must be >= 1");
    }
  }

private:
  Scenario m_sc;
  bool m_seenRun = false;
};

} // namespace

Scenario
parse_scenario(std::string_view text)
{
  auto directives = tokenize(text);
  Builder b;
  Scenario sc = b.build(directives);
  // demands may precede the content they ask for
  for (const auto& dm : sc.demands) {
    bool served = false;
    for (const auto& c : sc.contents) {
      served = served || c.prefix.is_prefix_of(dm.prefix);
    }
    if (!served) {
      throw ScenarioError(ScenarioErrc::DanglingReference, dm.line, "no producer serves " + dm.prefix.to_uri());
    }
  }
  return sc;
}

Scenario
load_scenario(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

} // namespace pptp::sim
