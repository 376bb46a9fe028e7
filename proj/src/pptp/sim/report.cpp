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

#include "pptp/sim/report.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace pptp::sim {

using json = nlohmann::ordered_json;

namespace {

void
appendReal(std::string& out, const std::optional<double>& v)
{
  if (!v) {
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  out += buf;
}

json
itemJson(const TagItem& item)
{
  return json{{"advertiser", item.advertiser.value},
              {"face", item.face.value},
              {"price", item.price.value()},
              {"window", {item.window.not_before, item.window.not_after}}};
}

} // namespace

std::string
format_path_id(consumer::PathId id)
{
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, id);
  return buf;
}

std::string
emit_csv(const std::vector<MetricsRow>& rows)
{
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.tick);
    out += ',';
    out += r.consumer.value;
    out += ',';
    out += format_path_id(r.path_id);
    out += ',';
    out += std::to_string(r.interests_sent);
    out += ',';
    out += std::to_string(r.data_received);
    out += ',';
    appendReal(out, r.mean_latency);
    out += ',';
    appendReal(out, r.frac_within_threshold);
    out += ',';
    out += std::to_string(r.cost_spent.value());
    out += ',';
    appendReal(out, r.v_measured);
    out += ',';
    appendReal(out, r.u_measured);
    out += '\n';
  }
  return out;
}

std::string
emit_summary(const Simulator& sim)
{
  const auto& ledger = sim.ledger();
  json doc;
  doc["format"] = "pptp-summary/1";
  doc["run"] = {{"seed", sim.options().seed},
                {"ticks", sim.options().ticks},
                {"report_window", sim.options().report_window},
                {"pit_lifetime", sim.options().pit_lifetime},
                {"drain_ticks", sim.drain_ticks()},
                {"ledger_height", ledger.height()}};

  std::uint64_t consumerDeposits = 0;
  std::uint64_t consumerResidual = 0;
  std::int64_t otherRevenue = 0;
  for (const auto& [_, ch] : sim.channels().channels()) {
    for (const NodeId* party : {&ch.party_a(), &ch.party_b()}) {
      const NodeSpec* spec = sim.scenario().find_node(*party);
      if (spec != nullptr && spec->role == fw::Role::Consumer) {
        consumerDeposits += (ch.party_of(*party) == Party::A ? ch.deposit_a() : ch.deposit_b()).value();
        consumerResidual += ch.balance_of(*party).value();
      }
    }
  }

  json nodes = json::array();
  for (std::size_t i = 0; i < sim.node_count(); ++i) {
    const auto& spec = sim.node_spec(i);
    const auto& fwd = sim.forwarder(i);
    const auto& acct = ledger.account(spec.id);
    const std::int64_t revenue = sim.revenue(spec.id);
    if (spec.role != fw::Role::Consumer) {
      otherRevenue += revenue;
    }
    json drops = json::object();
    for (const auto& [code, n] : fwd.counters().drops) {
      drops[std::string(to_string(code))] = n;
    }
    nodes.push_back({{"id", spec.id.value},
                     {"role", std::string(fw::to_string(spec.role))},
                     {"revenue", revenue},
                     {"kept", fwd.counters().kept.value()},
                     {"credited", fwd.counters().credited.value()},
                     {"onchain_balance", acct.balance.value()},
                     {"security_deposit", acct.security_deposit.value()},
                     {"flagged", acct.flagged},
                     {"drops", drops}});
  }
  doc["nodes"] = nodes;

  json consumers = json::array();
  for (const auto& d : sim.scenario().demands) {
    const auto* engine = sim.consumer_engine(d.consumer);
    const auto* c = sim.consumer_counters(d.consumer);
    json paths = json::array();
    for (consumer::PathId id : engine->path_order()) {
      const auto& p = engine->path(id);
      json hops = json::array();
      for (const auto& h : p.hops()) {
        hops.push_back(h.value);
      }
      auto sel = c->selections.find(id);
      paths.push_back({{"path_id", format_path_id(id)},
                       {"hops", hops},
                       {"total_cost", p.total_cost.value()},
                       {"predicted_v", p.predicted_v},
                       {"selections", sel == c->selections.end() ? 0 : sel->second}});
    }
    consumers.push_back({{"id", d.consumer.value},
                         {"prefix", d.prefix.to_uri()},
                         {"model", std::string(consumer::to_string(d.model.kind))},
                         {"probes_sent", c->probes_sent},
                         {"probe_replies", c->probe_replies},
                         {"path_rejects", c->path_rejects},
                         {"interests_sent", c->interests_sent},
                         {"data_received", c->data_received},
                         {"timeouts", c->timeouts},
                         {"paid_undelivered", c->paid_undelivered},
                         {"send_failures", c->send_failures},
                         {"stray_data", c->stray_data},
                         {"spent", c->spent.value()},
                         {"paths", paths}});
  }
  doc["consumers"] = consumers;

  json links = json::array();
  for (const auto& l : sim.links()) {
    links.push_back({{"a", l.spec.a.value},
                     {"b", l.spec.b.value},
                     {"sent", l.counters.sent},
                     {"delivered", l.counters.delivered},
                     {"lost", l.counters.lost},
                     {"queue_drops", l.counters.queue_drops},
                     {"max_sent_in_tick", l.counters.max_sent_in_tick}});
  }
  doc["links"] = links;

  json settlements = json::array();
  for (const auto& [id, e] : ledger.escrows()) {
    json s{{"channel", id},
           {"party_a", e.party_a.value},
           {"party_b", e.party_b.value},
           {"deposit_a", e.deposit_a.value()},
           {"deposit_b", e.deposit_b.value()},
           {"settled", e.settled}};
    if (e.final_tx) {
      s["seq"] = e.final_tx->seq;
      s["final_a"] = e.final_tx->balance_a.value();
      s["final_b"] = e.final_tx->balance_b.value();
    }
    settlements.push_back(s);
  }
  doc["settlements"] = settlements;

  json disputes = json::array();
  for (const auto& d : ledger.disputes()) {
    disputes.push_back({{"height", d.height},
                        {"submitter", d.submitter.value},
                        {"advertiser", d.verdict.advertiser.value},
                        {"verdict", std::string(ledger::to_string(d.verdict.kind))},
                        {"reason", std::string(ledger::to_string(d.verdict.reason))},
                        {"burned", d.verdict.burned.value()},
                        {"first", itemJson(d.first)},
                        {"second", itemJson(d.second)}});
  }
  doc["disputes"] = disputes;

  json flagged = json::array();
  for (const auto& [id, acct] : ledger.accounts()) {
    if (acct.flagged) {
      flagged.push_back(id.value);
    }
  }
  doc["flagged"] = flagged;

  const ledger::Totals t = ledger.totals();
  doc["totals"] = {{"minted", t.minted.value()},
                   {"balances", t.balances.value()},
                   {"security_deposits", t.security_deposits.value()},
                   {"escrow", t.escrow.value()},
                   {"burned", t.burned.value()},
                   {"ledger_conserved", t.conserved()},
                   {"revenue_excluding_consumers", otherRevenue},
                   {"consumer_channel_residual", consumerResidual},
                   {"consumer_channel_deposits", consumerDeposits},
                   {"channels_conserved",
                    otherRevenue + static_cast<std::int64_t>(consumerResidual) ==
                      static_cast<std::int64_t>(consumerDeposits)}};

  return doc.dump(2) + "\n";
}

std::string
render_summary(std::string_view summary_json)
{
  json doc;
  try {
    doc = json::parse(summary_json);
  }
  catch (const json::exception& e) {
    throw std::runtime_error(std::string("summary is not valid JSON: ") + e.what());
  }

  try {
    std::ostringstream out;
    const auto& run = doc.at("run");
    out << "run: seed " << run.at("seed") << ", " << run.at("ticks") << " ticks, window "
        << run.at("report_window") << ", drained in " << run.at("drain_ticks") << " ticks\n\n";

    out << "nodes:\n";
    for (const auto& n : doc.at("nodes")) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-12s %-8s revenue %+8" PRId64 "  on-chain %8" PRIu64 "  deposit %6" PRIu64 "%s\n",
                    n.at("id").get<std::string>().c_str(), n.at("role").get<std::string>().c_str(),
                    n.at("revenue").get<std::int64_t>(), n.at("onchain_balance").get<std::uint64_t>(),
                    n.at("security_deposit").get<std::uint64_t>(), n.at("flagged").get<bool>() ? "  FLAGGED" : "");
      out << line;
    }

    out << "\nconsumers:\n";
    for (const auto& c : doc.at("consumers")) {
      out << "  " << c.at("id").get<std::string>() << " " << c.at("prefix").get<std::string>() << ": sent "
          << c.at("interests_sent") << ", received " << c.at("data_received") << ", paid-undelivered "
          << c.at("paid_undelivered") << ", spent " << c.at("spent") << "u\n";
      for (const auto& p : c.at("paths")) {
        out << "    " << p.at("path_id").get<std::string>() << "  cost " << p.at("total_cost") << "u  picked "
            << p.at("selections") << "x  via";
        for (const auto& h : p.at("hops")) {
          out << " " << h.get<std::string>();
        }
        out << "\n";
      }
    }

    out << "\nsettlements:\n";
    for (const auto& s : doc.at("settlements")) {
      out << "  #" << s.at("channel") << " " << s.at("party_a").get<std::string>() << "-"
          << s.at("party_b").get<std::string>() << ": deposits " << s.at("deposit_a") << "/" << s.at("deposit_b");
      if (s.contains("final_a")) {
        out << " -> " << s.at("final_a") << "/" << s.at("final_b") << " at seq " << s.at("seq");
      }
      out << (s.at("settled").get<bool>() ? "" : " (open)") << "\n";
    }

    out << "\ndisputes:";
    if (doc.at("disputes").empty()) {
      out << " none";
    }
    out << "\n";
    for (const auto& d : doc.at("disputes")) {
      out << "  h" << d.at("height") << " " << d.at("advertiser").get<std::string>() << ": "
          << d.at("verdict").get<std::string>();
      if (d.at("verdict") == "Rejected") {
        out << " (" << d.at("reason").get<std::string>() << ")";
      }
      else {
        out << ", burned " << d.at("burned") << "u";
      }
      out << "\n";
    }

    const auto& t = doc.at("totals");
    out << "\ntotals: minted " << t.at("minted") << "u = balances " << t.at("balances") << "u + deposits "
        << t.at("security_deposits") << "u + escrow " << t.at("escrow") << "u + burned " << t.at("burned") << "u ["
        << (t.at("ledger_conserved").get<bool>() ? "conserved" : "NOT CONSERVED") << "]\n";
    return out.str();
  }
  catch (const json::exception& e) {
    throw std::runtime_error(std::string("summary is missing fields: ") + e.what());
  }
}

} // namespace pptp::sim
