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

#include "pptp/pptp.h"

#include "pptp/sim/report.hpp"
#include "pptp/sim/scenario.hpp"
#include "pptp/sim/simulator.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

struct pptp_scenario
{
  pptp::sim::Scenario scenario;
};

struct pptp_run
{
  std::string csv;
  std::string summary;
};

namespace {

thread_local std::string t_lastError;

pptp_status
fail(pptp_status status, const std::string& message)
{
  t_lastError = message;
  return status;
}

pptp_status
ok()
{
  t_lastError.clear();
  return PPTP_OK;
}

/// Maps whatever escaped the core to a status code.
pptp_status
translate(bool running)
{
  try {
    throw;
  }
  catch (const pptp::sim::ScenarioError& e) {
    return fail(PPTP_ERR_CONFIG, e.what());
  }
  catch (const pptp::Error& e) {
    if (e.code() == pptp::Errc::InvariantViolation) {
      return fail(PPTP_ERR_INVARIANT, e.what());
    }
    return fail(running ? PPTP_ERR_INTERNAL : PPTP_ERR_CONFIG, e.what());
  }
  catch (const std::bad_alloc&) {
    return fail(PPTP_ERR_INTERNAL, "out of memory");
  }
  catch (const std::exception& e) {
    return fail(PPTP_ERR_INTERNAL, e.what());
  }
  catch (...) {
    return fail(PPTP_ERR_INTERNAL, "unknown error");
  }
}

bool
writeFile(const std::filesystem::path& path, const std::string& body)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  return static_cast<bool>(out);
}

} // namespace

extern "C" {

const char*
pptp_version(void)
{
  return PPTP_VERSION_STRING;
}

const char*
pptp_last_error(void)
{
  return t_lastError.c_str();
}

const char*
pptp_status_name(pptp_status status)
{
  switch (status) {
    case PPTP_OK: return "ok";
    case PPTP_ERR_CONFIG: return "configuration error";
    case PPTP_ERR_INVARIANT: return "invariant violation";
    case PPTP_ERR_IO: return "i/o error";
    case PPTP_ERR_ARGUMENT: return "invalid argument";
    case PPTP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void
pptp_run_options_init(pptp_run_options* options)
{
  if (options != nullptr) {
    *options = pptp_run_options{0, 0, 0, 0};
  }
}

pptp_status
pptp_scenario_parse(const char* text, size_t length, pptp_scenario** out)
{
  if ((text == nullptr && length != 0) || out == nullptr) {
    return fail(PPTP_ERR_ARGUMENT, "null argument");
  }
  *out = nullptr;
  try {
    auto sc = std::make_unique<pptp_scenario>();
    sc->scenario = pptp::sim::parse_scenario(std::string_view(text == nullptr ? "" : text, length));
    *out = sc.release();
    return ok();
  }
  catch (...) {
    return translate(false);
  }
}

pptp_status
pptp_scenario_load(const char* path, pptp_scenario** out)
{
  if (path == nullptr || out == nullptr) {
    return fail(PPTP_ERR_ARGUMENT, "null argument");
  }
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return fail(PPTP_ERR_IO, std::string("cannot open '") + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return pptp_scenario_parse(text.data(), text.size(), out);
}

void
pptp_scenario_free(pptp_scenario* scenario)
{
  delete scenario;
}

size_t
pptp_scenario_node_count(const pptp_scenario* scenario)
{
  return scenario == nullptr ? 0 : scenario->scenario.nodes.size();
}

size_t
pptp_scenario_link_count(const pptp_scenario* scenario)
{
  return scenario == nullptr ? 0 : scenario->scenario.links.size();
}

size_t
pptp_scenario_demand_count(const pptp_scenario* scenario)
{
  return scenario == nullptr ? 0 : scenario->scenario.demands.size();
}

size_t
pptp_scenario_channel_count(const pptp_scenario* scenario)
{
  return scenario == nullptr ? 0 : scenario->scenario.channels.size();
}

pptp_status
pptp_run_create(const pptp_scenario* scenario, const pptp_run_options* options, pptp_run** out)
{
  if (scenario == nullptr || out == nullptr) {
    return fail(PPTP_ERR_ARGUMENT, "null argument");
  }
  *out = nullptr;

  std::optional<std::uint64_t> seed;
  std::optional<pptp::Tick> ticks;
  if (options != nullptr) {
    if (options->has_seed) {
      seed = options->seed;
    }
    if (options->has_ticks) {
      ticks = options->ticks;
    }
  }

  std::unique_ptr<pptp::sim::Simulator> sim;
  try {
    sim = std::make_unique<pptp::sim::Simulator>(scenario->scenario,
                                                 pptp::sim::SimOptions::resolve(scenario->scenario, seed, ticks));
  }
  catch (...) {
    return translate(false);
  }

  try {
    sim->run();
    auto run = std::make_unique<pptp_run>();
    run->csv = pptp::sim::emit_csv(sim->rows());
    run->summary = pptp::sim::emit_summary(*sim);
    *out = run.release();
    return ok();
  }
  catch (...) {
    return translate(true);
  }
}

void
pptp_run_free(pptp_run* run)
{
  delete run;
}

const char*
pptp_run_csv(const pptp_run* run, size_t* length)
{
  if (run == nullptr) {
    return nullptr;
  }
  if (length != nullptr) {
    *length = run->csv.size();
  }
  return run->csv.c_str();
}

const char*
pptp_run_summary(const pptp_run* run, size_t* length)
{
  if (run == nullptr) {
    return nullptr;
  }
  if (length != nullptr) {
    *length = run->summary.size();
  }
  return run->summary.c_str();
}

pptp_status
pptp_run_write(const pptp_run* run, const char* dir)
{
  if (run == nullptr || dir == nullptr) {
    return fail(PPTP_ERR_ARGUMENT, "null argument");
  }
  std::error_code ec;
  std::filesystem::path root(dir);
  std::filesystem::create_directories(root, ec);
  if (ec) {
    return fail(PPTP_ERR_IO, "cannot create '" + root.string() + "': " + ec.message());
  }
  if (!writeFile(root / "metrics.csv", run->csv) || !writeFile(root / "summary.json", run->summary)) {
    return fail(PPTP_ERR_IO, "cannot write outputs under '" + root.string() + "'");
  }
  return ok();
}

pptp_status
pptp_report_render(const char* dir, char** out)
{
  if (dir == nullptr || out == nullptr) {
    return fail(PPTP_ERR_ARGUMENT, "null argument");
  }
  *out = nullptr;
  const auto path = std::filesystem::path(dir) / "summary.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return fail(PPTP_ERR_IO, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    const std::string text = pptp::sim::render_summary(buf.str());
    char* copy = static_cast<char*>(std::malloc(text.size() + 1));
    if (copy == nullptr) {
      return fail(PPTP_ERR_INTERNAL, "out of memory");
    }
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out = copy;
    return ok();
  }
  catch (const std::exception& e) {
    return fail(PPTP_ERR_IO, e.what());
  }
}

void
pptp_string_free(char* str)
{
  std::free(str);
}

} // extern "C"
