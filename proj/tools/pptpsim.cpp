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

// pptpsim: command-line front end. Talks to the simulator only through the
// C API in pptp/pptp.h.

#include "pptp/pptp.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

int
exitCodeFor(pptp_status status)
{
  switch (status) {
    case PPTP_OK: return kExitOk;
    case PPTP_ERR_INVARIANT: return kExitInvariant;
    case PPTP_ERR_INTERNAL: return kExitInvariant;
    default: return kExitConfig;
  }
}

int
report(pptp_status status, const char* what)
{
  std::fprintf(stderr, "pptpsim: %s: %s\n", what, pptp_last_error());
  return exitCodeFor(status);
}

using ScenarioPtr = std::unique_ptr<pptp_scenario, decltype(&pptp_scenario_free)>;
using RunPtr = std::unique_ptr<pptp_run, decltype(&pptp_run_free)>;

int
cmdValidate(const std::string& path)
{
  pptp_scenario* raw = nullptr;
  pptp_status st = pptp_scenario_load(path.c_str(), &raw);
  if (st != PPTP_OK) {
    return report(st, path.c_str());
  }
  ScenarioPtr sc(raw, &pptp_scenario_free);
  std::printf("%s: ok (%zu nodes, %zu links, %zu channels, %zu demands)\n", path.c_str(),
              pptp_scenario_node_count(sc.get()), pptp_scenario_link_count(sc.get()),
              pptp_scenario_channel_count(sc.get()), pptp_scenario_demand_count(sc.get()));
  return kExitOk;
}

int
cmdRun(const std::string& path, const std::optional<std::uint64_t>& seed, const std::optional<std::uint64_t>& ticks,
       const std::string& outDir)
{
  pptp_scenario* rawSc = nullptr;
  pptp_status st = pptp_scenario_load(path.c_str(), &rawSc);
  if (st != PPTP_OK) {
    return report(st, path.c_str());
  }
  ScenarioPtr sc(rawSc, &pptp_scenario_free);

  pptp_run_options opts;
  pptp_run_options_init(&opts);
  if (seed) {
    opts.seed = *seed;
    opts.has_seed = 1;
  }
  if (ticks) {
    opts.ticks = *ticks;
    opts.has_ticks = 1;
  }

  pptp_run* rawRun = nullptr;
  st = pptp_run_create(sc.get(), &opts, &rawRun);
  if (st != PPTP_OK) {
    return report(st, "run failed");
  }
  RunPtr run(rawRun, &pptp_run_free);

  st = pptp_run_write(run.get(), outDir.c_str());
  if (st != PPTP_OK) {
    return report(st, "cannot write outputs");
  }
  std::printf("wrote %s/metrics.csv and %s/summary.json\n", outDir.c_str(), outDir.c_str());
  return kExitOk;
}

int
cmdReport(const std::string& dir)
{
  char* text = nullptr;
  pptp_status st = pptp_report_render(dir.c_str(), &text);
  if (st != PPTP_OK) {
    return report(st, dir.c_str());
  }
  std::fputs(text, stdout);
  pptp_string_free(text);
  return kExitOk;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Price-advertising path probing simulator"};
  app.set_version_flag("--version", std::string(pptp_version()));
  app.require_subcommand(1);

  std::string scenarioPath;
  std::string outDir;
  std::string reportDir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> ticks;

  auto* validate = app.add_subcommand("validate", "Parse and check a scenario file");
  validate->add_option("scenario", scenarioPath, "Scenario file")->required();

  auto* run = app.add_subcommand("run", "Run a scenario and write metrics.csv and summary.json");
  run->add_option("scenario", scenarioPath, "Scenario file")->required();
  run->add_option("--seed", seed, "Random seed (overrides the scenario)");
  run->add_option("--ticks", ticks, "Ticks to simulate (overrides the scenario)");
  run->add_option("--out", outDir, "Output directory")->required();

  auto* rep = app.add_subcommand("report", "Pretty-print the summary of a finished run");
  rep->add_option("dir", reportDir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::Success& e) {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (validate->parsed()) {
    return cmdValidate(scenarioPath);
  }
  if (run->parsed()) {
    return cmdRun(scenarioPath, seed, ticks, outDir);
  }
  return cmdReport(reportDir);
}
