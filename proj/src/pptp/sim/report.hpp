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

#include "pptp/sim/simulator.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pptp::sim {

inline constexpr std::string_view kCsvHeader =
  "tick,consumer,path_id,interests_sent,data_received,mean_latency,"
  "frac_within_threshold,cost_spent,v_measured,u_measured";

/// 16 lowercase hex digits.
std::string
format_path_id(consumer::PathId id);

/// Header line plus one line per row. Undefined measurements are empty
/// fields; reals use six decimals.
std::string
emit_csv(const std::vector<MetricsRow>& rows);

/// JSON summary of a finished run (keys in a fixed order).
std::string
emit_summary(const Simulator& sim);

/// Human-readable rendering of an emit_summary document. Throws
/// std::runtime_error on malformed input.
std::string
render_summary(std::string_view summary_json);

} // namespace pptp::sim
