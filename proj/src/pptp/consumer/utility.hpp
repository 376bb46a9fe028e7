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

#include "pptp/core/types.hpp"

#include <limits>
#include <span>
#include <string_view>

namespace pptp::consumer {

enum class ModelKind : std::uint8_t {
  Delay,      ///< fraction of packets under the threshold plus inverse mean latency
  Throughput, ///< delivered packets per tick
};

std::string_view to_string(ModelKind kind) noexcept;

/// Satisfaction model V. For the delay model
///   V = alpha * (fraction within threshold) + beta / (mean latency).
struct UtilityModel
{
  ModelKind kind = ModelKind::Delay;
  double alpha = 1.0;
  double beta = 100.0;
  double eps_floor = 1.0; ///< cost floor, in tokens
  Tick threshold = 100;   ///< ticks; 100 ms at one tick per ms

  /// Throws InvalidArgument on negative weights, a zero delay model or a
  /// non-positive floor.
  void
  validate() const;
};

/// Delivery statistics for one path over one reporting window.
struct PathStats
{
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t within_threshold = 0;
  std::uint64_t latency_sum = 0;

  void
  record_delivery(Tick latency, Tick threshold)
  {
    ++delivered;
    latency_sum += latency;
    if (latency <= threshold) {
      ++within_threshold;
    }
  }
};

/// Ordered below every finite utility.
inline constexpr double kNoUtility = -std::numeric_limits<double>::infinity();

/// Exact sum of the hop prices. Throws TokenOverflow, or InvalidArgument for
/// an empty path.
Tokens
path_cost(std::span<const TagItem> items);

/// V predicted from the advertised metrics alone: the bottleneck bandwidth
/// for the throughput model, the delay formula on the summed hop latencies
/// for the delay model.
double
predict_v(std::span<const TagItem> items, const UtilityModel& model);

/// V measured over one window of `window_ticks` ticks. Throws NoSamples when
/// nothing was delivered.
double
measured_v(const PathStats& stats, const UtilityModel& model, Tick window_ticks);

/// U = ln(v / max(cost, eps_floor)); v == 0 gives kNoUtility.
double
utility(double v, Tokens cost, double eps_floor);

} // namespace pptp::consumer
