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

#include "pptp/consumer/utility.hpp"

#include <algorithm>
#include <cmath>

namespace pptp::consumer {

std::string_view
to_string(ModelKind kind) noexcept
{
  return kind == ModelKind::Delay ? "delay" : "throughput";
}

void
UtilityModel::validate() const
{
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw Error(Errc::InvalidArgument, "alpha and beta must be >= 0");
  }
  if (kind == ModelKind::Delay && alpha == 0.0 && beta == 0.0) {
    throw Error(Errc::InvalidArgument, "delay model needs alpha or beta positive");
  }
  if (!(eps_floor > 0.0)) {
    throw Error(Errc::InvalidArgument, "cost floor must be positive");
  }
}

Tokens
path_cost(std::span<const TagItem> items)
{
  if (items.empty()) {
    throw Error(Errc::InvalidArgument, "empty path");
  }
  Tokens total;
  for (const auto& item : items) {
    total += item.price;
  }
  return total;
}

namespace {

double
delayFormula(const UtilityModel& m, double fractionWithin, double meanLatency)
{
  return m.alpha * fractionWithin + m.beta / std::max(meanLatency, 1.0);
}

} // namespace

double
predict_v(std::span<const TagItem> items, const UtilityModel& model)
{
  if (items.empty()) {
    return 0.0;
  }
  if (model.kind == ModelKind::Throughput) {
    std::uint64_t bottleneck = items.front().metric.adv_bandwidth;
    for (const auto& item : items) {
      bottleneck = std::min(bottleneck, item.metric.adv_bandwidth);
    }
    return static_cast<double>(bottleneck);
  }
  std::uint64_t latency = 0;
  for (const auto& item : items) {
    latency += item.metric.adv_latency;
  }
  double within = latency <= model.threshold ? 1.0 : 0.0;
  return delayFormula(model, within, static_cast<double>(latency));
}

double
measured_v(const PathStats& stats, const UtilityModel& model, Tick window_ticks)
{
  if (stats.delivered == 0) {
    throw Error(Errc::NoSamples);
  }
  const double delivered = static_cast<double>(stats.delivered);
  if (model.kind == ModelKind::Throughput) {
    return delivered / static_cast<double>(std::max<Tick>(window_ticks, 1));
  }
  // beta * delivered / latency_sum == beta / mean latency
  double within = static_cast<double>(stats.within_threshold) / delivered;
  return delayFormula(model, within, static_cast<double>(stats.latency_sum) / delivered);
}

double
utility(double v, Tokens cost, double eps_floor)
{
  if (!(v >= 0.0)) {
    throw Error(Errc::InvalidArgument, "negative satisfaction level");
  }
  if (v == 0.0) {
    return kNoUtility;
  }
  double c = std::max(static_cast<double>(cost.value()), eps_floor);
  return std::log(v / c);
}

} // namespace pptp::consumer
