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

#include "pptp/consumer/bandit.hpp"
#include "pptp/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace pptp::consumer {

void
BanditParams::validate() const
{
  if (!(eps0 > 0.0 && eps0 <= 1.0)) {
    throw Error(Errc::InvalidArgument, "eps0 must be in (0, 1]");
  }
  if (!(tau > 0.0)) {
    throw Error(Errc::InvalidArgument, "tau must be positive");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(Errc::InvalidArgument, "gamma must be in (0, 1]");
  }
}

Bandit::Bandit(BanditParams params)
  : m_params(params)
{
  m_params.validate();
}

void
Bandit::add_arm(PathId id, double predicted_u)
{
  m_arms[id].predicted_u = predicted_u;
}

double
Bandit::epsilon() const noexcept
{
  return m_params.eps0 / (1.0 + static_cast<double>(m_round) / m_params.tau);
}

PathId
Bandit::best_arm() const
{
  if (m_arms.empty()) {
    throw Error(Errc::UnknownArm, "no arms");
  }
  auto best = m_arms.begin();
  for (auto it = std::next(best); it != m_arms.end(); ++it) {
    // strict comparison keeps the lowest id on ties (map is id-ordered)
    if (it->second.score() > best->second.score()) {
      best = it;
    }
  }
  return best->first;
}

PathId
Bandit::select(Rng& rng)
{
  if (m_arms.empty()) {
    throw Error(Errc::UnknownArm, "no arms");
  }
  const double eps = epsilon();
  ++m_round;
  if (rng.uniform01() < eps) {
    auto it = m_arms.begin();
    std::advance(it, static_cast<long>(rng.below(m_arms.size())));
    return it->first;
  }
  return best_arm();
}

void
Bandit::update(PathId id, double u_observed, double gamma)
{
  auto it = m_arms.find(id);
  if (it == m_arms.end()) {
    throw Error(Errc::UnknownArm, std::to_string(id));
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(Errc::InvalidArgument, "gamma must be in (0, 1]");
  }
  Arm& arm = it->second;
  if (arm.pulls == 0) {
    arm.ewma_u = u_observed;
  }
  else if (std::isinf(u_observed) || std::isinf(arm.ewma_u)) {
    // a window with nothing delivered pins the arm at -inf until the next
    // delivering window restarts the average
    arm.ewma_u = u_observed;
  }
  else {
    // same as gamma*u + (1-gamma)*ewma, but exact when u == ewma
    arm.ewma_u += gamma * (u_observed - arm.ewma_u);
  }
  ++arm.pulls;
}

const Arm&
Bandit::arm(PathId id) const
{
  auto it = m_arms.find(id);
  if (it == m_arms.end()) {
    throw Error(Errc::UnknownArm, std::to_string(id));
  }
  return it->second;
}

} // namespace pptp::consumer
