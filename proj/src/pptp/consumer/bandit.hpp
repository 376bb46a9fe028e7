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

#include "pptp/core/rng.hpp"

#include <cstdint>
#include <map>

namespace pptp::consumer {

using PathId = std::uint64_t;

struct BanditParams
{
  double eps0 = 0.2;  ///< initial exploration rate, in (0, 1]
  double tau = 200.0; ///< decay scale in rounds, > 0
  double gamma = 0.3; ///< EWMA weight of a new observation, in (0, 1]

  void
  validate() const;
};

struct Arm
{
  double predicted_u = 0.0; ///< used until the first observation
  double ewma_u = 0.0;
  std::uint64_t pulls = 0;

  double
  score() const noexcept
  {
    return pulls == 0 ? predicted_u : ewma_u;
  }
};

/// Epsilon-greedy path selector with hyperbolic decay
/// eps_t = eps0 / (1 + t / tau).
class Bandit
{
public:
  explicit Bandit(BanditParams params = {});

  /// Adds an arm, or refreshes the prediction of an existing one.
  void
  add_arm(PathId id, double predicted_u);

  bool
  has_arm(PathId id) const
  {
    return m_arms.count(id) != 0;
  }

  double
  epsilon() const noexcept;

  /// One round: explore a uniformly random arm with probability eps_t,
  /// otherwise exploit best_arm(). Advances the round counter.
  PathId
  select(Rng& rng);

  /// Highest score; ties go to the lowest path id. Throws UnknownArm when
  /// there are no arms.
  PathId
  best_arm() const;

  /// ewma <- gamma * u + (1 - gamma) * ewma; the first observation
  /// initialises the average. An infinite observation, or the first finite
  /// one after it, replaces the average outright.
  void
  update(PathId id, double u_observed, double gamma);

  void
  update(PathId id, double u_observed)
  {
    update(id, u_observed, m_params.gamma);
  }

  const Arm&
  arm(PathId id) const;

  const std::map<PathId, Arm>&
  arms() const noexcept
  {
    return m_arms;
  }

  std::uint64_t
  rounds() const noexcept
  {
    return m_round;
  }

  const BanditParams&
  params() const noexcept
  {
    return m_params;
  }

private:
  BanditParams m_params;
  std::map<PathId, Arm> m_arms;
  std::uint64_t m_round = 0;
};

} // namespace pptp::consumer
