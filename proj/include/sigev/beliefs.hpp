// Copyright 2026 The sigev Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bayes-consistent receiver beliefs.

#pragma once

#include <array>
#include <optional>

#include "sigev/game_model.hpp"

namespace sigev {

// Sender mixed strategy sigma_S(m | theta), stored as the probability of
// sending m = 1 for each type: send_one[0] = q, send_one[1] = r.
struct SenderStrategy {
  std::array<double, 2> send_one{0.0, 0.0};

  static SenderStrategy from_qr(double q, double r) { return {{q, r}}; }
  static SenderStrategy pooling(Bit m) {
    const double v = m.value();
    return {{v, v}};
  }

  double q() const noexcept { return send_one[0]; }
  double r() const noexcept { return send_one[1]; }

  double prob(Bit m, Bit theta) const noexcept {
    const double one = send_one[static_cast<std::size_t>(theta.value())];
    return m == kOne ? one : 1.0 - one;
  }

  friend bool operator==(const SenderStrategy&, const SenderStrategy&) = default;
};

// Index of an information set (m, e) of the receiver, in the order
// (0,0), (0,1), (1,0), (1,1).
inline constexpr std::size_t cell_index(Bit m, Bit e) noexcept {
  return static_cast<std::size_t>(2 * m.value() + e.value());
}
inline constexpr Bit cell_message(std::size_t cell) noexcept { return Bit(static_cast<int>(cell / 2)); }
inline constexpr Bit cell_evidence(std::size_t cell) noexcept { return Bit(static_cast<int>(cell % 2)); }

enum class BeliefOrigin { kOnPath, kOffPathAssigned };

// Receiver posterior mu_R(theta | m, e) for every information set, stored as
// the probability of theta = 1.
struct BeliefSystem {
  std::array<double, 4> post_one{0.0, 0.0, 0.0, 0.0};
  std::array<BeliefOrigin, 4> origin{BeliefOrigin::kOnPath, BeliefOrigin::kOnPath,
                                     BeliefOrigin::kOnPath, BeliefOrigin::kOnPath};

  double post(Bit theta, Bit m, Bit e) const noexcept {
    const double one = post_one[cell_index(m, e)];
    return theta == kOne ? one : 1.0 - one;
  }
};

// mu_R(theta | m) from the message alone. Throws OffPathMessage when no type
// sends m, in which case the caller must assign a belief.
inline double posterior_given_message(const SenderStrategy& sender, double prior_one, Bit theta,
                                      Bit m) {
  const double joint0 = sender.prob(m, kZero) * (1.0 - prior_one);
  const double joint1 = sender.prob(m, kOne) * prior_one;
  const double total = joint0 + joint1;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kOffPathMessage,
                "message " + std::to_string(m.value()) + " is never sent");
  }
  return (theta == kOne ? joint1 : joint0) / total;
}

// mu_R(theta | m, e): updates a message posterior {mu(0|m), mu(1|m)} with the
// evidence likelihood for raw rates.
inline double posterior_given_evidence(double alpha, double beta,
                                       const std::array<double, 2>& mu_given_m, Bit theta, Bit m,
                                       Bit e) {
  const double joint0 = likelihood(alpha, beta, e, kZero, m) * mu_given_m[0];
  const double joint1 = likelihood(alpha, beta, e, kOne, m) * mu_given_m[1];
  const double total = joint0 + joint1;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kZeroDenominator,
                "evidence " + std::to_string(e.value()) + " has zero probability after message " +
                    std::to_string(m.value()));
  }
  return (theta == kOne ? joint1 : joint0) / total;
}

inline double posterior_given_evidence(const Detector& detector,
                                       const std::array<double, 2>& mu_given_m, Bit theta, Bit m,
                                       Bit e) {
  return posterior_given_evidence(detector.alpha(), detector.beta(), mu_given_m, theta, m, e);
}

// Belief when both types pool on m: the message is uninformative, so only
// the evidence moves the prior.
inline double pooling_posterior(const Detector& detector, double prior_one, Bit theta, Bit m,
                                Bit e) {
  return posterior_given_evidence(detector, {1.0 - prior_one, prior_one}, theta, m, e);
}

// Joint probability P(theta, m, e) under a sender strategy.
inline double joint_probability(const Game& game, const SenderStrategy& sender, Bit theta, Bit m,
                                Bit e) noexcept {
  return game.prior(theta) * sender.prob(m, theta) * game.likelihood(e, theta, m);
}

inline bool on_path(const Game& game, const SenderStrategy& sender, Bit m, Bit e) noexcept {
  return joint_probability(game, sender, kZero, m, e) + joint_probability(game, sender, kOne, m, e) >
         0.0;
}

// Beliefs by Bayes' rule at every reachable information set. Unreachable
// sets take the matching entry of `off_path` (probability of theta = 1);
// a missing entry raises OffPathMessage.
inline BeliefSystem bayes_beliefs(const Game& game, const SenderStrategy& sender,
                                  const std::array<std::optional<double>, 4>& off_path = {}) {
  BeliefSystem beliefs;
  for (std::size_t cell = 0; cell < 4; ++cell) {
    const Bit m = cell_message(cell);
    const Bit e = cell_evidence(cell);
    if (on_path(game, sender, m, e)) {
      const double mu_m1 = posterior_given_message(sender, game.prior_one(), kOne, m);
      beliefs.post_one[cell] =
          posterior_given_evidence(game.detector(), {1.0 - mu_m1, mu_m1}, kOne, m, e);
      beliefs.origin[cell] = BeliefOrigin::kOnPath;
    } else if (off_path[cell].has_value()) {
      beliefs.post_one[cell] = *off_path[cell];
      beliefs.origin[cell] = BeliefOrigin::kOffPathAssigned;
    } else {
      throw Error(ErrorCode::kOffPathMessage,
                  "information set (m=" + std::to_string(m.value()) +
                      ", e=" + std::to_string(e.value()) + ") is unreachable and has no belief");
    }
  }
  return beliefs;
}

}  // namespace sigev
