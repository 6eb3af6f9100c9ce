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

#pragma once

#include <array>

#include "sigev/beliefs.hpp"
#include "sigev/game_model.hpp"

namespace sigev {

// Receiver mixed strategy sigma_R(a | m, e), stored as the probability of
// a = 1 per information set in cell_index order: {w, x, y, z}.
struct ReceiverStrategy {
  std::array<double, 4> act_one{0.0, 0.0, 0.0, 0.0};

  static ReceiverStrategy from_wxyz(double w, double x, double y, double z) {
    return {{w, x, y, z}};
  }
  static ReceiverStrategy constant(Bit a) {
    const double v = a.value();
    return {{v, v, v, v}};
  }

  double w() const noexcept { return act_one[0]; }
  double x() const noexcept { return act_one[1]; }
  double y() const noexcept { return act_one[2]; }
  double z() const noexcept { return act_one[3]; }

  double prob(Bit a, Bit m, Bit e) const noexcept {
    const double one = act_one[cell_index(m, e)];
    return a == kOne ? one : 1.0 - one;
  }

  friend bool operator==(const ReceiverStrategy&, const ReceiverStrategy&) = default;
};

struct StrategyProfile {
  SenderStrategy sender;
  ReceiverStrategy receiver;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

enum class Player { kSender, kReceiver };

// u_S-bar(sigma_S, sigma_R | theta): sum over (a, e, m) of
// sigma_R(a|m,e) lambda(e|theta,m) sigma_S(m|theta) u_S(theta,m,a).
inline double sender_expected_utility(const StrategyProfile& profile, const Game& game,
                                      Bit theta) noexcept {
  double total = 0.0;
  for (Bit a : kBits) {
    for (Bit e : kBits) {
      for (Bit m : kBits) {
        total += profile.receiver.prob(a, m, e) * game.likelihood(e, theta, m) *
                 profile.sender.prob(m, theta) * game.sender_utils()(theta, m, a);
      }
    }
  }
  return total;
}

// Expected utility of a sender of type theta who sends m for sure.
inline double sender_message_utility(const ReceiverStrategy& receiver, const Game& game, Bit theta,
                                     Bit m) noexcept {
  StrategyProfile pure{SenderStrategy::pooling(m), receiver};
  return sender_expected_utility(pure, game, theta);
}

// u_R-bar(sigma_R | theta, m, e) = sum_a sigma_R(a|m,e) u_R(theta,m,a).
inline double receiver_conditional_utility(const ReceiverStrategy& receiver, const Game& game,
                                           Bit theta, Bit m, Bit e) noexcept {
  double total = 0.0;
  for (Bit a : kBits) total += receiver.prob(a, m, e) * game.receiver_utils()(theta, m, a);
  return total;
}

// A priori expected utility, before the type is drawn:
// sum over (theta, m, e, a) of p(theta) sigma_S(m|theta) lambda(e|theta,m)
// sigma_R(a|m,e) u_X(theta,m,a).
inline double a_priori_utility(const StrategyProfile& profile, const Game& game,
                               Player player) noexcept {
  const UtilityTable& u =
      player == Player::kSender ? game.sender_utils() : game.receiver_utils();
  double total = 0.0;
  for (Bit theta : kBits) {
    for (Bit m : kBits) {
      for (Bit e : kBits) {
        for (Bit a : kBits) {
          total += game.prior(theta) * profile.sender.prob(m, theta) *
                   game.likelihood(e, theta, m) * profile.receiver.prob(a, m, e) *
                   u(theta, m, a);
        }
      }
    }
  }
  return total;
}

}  // namespace sigev
