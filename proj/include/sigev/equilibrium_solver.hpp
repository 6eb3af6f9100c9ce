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

// Closed-form perfect Bayesian equilibria.
//
// Pooling equilibria exist on a message exactly when the receiver's response
// to it ignores the evidence. Outside the Middle regime at least one message
// qualifies; inside it neither does, and the unique equilibrium is partially
// separating: the receiver mixes at the two information sets that share one
// evidence value, and the sender mixes so that the receiver is indifferent
// there. Both mixtures solve 2x2 linear systems.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigev/beliefs.hpp"
#include "sigev/expected_utility.hpp"
#include "sigev/game_model.hpp"
#include "sigev/regimes.hpp"
#include "sigev/verifier.hpp"

namespace sigev {

enum class EquilibriumKind { kPoolingOnZero, kPoolingOnOne, kPartiallySeparating };

inline constexpr std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::kPoolingOnZero: return "PoolingOnZero";
    case EquilibriumKind::kPoolingOnOne: return "PoolingOnOne";
    case EquilibriumKind::kPartiallySeparating: return "PartiallySeparating";
  }
  return "?";
}

inline constexpr EquilibriumKind pooling_kind(Bit m) noexcept {
  return m == kOne ? EquilibriumKind::kPoolingOnOne : EquilibriumKind::kPoolingOnZero;
}

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::kPartiallySeparating;
  StrategyProfile profile;
  BeliefSystem beliefs;
  Regime regime;
  // Set when a player's support is held up by an exact tie: a receiver that
  // is indifferent at a cell where it plays purely (prior on a regime
  // boundary), or the weak pooling equilibria of equal-error-rate detectors.
  bool weak = false;
};

// Pooling equilibria on each message whose on-path response ignores e,
// counting a tied response as either action.
// Off the path the receiver holds a point belief on theta = a* (the action
// taken on the path) and plays a*, so a deviating sender gains nothing.
// For equal-error-rate detectors in the Middle regime, where the response
// depends on e, both messages still support weak pooling equilibria.
inline std::vector<Equilibrium> pooling_equilibria(const Game& game,
                                                   double epsilon = kDefaultEpsilon) {
  const Regime regime = classify_regime(game, epsilon);
  const bool eer = detector_class(game.detector()) == DetectorClass::kEqualErrorRate;
  std::vector<Equilibrium> out;
  for (Bit m : kBits) {
    const PoolingResponse response = receiver_pooling_response(game, m, epsilon);
    const Bit off = m.flip();
    Equilibrium eq;
    eq.kind = pooling_kind(m);
    eq.regime = regime;
    eq.profile.sender = SenderStrategy::pooling(m);
    std::array<std::optional<double>, 4> off_path{};

    // A tied cell may be resolved either way.
    std::optional<Bit> a_star;
    for (Bit a : kBits) {
      const bool fits = (response.action[0] == a || response.tied[0]) &&
                        (response.action[1] == a || response.tied[1]);
      if (fits && !a_star) a_star = a;
    }
    if (a_star) {
      for (Bit e : kBits) {
        eq.profile.receiver.act_one[cell_index(m, e)] = a_star->value();
        eq.profile.receiver.act_one[cell_index(off, e)] = a_star->value();
        off_path[cell_index(off, e)] = a_star->value();
      }
      eq.weak = response.any_tie();
    } else if (eer) {
      // The receiver trusts the message without an alarm and doubts it with
      // one; off the path it does the reverse, which leaves both sender
      // types exactly indifferent.
      for (Bit e : kBits) {
        eq.profile.receiver.act_one[cell_index(m, e)] = response.action[e.value()].value();
      }
      eq.profile.receiver.act_one[cell_index(off, kZero)] = off.value();
      eq.profile.receiver.act_one[cell_index(off, kOne)] = m.value();
      off_path[cell_index(off, kZero)] = off.value();
      off_path[cell_index(off, kOne)] = m.value();
      eq.weak = true;
    } else {
      continue;
    }
    // Evidence that never arrives on the path (alpha = 0 or beta = 1) gets
    // the same point belief as the off-path message.
    for (Bit e : kBits) {
      const std::size_t cell = cell_index(m, e);
      if (!on_path(game, eq.profile.sender, m, e)) {
        off_path[cell] = eq.profile.receiver.act_one[cell];
      }
    }
    eq.beliefs = bayes_beliefs(game, eq.profile.sender, off_path);
    out.push_back(std::move(eq));
  }
  return out;
}

namespace detail {

inline std::array<double, 2> solve_linear_2x2(double a, double b, double c, double d, double r0,
                                              double r1) {
  const double det = a * d - b * c;
  if (det == 0.0) {
    throw Error(ErrorCode::kZeroDenominator, "singular indifference system");
  }
  return {(r0 * d - b * r1) / det, (a * r1 - r0 * c) / det};
}

inline double snap_probability(double v, double epsilon, std::string_view name) {
  if (v < -epsilon || v > 1.0 + epsilon || std::isnan(v)) {
    throw Error(ErrorCode::kWrongRegime,
                std::string(name) + " = " + std::to_string(v) + " is not a probability");
  }
  if (v <= epsilon) return 0.0;
  if (v >= 1.0 - epsilon) return 1.0;
  return v;
}

}  // namespace detail

// The partially-separating equilibrium of the Middle regime.
//
// Let e* be the evidence at which the receiver mixes (e* = 1 for aggressive
// detectors, e* = 0 for conservative ones). At the other evidence value the
// receiver plays a = m XOR e: it trusts the message without an alarm and
// doubts it with one.
//
//  1. Receiver mixing s(0,e*), s(1,e*): each sender type must face the same
//     probability of a = 1 after either message,
//       sum_e lambda(e|theta,0) s(0,e) = sum_e lambda(e|theta,1) s(1,e).
//  2. Sender mixing q, r: the receiver must be indifferent at (0,e*) and
//     (1,e*), i.e. Kbar p(0) P(m|0) lambda(e*|0,m) = K p(1) P(m|1)
//     lambda(e*|1,m) with K = Delta1/(Delta0+Delta1).
inline Equilibrium partial_separating_equilibrium(const Game& game,
                                                  double epsilon = kDefaultEpsilon) {
  const Regime regime = classify_regime(game, epsilon);
  if (regime.value != RegimeKind::kMiddle) {
    throw Error(ErrorCode::kWrongRegime, std::string("prior lies in the ") +
                                             std::string(to_string(regime.value)) +
                                             " regime, not Middle");
  }
  const DetectorClass cls = detector_class(game.detector());
  if (cls == DetectorClass::kEqualErrorRate) {
    throw Error(ErrorCode::kEqualErrorRateUnsupported,
                "equal-error-rate detectors have no partially-separating equilibrium");
  }
  const Bit mix_e = cls == DetectorClass::kAggressive ? kOne : kZero;
  const Bit pure_e = mix_e.flip();
  auto lam = [&](Bit e, Bit theta, Bit m) { return game.likelihood(e, theta, m); };
  auto pure_action = [](Bit m, Bit e) { return static_cast<double>(m.value() ^ e.value()); };

  // Step 1.
  std::array<double, 2> rhs{};
  for (Bit theta : kBits) {
    rhs[static_cast<std::size_t>(theta.value())] =
        lam(pure_e, theta, kOne) * pure_action(kOne, pure_e) -
        lam(pure_e, theta, kZero) * pure_action(kZero, pure_e);
  }
  const auto mix = detail::solve_linear_2x2(lam(mix_e, kZero, kZero), -lam(mix_e, kZero, kOne),
                                            lam(mix_e, kOne, kZero), -lam(mix_e, kOne, kOne),
                                            rhs[0], rhs[1]);

  // Step 2.
  const double p = game.prior_one();
  const double kz = (1.0 - p) * (1.0 - game.k_one());
  const double ko = p * game.k_one();
  const auto qr = detail::solve_linear_2x2(
      -kz * lam(mix_e, kZero, kZero), ko * lam(mix_e, kOne, kZero),
      -kz * lam(mix_e, kZero, kOne), ko * lam(mix_e, kOne, kOne),
      ko * lam(mix_e, kOne, kZero) - kz * lam(mix_e, kZero, kZero), 0.0);

  Equilibrium eq;
  eq.regime = regime;
  eq.profile.sender = SenderStrategy::from_qr(detail::snap_probability(qr[0], epsilon, "q"),
                                              detail::snap_probability(qr[1], epsilon, "r"));
  for (Bit m : kBits) {
    eq.profile.receiver.act_one[cell_index(m, pure_e)] = pure_action(m, pure_e);
    eq.profile.receiver.act_one[cell_index(m, mix_e)] = detail::snap_probability(
        mix[static_cast<std::size_t>(m.value())], epsilon, m == kZero ? "s(0,e*)" : "s(1,e*)");
  }

  // At the upper edge of the regime both types send the same message; the
  // other message is then unreachable and gets the indifference belief,
  // which rationalises any receiver action there.
  std::array<std::optional<double>, 4> off_path;
  off_path.fill(game.delta0() / (game.delta0() + game.delta1()));
  eq.beliefs = bayes_beliefs(game, eq.profile.sender, off_path);
  const double q = eq.profile.sender.q();
  const double r = eq.profile.sender.r();
  if (q == r && (q == 0.0 || q == 1.0)) {
    eq.kind = pooling_kind(Bit(static_cast<int>(q)));
    eq.weak = true;
  } else {
    eq.kind = EquilibriumKind::kPartiallySeparating;
    eq.weak = regime.on_boundary();
  }
  return eq;
}

// Every equilibrium of the game: the pooling ones plus, in the Middle regime
// of a non-EER detector, the partially-separating one. Each result has
// passed verify_pbne at `epsilon`.
inline std::vector<Equilibrium> solve(const Game& game, double epsilon = kDefaultEpsilon) {
  std::vector<Equilibrium> out = pooling_equilibria(game, epsilon);
  const Regime regime = classify_regime(game, epsilon);
  if (regime.value == RegimeKind::kMiddle &&
      detector_class(game.detector()) != DetectorClass::kEqualErrorRate) {
    Equilibrium partial = partial_separating_equilibrium(game, epsilon);
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Equilibrium& e) {
      return e.profile == partial.profile || e.kind == partial.kind;
    });
    if (!duplicate) out.push_back(std::move(partial));
  }
  for (const Equilibrium& eq : out) {
    const VerificationReport report = verify_pbne(game, eq.profile, eq.beliefs, epsilon);
    if (!report.passed) {
      throw Error(ErrorCode::kVerificationFailed,
                  std::string("emitted ") + std::string(to_string(eq.kind)) +
                      " equilibrium failed verification (sender gap " +
                      std::to_string(report.max_sender_gap()) + ", receiver gap " +
                      std::to_string(report.max_receiver_gap()) + ")");
    }
  }
  return out;
}

}  // namespace sigev
