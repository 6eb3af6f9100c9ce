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

// Prior-probability regimes and the receiver's best response to pooling.
//
// When both sender types pool on a message, the receiver sees only the
// evidence. Each (m, e) information set then has a cutoff prior above which
// guessing theta = 1 pays. The four cutoffs split p(1) into five regimes.

#pragma once

#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "sigev/beliefs.hpp"
#include "sigev/game_model.hpp"

namespace sigev {

enum class Threshold { kA, kB, kC, kD };

inline constexpr std::string_view to_string(Threshold t) {
  switch (t) {
    case Threshold::kA: return "t_a";
    case Threshold::kB: return "t_b";
    case Threshold::kC: return "t_c";
    case Threshold::kD: return "t_d";
  }
  return "?";
}

enum class RegimeKind { kZeroDominant, kZeroHeavy, kMiddle, kOneHeavy, kOneDominant };

inline constexpr std::string_view to_string(RegimeKind r) {
  switch (r) {
    case RegimeKind::kZeroDominant: return "ZeroDominant";
    case RegimeKind::kZeroHeavy: return "ZeroHeavy";
    case RegimeKind::kMiddle: return "Middle";
    case RegimeKind::kOneHeavy: return "OneHeavy";
    case RegimeKind::kOneDominant: return "OneDominant";
  }
  return "?";
}

// Regime boundaries in p(1)-space.
//   t_a: cutoff of (m=0, e=1)   t_b: cutoff of (m=1, e=0)
//   t_c: cutoff of (m=0, e=0)   t_d: cutoff of (m=1, e=1)
struct RegimeThresholds {
  double t_a = 0.0;
  double t_b = 0.0;
  double t_c = 0.0;
  double t_d = 0.0;
  DetectorClass detector_class = DetectorClass::kConservative;

  double value(Threshold t) const noexcept {
    switch (t) {
      case Threshold::kA: return t_a;
      case Threshold::kB: return t_b;
      case Threshold::kC: return t_c;
      case Threshold::kD: return t_d;
    }
    return 0.0;
  }

  // Boundary names in increasing p(1). Equal-error-rate detectors have
  // t_a == t_b and t_c == t_d, so either order works; the conservative one
  // is used.
  std::array<Threshold, 4> order() const noexcept {
    if (detector_class == DetectorClass::kAggressive) {
      return {Threshold::kB, Threshold::kA, Threshold::kD, Threshold::kC};
    }
    return {Threshold::kA, Threshold::kB, Threshold::kC, Threshold::kD};
  }

  std::array<double, 4> ordered() const noexcept {
    std::array<double, 4> out{};
    const auto names = order();
    for (std::size_t i = 0; i < 4; ++i) out[i] = value(names[i]);
    return out;
  }
};

struct Regime {
  RegimeKind value = RegimeKind::kMiddle;
  std::vector<Threshold> boundary_flags;

  bool on_boundary() const noexcept { return !boundary_flags.empty(); }
};

namespace detail {

// Prior at which the pooled receiver is indifferent at (m, e): the solution
// of mu(1|m,e) = Delta0 / (Delta0 + Delta1) for p(1).
inline double indifference_prior(const Game& game, Bit m, Bit e) noexcept {
  const double l0 = game.likelihood(e, kZero, m);
  const double l1 = game.likelihood(e, kOne, m);
  return game.delta0() * l0 / (game.delta0() * l0 + game.delta1() * l1);
}

}  // namespace detail

inline RegimeThresholds regime_thresholds(const Game& game) noexcept {
  RegimeThresholds t;
  t.t_a = detail::indifference_prior(game, kZero, kOne);
  t.t_b = detail::indifference_prior(game, kOne, kZero);
  t.t_c = detail::indifference_prior(game, kZero, kZero);
  t.t_d = detail::indifference_prior(game, kOne, kOne);
  t.detector_class = detector_class(game.detector());
  return t;
}

// Bins p(1) against the ordered boundaries. A prior within epsilon of a
// boundary is flagged and binned into the lower regime.
inline Regime classify_regime(const Game& game, double epsilon = kDefaultEpsilon) {
  const RegimeThresholds thresholds = regime_thresholds(game);
  const double p = game.prior_one();
  Regime regime;
  int index = 0;
  for (Threshold name : thresholds.order()) {
    const double t = thresholds.value(name);
    if (std::abs(p - t) <= epsilon) {
      regime.boundary_flags.push_back(name);
    } else if (p > t) {
      ++index;
    }
  }
  regime.value = static_cast<RegimeKind>(index);
  return regime;
}

// Receiver best response on the path when both types send `pooled`.
struct PoolingResponse {
  Bit message;
  std::array<Bit, 2> action;  // indexed by evidence
  std::array<bool, 2> tied{false, false};

  bool evidence_independent() const noexcept { return action[0] == action[1]; }
  bool any_tie() const noexcept { return tied[0] || tied[1]; }
};

// Compares the pooling posterior against the cutoff Delta0/(Delta0+Delta1)
// at both evidence values. A prior within epsilon of the indifference prior
// is a tie and resolves to action 0, matching the lower-regime binning of
// classify_regime. Equal-error-rate detectors throw on a tie because both
// boundary pairs coincide there.
inline PoolingResponse receiver_pooling_response(const Game& game, Bit pooled,
                                                 double epsilon = kDefaultEpsilon) {
  PoolingResponse response{pooled, {kZero, kZero}, {false, false}};
  const double cutoff = game.delta0() / (game.delta0() + game.delta1());
  for (Bit e : kBits) {
    const std::size_t i = static_cast<std::size_t>(e.value());
    const double p_star = detail::indifference_prior(game, pooled, e);
    const bool tied = std::abs(game.prior_one() - p_star) <= epsilon;
    // Evidence that cannot occur (e.g. alpha = 0 at a degenerate prior)
    // leaves no posterior; the prior comparison is the limit of the
    // posterior comparison there.
    const double mu_one = on_path(game, SenderStrategy::pooling(pooled), pooled, e)
                              ? pooling_posterior(game.detector(), game.prior_one(), kOne, pooled, e)
                              : (game.prior_one() > p_star ? 1.0 : 0.0);
    if (tied && detector_class(game.detector()) == DetectorClass::kEqualErrorRate) {
      throw Error(ErrorCode::kEqualErrorRateAmbiguity,
                  "receiver is indifferent on the path of an equal-error-rate detector");
    }
    response.tied[i] = tied;
    response.action[i] = (!tied && mu_one > cutoff) ? kOne : kZero;
  }
  return response;
}

}  // namespace sigev
