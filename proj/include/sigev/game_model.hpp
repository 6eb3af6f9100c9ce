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

// Data model of a binary cheap-talk signaling game with evidence.
//
// A sender of private type theta sends a message m, a detector emits evidence
// e (an alarm, e = 1, fires with the true-positive rate beta when m != theta
// and with the false-positive rate alpha when m == theta), and the receiver
// picks an action a after observing (m, e). Every space is {0, 1}.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "sigev/error.hpp"

namespace sigev {

// Global tolerance for comparisons of derived quantities (indifference,
// verification, regime boundaries). Input probabilities are compared exactly.
inline constexpr double kDefaultEpsilon = 1e-9;

// One element of a binary space: a type, message, evidence value or action.
class Bit {
 public:
  constexpr Bit() = default;
  constexpr explicit Bit(int value) : value_(checked(value)) {}

  constexpr int value() const noexcept { return value_; }
  constexpr Bit flip() const noexcept { return Bit(1 - value_); }
  constexpr explicit operator bool() const noexcept { return value_ == 1; }

  friend constexpr bool operator==(Bit, Bit) = default;

 private:
  static constexpr std::uint8_t checked(int value) {
    if (value != 0 && value != 1) {
      throw Error(ErrorCode::kInvalidArgument, "binary index must be 0 or 1");
    }
    return static_cast<std::uint8_t>(value);
  }

  std::uint8_t value_ = 0;
};

inline constexpr Bit kZero{0};
inline constexpr Bit kOne{1};
inline constexpr std::array<Bit, 2> kBits{kZero, kOne};

enum class DetectorClass { kConservative, kAggressive, kEqualErrorRate };

inline constexpr std::string_view to_string(DetectorClass c) {
  switch (c) {
    case DetectorClass::kConservative: return "Conservative";
    case DetectorClass::kAggressive: return "Aggressive";
    case DetectorClass::kEqualErrorRate: return "EqualErrorRate";
  }
  return "Unknown";
}

// Evidence likelihood lambda(e | theta, m) for raw error rates. Kept separate
// from Detector so that degenerate rates can still be evaluated.
inline constexpr double likelihood(double alpha, double beta, Bit e, Bit theta, Bit m) noexcept {
  const double alarm = (m == theta) ? alpha : beta;
  return e == kOne ? alarm : 1.0 - alarm;
}

// Detector characterised by its false-positive rate alpha ("size") and its
// true-positive rate beta ("power"). Requires 0 <= alpha < beta <= 1.
class Detector {
 public:
  Detector(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
      throw Error(ErrorCode::kInvalidDetector, "alpha and beta must lie in [0, 1]");
    }
    if (beta == alpha) {
      throw Error(ErrorCode::kInvalidDetector,
                  "beta == alpha carries no evidence; use a detector with beta > alpha");
    }
    if (beta < alpha) {
      throw Error(ErrorCode::kInvalidDetector,
                  "beta < alpha; swap the alarm labels so that beta > alpha");
    }
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  double likelihood(Bit e, Bit theta, Bit m) const noexcept {
    return sigev::likelihood(alpha_, beta_, e, theta, m);
  }

  friend bool operator==(const Detector&, const Detector&) = default;

 private:
  double alpha_;
  double beta_;
};

inline double likelihood(const Detector& detector, Bit e, Bit theta, Bit m) noexcept {
  return detector.likelihood(e, theta, m);
}

inline DetectorClass detector_class(const Detector& detector) noexcept {
  const double true_negative = 1.0 - detector.alpha();
  if (detector.beta() < true_negative) return DetectorClass::kConservative;
  if (detector.beta() > true_negative) return DetectorClass::kAggressive;
  return DetectorClass::kEqualErrorRate;
}

// Detector quality j = beta - alpha (Youden's J) and aggressiveness
// g = beta - (1 - alpha). Feasible shapes satisfy 0 < j <= 1 - |g|.
struct DetectorShape {
  double j = 0.0;
  double g = 0.0;

  friend bool operator==(const DetectorShape&, const DetectorShape&) = default;
};

// Slack on the j <= 1 - |g| edge, so that decimal lattices such as
// (j, g) = (0.2, -0.8) stay feasible.
inline constexpr double kShapeSlack = 1e-12;

inline void check_feasible(const DetectorShape& shape) {
  if (!(shape.j > 0.0)) {
    throw Error(ErrorCode::kInfeasibleShape, "quality j must be positive");
  }
  if (!(shape.g > -1.0 && shape.g < 1.0) || shape.j > 1.0 - std::abs(shape.g) + kShapeSlack) {
    throw Error(ErrorCode::kInfeasibleShape, "shape requires j <= 1 - |g| and |g| < 1");
  }
}

inline DetectorShape roc_to_shape(const Detector& detector) noexcept {
  return {detector.beta() - detector.alpha(), detector.beta() - (1.0 - detector.alpha())};
}

inline Detector shape_to_roc(const DetectorShape& shape) {
  check_feasible(shape);
  return Detector(std::clamp((1.0 - shape.j + shape.g) / 2.0, 0.0, 1.0),
                  std::clamp((1.0 + shape.j + shape.g) / 2.0, 0.0, 1.0));
}

// Payoff u(theta, m, a). The message axis is stored so that validation can
// reject message-dependent tables instead of averaging them away.
class UtilityTable {
 public:
  UtilityTable() = default;

  // Builds a message-independent table from the four (theta, a) payoffs.
  static UtilityTable message_independent(double t0_a0, double t0_a1, double t1_a0,
                                          double t1_a1) {
    UtilityTable table;
    for (Bit m : kBits) {
      table.set(kZero, m, kZero, t0_a0);
      table.set(kZero, m, kOne, t0_a1);
      table.set(kOne, m, kZero, t1_a0);
      table.set(kOne, m, kOne, t1_a1);
    }
    return table;
  }

  double operator()(Bit theta, Bit m, Bit a) const noexcept { return values_[index(theta, m, a)]; }
  void set(Bit theta, Bit m, Bit a, double value) noexcept { values_[index(theta, m, a)] = value; }

  // u(theta, a) read from the m = 0 column; only meaningful after validation.
  double at(Bit theta, Bit a) const noexcept { return (*this)(theta, kZero, a); }

  UtilityTable scaled(double factor, double shift = 0.0) const {
    UtilityTable out;
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = factor * values_[i] + shift;
    return out;
  }

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

 private:
  static constexpr std::size_t index(Bit theta, Bit m, Bit a) noexcept {
    return static_cast<std::size_t>(4 * theta.value() + 2 * m.value() + a.value());
  }

  std::array<double, 8> values_{};
};

// Raw, unvalidated game description.
struct GameConfig {
  double prior_one = 0.5;  // p(theta = 1)
  Detector detector{0.0, 1.0};
  UtilityTable sender_utils;
  UtilityTable receiver_utils;
};

class Game;
Game validate_game(const GameConfig& config);

// A game whose configuration satisfies every modelling assumption. Only
// validate_game creates one, so holding a Game is proof of validity.
class Game {
 public:
  const GameConfig& config() const noexcept { return config_; }
  double prior_one() const noexcept { return config_.prior_one; }
  double prior(Bit theta) const noexcept {
    return theta == kOne ? config_.prior_one : 1.0 - config_.prior_one;
  }
  const Detector& detector() const noexcept { return config_.detector; }
  const UtilityTable& sender_utils() const noexcept { return config_.sender_utils; }
  const UtilityTable& receiver_utils() const noexcept { return config_.receiver_utils; }

  // Receiver's benefit from correctly guessing type 0 and type 1.
  double delta0() const noexcept { return delta0_; }
  double delta1() const noexcept { return delta1_; }
  double delta(Bit theta) const noexcept { return theta == kOne ? delta1_ : delta0_; }
  // Share of the total guessing benefit attributable to type 1.
  double k_one() const noexcept { return delta1_ / (delta0_ + delta1_); }

  double likelihood(Bit e, Bit theta, Bit m) const noexcept {
    return config_.detector.likelihood(e, theta, m);
  }

  Game with_prior(double prior_one) const {
    GameConfig next = config_;
    next.prior_one = prior_one;
    return validate_game(next);
  }
  Game with_detector(const Detector& detector) const {
    GameConfig next = config_;
    next.detector = detector;
    return validate_game(next);
  }

 private:
  friend Game validate_game(const GameConfig& config);
  Game(const GameConfig& config, double delta0, double delta1)
      : config_(config), delta0_(delta0), delta1_(delta1) {}

  GameConfig config_;
  double delta0_;
  double delta1_;
};

namespace detail {

inline std::string cell_name(std::string_view table, int theta, int m, int a) {
  return std::string(table) + "(" + std::to_string(theta) + "," + std::to_string(m) + "," +
         std::to_string(a) + ")";
}

inline void check_message_independence(const UtilityTable& table, std::string_view name) {
  for (Bit theta : kBits) {
    for (Bit a : kBits) {
      if (table(theta, kZero, a) != table(theta, kOne, a)) {
        throw AssumptionViolation(
            1, cell_name(name, theta.value(), 0, a.value()) + " != " +
                   cell_name(name, theta.value(), 1, a.value()));
      }
    }
  }
}

}  // namespace detail

inline Game validate_game(const GameConfig& config) {
  if (!(config.prior_one >= 0.0 && config.prior_one <= 1.0)) {
    throw Error(ErrorCode::kInvalidPrior, "prior p(theta = 1) must lie in [0, 1]");
  }
  const UtilityTable& ur = config.receiver_utils;
  const UtilityTable& us = config.sender_utils;
  for (const auto& [table, name] : {std::pair{&us, "u_S"}, std::pair{&ur, "u_R"}}) {
    for (Bit theta : kBits) {
      for (Bit m : kBits) {
        for (Bit a : kBits) {
          if (!std::isfinite((*table)(theta, m, a))) {
            throw Error(ErrorCode::kInvalidArgument,
                        detail::cell_name(name, theta.value(), m.value(), a.value()) +
                            " is not finite");
          }
        }
      }
    }
  }
  detail::check_message_independence(ur, "u_R");
  detail::check_message_independence(us, "u_S");

  using detail::cell_name;
  for (Bit m : kBits) {
    const int mi = m.value();
    if (!(ur(kZero, m, kZero) > ur(kZero, m, kOne))) {
      throw AssumptionViolation(2, cell_name("u_R", 0, mi, 0) + " must exceed " +
                                       cell_name("u_R", 0, mi, 1));
    }
    if (!(ur(kOne, m, kZero) < ur(kOne, m, kOne))) {
      throw AssumptionViolation(3, cell_name("u_R", 1, mi, 1) + " must exceed " +
                                       cell_name("u_R", 1, mi, 0));
    }
    if (!(us(kZero, m, kZero) < us(kZero, m, kOne))) {
      throw AssumptionViolation(4, cell_name("u_S", 0, mi, 1) + " must exceed " +
                                       cell_name("u_S", 0, mi, 0));
    }
    if (!(us(kOne, m, kZero) > us(kOne, m, kOne))) {
      throw AssumptionViolation(5, cell_name("u_S", 1, mi, 0) + " must exceed " +
                                       cell_name("u_S", 1, mi, 1));
    }
  }

  const double delta0 = ur(kZero, kZero, kZero) - ur(kZero, kZero, kOne);
  const double delta1 = ur(kOne, kZero, kOne) - ur(kOne, kZero, kZero);
  return Game(config, delta0, delta1);
}

}  // namespace sigev
