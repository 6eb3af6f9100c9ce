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

// Comparative statics: truth induction, parameter sweeps, utility surfaces
// and robustness of equilibrium strategies to an off-equilibrium opponent.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sigev/equilibrium_solver.hpp"
#include "sigev/expected_utility.hpp"
#include "sigev/game_model.hpp"
#include "sigev/regimes.hpp"

namespace sigev {

// Probability that the sent message equals the type:
// tau = sum_theta p(theta) sigma_S(m = theta | theta).
inline double truth_induction(const Game& game, const Equilibrium& eq) noexcept {
  double tau = 0.0;
  for (Bit theta : kBits) tau += game.prior(theta) * eq.profile.sender.prob(theta, theta);
  return tau;
}

struct Selection {
  std::size_t primary = 0;
  std::optional<std::size_t> alternate;
};

// Picks the equilibrium reported on curves. The partially-separating one
// wins when present. Where two pooling equilibria coexist, the one
// continuous with the adjacent Heavy regime is primary: aggressive detectors
// pool on m = theta-majority (truth-telling), conservative ones on the
// opposite message. Equal-error-rate detectors follow the aggressive rule.
inline Selection select_equilibrium(const Game& game, const std::vector<Equilibrium>& eqs) {
  if (eqs.empty()) throw Error(ErrorCode::kInvalidArgument, "no equilibrium to select");
  Selection sel;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (eqs[i].kind == EquilibriumKind::kPartiallySeparating) {
      sel.primary = i;
      if (eqs.size() > 1) sel.alternate = i == 0 ? 1 : 0;
      return sel;
    }
  }
  if (eqs.size() == 1) return sel;

  const bool one_side = eqs.front().regime.value == RegimeKind::kOneDominant ||
                        eqs.front().regime.value == RegimeKind::kOneHeavy ||
                        (eqs.front().regime.value == RegimeKind::kMiddle && game.prior_one() > 0.5);
  const bool truth_telling = detector_class(game.detector()) != DetectorClass::kConservative;
  const Bit wanted = (one_side == truth_telling) ? kOne : kZero;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (eqs[i].kind == pooling_kind(wanted)) {
      sel.primary = i;
      sel.alternate = i == 0 ? 1 : 0;
      return sel;
    }
  }
  sel.alternate = 1;
  return sel;
}

enum class SweepAxis { kPrior, kJ, kG };

inline constexpr std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPrior: return "prior";
    case SweepAxis::kJ: return "J";
    case SweepAxis::kG: return "G";
  }
  return "?";
}

struct SweepSpec {
  GameConfig base;
  SweepAxis axis = SweepAxis::kPrior;
  double from = 0.0;
  double to = 1.0;
  int steps = 101;
  // Shape component held fixed on the J and G axes; defaults to the base
  // detector's shape.
  std::optional<DetectorShape> fixed_shape;
  double epsilon = kDefaultEpsilon;
};

struct SweepRow {
  double axis_value = 0.0;
  std::optional<RegimeKind> regime;
  std::vector<EquilibriumKind> kinds;
  double q = 0.0;
  double r = 0.0;
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double tau = 0.0;
  double sender_apriori = 0.0;
  double receiver_apriori = 0.0;
  bool weak = false;
  std::optional<EquilibriumKind> alternate;
  std::string error;
};

// Game at one point of a sweep.
inline Game sweep_point(const SweepSpec& spec, double value) {
  GameConfig config = spec.base;
  const DetectorShape fixed = spec.fixed_shape.value_or(roc_to_shape(spec.base.detector));
  switch (spec.axis) {
    case SweepAxis::kPrior:
      config.prior_one = value;
      break;
    case SweepAxis::kJ:
      config.detector = shape_to_roc({value, fixed.g});
      break;
    case SweepAxis::kG:
      config.detector = shape_to_roc({fixed.j, value});
      break;
  }
  return validate_game(config);
}

inline SweepRow evaluate_point(const Game& game, double axis_value, double epsilon) {
  SweepRow row;
  row.axis_value = axis_value;
  row.regime = classify_regime(game, epsilon).value;
  const std::vector<Equilibrium> eqs = solve(game, epsilon);
  for (const auto& eq : eqs) row.kinds.push_back(eq.kind);
  const Selection sel = select_equilibrium(game, eqs);
  const Equilibrium& eq = eqs[sel.primary];
  row.q = eq.profile.sender.q();
  row.r = eq.profile.sender.r();
  row.w = eq.profile.receiver.w();
  row.x = eq.profile.receiver.x();
  row.y = eq.profile.receiver.y();
  row.z = eq.profile.receiver.z();
  row.tau = truth_induction(game, eq);
  row.sender_apriori = a_priori_utility(eq.profile, game, Player::kSender);
  row.receiver_apriori = a_priori_utility(eq.profile, game, Player::kReceiver);
  row.weak = eq.weak;
  if (sel.alternate) row.alternate = eqs[*sel.alternate].kind;
  return row;
}

// Solves every point of an evenly spaced sweep. A point that fails
// (infeasible shape, degenerate solve) keeps its axis value and records the
// error; the sweep continues.
inline std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.steps < 2) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least 2 steps");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double t = static_cast<double>(i) / (spec.steps - 1);
    const double value = i == spec.steps - 1 ? spec.to : spec.from + (spec.to - spec.from) * t;
    try {
      rows.push_back(evaluate_point(sweep_point(spec, value), value, spec.epsilon));
    } catch (const Error& err) {
      SweepRow row;
      row.axis_value = value;
      row.error = err.what();
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.axis_value < b.axis_value; });
  return rows;
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; std::mt19937_64 output is
// fully specified, so results are reproducible across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct InvarianceReport {
  Equilibrium equilibrium;
  double base_utility = 0.0;
  // Largest |U_R(perturbed sender) - U_R(equilibrium sender)|.
  double max_utility_difference = 0.0;
  // reach[theta][m]: probability of a = 1 for type theta sending m under the
  // equilibrium receiver strategy.
  std::array<std::array<double, 2>, 2> reach{};
  // Largest |reach[theta][m] - reach[theta][1-m]| over theta and actions.
  double max_identity_residual = 0.0;
  int perturbations = 0;
};

// Holds the receiver at its equilibrium strategy and measures how much its
// a priori utility moves when the sender plays random strategies instead.
inline InvarianceReport receiver_utility_invariance(const Game& game, int perturbation_count,
                                                    std::uint64_t seed = 0,
                                                    double epsilon = kDefaultEpsilon) {
  if (perturbation_count < 0) {
    throw Error(ErrorCode::kInvalidArgument, "perturbation_count must be non-negative");
  }
  const std::vector<Equilibrium> eqs = solve(game, epsilon);
  InvarianceReport report;
  report.equilibrium = eqs[select_equilibrium(game, eqs).primary];
  report.perturbations = perturbation_count;
  const ReceiverStrategy& receiver = report.equilibrium.profile.receiver;
  report.base_utility = a_priori_utility(report.equilibrium.profile, game, Player::kReceiver);

  for (Bit theta : kBits) {
    for (Bit m : kBits) {
      double reach_one = 0.0;
      for (Bit e : kBits) reach_one += game.likelihood(e, theta, m) * receiver.prob(kOne, m, e);
      report.reach[static_cast<std::size_t>(theta.value())][static_cast<std::size_t>(m.value())] =
          reach_one;
    }
    const auto& row = report.reach[static_cast<std::size_t>(theta.value())];
    // The a = 0 reach is the complement, so one residual covers both actions.
    report.max_identity_residual = std::max(report.max_identity_residual, std::abs(row[0] - row[1]));
  }

  std::mt19937_64 rng(seed);
  for (int i = 0; i < perturbation_count; ++i) {
    StrategyProfile perturbed{
        SenderStrategy::from_qr(detail::unit_uniform(rng), detail::unit_uniform(rng)), receiver};
    const double u = a_priori_utility(perturbed, game, Player::kReceiver);
    report.max_utility_difference =
        std::max(report.max_utility_difference, std::abs(u - report.base_utility));
  }
  return report;
}

struct UtilityPoint {
  DetectorShape shape;
  double prior_one = 0.0;
  double sender = 0.0;
  double receiver = 0.0;
  std::string error;
};

// A pair of detectors with equal aggressiveness where the sender does
// strictly better against the higher-quality one.
struct QualityCertificate {
  double prior_one = 0.0;
  double g = 0.0;
  double j_low = 0.0;
  double j_high = 0.0;
  double sender_low = 0.0;
  double sender_high = 0.0;
};

struct UtilitySurface {
  std::vector<UtilityPoint> points;
  std::vector<QualityCertificate> certificates;
};

// Both players' a priori utilities on every (shape, prior) pair, using the
// same equilibrium selection as sweep().
inline UtilitySurface utility_vs_detector(const GameConfig& config_template,
                                          const std::vector<DetectorShape>& shapes,
                                          const std::vector<double>& prior_grid,
                                          double epsilon = kDefaultEpsilon) {
  UtilitySurface surface;
  for (const DetectorShape& shape : shapes) {
    for (double p : prior_grid) {
      UtilityPoint point;
      point.shape = shape;
      point.prior_one = p;
      try {
        GameConfig config = config_template;
        config.detector = shape_to_roc(shape);
        config.prior_one = p;
        const Game game = validate_game(config);
        const std::vector<Equilibrium> eqs = solve(game, epsilon);
        const Equilibrium& eq = eqs[select_equilibrium(game, eqs).primary];
        point.sender = a_priori_utility(eq.profile, game, Player::kSender);
        point.receiver = a_priori_utility(eq.profile, game, Player::kReceiver);
      } catch (const Error& err) {
        point.error = err.what();
      }
      surface.points.push_back(std::move(point));
    }
  }

  const auto& pts = surface.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const UtilityPoint& lo = pts[i];
      const UtilityPoint& hi = pts[k];
      if (!lo.error.empty() || !hi.error.empty()) continue;
      if (lo.prior_one != hi.prior_one || lo.shape.g != hi.shape.g) continue;
      if (!(lo.shape.j < hi.shape.j)) continue;
      if (hi.sender > lo.sender + epsilon) {
        surface.certificates.push_back(
            {lo.prior_one, lo.shape.g, lo.shape.j, hi.shape.j, lo.sender, hi.sender});
      }
    }
  }
  return surface;
}

struct RobustnessRow {
  double prior_one = 0.0;
  double sender_optimal = 0.0;
  double sender_suboptimal_mean = 0.0;
  // Share of trials where the perturbed receiver left the sender no worse off.
  double fraction_not_lower = 0.0;
  int trials = 0;
  std::string error;
};

// Replays the sender's equilibrium strategy against receivers whose every
// cell is moved by uniform noise in [-noise, noise] and clipped to [0, 1].
// Utilities are exact expectations; only the perturbations are random.
inline std::vector<RobustnessRow> sender_vs_suboptimal_receiver(
    const Game& game, double noise, int trials, std::uint64_t seed,
    const std::vector<double>& priors = {}, double epsilon = kDefaultEpsilon) {
  if (!(noise >= 0.0 && noise <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise must lie in [0, 1]");
  }
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
  const std::vector<double> grid = priors.empty() ? std::vector<double>{game.prior_one()} : priors;
  std::vector<RobustnessRow> rows;
  std::mt19937_64 rng(seed);
  for (double p : grid) {
    RobustnessRow row;
    row.prior_one = p;
    row.trials = trials;
    try {
      const Game point = game.with_prior(p);
      const RegimeKind regime = classify_regime(point, epsilon).value;
      if (regime == RegimeKind::kZeroDominant || regime == RegimeKind::kOneDominant) {
        throw Error(ErrorCode::kWrongRegime, "robustness needs a Heavy or Middle regime");
      }
      const std::vector<Equilibrium> eqs = solve(point, epsilon);
      const StrategyProfile eq = eqs[select_equilibrium(point, eqs).primary].profile;
      row.sender_optimal = a_priori_utility(eq, point, Player::kSender);
      double mean = 0.0;
      int not_lower = 0;
      for (int t = 0; t < trials; ++t) {
        StrategyProfile perturbed = eq;
        for (double& cell : perturbed.receiver.act_one) {
          const double shift = noise * (2.0 * detail::unit_uniform(rng) - 1.0);
          cell = std::clamp(cell + shift, 0.0, 1.0);
        }
        const double u = a_priori_utility(perturbed, point, Player::kSender);
        // Running mean: identical samples reproduce the sample exactly.
        mean += (u - mean) / (t + 1);
        if (u >= row.sender_optimal - epsilon) ++not_lower;
      }
      row.sender_suboptimal_mean = mean;
      row.fraction_not_lower = static_cast<double>(not_lower) / trials;
    } catch (const Error& err) {
      row.error = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sigev
