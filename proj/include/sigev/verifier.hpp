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

// Brute-force equilibrium oracle.
//
// Nothing in this header uses the closed-form equilibria. verify_pbne checks
// the three defining conditions of a perfect Bayesian equilibrium directly;
// brute_force_search enumerates sender profiles on a grid and asks whether
// some receiver strategy completes each of them into an equilibrium.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "sigev/beliefs.hpp"
#include "sigev/expected_utility.hpp"
#include "sigev/game_model.hpp"
#include "sigev/regimes.hpp"

namespace sigev {

struct BeliefResidual {
  Bit m;
  Bit e;
  Bit theta;
  double residual = 0.0;
};

struct VerificationReport {
  bool passed = false;
  // Best pure-message gain over the sender's strategy, per type.
  std::array<double, 2> sender_gaps{0.0, 0.0};
  // Best pure-action gain over the receiver's strategy, per (m, e).
  std::array<double, 4> receiver_gaps{0.0, 0.0, 0.0, 0.0};
  // |mu - Bayes| at every reachable (m, e, theta).
  std::vector<BeliefResidual> belief_residuals;
  bool valid_distributions = true;
  double tolerance = kDefaultEpsilon;

  double max_sender_gap() const noexcept { return std::max(sender_gaps[0], sender_gaps[1]); }
  double max_receiver_gap() const noexcept {
    return *std::max_element(receiver_gaps.begin(), receiver_gaps.end());
  }
  double max_belief_residual() const noexcept {
    double out = 0.0;
    for (const auto& b : belief_residuals) out = std::max(out, b.residual);
    return out;
  }
};

namespace detail {

inline bool is_probability(double v, double epsilon) noexcept {
  return v >= -epsilon && v <= 1.0 + epsilon;
}

// Expected receiver payoff of action a at (m, e) under the belief post_one.
inline double receiver_action_value(const Game& game, double post_one, Bit m, Bit a) noexcept {
  return (1.0 - post_one) * game.receiver_utils()(kZero, m, a) +
         post_one * game.receiver_utils()(kOne, m, a);
}

}  // namespace detail

// Checks sender optimality per type, receiver optimality at every (m, e)
// under the supplied beliefs, and Bayes consistency at reachable (m, e).
// Expected utility is linear in a player's own mixture, so comparing with
// the two pure alternatives bounds every mixed deviation.
inline VerificationReport verify_pbne(const Game& game, const StrategyProfile& profile,
                                      const BeliefSystem& beliefs,
                                      double epsilon = kDefaultEpsilon) {
  VerificationReport report;
  report.tolerance = epsilon;

  for (std::size_t i = 0; i < 2; ++i) {
    report.valid_distributions &= detail::is_probability(profile.sender.send_one[i], epsilon);
  }
  for (std::size_t cell = 0; cell < 4; ++cell) {
    report.valid_distributions &= detail::is_probability(profile.receiver.act_one[cell], epsilon);
    report.valid_distributions &= detail::is_probability(beliefs.post_one[cell], 0.0);
  }

  for (Bit theta : kBits) {
    const double current = sender_expected_utility(profile, game, theta);
    double best = current;
    for (Bit m : kBits) best = std::max(best, sender_message_utility(profile.receiver, game, theta, m));
    report.sender_gaps[static_cast<std::size_t>(theta.value())] = best - current;
  }

  for (std::size_t cell = 0; cell < 4; ++cell) {
    const Bit m = cell_message(cell);
    const Bit e = cell_evidence(cell);
    const double mu = beliefs.post_one[cell];
    const double v0 = detail::receiver_action_value(game, mu, m, kZero);
    const double v1 = detail::receiver_action_value(game, mu, m, kOne);
    const double s = profile.receiver.act_one[cell];
    report.receiver_gaps[cell] = std::max(v0, v1) - ((1.0 - s) * v0 + s * v1);

    if (on_path(game, profile.sender, m, e)) {
      const double j0 = joint_probability(game, profile.sender, kZero, m, e);
      const double j1 = joint_probability(game, profile.sender, kOne, m, e);
      const double bayes_one = j1 / (j0 + j1);
      const double residual = std::abs(mu - bayes_one);
      report.belief_residuals.push_back({m, e, kZero, residual});
      report.belief_residuals.push_back({m, e, kOne, residual});
    }
  }

  report.passed = report.valid_distributions && report.max_sender_gap() <= epsilon &&
                  report.max_receiver_gap() <= epsilon &&
                  report.max_belief_residual() <= epsilon;
  return report;
}

namespace detail {

// Sender-optimality constraints on a receiver strategy s (probability of
// a = 1 per cell). Type theta's gain from m = 1 over m = 0 is
//   D_theta(s) = offset + sum_cell coeff[cell] * s[cell],
// and must lie in [lower, upper]. The bounds depend on which messages the
// type sends.
struct SenderConstraint {
  std::array<double, 4> coeff{};
  double offset = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  double value(const std::array<double, 4>& s) const noexcept {
    double v = offset;
    for (std::size_t i = 0; i < 4; ++i) v += coeff[i] * s[i];
    return v;
  }
};

inline std::array<SenderConstraint, 2> sender_constraints(const Game& game,
                                                          const SenderStrategy& sender,
                                                          double epsilon) {
  std::array<SenderConstraint, 2> rows;
  for (Bit theta : kBits) {
    SenderConstraint& row = rows[static_cast<std::size_t>(theta.value())];
    for (Bit m : kBits) {
      const double sign = (m == kOne) ? 1.0 : -1.0;
      for (Bit e : kBits) {
        const double lam = game.likelihood(e, theta, m);
        const double u0 = game.sender_utils()(theta, m, kZero);
        const double u1 = game.sender_utils()(theta, m, kOne);
        row.offset += sign * lam * u0;
        row.coeff[cell_index(m, e)] += sign * lam * (u1 - u0);
      }
    }
    constexpr double kInf = 1e300;
    const double send_one = sender.send_one[static_cast<std::size_t>(theta.value())];
    if (send_one <= 0.0) {
      row.lower = -kInf;
      row.upper = epsilon;
    } else if (send_one >= 1.0) {
      row.lower = -epsilon;
      row.upper = kInf;
    } else {
      row.lower = -epsilon;
      row.upper = epsilon;
    }
  }
  return rows;
}

inline std::optional<std::array<double, 2>> solve_2x2(double a, double b, double c, double d,
                                                      double r0, double r1) noexcept {
  const double det = a * d - b * c;
  if (std::abs(det) < 1e-300) return std::nullopt;
  return std::array<double, 2>{(r0 * d - b * r1) / det, (a * r1 - r0 * c) / det};
}

// Searches for a receiver strategy that pins the non-free cells to `fixed`,
// keeps every free cell in [0, 1] and satisfies both sender constraints.
// The feasible set is a polytope; if it is non-empty one of its vertices is
// found by making |S| box bounds slack and |S| constraint bounds tight, for
// every subset S of at most two free cells.
inline std::optional<ReceiverStrategy> find_receiver_completion(
    const Game& game, const SenderStrategy& sender,
    const std::array<std::optional<double>, 4>& fixed, double epsilon) {
  const auto rows = sender_constraints(game, sender, epsilon);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!fixed[i].has_value()) free.push_back(i);
  }

  auto feasible = [&](const std::array<double, 4>& s) {
    for (double v : s) {
      if (v < -epsilon || v > 1.0 + epsilon) return false;
    }
    for (const auto& row : rows) {
      const double v = row.value(s);
      if (v < row.lower || v > row.upper) return false;
    }
    return true;
  };
  auto clamp01 = [](std::array<double, 4> s) {
    for (double& v : s) v = std::clamp(v, 0.0, 1.0);
    return s;
  };

  const std::size_t n = free.size();
  // Subsets of the free cells of size <= 2 that stay interior; the other
  // free cells sit on a box bound.
  for (std::size_t size = 0; size <= std::min<std::size_t>(2, n); ++size) {
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
      std::vector<std::size_t> interior;
      std::vector<std::size_t> boxed;
      for (std::size_t k = 0; k < n; ++k) {
        ((mask >> k) & 1u ? interior : boxed).push_back(free[k]);
      }
      for (std::size_t corner = 0; corner < (1u << boxed.size()); ++corner) {
        std::array<double, 4> s{};
        for (std::size_t i = 0; i < 4; ++i) s[i] = fixed[i].value_or(0.0);
        for (std::size_t k = 0; k < boxed.size(); ++k) s[boxed[k]] = (corner >> k) & 1u ? 1.0 : 0.0;

        if (size == 0) {
          if (feasible(s)) return ReceiverStrategy{clamp01(s)};
          continue;
        }
        // A tight row sits at gain 0: the finite bounds are 0 +- epsilon.
        if (size == 1) {
          const std::size_t c = interior[0];
          for (std::size_t r = 0; r < 2; ++r) {
            if (std::abs(rows[r].coeff[c]) < 1e-300) continue;
            std::array<double, 4> trial = s;
            trial[c] = 0.0;
            trial[c] = -rows[r].value(trial) / rows[r].coeff[c];
            if (feasible(trial)) return ReceiverStrategy{clamp01(trial)};
          }
        } else {
          const std::size_t c0 = interior[0];
          const std::size_t c1 = interior[1];
          std::array<double, 4> base = s;
          base[c0] = 0.0;
          base[c1] = 0.0;
          const auto sol = solve_2x2(rows[0].coeff[c0], rows[0].coeff[c1], rows[1].coeff[c0],
                                     rows[1].coeff[c1], -rows[0].value(base),
                                     -rows[1].value(base));
          if (!sol) continue;
          std::array<double, 4> trial = base;
          trial[c0] = (*sol)[0];
          trial[c1] = (*sol)[1];
          if (feasible(trial)) return ReceiverStrategy{clamp01(trial)};
        }
      }
    }
  }
  return std::nullopt;
}

// Belief at an unreachable information set that rationalises action s.
inline double supporting_belief(const Game& game, double s) noexcept {
  if (s >= 1.0) return 1.0;
  if (s <= 0.0) return 0.0;
  return game.delta0() / (game.delta0() + game.delta1());
}

}  // namespace detail

struct GridCandidate {
  double q = 0.0;
  double r = 0.0;
  StrategyProfile profile;
  BeliefSystem beliefs;
  // True when the receiver is required to best respond exactly at the grid
  // point; false when a receiver may mix at any cell whose indifference
  // locus crosses the grid cell around (q, r).
  bool exact = true;
  std::array<double, 2> sender_gaps{0.0, 0.0};
  double receiver_gap = 0.0;
};

struct SearchResult {
  std::vector<GridCandidate> candidates;
  int grid_steps = 0;
  // Set when the grid produced nothing in a regime where an equilibrium is
  // known to exist.
  bool grid_too_coarse = false;
};

namespace detail {

// Receiver's unnormalised gain from a = 1 at (m, e), proportional to
// P(m, e) * (value(1) - value(0)); affine in (q, r).
inline double receiver_gain(const Game& game, double q, double r, Bit m, Bit e) noexcept {
  const SenderStrategy s = SenderStrategy::from_qr(q, r);
  return joint_probability(game, s, kOne, m, e) * game.delta1() -
         joint_probability(game, s, kZero, m, e) * game.delta0();
}

inline std::optional<GridCandidate> complete_profile(const Game& game, double q, double r,
                                                     double half_step, bool exact,
                                                     double epsilon) {
  const SenderStrategy sender = SenderStrategy::from_qr(q, r);
  std::array<std::optional<double>, 4> fixed{};
  for (std::size_t cell = 0; cell < 4; ++cell) {
    const Bit m = cell_message(cell);
    const Bit e = cell_evidence(cell);
    if (!on_path(game, sender, m, e)) continue;  // any action is rationalisable
    const double mass = joint_probability(game, sender, kZero, m, e) +
                        joint_probability(game, sender, kOne, m, e);
    const double gain = receiver_gain(game, q, r, m, e);
    if (exact) {
      // Tie when value(1) - value(0) is within epsilon.
      if (std::abs(gain / mass) <= epsilon) continue;
      fixed[cell] = gain > 0.0 ? 1.0 : 0.0;
      continue;
    }
    bool saw_pos = false;
    bool saw_neg = false;
    for (double dq : {-half_step, half_step}) {
      for (double dr : {-half_step, half_step}) {
        const double g = receiver_gain(game, std::clamp(q + dq, 0.0, 1.0),
                                       std::clamp(r + dr, 0.0, 1.0), m, e);
        saw_pos |= g >= 0.0;
        saw_neg |= g <= 0.0;
      }
    }
    if (saw_pos && saw_neg) continue;
    fixed[cell] = saw_pos ? 1.0 : 0.0;
  }

  const auto receiver = find_receiver_completion(game, sender, fixed, epsilon);
  if (!receiver) return std::nullopt;

  GridCandidate candidate;
  candidate.q = q;
  candidate.r = r;
  candidate.exact = exact;
  candidate.profile = {sender, *receiver};
  std::array<std::optional<double>, 4> off_path{};
  for (std::size_t cell = 0; cell < 4; ++cell) {
    off_path[cell] = supporting_belief(game, receiver->act_one[cell]);
  }
  candidate.beliefs = bayes_beliefs(game, sender, off_path);
  for (Bit theta : kBits) {
    const double current = sender_expected_utility(candidate.profile, game, theta);
    double best = current;
    for (Bit m : kBits) best = std::max(best, sender_message_utility(*receiver, game, theta, m));
    candidate.sender_gaps[static_cast<std::size_t>(theta.value())] = best - current;
  }
  for (std::size_t cell = 0; cell < 4; ++cell) {
    const Bit m = cell_message(cell);
    const double mu = candidate.beliefs.post_one[cell];
    const double v0 = receiver_action_value(game, mu, m, kZero);
    const double v1 = receiver_action_value(game, mu, m, kOne);
    const double s = receiver->act_one[cell];
    candidate.receiver_gap = std::max(candidate.receiver_gap, std::max(v0, v1) - ((1 - s) * v0 + s * v1));
  }
  return candidate;
}

}  // namespace detail

// Enumerates sender profiles (q, r) on {0, 1/n, ..., 1}^2. Pure profiles are
// checked exactly: the receiver best responds at the grid point with ties
// resolved within epsilon, and off-path sets admit any action. Every profile
// is also checked with the receiver allowed to mix wherever its indifference
// locus crosses the grid cell around (q, r); a hit there is a mixed
// candidate whose receiver strategy makes both sender types indifferent.
// Candidates come back sorted by (q, r), exact ones first on ties.
inline SearchResult brute_force_search(const Game& game, int grid_steps,
                                       double epsilon = kDefaultEpsilon) {
  if (grid_steps < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid_steps must be at least 2");
  }
  SearchResult result;
  result.grid_steps = grid_steps;
  const double step = 1.0 / grid_steps;
  const double half = 0.5 * step;
  bool found_exact = false;
  bool found_mixed = false;
  for (int i = 0; i <= grid_steps; ++i) {
    for (int k = 0; k <= grid_steps; ++k) {
      const double q = i == grid_steps ? 1.0 : i * step;
      const double r = k == grid_steps ? 1.0 : k * step;
      const bool pure = (i == 0 || i == grid_steps) && (k == 0 || k == grid_steps);
      if (pure) {
        if (auto c = detail::complete_profile(game, q, r, half, true, epsilon)) {
          result.candidates.push_back(std::move(*c));
          found_exact = true;
          continue;
        }
      }
      if (auto c = detail::complete_profile(game, q, r, half, false, epsilon)) {
        found_mixed |= !pure;
        result.candidates.push_back(std::move(*c));
      }
    }
  }
  std::stable_sort(result.candidates.begin(), result.candidates.end(),
                   [](const GridCandidate& a, const GridCandidate& b) {
                     if (a.q != b.q) return a.q < b.q;
                     if (a.r != b.r) return a.r < b.r;
                     return a.exact && !b.exact;
                   });

  const Regime regime = classify_regime(game, epsilon);
  const bool eer = detector_class(game.detector()) == DetectorClass::kEqualErrorRate;
  if (regime.value == RegimeKind::kMiddle && !eer) {
    result.grid_too_coarse = !found_mixed;
  } else {
    result.grid_too_coarse = !found_exact;
  }
  return result;
}

// True iff neither fully separating sender profile can be completed into an
// equilibrium, i.e. against every receiver best response some type gains
// more than epsilon by switching messages.
inline bool check_no_separating(const Game& game, double epsilon = kDefaultEpsilon) {
  for (const auto& [q, r] : {std::pair{0.0, 1.0}, std::pair{1.0, 0.0}}) {
    if (detail::complete_profile(game, q, r, 0.0, true, epsilon)) return false;
  }
  return true;
}

}  // namespace sigev
