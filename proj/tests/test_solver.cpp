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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigev/equilibrium_solver.hpp"
#include "sigev/regimes.hpp"
#include "sigev/verifier.hpp"

namespace sigev {
namespace {

Game make(const oracle::Plain& p) { return validate_game(oracle::to_config(p)); }
Game honeypot_game(double p) { return make(oracle::honeypot(p)); }

// Midpoint of each regime, by index.
std::array<double, 5> regime_representatives(const Game& g) {
  const auto b = regime_thresholds(g).ordered();
  return {b[0] / 2, (b[0] + b[1]) / 2, (b[1] + b[2]) / 2, (b[2] + b[3]) / 2, (b[3] + 1) / 2};
}

TEST(Thresholds, CaseStudy) {
  const RegimeThresholds t = regime_thresholds(honeypot_game(0.28));
  const auto o = t.ordered();
  EXPECT_NEAR(o[0], 0.0888, 5e-4);
  EXPECT_NEAR(o[1], 0.1852, 5e-4);
  EXPECT_NEAR(o[2], 0.6716, 5e-4);
  EXPECT_NEAR(o[3], 0.8268, 5e-4);
  const auto oc = oracle::thresholds(oracle::honeypot());
  EXPECT_NEAR(t.t_a, oc.a, 1e-15);
  EXPECT_NEAR(t.t_b, oc.b, 1e-15);
  EXPECT_NEAR(t.t_c, oc.c, 1e-15);
  EXPECT_NEAR(t.t_d, oc.d, 1e-15);
}

TEST(Thresholds, EqualBenefits) {
  const auto o = regime_thresholds(make(oracle::symmetric(0.3, 0.9, 0.5))).ordered();
  EXPECT_NEAR(o[0], 0.125, 1e-15);
  EXPECT_NEAR(o[1], 0.25, 1e-15);
  EXPECT_NEAR(o[2], 0.75, 1e-15);
  EXPECT_NEAR(o[3], 0.875, 1e-15);
  const RegimeThresholds t = regime_thresholds(make(oracle::symmetric(0.1, 0.6, 0.5)));
  EXPECT_NEAR(t.t_b, 1 - t.t_c, 1e-15);
  EXPECT_NEAR(t.t_a, 1 - t.t_d, 1e-15);
}

TEST(Thresholds, OrderingAndMonotonicity) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    const oracle::Plain p = oracle::random_game(rng);
    if (std::abs(p.beta - (1 - p.alpha)) < 1e-9) continue;
    const RegimeThresholds t = regime_thresholds(make(p));
    const auto o = t.ordered();
    EXPECT_TRUE(std::is_sorted(o.begin(), o.end()));
    for (double v : o) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }

    oracle::Plain more0 = p;
    more0.ur[0][0] += 1.0;
    oracle::Plain more1 = p;
    more1.ur[1][1] += 1.0;
    const RegimeThresholds t0 = regime_thresholds(make(more0));
    const RegimeThresholds t1 = regime_thresholds(make(more1));
    for (Threshold name : {Threshold::kA, Threshold::kB, Threshold::kC, Threshold::kD}) {
      const double v = t.value(name);
      if (v <= 0.0 || v >= 1.0) continue;
      EXPECT_GT(t0.value(name), v);
      EXPECT_LT(t1.value(name), v);
    }
  }
}

TEST(ClassifyRegime, Examples) {
  EXPECT_EQ(classify_regime(honeypot_game(0.28)).value, RegimeKind::kMiddle);
  EXPECT_EQ(classify_regime(honeypot_game(0.05)).value, RegimeKind::kZeroDominant);
  EXPECT_EQ(classify_regime(honeypot_game(0.15)).value, RegimeKind::kZeroHeavy);
  EXPECT_EQ(classify_regime(honeypot_game(0.75)).value, RegimeKind::kOneHeavy);
  EXPECT_EQ(classify_regime(honeypot_game(0.9)).value, RegimeKind::kOneDominant);
  EXPECT_FALSE(classify_regime(honeypot_game(0.28)).on_boundary());
}

TEST(ClassifyRegime, BoundaryBinsLowAndFlags) {
  const Game g = honeypot_game(0.5);
  const RegimeThresholds t = regime_thresholds(g);
  const Regime r = classify_regime(g.with_prior(t.t_a));
  EXPECT_EQ(r.value, RegimeKind::kZeroHeavy);
  ASSERT_EQ(r.boundary_flags.size(), 1u);
  EXPECT_EQ(r.boundary_flags[0], Threshold::kA);
  EXPECT_EQ(classify_regime(g.with_prior(t.t_a + 1e-6)).value, RegimeKind::kMiddle);
}

struct TableCase {
  double alpha, beta;
  // Rows in regime order; columns sigma(1|0,0), sigma(1|0,1), sigma(1|1,0), sigma(1|1,1).
  std::array<std::array<int, 4>, 5> rows;
};

TEST(PoolingResponse, MatchesReferenceTables) {
  const TableCase conservative{0.3, 0.4,
                               {{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {1, 1, 1, 0}, {1, 1, 1, 1}}}};
  const TableCase aggressive{0.3, 0.9,
                             {{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 1, 0}, {0, 1, 1, 1}, {1, 1, 1, 1}}}};
  for (const TableCase& tc : {conservative, aggressive}) {
    for (auto benefits : {std::pair{15.0, 22.0}, std::pair{10.0, 10.0}, std::pair{30.0, 4.0}}) {
      oracle::Plain p = oracle::honeypot();
      p.alpha = tc.alpha;
      p.beta = tc.beta;
      p.ur[0][1] = p.ur[0][0] - benefits.first;
      p.ur[1][0] = p.ur[1][1] - benefits.second;
      const Game g = make(p);
      const auto reps = regime_representatives(g);
      for (std::size_t k = 0; k < 5; ++k) {
        const Game at = g.with_prior(reps[k]);
        ASSERT_EQ(static_cast<std::size_t>(classify_regime(at).value), k);
        oracle::Plain pk = p;
        pk.p = reps[k];
        for (Bit m : kBits) {
          const PoolingResponse resp = receiver_pooling_response(at, m);
          const auto direct = oracle::pooled_response(pk, m.value());
          for (Bit e : kBits) {
            const int got = resp.action[static_cast<std::size_t>(e.value())].value();
            EXPECT_EQ(got, tc.rows[k][cell_index(m, e)]) << "regime " << k;
            EXPECT_EQ(got, direct[static_cast<std::size_t>(e.value())]);
          }
        }
      }
    }
  }
}

TEST(PoolingResponse, EqualErrorRateTieThrows) {
  oracle::Plain p = oracle::symmetric(0.2, 0.8, 0.5);
  const Game g = make(p);
  const double t = regime_thresholds(g).t_a;
  try {
    receiver_pooling_response(g.with_prior(t), kZero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEqualErrorRateAmbiguity);
  }
}

TEST(Pooling, CaseStudyExamples) {
  const auto heavy = pooling_equilibria(honeypot_game(0.15));
  ASSERT_EQ(heavy.size(), 1u);
  EXPECT_EQ(heavy[0].kind, EquilibriumKind::kPoolingOnZero);
  EXPECT_EQ(heavy[0].profile.receiver.act_one[0], 0.0);
  EXPECT_EQ(heavy[0].profile.receiver.act_one[1], 0.0);

  EXPECT_TRUE(pooling_equilibria(honeypot_game(0.28)).empty());

  const auto dominant = pooling_equilibria(honeypot_game(0.05));
  ASSERT_EQ(dominant.size(), 2u);
  EXPECT_EQ(dominant[0].kind, EquilibriumKind::kPoolingOnZero);
  EXPECT_EQ(dominant[1].kind, EquilibriumKind::kPoolingOnOne);
  for (const auto& eq : dominant) {
    for (double s : eq.profile.receiver.act_one) EXPECT_EQ(s, 0.0);
  }
}

TEST(Pooling, OffPathBeliefsMeetBound) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 500; ++i) {
    const oracle::Plain p = oracle::random_game(rng);
    const Game g = make(p);
    if (detector_class(g.detector()) == DetectorClass::kEqualErrorRate) continue;
    for (const Equilibrium& eq : pooling_equilibria(g)) {
      const int a_star = static_cast<int>(eq.profile.receiver.act_one[eq.kind == EquilibriumKind::kPoolingOnOne ? 2 : 0]);
      const double bound = a_star == 1 ? p.d0() / (p.d0() + p.d1()) : p.d1() / (p.d0() + p.d1());
      for (std::size_t cell = 0; cell < 4; ++cell) {
        if (eq.beliefs.origin[cell] != BeliefOrigin::kOffPathAssigned) continue;
        const double mu_a_star = a_star == 1 ? eq.beliefs.post_one[cell] : 1 - eq.beliefs.post_one[cell];
        EXPECT_GE(mu_a_star, bound);
      }
    }
  }
}

TEST(PartialSeparating, CaseStudyValues) {
  const Equilibrium eq = partial_separating_equilibrium(honeypot_game(0.28));
  EXPECT_EQ(eq.kind, EquilibriumKind::kPartiallySeparating);
  EXPECT_FALSE(eq.weak);
  EXPECT_NEAR(eq.profile.sender.q(), 0.088889, 1e-6);
  EXPECT_NEAR(eq.profile.sender.r(), 0.467532, 1e-6);
  EXPECT_NEAR(eq.profile.receiver.act_one[1], 0.833333, 1e-6);
  EXPECT_NEAR(eq.profile.receiver.act_one[3], 0.166667, 1e-6);
  EXPECT_EQ(eq.profile.receiver.act_one[0], 0.0);
  EXPECT_EQ(eq.profile.receiver.act_one[2], 1.0);
  const oracle::Mixed m = oracle::middle_closed_form(oracle::honeypot(0.28));
  EXPECT_NEAR(eq.profile.sender.q(), m.q, 1e-12);
  EXPECT_NEAR(eq.profile.sender.r(), m.r, 1e-12);
}

TEST(PartialSeparating, Errors) {
  try {
    partial_separating_equilibrium(honeypot_game(0.5 * 0.0888));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongRegime);
  }
  try {
    partial_separating_equilibrium(make(oracle::symmetric(0.2, 0.8, 0.5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEqualErrorRateUnsupported);
  }
}

TEST(PartialSeparating, ClosedFormsAndIndifference) {
  std::mt19937_64 rng(47);
  int checked = 0;
  while (checked < 400) {
    oracle::Plain p = oracle::random_game(rng);
    if (std::abs(p.beta - (1 - p.alpha)) < 1e-3) continue;
    const auto [lo, hi] = oracle::middle_bounds(p);
    p.p = oracle::uniform(rng, lo, hi);
    if (oracle::near_degenerate(p, 1e-6)) continue;
    ++checked;
    const Game g = make(p);
    const Equilibrium eq = partial_separating_equilibrium(g);
    const oracle::Mixed m = oracle::middle_closed_form(p);
    const auto& s = eq.profile.receiver.act_one;
    EXPECT_NEAR(eq.profile.sender.q(), m.q, 1e-9);
    EXPECT_NEAR(eq.profile.sender.r(), m.r, 1e-9);
    EXPECT_NEAR(s[0], m.w, 1e-9);
    EXPECT_NEAR(s[1], m.x, 1e-9);
    EXPECT_NEAR(s[2], m.y, 1e-9);
    EXPECT_NEAR(s[3], m.z, 1e-9);
    for (double v : {eq.profile.sender.q(), eq.profile.sender.r(), s[0], s[1], s[2], s[3]}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const oracle::Gaps gaps =
        oracle::pbne_gaps(p, eq.profile.sender.q(), eq.profile.sender.r(), s, eq.beliefs.post_one);
    EXPECT_LE(gaps.sender, 1e-9);
    EXPECT_LE(gaps.receiver, 1e-9);
    EXPECT_LE(gaps.bayes, 1e-9);

    // The mixing cells tie exactly; the pure cells satisfy the posterior-odds
    // bracket around Kbar.
    const bool aggressive = p.beta > 1 - p.alpha;
    const double kbar = p.d0() / (p.d0() + p.d1());
    for (int msg = 0; msg < 2; ++msg) {
      const int mix_cell = 2 * msg + (aggressive ? 1 : 0);
      const int pure_cell = 2 * msg + (aggressive ? 0 : 1);
      EXPECT_NEAR(eq.beliefs.post_one[mix_cell], kbar, 1e-9);
      const double mu = eq.beliefs.post_one[pure_cell];
      if (eq.profile.receiver.act_one[pure_cell] == 0.0) {
        EXPECT_LE(mu, kbar + 1e-9);
      } else {
        EXPECT_GE(mu, kbar - 1e-9);
      }
    }
  }
}

TEST(PartialSeparating, BoundaryContinuity) {
  for (const auto& [alpha, beta] : {std::pair{0.3, 0.9}, std::pair{0.1, 0.5}}) {
    oracle::Plain p = oracle::honeypot();
    p.alpha = alpha;
    p.beta = beta;
    const auto [lo, hi] = oracle::middle_bounds(p);
    p.p = lo + 1e-8;
    const Equilibrium low = partial_separating_equilibrium(make(p));
    p.p = hi - 1e-8;
    const Equilibrium high = partial_separating_equilibrium(make(p));
    const bool aggressive = beta > 1 - alpha;
    // Aggressive: q -> 0 at the lower edge and r -> 1 at the upper edge.
    // Conservative: the roles reverse.
    if (aggressive) {
      EXPECT_NEAR(low.profile.sender.q(), 0.0, 1e-6);
      EXPECT_NEAR(high.profile.sender.r(), 1.0, 1e-6);
    } else {
      EXPECT_NEAR(low.profile.sender.q(), 1.0, 1e-6);
      EXPECT_NEAR(high.profile.sender.r(), 0.0, 1e-6);
    }
  }
}

TEST(Solve, CaseStudyCounts) {
  const std::array<std::pair<double, std::size_t>, 5> expected{
      {{0.05, 2}, {0.15, 1}, {0.28, 1}, {0.75, 1}, {0.9, 2}}};
  for (const auto& [p, count] : expected) {
    EXPECT_EQ(solve(honeypot_game(p)).size(), count) << p;
  }
  const auto one_heavy = solve(honeypot_game(0.75));
  EXPECT_EQ(one_heavy[0].kind, EquilibriumKind::kPoolingOnOne);
}

TEST(Solve, ConservativeHeavyRegimesReverseMessages) {
  oracle::Plain p = oracle::honeypot();
  p.alpha = 0.3;
  p.beta = 0.4;
  const Game g = make(p);
  const auto reps = regime_representatives(g);
  const auto zero_heavy = solve(g.with_prior(reps[1]));
  ASSERT_EQ(zero_heavy.size(), 1u);
  EXPECT_EQ(zero_heavy[0].kind, EquilibriumKind::kPoolingOnOne);
  const auto one_heavy = solve(g.with_prior(reps[3]));
  ASSERT_EQ(one_heavy.size(), 1u);
  EXPECT_EQ(one_heavy[0].kind, EquilibriumKind::kPoolingOnZero);
}

TEST(Solve, NeverSeparatingAndAlwaysVerified) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 500; ++i) {
    const oracle::Plain p = oracle::random_game(rng);
    if (oracle::near_degenerate(p, 1e-6)) continue;
    const Game g = make(p);
    for (const Equilibrium& eq : solve(g)) {
      const double q = eq.profile.sender.q();
      const double r = eq.profile.sender.r();
      EXPECT_FALSE((q == 0.0 && r == 1.0) || (q == 1.0 && r == 0.0));
      const oracle::Gaps gaps = oracle::pbne_gaps(p, q, r, eq.profile.receiver.act_one, eq.beliefs.post_one);
      EXPECT_LE(std::max({gaps.sender, gaps.receiver, gaps.bayes}), 1e-9);
    }
  }
}

TEST(Solve, ScaleInvariance) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 200; ++i) {
    const oracle::Plain p = oracle::random_game(rng);
    if (oracle::near_degenerate(p, 1e-6)) continue;
    GameConfig c = oracle::to_config(p);
    const auto base = solve(validate_game(c));
    c.receiver_utils = c.receiver_utils.scaled(2.0, 3.0);
    c.sender_utils = c.sender_utils.scaled(0.5, -1.0);
    const auto scaled = solve(validate_game(c));
    ASSERT_EQ(base.size(), scaled.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      EXPECT_EQ(base[k].kind, scaled[k].kind);
      for (std::size_t i2 = 0; i2 < 2; ++i2) {
        EXPECT_NEAR(base[k].profile.sender.send_one[i2], scaled[k].profile.sender.send_one[i2], 1e-12);
      }
      for (std::size_t cell = 0; cell < 4; ++cell) {
        EXPECT_NEAR(base[k].profile.receiver.act_one[cell], scaled[k].profile.receiver.act_one[cell], 1e-12);
      }
    }
  }
}

TEST(Solve, EqualErrorRateMiddleGivesWeakPooling) {
  const Game g = make(oracle::symmetric(0.2, 0.8, 0.5));
  ASSERT_EQ(classify_regime(g).value, RegimeKind::kMiddle);
  const auto eqs = solve(g);
  ASSERT_EQ(eqs.size(), 2u);
  for (const auto& eq : eqs) {
    EXPECT_TRUE(eq.weak);
    EXPECT_TRUE(verify_pbne(g, eq.profile, eq.beliefs).passed);
  }
}

TEST(Solve, BoundaryPriorIsWeak) {
  const Game g = honeypot_game(0.5);
  const RegimeThresholds t = regime_thresholds(g);
  for (double edge : t.ordered()) {
    const auto eqs = solve(g.with_prior(edge));
    ASSERT_FALSE(eqs.empty());
    EXPECT_TRUE(std::any_of(eqs.begin(), eqs.end(), [](const Equilibrium& e) { return e.weak; }));
  }
}

TEST(Solve, DegeneratePriorsAndPerfectDetector) {
  for (double p : {0.0, 1.0}) {
    const auto eqs = solve(honeypot_game(p));
    EXPECT_EQ(eqs.size(), 2u);
  }
  oracle::Plain perfect = oracle::honeypot(0.3);
  perfect.alpha = 0.0;
  perfect.beta = 1.0;
  EXPECT_NO_THROW(solve(make(perfect)));
}

}  // namespace
}  // namespace sigev
