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

// Test-side reference computations. Everything here works on plain numbers
// and never calls into the library, so the tests compare two independent
// implementations.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "sigev/game_model.hpp"

namespace sigev::oracle {

struct Plain {
  double p = 0.5;  // prior of theta = 1
  double alpha = 0.3;
  double beta = 0.9;
  // [theta][action]
  double us[2][2] = {{-20, 10}, {5, -5}};
  double ur[2][2] = {{5, -10}, {-12, 10}};

  double d0() const { return ur[0][0] - ur[0][1]; }
  double d1() const { return ur[1][1] - ur[1][0]; }

  // Probability of e given theta and m.
  double lam(int e, int theta, int m) const {
    const double one = (m != theta) ? beta : alpha;
    return e == 1 ? one : 1.0 - one;
  }
};

inline GameConfig to_config(const Plain& g) {
  GameConfig c;
  c.prior_one = g.p;
  c.detector = Detector(g.alpha, g.beta);
  c.sender_utils = UtilityTable::message_independent(g.us[0][0], g.us[0][1], g.us[1][0], g.us[1][1]);
  c.receiver_utils =
      UtilityTable::message_independent(g.ur[0][0], g.ur[0][1], g.ur[1][0], g.ur[1][1]);
  return c;
}

inline Plain honeypot(double p = 0.28) {
  Plain g;
  g.p = p;
  return g;
}

// Receiver table with Delta0 = Delta1 = 15.
inline Plain symmetric(double alpha, double beta, double p) {
  Plain g;
  g.p = p;
  g.alpha = alpha;
  g.beta = beta;
  g.ur[0][0] = 5;
  g.ur[0][1] = -10;
  g.ur[1][0] = -5;
  g.ur[1][1] = 10;
  return g;
}

struct Thresholds {
  double a, b, c, d;
};

inline Thresholds thresholds(const Plain& g) {
  const double d0 = g.d0();
  const double d1 = g.d1();
  const double a = g.alpha;
  const double b = g.beta;
  return {d0 * a / (d0 * a + d1 * b), d0 * (1 - b) / (d0 * (1 - b) + d1 * (1 - a)),
          d0 * (1 - a) / (d0 * (1 - a) + d1 * (1 - b)), d0 * b / (d0 * b + d1 * a)};
}

// Middle-regime bounds in p(1).
inline std::array<double, 2> middle_bounds(const Plain& g) {
  const Thresholds t = thresholds(g);
  if (g.beta > 1 - g.alpha) return {t.a, t.d};
  return {t.b, t.c};
}

struct Mixed {
  double q, r, w, x, y, z;
};

// Closed-form partially-separating equilibrium.
inline Mixed middle_closed_form(const Plain& g) {
  const double a = g.alpha;
  const double b = g.beta;
  const double p = g.p;
  const double d0 = g.d0();
  const double d1 = g.d1();
  if (b > 1 - a) {
    const double den = b * b - a * a;
    return {a * b * d1 * p / (den * d0 * (1 - p)) - a * a / den,
            b * b / den - a * b * d0 * (1 - p) / (den * d1 * p),
            0.0,
            1.0 / (a + b),
            1.0,
            (a + b - 1) / (a + b)};
  }
  const double ab = 1 - a;
  const double bb = 1 - b;
  const double den = ab * ab - bb * bb;
  return {ab * ab / den - ab * bb * d1 * p / (den * d0 * (1 - p)),
          ab * bb * d0 * (1 - p) / (den * d1 * p) - bb * bb / den,
          (1 - a - b) / (2 - a - b),
          1.0,
          1.0 / (2 - a - b),
          0.0};
}

// Middle-regime truth induction when Delta0 = Delta1.
inline double tau_closed_form(double j, double g) {
  return g > 0 ? 0.5 * (1 + j / (1 + g)) : 0.5 * (1 - j / (1 - g));
}

// Deviation gaps of a profile, computed from scratch.
// s[cell] with cell = 2m + e is the probability of a = 1.
struct Gaps {
  double sender = 0.0;
  double receiver = 0.0;
  double bayes = 0.0;
};

inline Gaps pbne_gaps(const Plain& g, double q, double r, const std::array<double, 4>& s,
                      const std::array<double, 4>& post_one) {
  Gaps out;
  const double send_one[2] = {q, r};
  const double prior[2] = {1 - g.p, g.p};
  for (int theta = 0; theta < 2; ++theta) {
    double by_message[2] = {0, 0};
    for (int m = 0; m < 2; ++m) {
      for (int e = 0; e < 2; ++e) {
        const double act = s[2 * m + e];
        by_message[m] += g.lam(e, theta, m) * ((1 - act) * g.us[theta][0] + act * g.us[theta][1]);
      }
    }
    const double mixed = (1 - send_one[theta]) * by_message[0] + send_one[theta] * by_message[1];
    out.sender = std::max(out.sender, std::max(by_message[0], by_message[1]) - mixed);
  }
  for (int m = 0; m < 2; ++m) {
    for (int e = 0; e < 2; ++e) {
      const double mu = post_one[2 * m + e];
      const double v0 = (1 - mu) * g.ur[0][0] + mu * g.ur[1][0];
      const double v1 = (1 - mu) * g.ur[0][1] + mu * g.ur[1][1];
      const double act = s[2 * m + e];
      out.receiver = std::max(out.receiver, std::max(v0, v1) - ((1 - act) * v0 + act * v1));
      double joint[2];
      for (int theta = 0; theta < 2; ++theta) {
        const double pm = m == 1 ? send_one[theta] : 1 - send_one[theta];
        joint[theta] = prior[theta] * pm * g.lam(e, theta, m);
      }
      if (joint[0] + joint[1] > 0) {
        out.bayes = std::max(out.bayes, std::abs(mu - joint[1] / (joint[0] + joint[1])));
      }
    }
  }
  return out;
}

// Receiver's on-path pure best response when both types send m, by direct
// posterior comparison.
inline std::array<int, 2> pooled_response(const Plain& g, int m) {
  std::array<int, 2> out{};
  for (int e = 0; e < 2; ++e) {
    const double j0 = (1 - g.p) * g.lam(e, 0, m);
    const double j1 = g.p * g.lam(e, 1, m);
    out[e] = j1 * g.d1() > j0 * g.d0() ? 1 : 0;
  }
  return out;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random game satisfying every utility assumption, with alpha < beta.
inline Plain random_game(std::mt19937_64& rng) {
  Plain g;
  do {
    g.alpha = uniform(rng, 0.0, 1.0);
    g.beta = uniform(rng, 0.0, 1.0);
    if (g.alpha > g.beta) std::swap(g.alpha, g.beta);
  } while (g.beta - g.alpha < 1e-3);
  g.p = uniform(rng, 0.0, 1.0);
  const double r00 = uniform(rng, -10, 10);
  const double r11 = uniform(rng, -10, 10);
  g.ur[0][0] = r00;
  g.ur[0][1] = r00 - uniform(rng, 0.5, 20);
  g.ur[1][1] = r11;
  g.ur[1][0] = r11 - uniform(rng, 0.5, 20);
  const double s01 = uniform(rng, -10, 10);
  const double s10 = uniform(rng, -10, 10);
  g.us[0][1] = s01;
  g.us[0][0] = s01 - uniform(rng, 0.5, 20);
  g.us[1][0] = s10;
  g.us[1][1] = s10 - uniform(rng, 0.5, 20);
  return g;
}

// Distance from p to the nearest regime boundary and from beta to 1 - alpha.
inline bool near_degenerate(const Plain& g, double margin) {
  const Thresholds t = thresholds(g);
  for (double v : {t.a, t.b, t.c, t.d}) {
    if (std::abs(g.p - v) < margin) return true;
  }
  return std::abs(g.beta - (1 - g.alpha)) < margin;
}

}  // namespace sigev::oracle
