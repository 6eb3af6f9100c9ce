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

// Scenario and profile files.
//
// Both are flat key-value documents, one `key = value` per line, with `#`
// starting a comment line. A scenario looks like
//
//   name = honeypot
//   prior_one = 0.28
//   detector.alpha = 0.3
//   detector.beta = 0.9
//   sender_utils.theta0_action0 = -20
//   ...
//   receiver_utils.theta1_action1 = 10
//   epsilon = 1e-9            # optional
//
// Payoffs are given per (theta, action) since they may not depend on the
// message.

#pragma once

#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "sigev/beliefs.hpp"
#include "sigev/error.hpp"
#include "sigev/expected_utility.hpp"
#include "sigev/game_model.hpp"

namespace sigev {

struct Scenario {
  std::string name;
  double prior_one = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  // Indexed [theta][action].
  std::array<std::array<double, 2>, 2> sender_utils{};
  std::array<std::array<double, 2>, 2> receiver_utils{};
  std::optional<double> epsilon;

  double tolerance() const noexcept { return epsilon.value_or(kDefaultEpsilon); }

  GameConfig config() const {
    GameConfig c;
    c.prior_one = prior_one;
    c.detector = Detector(alpha, beta);
    c.sender_utils = UtilityTable::message_independent(sender_utils[0][0], sender_utils[0][1],
                                                       sender_utils[1][0], sender_utils[1][1]);
    c.receiver_utils = UtilityTable::message_independent(
        receiver_utils[0][0], receiver_utils[0][1], receiver_utils[1][0], receiver_utils[1][1]);
    return c;
  }

  Game game() const { return validate_game(config()); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Default honeypot scenario. The receiver payoffs realise Delta0 = 15 and
// Delta1 = 22; the individual entries, and the sender payoffs (a production
// system that fails to deceive is hit hard, a honeypot much less), are
// illustrative defaults.
inline constexpr std::string_view kHoneypotScenario =
    "# Honeypot deployment: theta = 1 is a honeypot, m = 1 an inactive system,\n"
    "# e = 1 an alarm raised by the attacker's detector, a = 0 attack.\n"
    "name = honeypot\n"
    "prior_one = 0.28\n"
    "detector.alpha = 0.3\n"
    "detector.beta = 0.9\n"
    "sender_utils.theta0_action0 = -20\n"
    "sender_utils.theta0_action1 = 10\n"
    "sender_utils.theta1_action0 = 5\n"
    "sender_utils.theta1_action1 = -5\n"
    "receiver_utils.theta0_action0 = 5\n"
    "receiver_utils.theta0_action1 = -10\n"
    "receiver_utils.theta1_action0 = -12\n"
    "receiver_utils.theta1_action1 = 10\n";

namespace detail {

struct KeyValue {
  std::string value;
  int line = 0;
  int column = 0;  // column of the value
};

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits a key-value document, rejecting malformed lines and duplicates.
inline std::map<std::string, KeyValue> read_key_values(std::string_view text) {
  std::map<std::string, KeyValue> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      const int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
      throw ParseError(line_no, col, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, static_cast<int>(eq) + 1, "missing key");
    std::string_view raw = line.substr(eq + 1);
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view value = trim(raw);
    const std::size_t lead = raw.find_first_not_of(" \t");
    const int col = static_cast<int>(eq + 2 + (lead == std::string_view::npos ? 0 : lead));
    if (value.empty()) throw ParseError(line_no, col, "missing value for '" + key + "'");
    if (out.count(key) != 0) {
      throw ParseError(line_no, static_cast<int>(line.find_first_not_of(" \t")) + 1,
                       "duplicate key '" + key + "'");
    }
    out.emplace(key, KeyValue{std::string(value), line_no, col});
    if (end == text.size()) break;
  }
  return out;
}

inline double parse_number(const std::string& key, const KeyValue& kv) {
  double v = 0.0;
  const char* first = kv.value.data();
  const char* last = first + kv.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(kv.line, kv.column, "value of '" + key + "' is not a number: " + kv.value);
  }
  return v;
}

// Shortest decimal text that reads back to the same double.
inline std::string exact_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::string utility_key(std::string_view table, int theta, int action) {
  return std::string(table) + ".theta" + std::to_string(theta) + "_action" +
         std::to_string(action);
}

}  // namespace detail

// Reads a scenario document. Unknown and duplicate keys are errors; missing
// required keys are all reported by name in one error.
inline Scenario parse_scenario(std::string_view text) {
  const auto kv = detail::read_key_values(text);
  std::vector<std::string> required{"name", "prior_one", "detector.alpha", "detector.beta"};
  for (const char* table : {"sender_utils", "receiver_utils"}) {
    for (int theta = 0; theta < 2; ++theta) {
      for (int a = 0; a < 2; ++a) required.push_back(detail::utility_key(table, theta, a));
    }
  }
  std::set<std::string> known(required.begin(), required.end());
  known.insert("epsilon");
  for (const auto& [key, value] : kv) {
    if (known.count(key) == 0) {
      throw ParseError(value.line, 1, "unknown key '" + key + "'");
    }
  }
  std::string missing;
  for (const auto& key : required) {
    if (kv.count(key) == 0) missing += (missing.empty() ? "" : ", ") + key;
  }
  if (!missing.empty()) throw ParseError(0, 0, "missing keys: " + missing);

  auto number = [&](const std::string& key) { return detail::parse_number(key, kv.at(key)); };
  Scenario s;
  s.name = kv.at("name").value;
  s.prior_one = number("prior_one");
  s.alpha = number("detector.alpha");
  s.beta = number("detector.beta");
  for (int theta = 0; theta < 2; ++theta) {
    for (int a = 0; a < 2; ++a) {
      s.sender_utils[theta][a] = number(detail::utility_key("sender_utils", theta, a));
      s.receiver_utils[theta][a] = number(detail::utility_key("receiver_utils", theta, a));
    }
  }
  if (kv.count("epsilon") != 0) {
    s.epsilon = number("epsilon");
    if (!(*s.epsilon > 0.0)) {
      const auto& e = kv.at("epsilon");
      throw ParseError(e.line, e.column, "epsilon must be positive");
    }
  }
  return s;
}

// Writes a scenario so that parse_scenario reads back an identical value.
inline std::string emit_scenario(const Scenario& s) {
  std::string out;
  auto put = [&](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  put("name", s.name);
  put("prior_one", detail::exact_number(s.prior_one));
  put("detector.alpha", detail::exact_number(s.alpha));
  put("detector.beta", detail::exact_number(s.beta));
  for (const auto& [table, values] :
       {std::pair{"sender_utils", &s.sender_utils}, std::pair{"receiver_utils", &s.receiver_utils}}) {
    for (int theta = 0; theta < 2; ++theta) {
      for (int a = 0; a < 2; ++a) {
        put(detail::utility_key(table, theta, a), detail::exact_number((*values)[theta][a]));
      }
    }
  }
  if (s.epsilon) put("epsilon", detail::exact_number(*s.epsilon));
  return out;
}

inline Scenario honeypot_scenario() { return parse_scenario(kHoneypotScenario); }

// Candidate equilibrium read from a profile file:
//
//   sender.q = 0.0889          # sigma_S(1 | theta = 0)
//   sender.r = 0.4675          # sigma_S(1 | theta = 1)
//   receiver.w = 0             # sigma_R(1 | m = 0, e = 0)
//   receiver.x = 0.8333        # sigma_R(1 | m = 0, e = 1)
//   receiver.y = 1             # sigma_R(1 | m = 1, e = 0)
//   receiver.z = 0.1667        # sigma_R(1 | m = 1, e = 1)
//   belief.m1_e0 = 1           # mu_R(theta = 1 | m = 1, e = 0), optional
//
// Beliefs default to Bayes' rule where (m, e) is reachable; an unreachable
// (m, e) must be given one explicitly.
struct ProfileFile {
  StrategyProfile profile;
  BeliefSystem beliefs;
};

inline ProfileFile parse_profile(std::string_view text, const Game& game) {
  const auto kv = detail::read_key_values(text);
  static const std::array<std::string_view, 6> kStrategyKeys{
      "sender.q", "sender.r", "receiver.w", "receiver.x", "receiver.y", "receiver.z"};
  std::set<std::string> known(kStrategyKeys.begin(), kStrategyKeys.end());
  for (std::size_t cell = 0; cell < 4; ++cell) {
    known.insert("belief.m" + std::to_string(cell / 2) + "_e" + std::to_string(cell % 2));
  }
  for (const auto& [key, value] : kv) {
    if (known.count(key) == 0) throw ParseError(value.line, 1, "unknown key '" + key + "'");
  }
  std::string missing;
  for (auto key : kStrategyKeys) {
    if (kv.count(std::string(key)) == 0) missing += (missing.empty() ? "" : ", ") + std::string(key);
  }
  if (!missing.empty()) throw ParseError(0, 0, "missing keys: " + missing);

  auto number = [&](const std::string& key) { return detail::parse_number(key, kv.at(key)); };
  ProfileFile out;
  out.profile.sender = SenderStrategy::from_qr(number("sender.q"), number("sender.r"));
  out.profile.receiver = ReceiverStrategy::from_wxyz(number("receiver.w"), number("receiver.x"),
                                                     number("receiver.y"), number("receiver.z"));

  std::array<std::optional<double>, 4> given{};
  for (std::size_t cell = 0; cell < 4; ++cell) {
    const std::string key = "belief.m" + std::to_string(cell / 2) + "_e" + std::to_string(cell % 2);
    if (kv.count(key) != 0) given[cell] = number(key);
  }
  std::string unassigned;
  for (std::size_t cell = 0; cell < 4; ++cell) {
    const Bit m = cell_message(cell);
    const Bit e = cell_evidence(cell);
    if (!given[cell] && !on_path(game, out.profile.sender, m, e)) {
      unassigned += (unassigned.empty() ? "" : ", ") + std::string("belief.m") +
                    std::to_string(m.value()) + "_e" + std::to_string(e.value());
    }
  }
  if (!unassigned.empty()) {
    throw ParseError(0, 0, "unreachable information sets need beliefs: " + unassigned);
  }
  out.beliefs = bayes_beliefs(game, out.profile.sender, given);
  // Explicit beliefs override Bayes' rule so that the verifier can judge them.
  for (std::size_t cell = 0; cell < 4; ++cell) {
    if (given[cell]) out.beliefs.post_one[cell] = *given[cell];
  }
  return out;
}

}  // namespace sigev
