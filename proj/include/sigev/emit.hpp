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

// JSON and CSV serialization of solver and analysis results.
//
// Numbers are written with 12 significant digits, and JSON objects keep
// insertion order, so equal inputs give byte-identical output.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sigev/analysis.hpp"
#include "sigev/equilibrium_solver.hpp"
#include "sigev/error.hpp"
#include "sigev/regimes.hpp"
#include "sigev/verifier.hpp"

namespace sigev {

using Json = nlohmann::ordered_json;

enum class Format { kJson, kCsv };

inline Format parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw Error(ErrorCode::kUnsupportedFormat, "unknown format '" + std::string(name) + "'");
}

namespace detail {

inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// The double nearest to v's 12-significant-digit rendering.
inline double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string join_kinds(const std::vector<EquilibriumKind>& kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i != 0) out += ';';
    out += to_string(kinds[i]);
  }
  return out;
}

inline std::string cell_name(std::size_t cell) {
  return "m" + std::to_string(cell / 2) + "_e" + std::to_string(cell % 2);
}

inline void require_json(Format format, std::string_view what) {
  if (format != Format::kJson) {
    throw Error(ErrorCode::kUnsupportedFormat, std::string(what) + " is only available as JSON");
  }
}

}  // namespace detail

inline Json to_json(const RegimeThresholds& t) {
  Json j;
  j["t_a"] = detail::round12(t.t_a);
  j["t_b"] = detail::round12(t.t_b);
  j["t_c"] = detail::round12(t.t_c);
  j["t_d"] = detail::round12(t.t_d);
  j["detector_class"] = to_string(t.detector_class);
  Json order = Json::array();
  for (Threshold name : t.order()) order.push_back(to_string(name));
  j["order"] = order;
  return j;
}

inline Json to_json(const Regime& r) {
  Json j;
  j["value"] = to_string(r.value);
  Json flags = Json::array();
  for (Threshold t : r.boundary_flags) flags.push_back(to_string(t));
  j["boundary_flags"] = flags;
  return j;
}

inline Json to_json(const StrategyProfile& p) {
  Json j;
  j["q"] = detail::round12(p.sender.q());
  j["r"] = detail::round12(p.sender.r());
  j["w"] = detail::round12(p.receiver.act_one[0]);
  j["x"] = detail::round12(p.receiver.act_one[1]);
  j["y"] = detail::round12(p.receiver.act_one[2]);
  j["z"] = detail::round12(p.receiver.act_one[3]);
  return j;
}

inline Json to_json(const BeliefSystem& b) {
  Json j;
  for (std::size_t cell = 0; cell < 4; ++cell) {
    Json entry;
    entry["post_one"] = detail::round12(b.post_one[cell]);
    entry["origin"] = b.origin[cell] == BeliefOrigin::kOnPath ? "on_path" : "off_path_assigned";
    j[detail::cell_name(cell)] = entry;
  }
  return j;
}

inline Json to_json(const Equilibrium& eq, const Game& game) {
  Json j;
  j["kind"] = to_string(eq.kind);
  j["weak"] = eq.weak;
  const Json profile = to_json(eq.profile);
  for (const auto& [key, value] : profile.items()) j[key] = value;
  j["tau"] = detail::round12(truth_induction(game, eq));
  j["sender_apriori"] = detail::round12(a_priori_utility(eq.profile, game, Player::kSender));
  j["receiver_apriori"] = detail::round12(a_priori_utility(eq.profile, game, Player::kReceiver));
  j["beliefs"] = to_json(eq.beliefs);
  return j;
}

inline Json to_json(const VerificationReport& report) {
  Json j;
  j["passed"] = report.passed;
  j["valid_distributions"] = report.valid_distributions;
  j["tolerance"] = detail::round12(report.tolerance);
  j["sender_gaps"] = {detail::round12(report.sender_gaps[0]), detail::round12(report.sender_gaps[1])};
  Json receiver = Json::array();
  for (double g : report.receiver_gaps) receiver.push_back(detail::round12(g));
  j["receiver_gaps"] = receiver;
  Json residuals = Json::array();
  for (const BeliefResidual& b : report.belief_residuals) {
    Json entry;
    entry["m"] = b.m.value();
    entry["e"] = b.e.value();
    entry["theta"] = b.theta.value();
    entry["residual"] = detail::round12(b.residual);
    residuals.push_back(entry);
  }
  j["belief_residuals"] = residuals;
  return j;
}

// `solve` output: thresholds, regime and every equilibrium.
inline std::string emit_solve(const Game& game, const std::vector<Equilibrium>& eqs,
                              Format format, double epsilon = kDefaultEpsilon) {
  if (format == Format::kCsv) {
    std::string out = "kind,weak,q,r,w,x,y,z,tau,sender_apriori,receiver_apriori\n";
    for (const Equilibrium& eq : eqs) {
      out += std::string(to_string(eq.kind)) + "," + (eq.weak ? "true" : "false");
      for (double v : {eq.profile.sender.q(), eq.profile.sender.r(), eq.profile.receiver.act_one[0],
                       eq.profile.receiver.act_one[1], eq.profile.receiver.act_one[2],
                       eq.profile.receiver.act_one[3], truth_induction(game, eq),
                       a_priori_utility(eq.profile, game, Player::kSender),
                       a_priori_utility(eq.profile, game, Player::kReceiver)}) {
        out += "," + detail::fmt12(v);
      }
      out += "\n";
    }
    return out;
  }
  Json j;
  j["prior_one"] = detail::round12(game.prior_one());
  j["alpha"] = detail::round12(game.detector().alpha());
  j["beta"] = detail::round12(game.detector().beta());
  j["delta0"] = detail::round12(game.delta0());
  j["delta1"] = detail::round12(game.delta1());
  j["thresholds"] = to_json(regime_thresholds(game));
  j["regime"] = to_json(classify_regime(game, epsilon));
  Json list = Json::array();
  for (const Equilibrium& eq : eqs) list.push_back(to_json(eq, game));
  j["equilibria"] = list;
  if (!eqs.empty()) {
    const Selection sel = select_equilibrium(game, eqs);
    j["selected"] = sel.primary;
  }
  return j.dump(2) + "\n";
}

inline constexpr std::string_view kSweepHeader =
    "axis_value,regime,kinds,q,r,w,x,y,z,tau,sender_apriori,receiver_apriori,weak,alternate,error";

inline std::string emit_sweep(const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::kCsv) {
    std::string out = std::string(kSweepHeader) + "\n";
    for (const SweepRow& row : rows) {
      out += detail::fmt12(row.axis_value) + ",";
      out += (row.regime ? std::string(to_string(*row.regime)) : std::string()) + ",";
      out += detail::join_kinds(row.kinds);
      for (double v : {row.q, row.r, row.w, row.x, row.y, row.z, row.tau, row.sender_apriori,
                       row.receiver_apriori}) {
        out += "," + (row.error.empty() ? detail::fmt12(v) : std::string());
      }
      out += std::string(",") + (row.weak ? "true" : "false") + ",";
      out += row.alternate ? std::string(to_string(*row.alternate)) : std::string();
      out += "," + detail::csv_field(row.error) + "\n";
    }
    return out;
  }
  Json list = Json::array();
  for (const SweepRow& row : rows) {
    Json j;
    j["axis_value"] = detail::round12(row.axis_value);
    j["regime"] = row.regime ? Json(to_string(*row.regime)) : Json(nullptr);
    Json kinds = Json::array();
    for (EquilibriumKind k : row.kinds) kinds.push_back(to_string(k));
    j["kinds"] = kinds;
    const std::pair<const char*, double> fields[] = {
        {"q", row.q}, {"r", row.r}, {"w", row.w}, {"x", row.x}, {"y", row.y}, {"z", row.z},
        {"tau", row.tau}, {"sender_apriori", row.sender_apriori},
        {"receiver_apriori", row.receiver_apriori}};
    for (const auto& [name, v] : fields) {
      j[name] = row.error.empty() ? Json(detail::round12(v)) : Json(nullptr);
    }
    j["weak"] = row.weak;
    j["alternate"] = row.alternate ? Json(to_string(*row.alternate)) : Json(nullptr);
    j["error"] = row.error;
    list.push_back(j);
  }
  return list.dump(2) + "\n";
}

inline std::string emit_verify(const VerificationReport& report, Format format) {
  detail::require_json(format, "a verification report");
  return to_json(report).dump(2) + "\n";
}

inline std::string emit_search(const SearchResult& result, Format format) {
  if (format == Format::kCsv) {
    std::string out = "q,r,exact,w,x,y,z,sender_gap0,sender_gap1,receiver_gap\n";
    for (const GridCandidate& c : result.candidates) {
      out += detail::fmt12(c.q) + "," + detail::fmt12(c.r) + "," + (c.exact ? "true" : "false");
      for (double v : c.profile.receiver.act_one) out += "," + detail::fmt12(v);
      out += "," + detail::fmt12(c.sender_gaps[0]) + "," + detail::fmt12(c.sender_gaps[1]) + "," +
             detail::fmt12(c.receiver_gap) + "\n";
    }
    return out;
  }
  Json j;
  j["grid_steps"] = result.grid_steps;
  j["grid_too_coarse"] = result.grid_too_coarse;
  Json list = Json::array();
  for (const GridCandidate& c : result.candidates) {
    Json entry = to_json(c.profile);
    entry["exact"] = c.exact;
    entry["sender_gaps"] = {detail::round12(c.sender_gaps[0]), detail::round12(c.sender_gaps[1])};
    entry["receiver_gap"] = detail::round12(c.receiver_gap);
    list.push_back(entry);
  }
  j["candidates"] = list;
  return j.dump(2) + "\n";
}

inline std::string emit_robustness(const std::vector<RobustnessRow>& rows, Format format) {
  if (format == Format::kCsv) {
    std::string out = "prior_one,sender_optimal,sender_suboptimal_mean,fraction_not_lower,trials,error\n";
    for (const RobustnessRow& row : rows) {
      out += detail::fmt12(row.prior_one);
      for (double v : {row.sender_optimal, row.sender_suboptimal_mean, row.fraction_not_lower}) {
        out += "," + (row.error.empty() ? detail::fmt12(v) : std::string());
      }
      out += "," + std::to_string(row.trials) + "," + detail::csv_field(row.error) + "\n";
    }
    return out;
  }
  Json list = Json::array();
  for (const RobustnessRow& row : rows) {
    Json j;
    j["prior_one"] = detail::round12(row.prior_one);
    j["sender_optimal"] = row.error.empty() ? Json(detail::round12(row.sender_optimal)) : Json(nullptr);
    j["sender_suboptimal_mean"] =
        row.error.empty() ? Json(detail::round12(row.sender_suboptimal_mean)) : Json(nullptr);
    j["fraction_not_lower"] =
        row.error.empty() ? Json(detail::round12(row.fraction_not_lower)) : Json(nullptr);
    j["trials"] = row.trials;
    j["error"] = row.error;
    list.push_back(j);
  }
  return list.dump(2) + "\n";
}

inline std::string emit_invariance(const InvarianceReport& report, const Game& game, Format format) {
  detail::require_json(format, "an invariance report");
  Json j;
  j["equilibrium"] = to_json(report.equilibrium, game);
  j["base_utility"] = detail::round12(report.base_utility);
  j["max_utility_difference"] = detail::round12(report.max_utility_difference);
  j["reach_action_one"] = {
      {detail::round12(report.reach[0][0]), detail::round12(report.reach[0][1])},
      {detail::round12(report.reach[1][0]), detail::round12(report.reach[1][1])}};
  j["max_identity_residual"] = detail::round12(report.max_identity_residual);
  j["perturbations"] = report.perturbations;
  return j.dump(2) + "\n";
}

inline std::string emit_surface(const UtilitySurface& surface, Format format) {
  if (format == Format::kCsv) {
    std::string out = "j,g,prior_one,sender,receiver,error\n";
    for (const UtilityPoint& p : surface.points) {
      out += detail::fmt12(p.shape.j) + "," + detail::fmt12(p.shape.g) + "," +
             detail::fmt12(p.prior_one) + ",";
      out += p.error.empty() ? detail::fmt12(p.sender) + "," + detail::fmt12(p.receiver) : ",";
      out += "," + detail::csv_field(p.error) + "\n";
    }
    return out;
  }
  Json points = Json::array();
  for (const UtilityPoint& p : surface.points) {
    Json j;
    j["j"] = detail::round12(p.shape.j);
    j["g"] = detail::round12(p.shape.g);
    j["prior_one"] = detail::round12(p.prior_one);
    j["sender"] = p.error.empty() ? Json(detail::round12(p.sender)) : Json(nullptr);
    j["receiver"] = p.error.empty() ? Json(detail::round12(p.receiver)) : Json(nullptr);
    j["error"] = p.error;
    points.push_back(j);
  }
  Json certs = Json::array();
  for (const QualityCertificate& c : surface.certificates) {
    Json j;
    j["prior_one"] = detail::round12(c.prior_one);
    j["g"] = detail::round12(c.g);
    j["j_low"] = detail::round12(c.j_low);
    j["j_high"] = detail::round12(c.j_high);
    j["sender_low"] = detail::round12(c.sender_low);
    j["sender_high"] = detail::round12(c.sender_high);
    certs.push_back(j);
  }
  Json j;
  j["points"] = points;
  j["certificates"] = certs;
  return j.dump(2) + "\n";
}

}  // namespace sigev
