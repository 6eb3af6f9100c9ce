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

// Command-line front end: sigev <command> [options]. Results go to stdout,
// diagnostics to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigev/sigev.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitVerifyFailed = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sigev::Error(sigev::ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

sigev::Scenario load_scenario(const std::string& path) {
  return sigev::parse_scenario(read_file(path));
}

double tolerance(const sigev::Scenario& s, const std::optional<double>& flag) {
  return flag ? *flag : s.tolerance();
}

sigev::SweepAxis parse_axis(const std::string& name) {
  if (name == "prior") return sigev::SweepAxis::kPrior;
  if (name == "J") return sigev::SweepAxis::kJ;
  if (name == "G") return sigev::SweepAxis::kG;
  throw sigev::Error(sigev::ErrorCode::kInvalidArgument, "unknown axis '" + name + "'");
}

bool is_invalid_input(sigev::ErrorCode code) {
  switch (code) {
    case sigev::ErrorCode::kParseError:
    case sigev::ErrorCode::kAssumptionViolation:
    case sigev::ErrorCode::kInvalidDetector:
    case sigev::ErrorCode::kInvalidPrior:
    case sigev::ErrorCode::kInfeasibleShape:
    case sigev::ErrorCode::kUnsupportedFormat:
    case sigev::ErrorCode::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

void print_case_study(std::ostream& out) {
  const sigev::Scenario scenario = sigev::honeypot_scenario();
  const sigev::Game game = scenario.game();
  const sigev::RegimeThresholds t = sigev::regime_thresholds(game);
  out << "# scenario " << scenario.name << ": alpha=" << sigev::detail::fmt12(scenario.alpha)
      << " beta=" << sigev::detail::fmt12(scenario.beta)
      << " delta0=" << sigev::detail::fmt12(game.delta0())
      << " delta1=" << sigev::detail::fmt12(game.delta1()) << "\n";
  out << "# class=" << sigev::to_string(t.detector_class) << " t_a=" << sigev::detail::fmt12(t.t_a)
      << " t_b=" << sigev::detail::fmt12(t.t_b) << " t_c=" << sigev::detail::fmt12(t.t_c)
      << " t_d=" << sigev::detail::fmt12(t.t_d) << "\n";
  const sigev::Equilibrium eq = sigev::partial_separating_equilibrium(game);
  out << "# p(1)=" << sigev::detail::fmt12(scenario.prior_one) << " "
      << sigev::to_string(eq.kind) << ": q=" << sigev::detail::fmt12(eq.profile.sender.q())
      << " r=" << sigev::detail::fmt12(eq.profile.sender.r())
      << " w=" << sigev::detail::fmt12(eq.profile.receiver.w())
      << " x=" << sigev::detail::fmt12(eq.profile.receiver.x())
      << " y=" << sigev::detail::fmt12(eq.profile.receiver.y())
      << " z=" << sigev::detail::fmt12(eq.profile.receiver.z()) << "\n";

  sigev::SweepSpec spec;
  spec.base = scenario.config();
  spec.axis = sigev::SweepAxis::kPrior;
  spec.from = 0.01;
  spec.to = 0.99;
  spec.steps = 99;
  spec.epsilon = scenario.tolerance();
  out << sigev::emit_sweep(sigev::sweep(spec), sigev::Format::kCsv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver, verifier and analysis tools for cheap-talk signaling games with evidence"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format_name = "json";
  std::optional<double> epsilon;

  auto* solve_cmd = app.add_subcommand("solve", "All equilibria of a scenario");
  solve_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  solve_cmd->add_option("--format", format_name, "json or csv");
  solve_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  std::string axis_name;
  double from = 0.0;
  double to = 1.0;
  int steps = 101;
  std::string sweep_format = "csv";
  auto* sweep_cmd = app.add_subcommand("sweep", "Comparative statics along one axis");
  sweep_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  sweep_cmd->add_option("--axis", axis_name, "prior, J or G")->required();
  sweep_cmd->add_option("--from", from, "First axis value")->required();
  sweep_cmd->add_option("--to", to, "Last axis value")->required();
  sweep_cmd->add_option("--steps", steps, "Number of points")->required();
  sweep_cmd->add_option("--format", sweep_format, "csv or json");
  sweep_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  std::string profile_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a candidate equilibrium");
  verify_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  verify_cmd->add_option("--profile", profile_path, "Profile file")->required();
  verify_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  int grid = 100;
  std::string search_format = "csv";
  auto* search_cmd = app.add_subcommand("search", "Grid search for equilibria");
  search_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  search_cmd->add_option("--grid", grid, "Grid steps per axis")->required();
  search_cmd->add_option("--format", search_format, "csv or json");
  search_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  auto* case_cmd = app.add_subcommand("case-study", "Bundled honeypot scenario end to end");

  double noise = 0.1;
  int trials = 1000;
  std::uint64_t seed = 0;
  std::vector<double> priors;
  std::string robust_format = "csv";
  auto* robust_cmd =
      app.add_subcommand("robustness", "Sender utility against a noisy receiver");
  robust_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  robust_cmd->add_option("--noise", noise, "Half-width of the uniform noise")->required();
  robust_cmd->add_option("--trials", trials, "Noisy receivers per prior")->required();
  robust_cmd->add_option("--seed", seed, "Random seed")->required();
  robust_cmd->add_option("--priors", priors, "Priors to evaluate (default: the scenario's)");
  robust_cmd->add_option("--format", robust_format, "csv or json");
  robust_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  int perturbations = 1000;
  auto* invariance_cmd =
      app.add_subcommand("invariance", "Receiver utility under random sender strategies");
  invariance_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  invariance_cmd->add_option("--perturbations", perturbations, "Number of sender strategies");
  invariance_cmd->add_option("--seed", seed, "Random seed");
  invariance_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  int j_steps = 9;
  int g_steps = 19;
  int p_steps = 50;
  std::string surface_format = "csv";
  auto* surface_cmd = app.add_subcommand("surface", "Utilities over a detector-shape lattice");
  surface_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
  surface_cmd->add_option("--j-steps", j_steps, "J values in (0, 1)");
  surface_cmd->add_option("--g-steps", g_steps, "G values in (-1, 1)");
  surface_cmd->add_option("--p-steps", p_steps, "Priors in (0, 1)");
  surface_cmd->add_option("--format", surface_format, "csv or json");
  surface_cmd->add_option("--epsilon", epsilon, "Tolerance override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*solve_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Format format = sigev::parse_format(format_name);
      const sigev::Game game = s.game();
      const double eps = tolerance(s, epsilon);
      std::cout << sigev::emit_solve(game, sigev::solve(game, eps), format, eps);
    } else if (*sweep_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Format format = sigev::parse_format(sweep_format);
      sigev::SweepSpec spec;
      spec.base = s.config();
      s.game();
      spec.axis = parse_axis(axis_name);
      spec.from = from;
      spec.to = to;
      spec.steps = steps;
      spec.epsilon = tolerance(s, epsilon);
      std::cout << sigev::emit_sweep(sigev::sweep(spec), format);
    } else if (*verify_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Game game = s.game();
      const sigev::ProfileFile candidate = sigev::parse_profile(read_file(profile_path), game);
      const sigev::VerificationReport report =
          sigev::verify_pbne(game, candidate.profile, candidate.beliefs, tolerance(s, epsilon));
      std::cout << sigev::emit_verify(report, sigev::Format::kJson);
      return report.passed ? kExitOk : kExitVerifyFailed;
    } else if (*search_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Format format = sigev::parse_format(search_format);
      std::cout << sigev::emit_search(
          sigev::brute_force_search(s.game(), grid, tolerance(s, epsilon)), format);
    } else if (*case_cmd) {
      print_case_study(std::cout);
    } else if (*robust_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Format format = sigev::parse_format(robust_format);
      std::cout << sigev::emit_robustness(
          sigev::sender_vs_suboptimal_receiver(s.game(), noise, trials, seed, priors,
                                               tolerance(s, epsilon)),
          format);
    } else if (*invariance_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Game game = s.game();
      std::cout << sigev::emit_invariance(
          sigev::receiver_utility_invariance(game, perturbations, seed, tolerance(s, epsilon)),
          game, sigev::Format::kJson);
    } else if (*surface_cmd) {
      const sigev::Scenario s = load_scenario(scenario_path);
      const sigev::Format format = sigev::parse_format(surface_format);
      s.game();
      if (j_steps < 1 || g_steps < 1 || p_steps < 1) {
        throw sigev::Error(sigev::ErrorCode::kInvalidArgument, "lattice sizes must be positive");
      }
      std::vector<sigev::DetectorShape> shapes;
      for (int i = 1; i <= j_steps; ++i) {
        const double j = static_cast<double>(i) / (j_steps + 1);
        for (int k = 1; k <= g_steps; ++k) {
          const double g = -1.0 + 2.0 * k / (g_steps + 1);
          if (std::abs(g) <= 1.0 - j) shapes.push_back({j, g});
        }
      }
      std::vector<double> prior_grid;
      for (int i = 1; i <= p_steps; ++i) prior_grid.push_back(static_cast<double>(i) / (p_steps + 1));
      std::cout << sigev::emit_surface(
          sigev::utility_vs_detector(s.config(), shapes, prior_grid, tolerance(s, epsilon)),
          format);
    }
  } catch (const sigev::Error& e) {
    std::cerr << "sigev: " << e.what() << "\n";
    return is_invalid_input(e.code()) ? kExitInvalid : kExitOther;
  } catch (const std::exception& e) {
    std::cerr << "sigev: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOk;
}
