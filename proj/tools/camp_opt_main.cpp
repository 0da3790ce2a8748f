// Copyright 2026 The camp-opt Authors
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

// camp-opt: scenario runner for the campaign-investment solvers.
//
//   run         solve one setting; writes report.json and allocations.csv
//   trajectory  iterate the dynamics under a setting's allocations; writes
//               trajectory.csv and report.json
//   verify      built-in oracle cross-checks; exit code = number of failures
//   info        print a dataset/network summary to stdout
//
// Exit codes: 0 success, 2 configuration error (bad flags, unreadable or
// malformed dataset, invalid generation parameters), 3 solver error (the
// error code is also recorded in report.json under "error").

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "campopt/campopt.hpp"
#include "campopt/testing.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSettings[] = {
    "fundamental", "fundamental-bounded", "concave",    "concave-bounded", "adversary",
    "adversary-bounded", "deviation",     "ccc-maxmin", "ccc-minmax",      "robust",
};

// Shortest round-trip decimal form, the same convention the JSON serializer
// uses, so CSV and report values compare equal as text.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Options {
  std::string setting = "fundamental";
  std::string dataset = "karate";
  double kg = 1.0;
  double kb = 1.0;
  double t = 2.0;
  double eps_l = 0.0;
  double eps_o = 0.2;
  double s = 0.5;
  double alpha = 0.0;
  bool alpha_set = false;
  std::uint64_t seed = 1;
  bool bounded = false;
  std::string out_dir = "out";
  double tol = 1e-8;
  int tau_max = 200;
  std::string suite = "all";
};

void add_network_options(CLI::App* cmd, Options& o, CLI::Option*& alpha_opt) {
  cmd->add_option("--dataset", o.dataset,
                  "Edge-list file (src dst [weight] per line) or the keyword 'karate'")
      ->capture_default_str();
  cmd->add_option("--s", o.s, "Anchor+camp share of each node's weight budget (generated nets)")
      ->capture_default_str();
  alpha_opt = cmd->add_option(
      "--alpha", o.alpha,
      "Build the weighted-influence-class network 1/(alpha + degree) instead of a generated one");
  cmd->add_option("--seed", o.seed, "Seed for generated weights and biases")
      ->capture_default_str();
}

void add_scenario_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--setting", o.setting, "One of: fundamental, fundamental-bounded, concave, "
                                          "concave-bounded, adversary, adversary-bounded, "
                                          "deviation, ccc-maxmin, ccc-minmax, robust")
      ->capture_default_str();
  cmd->add_option("--kg", o.kg, "Good-camp budget")->capture_default_str();
  cmd->add_option("--kb", o.kb, "Bad-camp budget")->capture_default_str();
  cmd->add_option("--t", o.t, "Concavity exponent (concave settings)")->capture_default_str();
  cmd->add_option("--eps-l", o.eps_l, "Per-node weight uncertainty (robust)")
      ->capture_default_str();
  cmd->add_option("--eps-o", o.eps_o, "Per-camp total-weight uncertainty (robust)")
      ->capture_default_str();
  cmd->add_flag("--bounded", o.bounded,
                "Per-node unit caps; shorthand for the -bounded settings");
  cmd->add_option("--out-dir", o.out_dir, "Directory for report files")->capture_default_str();
  cmd->add_option("--tol", o.tol, "Convergence tolerance (trajectory)")->capture_default_str();
  cmd->add_option("--tau-max", o.tau_max, "Maximum dynamics steps (trajectory)")
      ->capture_default_str();
  cmd->set_config("--config", "", "Read options from an INI file (flat key=value lines)");
}

// ---------------------------------------------------------------------------
// Configuration resolution (errors here exit 2)
// ---------------------------------------------------------------------------

std::string resolve_setting(const Options& o) {
  std::string setting = o.setting;
  if (o.bounded && (setting == "fundamental" || setting == "concave")) {
    setting += "-bounded";
  }
  if (std::find(std::begin(kSettings), std::end(kSettings), setting) == std::end(kSettings)) {
    throw campopt::Error(campopt::ErrorCode::InvalidArgument,
                         "unknown setting '" + setting + "'");
  }
  return setting;
}

campopt::EdgeListData load_dataset(const std::string& dataset) {
  if (dataset == "karate") {
    std::istringstream in{std::string(campopt::kKarateEdgeList)};
    return campopt::load_edge_list(in);
  }
  std::ifstream in(dataset);
  if (!in) {
    throw campopt::Error(campopt::ErrorCode::InvalidArgument,
                         "cannot open dataset file '" + dataset + "'");
  }
  return campopt::load_edge_list(in);
}

// Initial opinions are drawn from a seed-derived stream so the same seed
// fixes both the weight tuples and the biases without coupling the two draws.
Eigen::VectorXd seeded_bias(int n, std::uint64_t seed) {
  campopt::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::VectorXd bias(n);
  for (int i = 0; i < n; ++i) bias[i] = rng.uniform(-1.0, 1.0);
  return bias;
}

campopt::Network build_network_from(const campopt::EdgeListData& data, const Options& o) {
  const Eigen::VectorXd bias = seeded_bias(data.n, o.seed);
  if (o.alpha_set) {
    return campopt::make_weighted_class_network(data, o.alpha, bias);
  }
  return campopt::make_generated_network(data, o.s, o.seed, bias);
}

json echo_config(const Options& o, const std::string& setting) {
  json cfg;
  cfg["setting"] = setting;
  cfg["dataset"] = o.dataset;
  cfg["kg"] = o.kg;
  cfg["kb"] = o.kb;
  cfg["t"] = o.t;
  cfg["eps_l"] = o.eps_l;
  cfg["eps_o"] = o.eps_o;
  cfg["s"] = o.s;
  cfg["alpha"] = o.alpha_set ? json(o.alpha) : json(nullptr);
  cfg["seed"] = o.seed;
  cfg["bounded"] = o.bounded;
  cfg["tol"] = o.tol;
  cfg["tau_max"] = o.tau_max;
  cfg["out_dir"] = o.out_dir;
  return cfg;
}

// ---------------------------------------------------------------------------
// Setting dispatch (errors here exit 3)
// ---------------------------------------------------------------------------

struct ScenarioResult {
  Eigen::VectorXd x, y;            // reported allocations
  Eigen::VectorXd eff_x, eff_y;    // what enters the dynamics (x^(1/t) for concave)
  double value = 0.0;
  std::map<std::string, double> meta;
  json extras;                     // setting-specific structured diagnostics
};

ScenarioResult dispatch(const campopt::Network& net, const Options& o,
                        const std::string& setting) {
  using namespace campopt;
  const Budgets budgets{o.kg, o.kb};
  const int n = net.n();
  ScenarioResult r;
  const auto adopt = [&](const GameOutcome& g) {
    r.x = g.x.amounts;
    r.y = g.y.amounts;
    r.value = g.value;
    r.meta = g.meta;
  };

  if (setting == "fundamental" || setting == "fundamental-bounded") {
    adopt(fundamental_game(net, budgets, setting == "fundamental-bounded"));
  } else if (setting == "concave" || setting == "concave-bounded") {
    adopt(concave_game(net, budgets, o.t, setting == "concave-bounded"));
    r.eff_x = r.x.array().pow(1.0 / o.t);
    r.eff_y = r.y.array().pow(1.0 / o.t);
  } else if (setting == "adversary") {
    adopt(adversary_unbounded(net, o.kg));
  } else if (setting == "adversary-bounded") {
    adopt(adversary_bounded(net, o.kg));
  } else if (setting == "deviation") {
    const DesiredInvestment desired{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    adopt(deviation_game(net, desired, o.kg));
  } else if (setting == "ccc-maxmin") {
    adopt(ccc_maxmin(net, budgets));
  } else if (setting == "ccc-minmax") {
    adopt(ccc_minmax(net, budgets));
  } else {  // robust
    const UncertaintyPolytope poly =
        build_box_sum_polytope(net.good_weight(), net.bad_weight(), o.eps_l, o.eps_o);
    const RobustOutcome out = robust_good_strategy(net, poly, budgets);
    r.x = out.x.amounts;
    r.y = Eigen::VectorXd::Zero(n);
    r.value = out.worst_case_value;
    r.extras["method"] =
        out.method_used == RobustMethod::Monolith ? "monolith" : "cut-generation";
    r.extras["cut_rounds"] = out.cut_rounds;
    r.extras["feasible_boundary_set"] = out.feasible_set;
    json conditions = json::array();
    for (const auto& d : out.duals) {
      conditions.push_back(json{{"condition", d.i0}, {"certified_inner_value", d.inner_value}});
    }
    r.extras["conditions"] = conditions;
  }

  if (r.eff_x.size() == 0) r.eff_x = r.x;
  if (r.eff_y.size() == 0) r.eff_y = r.y;
  return r;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw campopt::Error(campopt::ErrorCode::InvalidArgument,
                         "cannot write '" + path.string() + "'");
  }
  out << text;
}

void write_allocations_csv(const std::filesystem::path& path, const campopt::Network& net,
                           const std::vector<std::int64_t>& ids, const ScenarioResult& r,
                           const Eigen::VectorXd& v_final) {
  const Eigen::VectorXd rvec = campopt::influence_vector(net).r;
  const Eigen::VectorXd sg = campopt::good_scores(net);
  const Eigen::VectorXd sb = campopt::bad_scores(net);
  std::ostringstream out;
  out << "node,x,y,r,r_wg,r_wb,v_final\n";
  for (int i = 0; i < net.n(); ++i) {
    out << ids[i] << ',' << fmt(r.x[i]) << ',' << fmt(r.y[i]) << ',' << fmt(rvec[i]) << ','
        << fmt(sg[i]) << ',' << fmt(sb[i]) << ',' << fmt(v_final[i]) << '\n';
  }
  write_text(path, out.str());
}

int run_scenario(const Options& o, bool trajectory_mode) {
  std::string setting;
  campopt::EdgeListData data;
  std::optional<campopt::Network> net;
  try {
    setting = resolve_setting(o);
    data = load_dataset(o.dataset);
    net = build_network_from(data, o);
    std::filesystem::create_directories(o.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "camp-opt: config error: " << e.what() << '\n';
    return 2;
  }

  const std::filesystem::path out_dir(o.out_dir);
  json report;
  report["setting"] = setting;
  report["config"] = echo_config(o, setting);
  report["network"] = json{{"nodes", data.n},
                           {"edges", static_cast<std::int64_t>(data.edges.size())}};
  try {
    const ScenarioResult res = dispatch(*net, o, setting);
    const Eigen::VectorXd v_final = campopt::steady_state(*net, res.eff_x, res.eff_y);
    report["value"] = res.value;
    report["allocations"] = json{{"x", vector_json(res.x)}, {"y", vector_json(res.y)}};
    json diag;
    for (const auto& [key, val] : res.meta) diag[key] = val;
    for (auto it = res.extras.begin(); it != res.extras.end(); ++it) diag[it.key()] = it.value();
    report["diagnostics"] = diag;

    if (trajectory_mode) {
      const campopt::Trajectory traj =
          campopt::iterate_dynamics(*net, res.eff_x, res.eff_y, o.tol, o.tau_max);
      std::ostringstream csv;
      csv << "tau,node,opinion,opinion_sum\n";
      json sums = json::array();
      for (std::size_t tau = 0; tau < traj.states.size(); ++tau) {
        const double step_sum = traj.states[tau].sum();
        sums.push_back(step_sum);
        for (int i = 0; i < data.n; ++i) {
          csv << tau << ',' << data.original_ids[i] << ',' << fmt(traj.states[tau][i]) << ','
              << fmt(step_sum) << '\n';
        }
      }
      report["trajectory"] =
          json{{"steps", traj.steps}, {"converged", traj.converged}, {"sum_per_step", sums}};
      write_text(out_dir / "trajectory.csv", csv.str());
    } else {
      write_allocations_csv(out_dir / "allocations.csv", *net, data.original_ids, res, v_final);
    }
    write_text(out_dir / "report.json", report.dump(2) + "\n");
    return 0;
  } catch (const campopt::Error& e) {
    report["error"] =
        json{{"code", std::string(campopt::to_string(e.code()))}, {"message", e.what()}};
    write_text(out_dir / "report.json", report.dump(2) + "\n");
    std::cerr << "camp-opt: solver error: " << e.what() << '\n';
    return 3;
  }
}

// ---------------------------------------------------------------------------
// verify: built-in oracle cross-checks
// ---------------------------------------------------------------------------

using Check = std::pair<std::string, std::function<std::optional<std::string>()>>;

std::optional<std::string> check_dynamics_equilibrium() {
  for (std::uint64_t seed : {201, 202, 203}) {
    const campopt::Network net = campopt::testing::random_network(20, seed);
    campopt::Rng rng(seed + 7);
    Eigen::VectorXd x(20), y(20);
    for (int i = 0; i < 20; ++i) {
      x[i] = rng.uniform(0.0, 2.0);
      y[i] = rng.uniform(0.0, 2.0);
    }
    const auto traj = campopt::iterate_dynamics(net, x, y, 0.0, 300);
    const Eigen::VectorXd fixed = campopt::steady_state(net, x, y);
    const double gap = (traj.states.back() - fixed).cwiseAbs().maxCoeff();
    if (gap > 1e-8) {
      return "iterates vs equilibrium gap " + fmt(gap) + " on seed " + std::to_string(seed);
    }
    const double sum_gap = std::abs(campopt::opinion_sum(net, x, y) - fixed.sum());
    if (sum_gap > 1e-9) {
      return "opinion_sum vs summed equilibrium gap " + fmt(sum_gap);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_weighted_class_constant() {
  std::istringstream in{std::string(campopt::kKarateEdgeList)};
  const auto data = campopt::load_edge_list(in);
  for (double alpha : {1.0, 3.0, 7.0}) {
    const campopt::Network net = campopt::make_weighted_class_network(data, alpha);
    const double dev =
        (campopt::good_scores(net).array() - 1.0 / alpha).abs().maxCoeff();
    if (dev > 1e-10) {
      return "score deviation " + fmt(dev) + " from 1/alpha at alpha = " + fmt(alpha);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_closed_forms_against_grid() {
  const double res = 0.05;
  for (std::uint64_t seed : {31, 32, 33}) {
    const Eigen::VectorXd s = campopt::testing::random_scores(3, seed);
    const double budget = 1.6;
    const auto lin = [&](const Eigen::VectorXd& x) { return s.dot(x); };
    const double lip = s.cwiseAbs().maxCoeff() * 3.0 * res;

    const auto grid_unb = campopt::grid_search_allocation(3, budget, budget, res, lin);
    const double unb = s.dot(campopt::optimal_unbounded(s, budget).amounts);
    if (unb < grid_unb.value - 1e-9 || unb > grid_unb.value + lip) {
      return "unbounded closed form " + fmt(unb) + " vs grid " + fmt(grid_unb.value);
    }

    const auto grid_bnd = campopt::grid_search_allocation(3, budget, 1.0, res, lin);
    const double bnd = s.dot(campopt::optimal_bounded(s, budget, 1.0).amounts);
    if (bnd < grid_bnd.value - 1e-9 || bnd > grid_bnd.value + lip) {
      return "bounded closed form " + fmt(bnd) + " vs grid " + fmt(grid_bnd.value);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_concave_ratio_law() {
  const double t = 2.0, p = t / (t - 1.0);
  const Eigen::VectorXd s = campopt::testing::random_scores(4, 41, /*allow_negative=*/false);
  const Eigen::VectorXd x = campopt::concave_unbounded(s, 2.0, t).amounts;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double lhs = x[i] * std::pow(s[j], p);
      const double rhs = x[j] * std::pow(s[i], p);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) {
        return "ratio law residual " + fmt(lhs - rhs) + " at pair (" + std::to_string(i) + "," +
               std::to_string(j) + ")";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_adversary_total_vs_lp() {
  for (std::uint64_t seed : {51, 52}) {
    const campopt::Network net = campopt::testing::random_network(6, seed);
    campopt::GameOutcome out;
    try {
      out = campopt::adversary_unbounded(net, 1.5);
    } catch (const campopt::AdversaryInfeasibleError&) {
      continue;  // nothing to cross-check when no positive bad score exists
    }
    if (out.meta.at("target") <= 0.0) continue;
    // LP oracle: minimize total y subject to the neutralization constraint.
    campopt::LpProblem p;
    const Eigen::VectorXd sb = campopt::bad_scores(net);
    p.c = -Eigen::VectorXd::Ones(net.n());
    p.A = -sb.transpose();
    p.b = Eigen::VectorXd::Constant(1, -out.meta.at("target"));
    p.G = Eigen::MatrixXd::Zero(0, net.n());
    p.h = Eigen::VectorXd::Zero(0);
    const auto sol = campopt::solve_lp(p);
    if (sol.status != campopt::LpStatus::Optimal) return std::string("adversary oracle LP failed");
    if (std::abs(-sol.value - out.meta.at("bad_total")) > 1e-8) {
      return "closed-form total " + fmt(out.meta.at("bad_total")) + " vs LP " + fmt(-sol.value);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_ccc_against_enumeration() {
  for (std::uint64_t seed : {61, 62, 63, 64}) {
    const campopt::Network net = campopt::testing::random_network(5, seed);
    const campopt::Budgets budgets{2.0, 1.0};
    const auto exact = campopt::enumerate_integer_ccc(net, budgets);
    const auto mm = campopt::ccc_maxmin(net, budgets);
    const auto mn = campopt::ccc_minmax(net, budgets);
    if (mm.value != exact.maxmin) {
      return "maxmin " + fmt(mm.value) + " != enumerated " + fmt(exact.maxmin) + " on seed " +
             std::to_string(seed);
    }
    if (mn.value != exact.minmax) {
      return "minmax " + fmt(mn.value) + " != enumerated " + fmt(exact.minmax) + " on seed " +
             std::to_string(seed);
    }
    if (mm.value < mn.value) return std::string("maxmin below minmax");
  }
  return std::nullopt;
}

std::optional<std::string> check_robust_reduces_to_certainty() {
  for (std::uint64_t seed : {71, 72}) {
    const campopt::Network net = campopt::testing::random_network(5, seed);
    const auto poly =
        campopt::build_box_sum_polytope(net.good_weight(), net.bad_weight(), 0.0, 0.0);
    const auto out = campopt::robust_good_strategy(net, poly, {1.5, 1.0});
    const double cert = campopt::bias_contribution(net) +
                        1.5 * std::max(campopt::good_scores(net).maxCoeff(), 0.0) -
                        1.0 * std::max(campopt::bad_scores(net).maxCoeff(), 0.0);
    if (std::abs(out.worst_case_value - cert) > 1e-8) {
      return "certainty-limit gap " + fmt(out.worst_case_value - cert);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_robust_methods_agree() {
  const campopt::Network net = campopt::testing::random_network(5, 81);
  const auto poly =
      campopt::build_box_sum_polytope(net.good_weight(), net.bad_weight(), 0.4, 0.2);
  const auto mono =
      campopt::robust_good_strategy(net, poly, {2.0, 1.0}, campopt::RobustMethod::Monolith);
  const auto cut =
      campopt::robust_good_strategy(net, poly, {2.0, 1.0}, campopt::RobustMethod::CutGeneration);
  if (std::abs(mono.worst_case_value - cut.worst_case_value) > 1e-8) {
    return "monolith " + fmt(mono.worst_case_value) + " vs cut generation " +
           fmt(cut.worst_case_value);
  }
  return std::nullopt;
}

int do_verify(const std::string& suite) {
  std::vector<std::pair<std::string, std::vector<Check>>> groups;
  groups.push_back({"dynamics",
                    {{"iterates-reach-equilibrium", check_dynamics_equilibrium},
                     {"weighted-class-constant-score", check_weighted_class_constant}}});
  groups.push_back({"strategies",
                    {{"closed-forms-match-grid", check_closed_forms_against_grid},
                     {"concave-ratio-law", check_concave_ratio_law},
                     {"adversary-total-matches-lp", check_adversary_total_vs_lp}}});
  groups.push_back({"ccc", {{"ccc-matches-enumeration", check_ccc_against_enumeration}}});
  groups.push_back({"robust",
                    {{"robust-certainty-limit", check_robust_reduces_to_certainty},
                     {"robust-methods-agree", check_robust_methods_agree}}});

  bool known = suite == "all";
  for (const auto& [name, _] : groups) known = known || suite == name;
  if (!known) {
    std::cerr << "camp-opt: config error: unknown suite '" << suite << "'\n";
    return 2;
  }

  int failures = 0;
  for (const auto& [name, checks] : groups) {
    if (suite != "all" && suite != name) continue;
    for (const auto& [check_name, fn] : checks) {
      std::optional<std::string> detail;
      try {
        detail = fn();
      } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
      }
      if (detail) {
        ++failures;
        std::cout << "FAIL " << check_name << ": " << *detail << '\n';
      } else {
        std::cout << "PASS " << check_name << '\n';
      }
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// info
// ---------------------------------------------------------------------------

int do_info(const Options& o) {
  try {
    const campopt::EdgeListData data = load_dataset(o.dataset);
    const campopt::Network net = build_network_from(data, o);
    const std::vector<int> deg = campopt::out_degrees(data.n, data.edges);
    const auto [dmin, dmax] = std::minmax_element(deg.begin(), deg.end());
    const Eigen::VectorXd r = campopt::influence_vector(net).r;
    const Eigen::VectorXd sg = campopt::good_scores(net);
    const Eigen::VectorXd sb = campopt::bad_scores(net);
    Eigen::Index top_g = 0, top_b = 0;
    sg.maxCoeff(&top_g);
    sb.maxCoeff(&top_b);

    std::cout << "dataset: " << o.dataset << '\n'
              << "nodes: " << data.n << '\n'
              << "directed edges: " << data.edges.size() << '\n'
              << "out-degree: min " << *dmin << " max " << *dmax << " mean "
              << fmt(static_cast<double>(data.edges.size()) / data.n) << '\n';
    if (o.alpha_set) {
      std::cout << "weights: influence class 1/(alpha + degree), alpha = " << fmt(o.alpha)
                << '\n';
    } else {
      std::cout << "weights: generated, s = " << fmt(o.s) << ", seed = " << o.seed << '\n';
    }
    std::cout << "influence: min " << fmt(r.minCoeff()) << " max " << fmt(r.maxCoeff())
              << " sum " << fmt(r.sum()) << '\n'
              << "top good-score node: " << data.original_ids[top_g] << " (" << fmt(sg[top_g])
              << ")\n"
              << "top bad-score node: " << data.original_ids[top_b] << " (" << fmt(sb[top_b])
              << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "camp-opt: config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Optimal campaign-investment strategies on opinion networks"};
  app.require_subcommand(1);

  CLI::Option* alpha_run = nullptr;
  CLI::Option* alpha_traj = nullptr;
  CLI::Option* alpha_info = nullptr;

  CLI::App* run = app.add_subcommand("run", "Solve a setting and write reports");
  add_network_options(run, o, alpha_run);
  add_scenario_options(run, o);

  CLI::App* traj = app.add_subcommand("trajectory", "Write the opinion trajectory for a setting");
  add_network_options(traj, o, alpha_traj);
  add_scenario_options(traj, o);

  CLI::App* verify = app.add_subcommand("verify", "Run built-in oracle cross-checks");
  verify->add_option("--suite", o.suite, "all, dynamics, strategies, ccc, or robust")
      ->capture_default_str();

  CLI::App* info = app.add_subcommand("info", "Print a dataset summary");
  add_network_options(info, o, alpha_info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  o.alpha_set = (alpha_run && alpha_run->count() > 0) || (alpha_traj && alpha_traj->count() > 0) ||
                (alpha_info && alpha_info->count() > 0);

  if (run->parsed()) return run_scenario(o, /*trajectory_mode=*/false);
  if (traj->parsed()) return run_scenario(o, /*trajectory_mode=*/true);
  if (verify->parsed()) return do_verify(o.suite);
  return do_info(o);
}
