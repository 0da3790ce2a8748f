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

#ifndef CAMPOPT_STRATEGIES_BASIC_HPP_
#define CAMPOPT_STRATEGIES_BASIC_HPP_

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/network.hpp"

namespace campopt {

struct Allocation {
  Eigen::VectorXd amounts;
  double budget = 0.0;
  std::optional<double> cap;  // per-node ceiling, if the setting has one
};

// Result of a solved setting. `value` is the long-run opinion sum under
// (x, y); settings attach their diagnostics (duals, thresholds, totals) to
// `meta`, which the CLI copies into report.json.
struct GameOutcome {
  Allocation x;
  Allocation y;
  double value = 0.0;
  std::map<std::string, double> meta;
};

namespace detail {

// Indices ordered by descending score; equal scores keep ascending node
// order, which makes every greedy in this library deterministic.
inline std::vector<int> descending_order(const Eigen::VectorXd& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

// Shared greedy: walk nodes in descending score order, give each one as much
// as its cap and the remaining budget allow, and stop at the first
// nonpositive score (zero gains nothing, so it does not get funded).
inline Eigen::VectorXd greedy_fill(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXd& caps, double budget) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(scores.size());
  double left = budget;
  for (int i : descending_order(scores)) {
    if (scores[i] <= 0.0 || left <= 0.0) break;
    const double amount = std::min(caps[i], left);
    if (amount <= 0.0) continue;
    x[i] = amount;
    left -= amount;
  }
  return x;
}

inline void require_budget(double k, const char* name) {
  if (!(k >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be nonnegative");
  }
}

}  // namespace detail

// Optimal unconstrained-per-node investment for a linear objective
// sum_i scores_i * x_i with sum_i x_i <= budget: everything on the first
// highest-score node when that score is positive, nothing otherwise.
inline Allocation optimal_unbounded(const Eigen::VectorXd& scores, double budget) {
  detail::require_budget(budget, "budget");
  Allocation a{Eigen::VectorXd::Zero(scores.size()), budget, std::nullopt};
  if (scores.size() == 0) return a;
  int best = 0;
  for (int i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  if (scores[best] > 0.0) a.amounts[best] = budget;
  return a;
}

// Same objective with per-node caps: fill whole units down the score order,
// place the fractional remainder on the next positive-score node, and leave
// the rest of the budget unused once scores stop being positive.
inline Allocation optimal_bounded(const Eigen::VectorXd& scores, double budget,
                                  double cap = 1.0) {
  detail::require_budget(budget, "budget");
  detail::require_budget(cap, "cap");
  Allocation a{detail::greedy_fill(scores, Eigen::VectorXd::Constant(scores.size(), cap),
                                   budget),
               budget, cap};
  return a;
}

// Both camps' optimal play when they interact only through the objective:
// the maximizing and minimizing problems decouple, so the first-mover order
// does not matter and meta records identical maxmin/minmax values.
inline GameOutcome fundamental_game(const Network& net, const Budgets& budgets,
                                    bool bounded, double cap = 1.0) {
  detail::require_budget(budgets.k_g, "k_g");
  detail::require_budget(budgets.k_b, "k_b");
  const Eigen::VectorXd sg = good_scores(net);
  const Eigen::VectorXd sb = bad_scores(net);

  GameOutcome out;
  out.x = bounded ? optimal_bounded(sg, budgets.k_g, cap) : optimal_unbounded(sg, budgets.k_g);
  out.y = bounded ? optimal_bounded(sb, budgets.k_b, cap) : optimal_unbounded(sb, budgets.k_b);
  out.value = opinion_sum(net, out.x.amounts, out.y.amounts);

  const double bias_term = bias_contribution(net);
  const double good_gain = sg.dot(out.x.amounts);
  const double bad_gain = sb.dot(out.y.amounts);
  const double maxmin = bias_term + good_gain - bad_gain;
  out.meta["maxmin"] = maxmin;
  out.meta["minmax"] = maxmin;  // decoupled game: the order of moves is irrelevant
  out.meta["bias_term"] = bias_term;
  out.meta["good_gain"] = good_gain;
  out.meta["bad_gain"] = bad_gain;
  return out;
}

// True when neither camp can beat a uniform-at-random strategy: all good
// decision scores coincide within tol, and likewise the bad ones. Holds by
// construction for weighted-influence-class networks, where both score
// vectors are constant at 1/alpha.
inline bool is_random_optimal(const Network& net, double tol = 1e-9) {
  const auto spread = [](const Eigen::VectorXd& s) {
    return s.size() ? s.maxCoeff() - s.minCoeff() : 0.0;
  };
  return spread(good_scores(net)) <= tol && spread(bad_scores(net)) <= tol;
}

}  // namespace campopt

#endif  // CAMPOPT_STRATEGIES_BASIC_HPP_
