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

#ifndef CAMPOPT_STRATEGIES_ADVERSARY_HPP_
#define CAMPOPT_STRATEGIES_ADVERSARY_HPP_

// Adversarial settings: the good camp commits first and the bad camp then
// spends whatever it takes to drag the long-run opinion sum to zero or below.
// The quantity of interest is the size of that forced response -- either the
// bad camp's total budget (unbounded / per-node-capped variants) or, in the
// deviation variant, how far both camps are pushed from preferred plans.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/network.hpp"
#include "campopt/strategies_basic.hpp"

namespace campopt {

// Preferred plans the camps would follow absent any adversarial pressure.
struct DesiredInvestment {
  Eigen::VectorXd x_bar;
  Eigen::VectorXd y_bar;
};

class AdversaryInfeasibleError : public Error {
 public:
  AdversaryInfeasibleError(const std::string& message, double shortfall)
      : Error(ErrorCode::AdversaryInfeasible, message), shortfall_(shortfall) {}

  // How much opinion-sum reduction the bad camp still needed when its
  // instruments ran out.
  double shortfall() const noexcept { return shortfall_; }

 private:
  double shortfall_;
};

namespace detail {

inline void require_desired(const Network& net, const DesiredInvestment& desired) {
  if (desired.x_bar.size() != net.n() || desired.y_bar.size() != net.n()) {
    throw Error(ErrorCode::DimensionMismatch, "desired investment vectors must have length n");
  }
  if ((desired.x_bar.array() < 0.0).any() || (desired.y_bar.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "desired investments must be nonnegative");
  }
}

}  // namespace detail

// Good camp spends k_g on the single best node; the bad camp, free of
// per-node caps, must then put
//   (k_g * max(max_i r_i w_ig, 0) + sum_i r_i w_ii0 v_i0) / max_j r_j w_jb
// on its own best node to pull the opinion sum down to zero (no spend at all
// if the sum is already nonpositive). `meta["dual_pi"]` carries the shadow
// price 1 / max_j r_j w_jb of the opinion-sum constraint: the marginal cost,
// in bad-camp budget, of one extra unit of opinion mass to cancel.
inline GameOutcome adversary_unbounded(const Network& net, double k_g) {
  detail::require_budget(k_g, "k_g");
  const int n = net.n();
  const Eigen::VectorXd sg = good_scores(net);
  const Eigen::VectorXd sb = bad_scores(net);

  GameOutcome out;
  out.x = optimal_unbounded(sg, k_g);
  out.y = Allocation{Eigen::VectorXd::Zero(n), 0.0, std::nullopt};

  const double bias_term = bias_contribution(net);
  const double good_gain = n > 0 ? k_g * std::max(sg.maxCoeff(), 0.0) : 0.0;
  const double numerator = good_gain + bias_term;

  double bad_total = 0.0;
  if (numerator > 0.0) {
    int best = 0;
    const double max_sb = n > 0 ? sb.maxCoeff(&best) : 0.0;
    if (max_sb <= 0.0) {
      throw AdversaryInfeasibleError(
          "the bad camp has no node with positive influence-weighted reach, but the opinion sum "
          "to cancel is " +
              std::to_string(numerator),
          numerator);
    }
    bad_total = numerator / max_sb;
    out.y.amounts[best] = bad_total;
    out.y.budget = bad_total;
    out.meta["dual_pi"] = 1.0 / max_sb;
  }

  out.value = opinion_sum(net, out.x.amounts, out.y.amounts);
  out.meta["bad_total"] = bad_total;
  out.meta["target"] = std::max(numerator, 0.0);
  return out;
}

// Same game with the bad camp capped at one unit per node. The good camp now
// plays its capped optimum; the bad camp fills nodes in decreasing order of
// r_i w_ib, stopping mid-node the moment the running weighted sum reaches the
// good side's total. The final node's fraction is topped up so the residual
// (achieved minus required) is exact up to roundoff, never negative.
inline GameOutcome adversary_bounded(const Network& net, double k_g) {
  detail::require_budget(k_g, "k_g");
  const int n = net.n();
  const Eigen::VectorXd sg = good_scores(net);
  const Eigen::VectorXd sb = bad_scores(net);

  GameOutcome out;
  out.x = optimal_bounded(sg, k_g, 1.0);
  out.y = Allocation{Eigen::VectorXd::Zero(n), 0.0, 1.0};

  const double bias_term = bias_contribution(net);
  const double target = sg.dot(out.x.amounts) + bias_term;
  out.meta["target"] = target;

  if (target > 0.0) {
    const std::vector<int> order = detail::descending_order(sb);
    double achieved = 0.0;
    for (int i : order) {
      if (sb[i] <= 0.0) break;
      double amount = std::min(1.0, (target - achieved) / sb[i]);
      out.y.amounts[i] = amount;
      achieved = sb.dot(out.y.amounts);  // recomputed exactly so the stop test cannot drift
      if (achieved < target && amount < 1.0) {
        // Roundoff left the fractional node a hair short; nudge it up.
        out.y.amounts[i] = std::min(1.0, amount + (target - achieved) / sb[i]);
        achieved = sb.dot(out.y.amounts);
      }
      if (achieved >= target) break;
    }
    if (achieved < target) {
      throw AdversaryInfeasibleError(
          "bad camp exhausted all positively scored nodes at cap 1 with weighted sum " +
              std::to_string(achieved) + " short of the required " + std::to_string(target),
          target - achieved);
    }
    out.meta["residual"] = achieved - target;
  } else {
    out.meta["residual"] = 0.0;
  }

  out.y.budget = out.y.amounts.sum();
  out.meta["bad_total"] = out.y.budget;
  out.value = opinion_sum(net, out.x.amounts, out.y.amounts);
  return out;
}

// Deviation game, good side. Instead of a linear budget the good camp may
// move squared distance at most k_g away from its preferred plan x_bar, and
// it maximizes the opinion sum. With scores s = r .* w_g the optimum is
//   x_i = max(x_bar_i + s_i / (2 gamma), 0),
// where gamma > 0 makes the squared deviation spend exactly k_g:
//   Phi(gamma) = sum_{s_i >= -2 gamma x_bar_i} (s_i / 2 gamma)^2
//              + sum_{s_i < -2 gamma x_bar_i} x_bar_i^2  = k_g.
// Phi is continuous and non-increasing, so a bisection bracket is easy: the
// all-interior value gamma0 = sqrt(sum s^2 / (4 k_g)) always sits on or above
// the root. No root exists only when every score is nonpositive and dropping
// all badly placed mass (x_i = 0 where s_i < 0) still costs less than k_g;
// then that drop is returned with budget to spare.
//
// The returned Allocation's `budget` field is k_g, the squared-deviation
// radius -- sum(amounts) has no budget meaning in this setting.
inline Allocation deviation_strategy(const Network& net, const DesiredInvestment& desired,
                                     double k_g) {
  if (!std::isfinite(k_g) || k_g <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "deviation budget k_g must be positive");
  }
  detail::require_desired(net, desired);
  const Eigen::VectorXd s = good_scores(net);
  const Eigen::VectorXd& xbar = desired.x_bar;
  const int n = net.n();
  Allocation a{xbar, k_g, std::nullopt};

  const double sum_sq = s.squaredNorm();
  if (sum_sq == 0.0) return a;  // no gradient anywhere: staying put is optimal

  if (s.maxCoeff() <= 0.0) {
    double drop_cost = 0.0;
    for (int i = 0; i < n; ++i) {
      if (s[i] < 0.0) drop_cost += xbar[i] * xbar[i];
    }
    if (drop_cost < k_g) {
      for (int i = 0; i < n; ++i) {
        if (s[i] < 0.0) a.amounts[i] = 0.0;
      }
      return a;
    }
  }

  const auto deviation_cost = [&](double gamma) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      if (s[i] >= -2.0 * gamma * xbar[i]) {
        const double d = s[i] / (2.0 * gamma);
        total += d * d;
      } else {
        total += xbar[i] * xbar[i];
      }
    }
    return total;
  };

  double hi = std::sqrt(sum_sq / (4.0 * k_g));
  double lo = hi;
  while (deviation_cost(lo) < k_g) lo *= 0.5;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (deviation_cost(mid) >= k_g ? lo : hi) = mid;
  }
  // The upper end of the bracket keeps the squared deviation at or under k_g.
  const double gamma = hi;
  for (int i = 0; i < n; ++i) {
    a.amounts[i] = std::max(xbar[i] + s[i] / (2.0 * gamma), 0.0);
  }
  return a;
}

namespace detail {

// Projection of y_bar onto {y >= 0, a . y >= c}: components take the form
// max(y_bar_i + lambda a_i, 0) for the smallest lambda >= 0 meeting the
// half-space; found by bisection on the monotone map lambda -> a . y(lambda).
inline std::optional<Eigen::VectorXd> project_halfspace_nonneg(const Eigen::VectorXd& ybar,
                                                               const Eigen::VectorXd& a,
                                                               double c) {
  const auto point = [&](double lambda) {
    return (ybar + lambda * a).cwiseMax(0.0).eval();
  };
  if (a.dot(point(0.0)) >= c) return point(0.0);
  double hi = 1.0;
  while (a.dot(point(hi)) < c) {
    hi *= 2.0;
    if (hi > 1e12) return std::nullopt;  // half-space unreachable from the orthant
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (a.dot(point(mid)) >= c ? hi : lo) = mid;
  }
  return point(hi);
}

}  // namespace detail

// Full deviation game report: the good camp's optimal deviation plus, as a
// diagnostic, the bad camp's least-deviation response — the projection of
// y_bar onto the half-space of responses that cancel the opinion sum. The
// response is absent (and the meta key omitted) when no nonnegative y can
// reach the half-space.
inline GameOutcome deviation_game(const Network& net, const DesiredInvestment& desired,
                                  double k_g) {
  GameOutcome out;
  out.x = deviation_strategy(net, desired, k_g);
  out.meta["good_deviation_sq"] = (out.x.amounts - desired.x_bar).squaredNorm();

  const Eigen::VectorXd sb = bad_scores(net);
  const double needed = opinion_sum(net, out.x.amounts, Eigen::VectorXd::Zero(net.n()));
  std::optional<Eigen::VectorXd> y = desired.y_bar;
  if (needed > 0.0) {
    y = detail::project_halfspace_nonneg(desired.y_bar, sb, needed);
  }
  if (y) {
    out.y = Allocation{*y, (*y - desired.y_bar).squaredNorm(), std::nullopt};
    out.meta["bad_deviation_sq"] = out.y.budget;
    out.value = opinion_sum(net, out.x.amounts, out.y.amounts);
  } else {
    out.y = Allocation{Eigen::VectorXd::Zero(net.n()), 0.0, std::nullopt};
    out.value = needed;
  }
  return out;
}

}  // namespace campopt

#endif  // CAMPOPT_STRATEGIES_ADVERSARY_HPP_
