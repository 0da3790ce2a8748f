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

#ifndef CAMPOPT_STRATEGIES_CONCAVE_HPP_
#define CAMPOPT_STRATEGIES_CONCAVE_HPP_

// Diminishing-returns variant: an investment of x_i moves node i's opinion
// through x_i^(1/t) with t > 1, so the optimal play spreads the budget
// instead of concentrating it. Larger t means faster saturation and flatter
// allocations; t -> 1 recovers the linear setting.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/network.hpp"
#include "campopt/strategies_basic.hpp"

namespace campopt {

struct ConcaveParams {
  double t = 2.0;
};

inline constexpr double kMinConcaveT = 1.0 + 1e-6;

inline void validate_concavity(double t) {
  if (!std::isfinite(t) || t < kMinConcaveT) {
    throw Error(ErrorCode::ConcavityDomain,
                "influence exponent t must be at least " + std::to_string(kMinConcaveT) +
                    " (t = 1 is the linear setting); got " + std::to_string(t));
  }
}

// Budget split without per-node caps. The first-order conditions give the
// power-proportional rule x_i proportional to s_i^(t/(t-1)) over the
// positive-score nodes, hence the invariant x_i / x_j = (s_i/s_j)^(t/(t-1)).
inline Allocation concave_unbounded(const Eigen::VectorXd& scores, double budget, double t) {
  validate_concavity(t);
  detail::require_budget(budget, "budget");
  Allocation a{Eigen::VectorXd::Zero(scores.size()), budget, std::nullopt};
  if (scores.size() == 0 || budget == 0.0) return a;

  const double smax = scores.maxCoeff();
  if (smax <= 0.0) return a;
  const double p = t / (t - 1.0);
  // Scores are scaled by their maximum before powering: p blows up as t drops
  // toward 1 and raw powers would overflow long before the shares do.
  double total = 0.0;
  for (int i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) total += std::pow(scores[i] / smax, p);
  }
  for (int i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) a.amounts[i] = budget * std::pow(scores[i] / smax, p) / total;
  }
  return a;
}

struct ConcaveBoundedResult {
  Allocation allocation;
  // Lagrange multiplier of the budget constraint: interior nodes satisfy
  // s_i / (t * x_i^((t-1)/t)) = gamma; saturated nodes have s_i >= t*gamma.
  // Zero when the caps absorb every positive-score node before the budget
  // binds (fewer positive scores than budget units).
  double gamma = 0.0;
};

// Budget split with per-node cap one. Nodes split into saturated (x = 1),
// interior (power rule), and unfunded (s <= 0); the multiplier gamma makes
// the interior mass use exactly the budget left over by the saturated set.
// The saturated-set size k is found by walking prefixes of the descending
// score order and accepting the unique self-consistent one: each candidate k
// yields t*gamma = (sum_interior s^p / (budget-k))^(1/p), and consistency
// demands s > t*gamma exactly on the prefix. A monotone bisection on the
// equivalent fill function sum_i min((s_i/(t*gamma))^p, 1) backs the prefix
// walk up if floating point leaves no prefix consistent.
inline ConcaveBoundedResult concave_bounded(const Eigen::VectorXd& scores, double budget,
                                            double t) {
  validate_concavity(t);
  detail::require_budget(budget, "budget");
  const int n = static_cast<int>(scores.size());
  ConcaveBoundedResult result;
  result.allocation = Allocation{Eigen::VectorXd::Zero(n), budget, 1.0};
  Eigen::VectorXd& x = result.allocation.amounts;

  std::vector<int> pos;
  for (int i = 0; i < n; ++i) {
    if (scores[i] > 0.0) pos.push_back(i);
  }
  if (pos.empty() || budget == 0.0) return result;

  // Caps swallow everything: every positive-score node saturates and some
  // budget stays unused (gamma = 0; investing elsewhere cannot help).
  if (static_cast<double>(pos.size()) <= budget) {
    for (int i : pos) x[i] = 1.0;
    return result;
  }

  std::sort(pos.begin(), pos.end(), [&](int a, int b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  });
  const int m = static_cast<int>(pos.size());
  const double p = t / (t - 1.0);
  const double smax = scores[pos.front()];

  // Suffix sums of (s/smax)^p over the sorted positive scores.
  std::vector<double> suffix(m + 1, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] + std::pow(scores[pos[i]] / smax, p);
  }

  const int max_saturated = static_cast<int>(std::min<double>(m - 1, budget));
  for (int k = 0; k <= max_saturated; ++k) {
    const double target = budget - k;  // interior mass; positive since k < budget or k == budget handled below
    if (target <= 0.0) break;
    const double tgamma = smax * std::pow(suffix[k] / target, 1.0 / p);
    const bool saturated_ok = k == 0 || scores[pos[k - 1]] > tgamma;
    const bool interior_ok = scores[pos[k]] <= tgamma;
    if (!saturated_ok || !interior_ok) continue;

    for (int i = 0; i < k; ++i) x[pos[i]] = 1.0;
    // Normalizing inside the interior block keeps the budget exact.
    for (int i = k; i < m; ++i) {
      x[pos[i]] = target * std::pow(scores[pos[i]] / smax, p) / suffix[k];
    }
    result.gamma = tgamma / t;
    return result;
  }

  // Floating-point corner: fall back to bisection on the fill function.
  const auto fill = [&](double tgamma) {
    double total = 0.0;
    for (int i : pos) total += std::min(std::pow(scores[i] / tgamma, p), 1.0);
    return total;
  };
  double lo = smax, hi = smax;
  while (fill(lo) < budget) lo *= 0.5;
  while (fill(hi) > budget) hi *= 2.0;
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (fill(mid) >= budget ? lo : hi) = mid;
  }
  const double tgamma = 0.5 * (lo + hi);
  for (int i : pos) x[i] = std::min(std::pow(scores[i] / tgamma, p), 1.0);
  result.gamma = tgamma / t;
  return result;
}

// Both camps under diminishing returns; the sides stay decoupled, so this is
// again order-independent. The long-run value feeds the effective influence
// x^(1/t) (not the raw spend) through the linear machinery.
inline GameOutcome concave_game(const Network& net, const Budgets& budgets, double t,
                                bool bounded) {
  validate_concavity(t);
  const Eigen::VectorXd sg = good_scores(net);
  const Eigen::VectorXd sb = bad_scores(net);

  GameOutcome out;
  if (bounded) {
    ConcaveBoundedResult gx = concave_bounded(sg, budgets.k_g, t);
    ConcaveBoundedResult gy = concave_bounded(sb, budgets.k_b, t);
    out.x = std::move(gx.allocation);
    out.y = std::move(gy.allocation);
    out.meta["gamma_good"] = gx.gamma;
    out.meta["gamma_bad"] = gy.gamma;
  } else {
    out.x = concave_unbounded(sg, budgets.k_g, t);
    out.y = concave_unbounded(sb, budgets.k_b, t);
  }

  const auto effective = [t](const Eigen::VectorXd& v) {
    Eigen::VectorXd e(v.size());
    for (int i = 0; i < v.size(); ++i) e[i] = std::pow(v[i], 1.0 / t);
    return e;
  };
  out.value = opinion_sum(net, effective(out.x.amounts), effective(out.y.amounts));
  out.meta["t"] = t;
  return out;
}

}  // namespace campopt

#endif  // CAMPOPT_STRATEGIES_CONCAVE_HPP_
