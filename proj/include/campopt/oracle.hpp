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

#ifndef CAMPOPT_ORACLE_HPP_
#define CAMPOPT_ORACLE_HPP_

// Small brute-force reference solvers used to cross-check the closed-form and
// greedy strategies. Everything here searches from first principles (dense
// inverses, scalar update loops, exhaustive enumeration) and stays independent
// of the production solver code on purpose: a bug shared between the two
// sides would otherwise cancel out in tests. One deliberate exception: the
// integer enumeration scores profiles through the library's own opinion_sum,
// because its consumers compare optima for bitwise equality, and that is only
// meaningful when both sides evaluate a profile with identical arithmetic.
// The search over all strategy pairs remains exhaustive and shares nothing
// with the threshold construction it checks.

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/network.hpp"

namespace campopt {

struct GridSearchResult {
  Eigen::VectorXd best;
  double value = -std::numeric_limits<double>::infinity();
};

// Exhaustive search over allocations whose entries are multiples of
// `resolution` in [0, cap] with a total of at most `budget`. The objective
// callback may return -infinity to carve additional feasibility constraints
// (e.g. a deviation ball) out of the box. Ties keep the lexicographically
// first allocation. Intended for n <= 5; refuses grids beyond 1e8 points.
inline GridSearchResult grid_search_allocation(
    int n, double budget, double cap, double resolution,
    const std::function<double(const Eigen::VectorXd&)>& objective) {
  if (n <= 0 || n > 5) {
    throw Error(ErrorCode::GridTooLarge, "grid search supports 1..5 nodes, got " +
                                             std::to_string(n));
  }
  if (!(resolution > 0.0) || !(cap >= 0.0) || !(budget >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid search needs positive resolution "
                                            "and nonnegative cap/budget");
  }
  const double per_node = std::min(cap, budget);
  const long long levels = static_cast<long long>(per_node / resolution + 1e-9) + 1;
  double points = 1.0;
  for (int i = 0; i < n; ++i) points *= static_cast<double>(levels);
  if (points > 1e8) {
    throw Error(ErrorCode::GridTooLarge,
                "grid would hold " + std::to_string(points) + " points");
  }

  GridSearchResult result;
  result.best = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);

  const std::function<void(int, double)> recurse = [&](int idx, double left) {
    if (idx == n) {
      const double v = objective(x);
      if (v > result.value) {
        result.value = v;
        result.best = x;
      }
      return;
    }
    const long long max_level =
        std::min(levels - 1, static_cast<long long>((left + 1e-12) / resolution));
    for (long long l = 0; l <= max_level; ++l) {
      x[idx] = static_cast<double>(l) * resolution;
      recurse(idx + 1, left - x[idx]);
    }
    x[idx] = 0.0;
  };
  recurse(0, budget);
  return result;
}

namespace oracle_detail {

// Dense inverse by Gauss-Jordan with partial pivoting; written out by hand so
// the oracle does not share a solver path with the production code.
inline Eigen::MatrixXd dense_inverse(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
  for (int col = 0; col < n; ++col) {
    int p = col;
    for (int i = col + 1; i < n; ++i) {
      if (std::abs(a(i, col)) > std::abs(a(p, col))) p = i;
    }
    if (std::abs(a(p, col)) < 1e-14) {
      throw Error(ErrorCode::SolveFailure, "singular matrix in oracle inverse");
    }
    a.row(col).swap(a.row(p));
    inv.row(col).swap(inv.row(p));
    const double d = a(col, col);
    a.row(col) /= d;
    inv.row(col) /= d;
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const double f = a(i, col);
      if (f == 0.0) continue;
      a.row(i) -= f * a.row(col);
      inv.row(i) -= f * inv.row(col);
    }
  }
  return inv;
}

}  // namespace oracle_detail

struct IntegerCccResult {
  double maxmin = 0.0;
  Eigen::VectorXd maxmin_x, maxmin_y;  // leader profile and the follower reply
  double minmax = 0.0;
  Eigen::VectorXd minmax_x, minmax_y;
};

// Exact Stackelberg values of the shared-capacity game (x + y <= 1 per node)
// for integer budgets on tiny instances: enumerate every binary leader
// profile and every binary follower reply. Binary profiles suffice because
// the follower's problem is a unit-capacity knapsack LP with integer data
// (its vertices are 0/1) and the leader's optimum is attained at such a
// vertex as well. Pairs are scored through opinion_sum — see the header
// comment for why the evaluation (and only it) is shared.
inline IntegerCccResult enumerate_integer_ccc(const Network& net, const Budgets& budgets) {
  const int n = net.n();
  if (n > 6) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact enumeration supports up to 6 nodes, got " + std::to_string(n));
  }
  const auto as_count = [](double k, const char* name) {
    if (!(k >= 0.0) || std::abs(k - std::round(k)) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(name) + " must be a nonnegative integer for enumeration");
    }
    return static_cast<int>(std::round(k));
  };
  const int kg = as_count(budgets.k_g, "k_g");
  const int kb = as_count(budgets.k_b, "k_b");

  const auto value_of = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return opinion_sum(net, x, y);
  };

  const auto profile = [n](std::uint32_t bits) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (bits & (1u << i)) v[i] = 1.0;
    }
    return v;
  };

  IntegerCccResult result;
  bool first_outer = true;
  // Leader = good camp: max over x of min over feasible y.
  for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
    if (static_cast<int>(std::popcount(xb)) > kg) continue;
    const Eigen::VectorXd x = profile(xb);
    double inner = std::numeric_limits<double>::infinity();
    Eigen::VectorXd inner_y;
    for (std::uint32_t yb = 0; yb < (1u << n); ++yb) {
      if ((yb & xb) != 0 || static_cast<int>(std::popcount(yb)) > kb) continue;
      const Eigen::VectorXd y = profile(yb);
      const double v = value_of(x, y);
      if (v < inner) {
        inner = v;
        inner_y = y;
      }
    }
    if (first_outer || inner > result.maxmin) {
      first_outer = false;
      result.maxmin = inner;
      result.maxmin_x = x;
      result.maxmin_y = inner_y;
    }
  }
  // Leader = bad camp: min over y of max over feasible x.
  first_outer = true;
  for (std::uint32_t yb = 0; yb < (1u << n); ++yb) {
    if (static_cast<int>(std::popcount(yb)) > kb) continue;
    const Eigen::VectorXd y = profile(yb);
    double inner = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd inner_x;
    for (std::uint32_t xb = 0; xb < (1u << n); ++xb) {
      if ((xb & yb) != 0 || static_cast<int>(std::popcount(xb)) > kg) continue;
      const Eigen::VectorXd x = profile(xb);
      const double v = value_of(x, y);
      if (v > inner) {
        inner = v;
        inner_x = x;
      }
    }
    if (first_outer || inner < result.minmax) {
      first_outer = false;
      result.minmax = inner;
      result.minmax_x = inner_x;
      result.minmax_y = y;
    }
  }
  return result;
}

// Opinions after exactly `tau` synchronous updates, computed with plain
// scalar loops over an edge list (no shared code with iterate_dynamics).
inline Eigen::VectorXd finite_horizon_opinion(const Network& net, const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& y, int tau) {
  const int n = net.n();
  if (x.size() != n || y.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "allocation vectors must match the node count");
  }
  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> entries;
  entries.reserve(net.w().nonZeros());
  for (int outer = 0; outer < net.w().outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(net.w(), outer); it; ++it) {
      entries.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
    }
  }

  std::vector<double> v(n), next(n);
  for (int i = 0; i < n; ++i) v[i] = net.bias()[i];
  for (int step = 0; step < tau; ++step) {
    for (int i = 0; i < n; ++i) {
      next[i] = net.self_weight()[i] * net.bias()[i] + net.good_weight()[i] * x[i] -
                net.bad_weight()[i] * y[i];
    }
    for (const Entry& e : entries) next[e.row] += e.value * v[e.col];
    v.swap(next);
  }
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = v[i];
  return out;
}

}  // namespace campopt

#endif  // CAMPOPT_ORACLE_HPP_
