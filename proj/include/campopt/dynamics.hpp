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

#ifndef CAMPOPT_DYNAMICS_HPP_
#define CAMPOPT_DYNAMICS_HPP_

#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "campopt/errors.hpp"
#include "campopt/network.hpp"

namespace campopt {

inline constexpr double kSolveTol = 1e-10;            // relative residual target
inline constexpr double kDefaultTrajectoryTol = 1e-8;
inline constexpr int kSparseLuMaxNodes = 5000;

// Influence score r_i of node i: how much one unit of persistent external
// signal at node i moves the long-run opinion sum. Solves (I - w^T) r = 1.
// For nonnegative w every score is at least one (a node carries at least its
// own unit of signal).
struct InfluenceVector {
  Eigen::VectorXd r;
  double residual_norm = 0.0;  // inf-norm of 1 - (I - w^T) r
};

struct Trajectory {
  std::vector<Eigen::VectorXd> states;  // states[tau] = opinions after tau updates
  bool converged = false;
  int steps = 0;  // updates applied; states.size() == steps + 1
};

namespace detail {

// Solves (I - M) z = rhs for substochastic sparse M with a mandatory residual
// check. Direct sparse LU up to kSparseLuMaxNodes nodes; larger systems use
// the geometric fixed point z <- M z + rhs (convergent because the spectral
// radius of M is below one) with a conjugate-style fallback if it stagnates.
inline Eigen::VectorXd solve_i_minus(const Eigen::SparseMatrix<double>& m,
                                     const Eigen::VectorXd& rhs) {
  const int n = static_cast<int>(rhs.size());
  Eigen::SparseMatrix<double> a(n, n);
  a.setIdentity();
  a -= m;

  Eigen::VectorXd z;
  if (n <= kSparseLuMaxNodes) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() == Eigen::Success) z = lu.solve(rhs);
  }
  const double rhs_scale = rhs.size() ? rhs.cwiseAbs().maxCoeff() : 0.0;
  const auto residual_ok = [&](const Eigen::VectorXd& cand) {
    if (cand.size() != n || !cand.allFinite()) return false;
    const double res = (rhs - cand + m * cand).cwiseAbs().maxCoeff();
    const double scale = 1.0 + std::max(rhs_scale, cand.cwiseAbs().maxCoeff());
    return res <= kSolveTol * scale;
  };
  if (z.size() == n && residual_ok(z)) return z;

  z = rhs;
  Eigen::VectorXd next(n);
  for (int iter = 0; iter < 200000; ++iter) {
    next.noalias() = m * z;
    next += rhs;
    const double delta = (next - z).cwiseAbs().maxCoeff();
    z.swap(next);
    if (delta <= 0.25 * kSolveTol * (1.0 + z.cwiseAbs().maxCoeff())) break;
  }
  if (residual_ok(z)) return z;

  Eigen::BiCGSTAB<Eigen::SparseMatrix<double>> solver;
  solver.setTolerance(1e-14);
  solver.setMaxIterations(20L * n + 1000);
  solver.compute(a);
  z = solver.solveWithGuess(rhs, z);
  if (residual_ok(z)) return z;

  throw Error(ErrorCode::SolveFailure,
              "equilibrium solve missed the residual target on an n=" + std::to_string(n) +
                  " system; the network should not have validated");
}

inline void check_allocation_sizes(const Network& net, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) {
  if (x.size() != net.n() || y.size() != net.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "allocation vectors must have one entry per node");
  }
}

}  // namespace detail

namespace detail {
// Fills the per-network cache on first use; later calls (and copies of the
// network) reuse the stored scores.
inline const Network::InfluenceCell& influence_cell(const Network& net) {
  const auto& cell = net.influence_cache();
  std::call_once(cell->once, [&] {
    const Eigen::SparseMatrix<double> wt = net.w().transpose();
    cell->r = detail::solve_i_minus(wt, Eigen::VectorXd::Ones(net.n()));
    cell->residual =
        (Eigen::VectorXd::Ones(net.n()) - cell->r + wt * cell->r).cwiseAbs().maxCoeff();
  });
  return *cell;
}
}  // namespace detail

inline InfluenceVector influence_vector(const Network& net) {
  const auto& cell = detail::influence_cell(net);
  return InfluenceVector{cell.r, cell.residual};
}

// Per-node decision scores: one unit of camp investment at node i shifts the
// long-run opinion sum by +r_i * wg_i (good camp) or -r_i * wb_i (bad camp).
inline Eigen::VectorXd good_scores(const Network& net) {
  return detail::influence_cell(net).r.cwiseProduct(net.good_weight());
}
inline Eigen::VectorXd bad_scores(const Network& net) {
  return detail::influence_cell(net).r.cwiseProduct(net.bad_weight());
}

inline Eigen::VectorXd forcing_term(const Network& net, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y) {
  return net.self_weight().cwiseProduct(net.bias()) + net.good_weight().cwiseProduct(x) -
         net.bad_weight().cwiseProduct(y);
}

// Long-run opinions: v = (I - w)^{-1} (w0 .* bias + wg .* x - wb .* y).
inline Eigen::VectorXd steady_state(const Network& net, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y) {
  detail::check_allocation_sizes(net, x, y);
  return detail::solve_i_minus(net.w(), forcing_term(net, x, y));
}

// Long-run opinion sum without forming the opinion vector:
// sum_i r_i * (w0_i bias_i + wg_i x_i - wb_i y_i).
inline double opinion_sum(const Network& net, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) {
  detail::check_allocation_sizes(net, x, y);
  return detail::influence_cell(net).r.dot(forcing_term(net, x, y));
}

// The investment-independent part of the opinion sum: sum_i r_i w0_i bias_i.
inline double bias_contribution(const Network& net) {
  return detail::influence_cell(net).r.dot(net.self_weight().cwiseProduct(net.bias()));
}

// Synchronous updates from the initial opinions; stops once the step-to-step
// change drops to `tol` (inf-norm) or after tau_max updates.
inline Trajectory iterate_dynamics(const Network& net, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y,
                                   double tol = kDefaultTrajectoryTol, int tau_max = 1000) {
  detail::check_allocation_sizes(net, x, y);
  if (tau_max < 0) throw Error(ErrorCode::InvalidArgument, "tau_max must be nonnegative");

  Trajectory out;
  const Eigen::VectorXd forcing = forcing_term(net, x, y);
  Eigen::VectorXd v = net.bias();
  out.states.push_back(v);
  for (int tau = 1; tau <= tau_max; ++tau) {
    Eigen::VectorXd next = net.w() * v;
    next += forcing;
    const double delta = (next - v).cwiseAbs().maxCoeff();
    v.swap(next);
    out.states.push_back(v);
    out.steps = tau;
    if (delta <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace campopt

#endif  // CAMPOPT_DYNAMICS_HPP_
