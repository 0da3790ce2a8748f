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

#ifndef CAMPOPT_ROBUST_HPP_
#define CAMPOPT_ROBUST_HPP_

// Worst-case-optimal good-camp strategy when the camp-facing weights are only
// known to lie in a polytope U = {u : Eu <= f, u >= 0} over the stacked
// parameter vector u = (w_11^0, w_1g, w_1b, w_22^0, w_2g, w_2b, ...). The
// network's internal weights w (and hence the influence vector r) stay
// certain. The good camp solves
//
//   max_{x >= 0, sum x <= k_g}  min_{u in U}
//     sum_i r_i w_ii0 v_i0 + sum_i r_i w_ig x_i - k_b * max_i r_i w_ib,
//
// i.e. nature picks the least favorable admissible weights and the bad camp
// then drops its whole budget on its best node. The inner max_i is handled by
// conditioning on which node i0 tops the bad-camp score order (plus a dummy
// "no positive score" case d): over each condition the inner problem is an
// LP, and LP duality turns the whole thing into one monolithic linear program
// in (rho, x, {alpha_i0}, {beta_i0 i}) — `rho` being the guaranteed value.
//
// The monolith is the definition of correctness here and is solved directly
// for small instances. It grows quadratically, so for larger networks the
// same optimum is found by delayed cut generation: a small master LP over
// (rho, x) collects outer cuts rho <= value(u*) from exact inner minimizations
// at candidate allocations. For the structured box+sum polytope the inner
// problem additionally separates per camp (box and sum rows never couple
// w_g with w_b), which reduces each round to one small LP for the w_g side
// plus per-condition w_b LPs that do not depend on x and are solved once.
// All paths return the same rho, allocation, and per-condition dual
// certificates; the tests cross-check them against each other.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/lp.hpp"
#include "campopt/network.hpp"
#include "campopt/rng.hpp"
#include "campopt/strategies_basic.hpp"

namespace campopt {

// Structured "fractional error" uncertainty: every node's camp weight may
// deviate by a factor eps_l from its nominal (hat) value, while each camp's
// network-wide total may deviate by at most a factor eps_o. The self
// weights w_ii0 are certain. The sum rows matter only when eps_o < eps_l;
// otherwise the box already implies them.
struct BoxSumParams {
  Eigen::VectorXd hat_wg;
  Eigen::VectorXd hat_wb;
  double eps_l = 0.0;
  double eps_o = 0.0;
};

// Polytope {u : Eu <= f, u >= 0} over the stacked parameters. When built by
// build_box_sum_polytope, `box_sum` carries the structured description; the
// (E, f) form is always present and is what generic consumers use. Rows for
// pinning the certain w_ii0 components are appended by the solver (they need
// the nominal self weights, which live with the network, not the polytope).
struct UncertaintyPolytope {
  Eigen::MatrixXd E;
  Eigen::VectorXd f;
  std::optional<BoxSumParams> box_sum;
};

namespace detail {

// Stacked-parameter column layout.
inline int ucol_self(int i) { return 3 * i; }
inline int ucol_good(int i) { return 3 * i + 1; }
inline int ucol_bad(int i) { return 3 * i + 2; }

}  // namespace detail

// Rows, in order: per node i the four box rows (w_ig upper, w_ig lower,
// w_ib upper, w_ib lower), then the four sum rows (good upper, good lower,
// bad upper, bad lower). 4n + 4 rows over 3n columns.
inline UncertaintyPolytope build_box_sum_polytope(const Eigen::VectorXd& hat_wg,
                                                  const Eigen::VectorXd& hat_wb, double eps_l,
                                                  double eps_o) {
  const int n = static_cast<int>(hat_wg.size());
  if (hat_wb.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "hat weight vectors must have equal length");
  }
  if (!std::isfinite(eps_l) || !std::isfinite(eps_o) || eps_l < 0.0 || eps_o < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "uncertainty levels must be finite and nonnegative");
  }
  if (hat_wg.minCoeff() < 0.0 || hat_wb.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "hat weights must be nonnegative");
  }

  UncertaintyPolytope poly;
  poly.E = Eigen::MatrixXd::Zero(4 * n + 4, 3 * n);
  poly.f = Eigen::VectorXd::Zero(4 * n + 4);
  for (int i = 0; i < n; ++i) {
    poly.E(4 * i + 0, detail::ucol_good(i)) = 1.0;
    poly.f[4 * i + 0] = (1.0 + eps_l) * hat_wg[i];
    poly.E(4 * i + 1, detail::ucol_good(i)) = -1.0;
    poly.f[4 * i + 1] = -(1.0 - eps_l) * hat_wg[i];
    poly.E(4 * i + 2, detail::ucol_bad(i)) = 1.0;
    poly.f[4 * i + 2] = (1.0 + eps_l) * hat_wb[i];
    poly.E(4 * i + 3, detail::ucol_bad(i)) = -1.0;
    poly.f[4 * i + 3] = -(1.0 - eps_l) * hat_wb[i];
  }
  const int s = 4 * n;
  for (int i = 0; i < n; ++i) {
    poly.E(s + 0, detail::ucol_good(i)) = 1.0;
    poly.E(s + 1, detail::ucol_good(i)) = -1.0;
    poly.E(s + 2, detail::ucol_bad(i)) = 1.0;
    poly.E(s + 3, detail::ucol_bad(i)) = -1.0;
  }
  poly.f[s + 0] = (1.0 + eps_o) * hat_wg.sum();
  poly.f[s + 1] = -(1.0 - eps_o) * hat_wg.sum();
  poly.f[s + 2] = (1.0 + eps_o) * hat_wb.sum();
  poly.f[s + 3] = -(1.0 - eps_o) * hat_wb.sum();

  poly.box_sum = BoxSumParams{hat_wg, hat_wb, eps_l, eps_o};
  return poly;
}

enum class RobustMethod { Auto, Monolith, CutGeneration };

// Dual certificate for one boundary condition i0: alpha prices the polytope
// rows (including appended w_ii0 pins), beta prices the score-order rows
// r_i w_ib <= r_i0 w_i0b (indexed by i; the i = i0 slot is identically zero,
// and for the dummy condition every i carries a row). inner_value = -f^T alpha
// is a certified lower bound on that condition's worst case at the returned
// allocation; it is tight for every binding condition, so the minimum over
// conditions equals worst_case_value. The cut-generation paths solve each
// condition exactly and report tight values throughout; the monolith is free
// to leave a slack condition's bound at rho.
struct RobustBlockDuals {
  int i0 = -1;  // -1 encodes the dummy condition d
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  double inner_value = 0.0;
};

struct RobustOutcome {
  Allocation x;
  double worst_case_value = 0.0;       // the LP's rho
  std::vector<int> feasible_set;       // N_f: viable boundary conditions, -1 last for d
  std::vector<RobustBlockDuals> duals;
  int cut_rounds = 0;                  // 0 when the monolith was solved directly
  RobustMethod method_used = RobustMethod::Monolith;
};

namespace detail {

struct AssembledPolytope {
  Eigen::MatrixXd E;
  Eigen::VectorXd f;
};

// The solver-facing constraint set: the polytope's own rows, plus equality
// pins w_ii0 = self_weight_i (as inequality pairs) when the polytope came
// from the structured builder and therefore treats self weights as certain.
inline AssembledPolytope assemble_polytope(const UncertaintyPolytope& poly,
                                           const Eigen::VectorXd& self_weight) {
  const int nu = static_cast<int>(poly.E.cols());
  if (nu % 3 != 0 || poly.f.size() != poly.E.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "polytope matrix must have 3n columns and matching rhs");
  }
  const int n = nu / 3;
  if (!poly.box_sum) {
    return AssembledPolytope{poly.E, poly.f};
  }
  if (self_weight.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "self weights must have length n");
  }
  const int m0 = static_cast<int>(poly.E.rows());
  AssembledPolytope out;
  out.E = Eigen::MatrixXd::Zero(m0 + 2 * n, nu);
  out.f = Eigen::VectorXd::Zero(m0 + 2 * n);
  out.E.topRows(m0) = poly.E;
  out.f.head(m0) = poly.f;
  for (int i = 0; i < n; ++i) {
    out.E(m0 + 2 * i + 0, ucol_self(i)) = 1.0;
    out.f[m0 + 2 * i + 0] = self_weight[i];
    out.E(m0 + 2 * i + 1, ucol_self(i)) = -1.0;
    out.f[m0 + 2 * i + 1] = -self_weight[i];
  }
  return out;
}

// Score-order rows for condition i0 over the stacked u: r_i w_ib <= r_i0
// w_i0b for all i != i0 (for the dummy, r_i w_ib <= 0 for all i). Returned
// in ascending i, which fixes the beta indexing everywhere.
inline std::vector<int> boundary_row_nodes(int n, int i0) {
  std::vector<int> nodes;
  for (int i = 0; i < n; ++i) {
    if (i != i0) nodes.push_back(i);
  }
  return nodes;
}

inline void fill_boundary_rows(Eigen::MatrixXd& A, Eigen::Index first_row,
                               const Eigen::VectorXd& r, int i0) {
  const int n = static_cast<int>(r.size());
  Eigen::Index row = first_row;
  for (int i : boundary_row_nodes(n, i0)) {
    A(row, ucol_bad(i)) = r[i];
    if (i0 >= 0) A(row, ucol_bad(i0)) -= r[i0];
    ++row;
  }
}

inline bool boundary_condition_feasible(const AssembledPolytope& ap, const Eigen::VectorXd& r,
                                        int i0) {
  const int n = static_cast<int>(r.size());
  const int mb = static_cast<int>(boundary_row_nodes(n, i0).size());
  LpProblem p;
  p.c = Eigen::VectorXd::Zero(3 * n);
  p.A = Eigen::MatrixXd::Zero(ap.E.rows() + mb, 3 * n);
  p.A.topRows(ap.E.rows()) = ap.E;
  fill_boundary_rows(p.A, ap.E.rows(), r, i0);
  p.b = Eigen::VectorXd::Zero(ap.E.rows() + mb);
  p.b.head(ap.E.rows()) = ap.f;
  p.G = Eigen::MatrixXd::Zero(0, 3 * n);
  p.h = Eigen::VectorXd::Zero(0);
  return solve_lp(p).status == LpStatus::Optimal;
}

}  // namespace detail

// The subset N_f of boundary conditions {0..n-1, d} whose constraint set
// intersects the polytope; the dummy d (encoded -1) is listed last. Only
// these conditions enter the robust LP — an empty condition would otherwise
// claim an infinitely good worst case.
inline std::vector<int> feasible_boundary_set(const Network& net,
                                              const UncertaintyPolytope& poly) {
  const detail::AssembledPolytope ap = detail::assemble_polytope(poly, net.self_weight());
  const Eigen::VectorXd& r = detail::influence_cell(net).r;
  std::vector<int> out;
  for (int i0 = 0; i0 < net.n(); ++i0) {
    if (detail::boundary_condition_feasible(ap, r, i0)) out.push_back(i0);
  }
  if (detail::boundary_condition_feasible(ap, r, -1)) out.push_back(-1);
  return out;
}

namespace detail {

// ---------------------------------------------------------------------------
// Monolithic LP (the correctness definition)
//
// Variables, in column order: rho (free), x (n), then per condition i0 in
// N_f order its alpha (one per assembled polytope row) and beta (one per
// score-order row). Rows per condition, with E_c denoting the assembled
// polytope column of parameter c:
//   (1) rho + f^T alpha <= 0
//   (2) for i != i0:  -alpha^T E_{ib} - r_i beta_i <= 0
//   (3) real i0 only: -alpha^T E_{i0 b} + r_i0 sum_i beta_i <= -k_b r_i0
//   (4) for all i:    -alpha^T E_{ig} - r_i x_i <= 0
//   (5) for all i:    -alpha^T E_{ii} <= r_i v_i0
// plus the single budget row sum x <= k_g. Rows (2)-(5) are dual feasibility
// of the inner minimization and row (1) is weak duality, so at the optimum
// rho equals the worst condition's inner value.
// ---------------------------------------------------------------------------

inline RobustOutcome solve_robust_monolith(const AssembledPolytope& ap,
                                           const Eigen::VectorXd& r, const Eigen::VectorXd& bias,
                                           const Budgets& budgets,
                                           const std::vector<int>& feasible) {
  const int n = static_cast<int>(r.size());
  const int m = static_cast<int>(ap.E.rows());

  int nv = 1 + n;
  int mrows = 1;
  std::vector<int> alpha_base(feasible.size()), beta_base(feasible.size());
  for (std::size_t b = 0; b < feasible.size(); ++b) {
    const int nb = static_cast<int>(boundary_row_nodes(n, feasible[b]).size());
    alpha_base[b] = nv;
    nv += m;
    beta_base[b] = nv;
    nv += nb;
    mrows += 1 + nb + (feasible[b] >= 0 ? 1 : 0) + n + n;
  }

  LpProblem p;
  p.c = Eigen::VectorXd::Zero(nv);
  p.c[0] = 1.0;
  p.A = Eigen::MatrixXd::Zero(mrows, nv);
  p.b = Eigen::VectorXd::Zero(mrows);
  p.G = Eigen::MatrixXd::Zero(0, nv);
  p.h = Eigen::VectorXd::Zero(0);
  p.nonneg.assign(nv, true);
  p.nonneg[0] = false;

  p.A.row(0).segment(1, n).setOnes();
  p.b[0] = budgets.k_g;

  int row = 1;
  for (std::size_t b = 0; b < feasible.size(); ++b) {
    const int i0 = feasible[b];
    const std::vector<int> bnodes = boundary_row_nodes(n, i0);
    const int ab = alpha_base[b];
    const int bb = beta_base[b];

    p.A(row, 0) = 1.0;
    p.A.row(row).segment(ab, m) = ap.f.transpose();
    ++row;

    for (std::size_t k = 0; k < bnodes.size(); ++k) {
      const int i = bnodes[k];
      p.A.row(row).segment(ab, m) = -ap.E.col(ucol_bad(i)).transpose();
      p.A(row, bb + static_cast<int>(k)) = -r[i];
      ++row;
    }

    if (i0 >= 0) {
      p.A.row(row).segment(ab, m) = -ap.E.col(ucol_bad(i0)).transpose();
      for (std::size_t k = 0; k < bnodes.size(); ++k) {
        p.A(row, bb + static_cast<int>(k)) = r[i0];
      }
      p.b[row] = -budgets.k_b * r[i0];
      ++row;
    }

    for (int i = 0; i < n; ++i) {
      p.A.row(row).segment(ab, m) = -ap.E.col(ucol_good(i)).transpose();
      p.A(row, 1 + i) = -r[i];
      ++row;
    }
    for (int i = 0; i < n; ++i) {
      p.A.row(row).segment(ab, m) = -ap.E.col(ucol_self(i)).transpose();
      p.b[row] = r[i] * bias[i];
      ++row;
    }
  }

  const LpSolution sol = solve_lp(p);
  if (sol.status != LpStatus::Optimal) {
    throw Error(sol.status == LpStatus::Infeasible ? ErrorCode::InfeasibleModel
                                                   : ErrorCode::SolveFailure,
                "robust master LP terminated " + std::string(to_string(sol.status)));
  }

  RobustOutcome out;
  out.worst_case_value = sol.z[0];
  out.x = Allocation{sol.z.segment(1, n), budgets.k_g, std::nullopt};
  out.feasible_set = feasible;
  out.method_used = RobustMethod::Monolith;
  for (std::size_t b = 0; b < feasible.size(); ++b) {
    RobustBlockDuals d;
    d.i0 = feasible[b];
    d.alpha = sol.z.segment(alpha_base[b], m);
    const std::vector<int> bnodes = boundary_row_nodes(n, feasible[b]);
    d.beta = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < bnodes.size(); ++k) {
      d.beta[bnodes[k]] = sol.z[beta_base[b] + static_cast<int>(k)];
    }
    d.inner_value = -ap.f.dot(d.alpha);
    out.duals.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cut generation
//
// Master over (rho, x): max rho subject to sum x <= k_g and accumulated cuts
// rho <= const_t + g_t^T x, each cut induced by an exact inner minimizer u*
// (the inner objective is linear in x once u is fixed, so every u* yields a
// valid over-estimator of the concave worst-case function).
// ---------------------------------------------------------------------------

struct Cut {
  double constant = 0.0;
  Eigen::VectorXd coeffs;
};

// One evaluation of the true worst case at a fixed allocation.
struct InnerEvaluation {
  double value = 0.0;  // min over conditions
  Cut cut;             // supporting cut from the worst condition's minimizer
};

// Exact inner minimization for one condition over the full stacked u.
// Returns the condition's value, the minimizer, and the duals mapped into
// (alpha, beta). Solved as max of the negated objective so the row duals are
// exactly the monolith's alpha/beta block.
struct GenericInnerResult {
  double value = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};

inline GenericInnerResult solve_inner_generic(const AssembledPolytope& ap,
                                              const Eigen::VectorXd& r,
                                              const Eigen::VectorXd& bias,
                                              const Eigen::VectorXd& x, double k_b, int i0) {
  const int n = static_cast<int>(r.size());
  const int m = static_cast<int>(ap.E.rows());
  const std::vector<int> bnodes = boundary_row_nodes(n, i0);
  const int mb = static_cast<int>(bnodes.size());

  Eigen::VectorXd cmin = Eigen::VectorXd::Zero(3 * n);
  for (int i = 0; i < n; ++i) {
    cmin[ucol_self(i)] = r[i] * bias[i];
    cmin[ucol_good(i)] = r[i] * x[i];
  }
  if (i0 >= 0) cmin[ucol_bad(i0)] = -k_b * r[i0];

  LpProblem p;
  p.c = -cmin;
  p.A = Eigen::MatrixXd::Zero(m + mb, 3 * n);
  p.A.topRows(m) = ap.E;
  fill_boundary_rows(p.A, m, r, i0);
  p.b = Eigen::VectorXd::Zero(m + mb);
  p.b.head(m) = ap.f;
  p.G = Eigen::MatrixXd::Zero(0, 3 * n);
  p.h = Eigen::VectorXd::Zero(0);

  const LpSolution sol = solve_lp(p);
  if (sol.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolveFailure,
                "inner worst-case LP for condition " + std::to_string(i0) + " terminated " +
                    std::string(to_string(sol.status)));
  }
  GenericInnerResult res;
  res.value = -sol.value;
  res.u = sol.z;
  res.alpha = sol.ineq_duals.head(m);
  res.beta = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < mb; ++k) res.beta[bnodes[k]] = sol.ineq_duals[m + k];
  return res;
}

inline Cut cut_from_minimizer(const Eigen::VectorXd& u, const Eigen::VectorXd& r,
                              const Eigen::VectorXd& bias, double k_b, int i0) {
  const int n = static_cast<int>(r.size());
  Cut cut;
  cut.coeffs = Eigen::VectorXd::Zero(n);
  cut.constant = 0.0;
  for (int i = 0; i < n; ++i) {
    cut.constant += r[i] * bias[i] * u[ucol_self(i)];
    cut.coeffs[i] = r[i] * u[ucol_good(i)];
  }
  if (i0 >= 0) cut.constant -= k_b * r[i0] * u[ucol_bad(i0)];
  return cut;
}

// ---------------------------------------------------------------------------
// Structured (box+sum) fast path pieces. Box rows, sum rows, and score-order
// rows never mix the w_g columns with the w_b columns, so the inner problem
// splits into a w_g minimization that depends on x but not on the condition,
// a per-condition w_b maximization independent of x, and the pinned w_ii0
// part, which is a constant with closed-form dual prices.
// ---------------------------------------------------------------------------

struct CampLp {
  Eigen::MatrixXd A;  // 2n box rows then 2 sum rows, over that camp's n weights
  Eigen::VectorXd b;
};

inline CampLp camp_constraints(const Eigen::VectorXd& hat, double eps_l, double eps_o) {
  const int n = static_cast<int>(hat.size());
  CampLp lp;
  lp.A = Eigen::MatrixXd::Zero(2 * n + 2, n);
  lp.b = Eigen::VectorXd::Zero(2 * n + 2);
  for (int i = 0; i < n; ++i) {
    lp.A(2 * i, i) = 1.0;
    lp.b[2 * i] = (1.0 + eps_l) * hat[i];
    lp.A(2 * i + 1, i) = -1.0;
    lp.b[2 * i + 1] = -(1.0 - eps_l) * hat[i];
  }
  lp.A.row(2 * n).setOnes();
  lp.b[2 * n] = (1.0 + eps_o) * hat.sum();
  lp.A.row(2 * n + 1).setConstant(-1.0);
  lp.b[2 * n + 1] = -(1.0 - eps_o) * hat.sum();
  return lp;
}

struct StructuredGoodResult {
  double value = 0.0;       // min over w_g of sum r_i x_i w_ig
  Eigen::VectorXd wg;       // a minimizer
  Eigen::VectorXd duals;    // row duals, box then sum order
};

inline StructuredGoodResult solve_structured_good(const CampLp& lp, const Eigen::VectorXd& r,
                                                  const Eigen::VectorXd& x) {
  LpProblem p;
  p.c = -(r.cwiseProduct(x));
  p.A = lp.A;
  p.b = lp.b;
  p.G = Eigen::MatrixXd::Zero(0, r.size());
  p.h = Eigen::VectorXd::Zero(0);
  const LpSolution sol = solve_lp(p);
  if (sol.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolveFailure, "good-weight worst-case LP terminated " +
                                             std::string(to_string(sol.status)));
  }
  return StructuredGoodResult{-sol.value, sol.z, sol.ineq_duals};
}

struct StructuredBadResult {
  bool feasible = false;
  double value = 0.0;       // min over w_b of -k_b r_i0 w_i0b under the condition
  Eigen::VectorXd wb;
  Eigen::VectorXd duals;    // box+sum duals followed by score-order duals
};

inline StructuredBadResult solve_structured_bad(const CampLp& lp, const Eigen::VectorXd& r,
                                                double k_b, int i0) {
  const int n = static_cast<int>(r.size());
  const std::vector<int> bnodes = boundary_row_nodes(n, i0);
  const int mb = static_cast<int>(bnodes.size());
  LpProblem p;
  p.c = Eigen::VectorXd::Zero(n);
  if (i0 >= 0) p.c[i0] = k_b * r[i0];
  p.A = Eigen::MatrixXd::Zero(lp.A.rows() + mb, n);
  p.A.topRows(lp.A.rows()) = lp.A;
  for (int k = 0; k < mb; ++k) {
    const int i = bnodes[k];
    p.A(lp.A.rows() + k, i) = r[i];
    if (i0 >= 0) p.A(lp.A.rows() + k, i0) -= r[i0];
  }
  p.b = Eigen::VectorXd::Zero(lp.A.rows() + mb);
  p.b.head(lp.A.rows()) = lp.b;
  p.G = Eigen::MatrixXd::Zero(0, n);
  p.h = Eigen::VectorXd::Zero(0);

  const LpSolution sol = solve_lp(p);
  StructuredBadResult res;
  if (sol.status == LpStatus::Infeasible) return res;
  if (sol.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolveFailure, "bad-weight worst-case LP terminated " +
                                             std::string(to_string(sol.status)));
  }
  res.feasible = true;
  res.value = -sol.value;
  res.wb = sol.z;
  res.duals = sol.ineq_duals;
  return res;
}

// Maps the split duals back onto the assembled-row layout of one condition.
// Row order recap — box rows 4i..4i+3 (good hi/lo, bad hi/lo), four sum rows,
// then the 2n pin rows; the pin prices are the closed-form r_i v_i0 split by
// sign (lower pin for positive bias, upper pin for negative).
inline RobustBlockDuals assemble_structured_duals(int n, int i0,
                                                  const StructuredGoodResult& good,
                                                  const StructuredBadResult& bad,
                                                  const Eigen::VectorXd& r,
                                                  const Eigen::VectorXd& bias,
                                                  double const_w0) {
  RobustBlockDuals d;
  d.i0 = i0;
  d.alpha = Eigen::VectorXd::Zero(6 * n + 4);
  for (int i = 0; i < n; ++i) {
    d.alpha[4 * i + 0] = good.duals[2 * i];
    d.alpha[4 * i + 1] = good.duals[2 * i + 1];
    d.alpha[4 * i + 2] = bad.duals[2 * i];
    d.alpha[4 * i + 3] = bad.duals[2 * i + 1];
  }
  d.alpha[4 * n + 0] = good.duals[2 * n];
  d.alpha[4 * n + 1] = good.duals[2 * n + 1];
  d.alpha[4 * n + 2] = bad.duals[2 * n];
  d.alpha[4 * n + 3] = bad.duals[2 * n + 1];
  for (int i = 0; i < n; ++i) {
    const double price = r[i] * bias[i];
    if (price >= 0.0) {
      d.alpha[4 * n + 4 + 2 * i + 1] = price;
    } else {
      d.alpha[4 * n + 4 + 2 * i] = -price;
    }
  }
  d.beta = Eigen::VectorXd::Zero(n);
  const std::vector<int> bnodes = boundary_row_nodes(n, i0);
  for (std::size_t k = 0; k < bnodes.size(); ++k) {
    d.beta[bnodes[k]] = bad.duals[2 * n + 2 + static_cast<int>(k)];
  }
  d.inner_value = const_w0 + good.value + bad.value;
  return d;
}

inline constexpr int kMaxCutRounds = 300;

// Kelley loop shared by both cut paths: `evaluate` returns the exact worst
// case and a supporting cut at a given allocation.
template <typename Evaluator>
inline std::pair<Eigen::VectorXd, double> run_cut_loop(int n, double k_g,
                                                       const Eigen::VectorXd& x0,
                                                       Evaluator&& evaluate, int& rounds_out) {
  std::vector<Cut> cuts;
  Eigen::VectorXd x_best = x0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  Eigen::VectorXd x_probe = x0;
  for (int round = 0; round < kMaxCutRounds; ++round) {
    rounds_out = round + 1;
    const InnerEvaluation eval = evaluate(x_probe);
    if (eval.value > lower) {
      lower = eval.value;
      x_best = x_probe;
    }
    cuts.push_back(eval.cut);

    LpProblem master;
    const int nv = 1 + n;
    master.c = Eigen::VectorXd::Zero(nv);
    master.c[0] = 1.0;
    master.A = Eigen::MatrixXd::Zero(1 + cuts.size(), nv);
    master.b = Eigen::VectorXd::Zero(1 + cuts.size());
    master.A.row(0).segment(1, n).setOnes();
    master.b[0] = k_g;
    for (std::size_t t = 0; t < cuts.size(); ++t) {
      master.A(1 + t, 0) = 1.0;
      master.A.row(1 + t).segment(1, n) = -cuts[t].coeffs.transpose();
      master.b[1 + t] = cuts[t].constant;
    }
    master.G = Eigen::MatrixXd::Zero(0, nv);
    master.h = Eigen::VectorXd::Zero(0);
    master.nonneg.assign(nv, true);
    master.nonneg[0] = false;

    const LpSolution sol = solve_lp(master);
    if (sol.status != LpStatus::Optimal) {
      throw Error(ErrorCode::SolveFailure, "cut-generation master LP terminated " +
                                               std::string(to_string(sol.status)));
    }
    upper = std::min(upper, sol.value);
    if (upper - lower <= 1e-9 * (1.0 + std::abs(lower) + std::abs(upper))) {
      return {x_best, lower};
    }
    x_probe = sol.z.segment(1, n);
  }
  // `lower` is an exact inner evaluation, so x_best stays a valid (merely
  // possibly suboptimal) choice; accept it when the residual gap is small.
  if (upper - lower <= 1e-6 * (1.0 + std::abs(lower) + std::abs(upper))) {
    return {x_best, lower};
  }
  throw Error(ErrorCode::SolveFailure, "cut generation failed to converge within " +
                                           std::to_string(kMaxCutRounds) + " rounds");
}

}  // namespace detail

// Worst-case-optimal good-camp allocation over the polytope. `bias` and
// `self_weight` default to the skeleton's own vectors in the convenience
// overload below; r is always computed from the skeleton's internal weights.
// The returned duals certify, per boundary condition, the inner worst case
// at the returned allocation.
inline RobustOutcome robust_good_strategy(const Network& skeleton,
                                          const UncertaintyPolytope& poly, const Budgets& budgets,
                                          const Eigen::VectorXd& bias,
                                          const Eigen::VectorXd& self_weight,
                                          RobustMethod method = RobustMethod::Auto) {
  detail::require_budget(budgets.k_g, "k_g");
  detail::require_budget(budgets.k_b, "k_b");
  const int n = skeleton.n();
  if (bias.size() != n || self_weight.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "bias and self weights must have length n");
  }
  if (poly.E.cols() != 3 * n) {
    throw Error(ErrorCode::DimensionMismatch, "polytope is over " +
                                                  std::to_string(poly.E.cols() / 3) +
                                                  " nodes, network has " + std::to_string(n));
  }
  const detail::AssembledPolytope ap = detail::assemble_polytope(poly, self_weight);
  const Eigen::VectorXd& r = detail::influence_cell(skeleton).r;

  if (method == RobustMethod::Auto) {
    method = n <= 8 ? RobustMethod::Monolith : RobustMethod::CutGeneration;
  }

  if (method == RobustMethod::Monolith) {
    std::vector<int> feasible;
    for (int i0 = 0; i0 < n; ++i0) {
      if (detail::boundary_condition_feasible(ap, r, i0)) feasible.push_back(i0);
    }
    if (detail::boundary_condition_feasible(ap, r, -1)) feasible.push_back(-1);
    if (feasible.empty()) {
      throw Error(ErrorCode::InfeasibleModel, "no boundary condition is feasible; the polytope is empty");
    }
    return detail::solve_robust_monolith(ap, r, bias, budgets, feasible);
  }

  RobustOutcome out;
  out.method_used = RobustMethod::CutGeneration;
  const Eigen::VectorXd x0 =
      poly.box_sum ? optimal_unbounded(r.cwiseProduct(poly.box_sum->hat_wg), budgets.k_g).amounts
                   : Eigen::VectorXd::Zero(n);

  if (poly.box_sum) {
    // Separable fast path: per-condition w_b problems once, w_g problem per round.
    const detail::CampLp good_lp =
        detail::camp_constraints(poly.box_sum->hat_wg, poly.box_sum->eps_l, poly.box_sum->eps_o);
    const detail::CampLp bad_lp =
        detail::camp_constraints(poly.box_sum->hat_wb, poly.box_sum->eps_l, poly.box_sum->eps_o);
    const double const_w0 = r.dot(self_weight.cwiseProduct(bias));

    std::vector<std::pair<int, detail::StructuredBadResult>> bad_results;
    int worst = -2;
    for (int i0 = 0; i0 < n; ++i0) {
      detail::StructuredBadResult res = detail::solve_structured_bad(bad_lp, r, budgets.k_b, i0);
      if (res.feasible) {
        out.feasible_set.push_back(i0);
        if (worst == -2 || res.value < bad_results[worst].second.value) {
          worst = static_cast<int>(bad_results.size());
        }
        bad_results.emplace_back(i0, std::move(res));
      }
    }
    {
      detail::StructuredBadResult res = detail::solve_structured_bad(bad_lp, r, budgets.k_b, -1);
      if (res.feasible) {
        out.feasible_set.push_back(-1);
        if (worst == -2 || res.value < bad_results[worst].second.value) {
          worst = static_cast<int>(bad_results.size());
        }
        bad_results.emplace_back(-1, std::move(res));
      }
    }
    if (bad_results.empty()) {
      throw Error(ErrorCode::InfeasibleModel, "no boundary condition is feasible; the polytope is empty");
    }
    const double bad_min = bad_results[worst].second.value;

    detail::StructuredGoodResult good_final;
    const auto evaluate = [&](const Eigen::VectorXd& x) {
      good_final = detail::solve_structured_good(good_lp, r, x);
      detail::InnerEvaluation ev;
      ev.value = const_w0 + good_final.value + bad_min;
      ev.cut.coeffs = r.cwiseProduct(good_final.wg);
      ev.cut.constant = const_w0 + bad_min;
      return ev;
    };
    auto [x_best, value] = detail::run_cut_loop(n, budgets.k_g, x0, evaluate, out.cut_rounds);
    // Re-evaluate at the winner so the reported duals belong to x_best.
    good_final = detail::solve_structured_good(good_lp, r, x_best);
    out.x = Allocation{std::move(x_best), budgets.k_g, std::nullopt};
    out.worst_case_value = value;
    for (const auto& [i0, bad_res] : bad_results) {
      out.duals.push_back(
          detail::assemble_structured_duals(n, i0, good_final, bad_res, r, bias, const_w0));
    }
    return out;
  }

  // Generic cut path: full inner LP per condition per round.
  std::vector<int> feasible;
  for (int i0 = 0; i0 < n; ++i0) {
    if (detail::boundary_condition_feasible(ap, r, i0)) feasible.push_back(i0);
  }
  if (detail::boundary_condition_feasible(ap, r, -1)) feasible.push_back(-1);
  if (feasible.empty()) {
    throw Error(ErrorCode::InfeasibleModel, "no boundary condition is feasible; the polytope is empty");
  }
  out.feasible_set = feasible;

  std::vector<detail::GenericInnerResult> final_results(feasible.size());
  const auto evaluate = [&](const Eigen::VectorXd& x) {
    detail::InnerEvaluation ev;
    ev.value = std::numeric_limits<double>::infinity();
    int worst = 0;
    for (std::size_t b = 0; b < feasible.size(); ++b) {
      final_results[b] =
          detail::solve_inner_generic(ap, r, bias, x, budgets.k_b, feasible[b]);
      if (final_results[b].value < ev.value) {
        ev.value = final_results[b].value;
        worst = static_cast<int>(b);
      }
    }
    ev.cut = detail::cut_from_minimizer(final_results[worst].u, r, bias, budgets.k_b,
                                        feasible[worst]);
    return ev;
  };
  auto [x_best, value] = detail::run_cut_loop(n, budgets.k_g, x0, evaluate, out.cut_rounds);
  // Recompute the per-condition certificates at the winning allocation.
  for (std::size_t b = 0; b < feasible.size(); ++b) {
    final_results[b] =
        detail::solve_inner_generic(ap, r, bias, x_best, budgets.k_b, feasible[b]);
    RobustBlockDuals d;
    d.i0 = feasible[b];
    d.alpha = std::move(final_results[b].alpha);
    d.beta = std::move(final_results[b].beta);
    d.inner_value = final_results[b].value;
    out.duals.push_back(std::move(d));
  }
  out.x = Allocation{std::move(x_best), budgets.k_g, std::nullopt};
  out.worst_case_value = value;
  return out;
}

inline RobustOutcome robust_good_strategy(const Network& skeleton,
                                          const UncertaintyPolytope& poly, const Budgets& budgets,
                                          RobustMethod method = RobustMethod::Auto) {
  return robust_good_strategy(skeleton, poly, budgets, skeleton.bias(), skeleton.self_weight(),
                              method);
}

// Value the good camp actually obtains when the ground truth is `truth` and
// the bad camp best-responds there with budget k_b on its top node:
// sum r w0 v0 + sum r_i w_ig x_i - k_b * max(max_i r_i w_ib, 0).
inline double realized_value(const Allocation& x, const Network& truth, double k_b) {
  if (x.amounts.size() != truth.n()) {
    throw Error(ErrorCode::DimensionMismatch, "allocation length must match network size");
  }
  const double bad_top = truth.n() > 0 ? std::max(bad_scores(truth).maxCoeff(), 0.0) : 0.0;
  return bias_contribution(truth) + good_scores(truth).dot(x.amounts) - k_b * bad_top;
}

// Membership check against the raw polytope rows (pins appended when the
// polytope treats self weights as certain), with slack for roundoff.
inline bool polytope_contains(const UncertaintyPolytope& poly, const Eigen::VectorXd& self_weight,
                              const Eigen::VectorXd& wg, const Eigen::VectorXd& wb,
                              double tol = 1e-9) {
  const detail::AssembledPolytope ap = detail::assemble_polytope(poly, self_weight);
  const int n = static_cast<int>(wg.size());
  Eigen::VectorXd u = Eigen::VectorXd::Zero(3 * n);
  for (int i = 0; i < n; ++i) {
    u[detail::ucol_self(i)] = self_weight[i];
    u[detail::ucol_good(i)] = wg[i];
    u[detail::ucol_bad(i)] = wb[i];
  }
  if (u.minCoeff() < -tol) return false;
  return ((ap.E * u - ap.f).array() <= tol).all();
}

// Uniform-ish sample from a box+sum polytope: draw each weight uniformly in
// its box, then shrink the whole deviation toward the hat point just enough
// to meet the sum window (the hat sum always lies inside the window, so a
// feasible shrink factor in [0, 1] exists and preserves the boxes).
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_box_sum(const UncertaintyPolytope& poly,
                                                                  Rng& rng) {
  if (!poly.box_sum) {
    throw Error(ErrorCode::InvalidArgument, "sampling requires a box+sum polytope");
  }
  const BoxSumParams& params = *poly.box_sum;
  const auto draw = [&](const Eigen::VectorXd& hat) {
    const int n = static_cast<int>(hat.size());
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
      w[i] = (1.0 - params.eps_l) * hat[i] +
             rng.uniform01() * 2.0 * params.eps_l * hat[i];
    }
    const double total = w.sum();
    const double hat_total = hat.sum();
    const double lo = (1.0 - params.eps_o) * hat_total;
    const double hi = (1.0 + params.eps_o) * hat_total;
    if (total < lo || total > hi) {
      const double target = std::clamp(total, lo, hi);
      const double lambda = (target - hat_total) / (total - hat_total);
      w = hat + lambda * (w - hat);
    }
    return w;
  };
  return {draw(params.hat_wg), draw(params.hat_wb)};
}

// Rebuilds a network with replaced camp weights (e.g. a sampled ground
// truth). Row-budget conservation is relaxed: an upward box deviation may
// legitimately push a row's total past one, while substochasticity of the
// internal weights — which is what convergence needs — is untouched.
inline Network replace_camp_weights(const Network& skeleton, const Eigen::VectorXd& wg,
                                    const Eigen::VectorXd& wb) {
  const int n = skeleton.n();
  if (wg.size() != n || wb.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "replacement weights must have length n");
  }
  std::vector<Edge> edges;
  const auto& w = skeleton.w();
  for (int k = 0; k < w.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(w, k); it; ++it) {
      edges.push_back(Edge{static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
    }
  }
  std::vector<NodeWeights> extra(n);
  for (int i = 0; i < n; ++i) {
    extra[i] = NodeWeights{skeleton.self_weight()[i], wg[i], wb[i]};
  }
  return build_network(n, edges, extra, skeleton.bias(), RowBudgetPolicy::Relax);
}

}  // namespace campopt

#endif  // CAMPOPT_ROBUST_HPP_
