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

#ifndef CAMPOPT_LP_HPP_
#define CAMPOPT_LP_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "campopt/errors.hpp"

namespace campopt {

// maximize c . z   subject to   A z <= b,   G z == h,
// with z_j >= 0 where nonneg[j] (an empty mask means every variable is
// nonnegative) and z_j free otherwise.
struct LpProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  std::vector<bool> nonneg;  // empty => all true
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd z;
  double value = 0.0;
  Eigen::VectorXd ineq_duals;  // one per A-row, nonnegative at optimum
  Eigen::VectorXd eq_duals;    // one per G-row, sign-free
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-10;   // smallest acceptable pivot magnitude
  double entering_tol = 1e-9; // reduced-cost threshold for improvement
  double feas_tol = 1e-9;     // phase-1 residual accepted as feasible
  long max_iterations = 0;    // 0 => automatic cap from the problem size
  int max_refactorizations = 256;  // tableau rebuilds allowed per solve
  int refactor_period = 64;        // pivots between scheduled rebuilds
};

// Optimality certificate residuals; all should be tiny for Optimal solutions.
struct LpCertificate {
  double primal_residual = 0.0;   // constraint + sign violations of z
  double dual_residual = 0.0;     // dual feasibility violation
  double complementary_slackness = 0.0;
  double duality_gap = 0.0;       // |c.z - (b.lambda + h.mu)|
};

// ---------------------------------------------------------------------------
// Dense two-phase primal simplex, Bland's anti-cycling rule throughout.
//
// Standardization: free variables split into positive/negative parts, every
// inequality row gets a slack, rows are sign-normalized to nonnegative right
// hand sides, and rows whose slack cannot seed the basis (negated
// inequalities, all equalities) get a phase-1 artificial. Artificial columns
// stay in the tableau (locked out of entering) so equality duals can be read
// off the final reduced-cost row; with reduced cost rc(col) = c_col - y . B
// column, the multiplier of original row i is -rc(slack_i) for inequalities
// and -sigma_i * rc(artificial_i) for equalities, where sigma_i is the row's
// normalization sign.
//
// Long pivot sequences let round-off accumulate in the tableau, which can
// manufacture an entering column whose usable pivots have all decayed below
// pivot_tol — indistinguishable, in the drifted tableau, from an unbounded
// ray. Refactorization (rebuilding the tableau exactly from the original
// data and the current basis) runs on a fixed pivot cadence and again on any
// stall; a stall that survives a fresh rebuild is structural: either a
// recession direction confirmed against the original data, or a numerically
// dead column that gets locked out of the entering scan.
// ---------------------------------------------------------------------------
namespace lp_detail {

inline LpSolution solve_lp_once(const LpProblem& problem, const SimplexOptions& options) {
  const int nv = static_cast<int>(problem.c.size());
  const int ma = static_cast<int>(problem.b.size());
  const int mg = static_cast<int>(problem.h.size());
  const int m = ma + mg;
  if (problem.A.rows() != ma || (ma > 0 && problem.A.cols() != nv) ||
      problem.G.rows() != mg || (mg > 0 && problem.G.cols() != nv) ||
      (!problem.nonneg.empty() && static_cast<int>(problem.nonneg.size()) != nv)) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent LP dimensions");
  }
  const auto nonneg = [&](int j) { return problem.nonneg.empty() || problem.nonneg[j]; };

  // Column layout: per-variable columns first (negative parts right after
  // their positive parts), then slacks, then artificials.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    pos_col[j] = ncols++;
    if (!nonneg(j)) neg_col[j] = ncols++;
  }
  const int slack_base = ncols;
  ncols += ma;
  std::vector<int> art_col(m, -1);

  Eigen::VectorXd sigma(m);            // row normalization signs
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double raw = i < ma ? problem.b[i] : problem.h[i - ma];
    sigma[i] = raw < 0.0 ? -1.0 : 1.0;
    rhs[i] = sigma[i] * raw;
  }
  for (int i = 0; i < ma; ++i) {
    if (sigma[i] < 0.0) art_col[i] = ncols++;
  }
  for (int i = ma; i < m; ++i) art_col[i] = ncols++;
  const int first_artificial = slack_base + ma;

  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m, ncols);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double a = i < ma ? problem.A(i, j) : problem.G(i - ma, j);
      if (a == 0.0) continue;
      tab(i, pos_col[j]) = sigma[i] * a;
      if (neg_col[j] >= 0) tab(i, neg_col[j]) = -sigma[i] * a;
    }
    if (i < ma) tab(i, slack_base + i) = sigma[i];
    if (art_col[i] >= 0) tab(i, art_col[i]) = 1.0;
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = art_col[i] >= 0 ? art_col[i] : slack_base + i;
  std::vector<bool> row_active(m, true);
  std::vector<bool> locked(ncols, false);  // numerically dead entering columns

  const Eigen::MatrixXd tab0 = tab;  // pristine copies for refactorization
  const Eigen::VectorXd rhs0 = rhs;

  Eigen::VectorXd objrow(ncols);
  double objval = 0.0;
  Eigen::VectorXd phase_cost = Eigen::VectorXd::Zero(ncols);
  long iterations = 0;
  int refactorizations = 0;
  bool tableau_fresh = true;  // no pivots since assembly or the last rebuild
  const long iter_cap = options.max_iterations > 0
                            ? options.max_iterations
                            : 2000 + 200L * static_cast<long>(m + ncols);

  const auto pivot = [&](int prow, int pcol) {
    const double p = tab(prow, pcol);
    tab.row(prow) /= p;
    rhs[prow] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == prow) continue;
      const double f = tab(i, pcol);
      if (f == 0.0) continue;
      tab.row(i) -= f * tab.row(prow);
      rhs[i] -= f * rhs[prow];
      if (rhs[i] < 0.0 && rhs[i] > -1e-12) rhs[i] = 0.0;  // clamp fp dust
    }
    const double fo = objrow[pcol];
    if (fo != 0.0) {
      objrow -= fo * tab.row(prow).transpose();
      objval += fo * rhs[prow];
    }
    basis[prow] = pcol;
    tableau_fresh = false;
    ++iterations;
  };

  // Rebuild the tableau exactly from the original data and the current basis,
  // scrubbing accumulated pivot drift. Returns false when the basis matrix is
  // numerically singular or the refactorized right-hand side turns out
  // infeasible beyond tolerance (both mean the basis itself is unusable).
  const auto rebuild = [&]() -> bool {
    Eigen::MatrixXd basis_cols(m, m);
    for (int i = 0; i < m; ++i) basis_cols.col(i) = tab0.col(basis[i]);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_cols);
    if (!lu.isInvertible()) return false;
    Eigen::MatrixXd fresh_tab = lu.solve(tab0);
    Eigen::VectorXd fresh_rhs = lu.solve(rhs0);
    const double scale = 1.0 + rhs0.cwiseAbs().maxCoeff();
    for (int i = 0; i < m; ++i) {
      if (fresh_rhs[i] < 0.0) {
        if (fresh_rhs[i] < -options.feas_tol * scale) return false;
        fresh_rhs[i] = 0.0;
      }
    }
    tab = std::move(fresh_tab);
    rhs = std::move(fresh_rhs);
    objrow = phase_cost;
    objval = 0.0;
    for (int i = 0; i < m; ++i) {
      const double cb = phase_cost[basis[i]];
      if (cb == 0.0) continue;
      objrow -= cb * tab.row(i).transpose();
      objval += cb * rhs[i];
    }
    ++refactorizations;
    tableau_fresh = true;
    return true;
  };

  // Bland: enter the lowest-index improving column; leave by minimum ratio
  // with ties broken by the lowest basic column index. `allow` filters the
  // entering candidates (phase 2 locks out artificials). NoPivot reports an
  // improving column whose every active-row coefficient is below pivot_tol.
  enum class StepResult { Improved, Done, NoPivot };
  int stall_col = -1;
  const auto step = [&](const auto& allow) -> StepResult {
    for (int j = 0; j < ncols; ++j) {
      if (locked[j] || objrow[j] <= options.entering_tol || !allow(j)) continue;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (!row_active[i]) continue;
        const double coef = tab(i, j);
        if (coef <= options.pivot_tol) continue;
        // Drifted basics fractionally below zero count as degenerate (ratio
        // zero); a negative ratio would step outside the feasible region.
        const double ratio = std::max(rhs[i], 0.0) / coef;
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        stall_col = j;
        return StepResult::NoPivot;
      }
      pivot(leave, j);
      return StepResult::Improved;
    }
    return StepResult::Done;
  };

  // A stalled entering column suggests an unbounded ray. Before believing the
  // (possibly noisy) tableau, reconstruct the implied direction in original
  // variables and confirm it against the exact problem data: it must improve
  // the objective while respecting every constraint's recession cone.
  const auto confirms_recession = [&](int col) -> bool {
    Eigen::VectorXd dz = Eigen::VectorXd::Zero(nv);
    const auto add_dir = [&](int c, double v) {
      for (int j = 0; j < nv; ++j) {
        if (c == pos_col[j]) dz[j] += v;
        else if (c == neg_col[j]) dz[j] -= v;
      }
    };
    add_dir(col, 1.0);
    for (int i = 0; i < m; ++i) {
      if (row_active[i]) add_dir(basis[i], -tab(i, col));
    }
    const double tol = 1e-8 * (1.0 + dz.cwiseAbs().maxCoeff());
    if (problem.c.dot(dz) <= tol) return false;
    if (ma > 0 && (problem.A * dz).maxCoeff() > tol) return false;
    if (mg > 0 && (problem.G * dz).cwiseAbs().maxCoeff() > tol) return false;
    for (int j = 0; j < nv; ++j) {
      if (nonneg(j) && dz[j] < -tol) return false;
    }
    return true;
  };

  // Drive the current phase to completion. A NoPivot stall on a drifted
  // tableau triggers refactorization; one that survives a fresh tableau is
  // structural — either a recession direction confirmed against the original
  // data (admissible only where the objective can actually be unbounded), or
  // a numerically dead column that gets locked out of the entering scan.
  enum class RunResult { Done, Unbounded };
  const long refactor_period = std::max(1, options.refactor_period);
  const auto run = [&](const auto& allow, bool can_be_unbounded) -> RunResult {
    while (iterations < iter_cap) {
      const StepResult r = step(allow);
      if (r == StepResult::Improved) {
        if (iterations % refactor_period == 0 && !tableau_fresh &&
            refactorizations < options.max_refactorizations) {
          rebuild();
        }
        continue;
      }
      if (r == StepResult::Done) return RunResult::Done;
      if (!tableau_fresh && refactorizations < options.max_refactorizations && rebuild()) {
        continue;  // retry the scan against an exact tableau
      }
      if (can_be_unbounded && confirms_recession(stall_col)) return RunResult::Unbounded;
      locked[stall_col] = true;
    }
    throw Error(ErrorCode::NumericalBreakdown,
                "simplex exceeded " + std::to_string(iter_cap) +
                    " pivots (m=" + std::to_string(m) + ", cols=" + std::to_string(ncols) +
                    "); pivot magnitudes may be below tolerance");
  };

  LpSolution solution;

  // Phase 1: drive the artificial variables to zero. Its objective is capped
  // at zero by construction, so recession directions cannot exist and any
  // structural stall simply locks the offending column.
  if (first_artificial < ncols) {
    phase_cost.setZero();
    for (int j = first_artificial; j < ncols; ++j) phase_cost[j] = -1.0;
    objrow = phase_cost;
    objval = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= first_artificial) {
        objrow += tab.row(i).transpose();
        objval += rhs[i] * phase_cost[basis[i]];
      }
    }
    run([](int) { return true; }, /*can_be_unbounded=*/false);
    const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
    if (objval < -options.feas_tol * scale) {
      solution.status = LpStatus::Infeasible;
      solution.iterations = static_cast<int>(iterations);
      return solution;
    }
    // Remove artificials that linger in the basis at level zero: pivot them
    // out on any usable real column, or retire the row as redundant.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < first_artificial) continue;
      int pcol = -1;
      for (int j = 0; j < first_artificial && pcol < 0; ++j) {
        if (std::abs(tab(i, j)) > options.pivot_tol) pcol = j;
      }
      if (pcol >= 0) {
        pivot(i, pcol);
      } else {
        row_active[i] = false;
      }
    }
  }

  // Phase 2 objective over the real columns.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
  for (int j = 0; j < nv; ++j) {
    cost[pos_col[j]] = problem.c[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -problem.c[j];
  }
  phase_cost = cost;
  objrow = cost;
  objval = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!row_active[i]) continue;
    const double cb = cost[basis[i]];
    if (cb == 0.0) continue;
    objrow -= cb * tab.row(i).transpose();
    objval += cb * rhs[i];
  }

  const RunResult r2 =
      run([&](int j) { return j < first_artificial; }, /*can_be_unbounded=*/true);
  if (r2 == RunResult::Unbounded) {
    solution.status = LpStatus::Unbounded;
    solution.iterations = static_cast<int>(iterations);
    return solution;
  }

  const auto extract_z = [&]() {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(nv);
    for (int i = 0; i < m; ++i) {
      if (!row_active[i]) continue;
      const int col = basis[i];
      for (int j = 0; j < nv; ++j) {
        if (col == pos_col[j]) z[j] += rhs[i];
        if (col == neg_col[j]) z[j] -= rhs[i];
      }
    }
    return z;
  };
  const auto primal_violation = [&](const Eigen::VectorXd& z) {
    double viol = 0.0;
    if (ma > 0) viol = std::max(viol, (problem.A * z - problem.b).maxCoeff());
    if (mg > 0) viol = std::max(viol, (problem.G * z - problem.h).cwiseAbs().maxCoeff());
    for (int j = 0; j < nv; ++j) {
      if (nonneg(j)) viol = std::max(viol, -z[j]);
    }
    return viol;
  };

  // Final audit: a claimed-optimal point must actually satisfy the original
  // constraints. A failure here means the basis drifted past the in-loop
  // repairs, so refactorize, finish pivoting against exact data, and re-audit.
  solution.z = extract_z();
  const double audit_scale = 1.0 + solution.z.cwiseAbs().maxCoeff() +
                             (ma > 0 ? problem.b.cwiseAbs().maxCoeff() : 0.0) +
                             (mg > 0 ? problem.h.cwiseAbs().maxCoeff() : 0.0);
  if (primal_violation(solution.z) > 1e-6 * audit_scale) {
    if (!rebuild()) {
      throw Error(ErrorCode::NumericalBreakdown,
                  "simplex solution failed the final feasibility audit");
    }
    if (run([&](int j) { return j < first_artificial; }, /*can_be_unbounded=*/true) ==
        RunResult::Unbounded) {
      solution = LpSolution{};
      solution.status = LpStatus::Unbounded;
      solution.iterations = static_cast<int>(iterations);
      return solution;
    }
    solution.z = extract_z();
    if (primal_violation(solution.z) > 1e-6 * audit_scale) {
      throw Error(ErrorCode::NumericalBreakdown,
                  "simplex solution failed the final feasibility audit");
    }
  }

  solution.status = LpStatus::Optimal;
  solution.iterations = static_cast<int>(iterations);
  solution.value = problem.c.dot(solution.z);
  solution.ineq_duals = Eigen::VectorXd::Zero(ma);
  for (int i = 0; i < ma; ++i) {
    solution.ineq_duals[i] = row_active[i] ? -objrow[slack_base + i] : 0.0;
    if (solution.ineq_duals[i] < 0.0 && solution.ineq_duals[i] > -1e-11) {
      solution.ineq_duals[i] = 0.0;
    }
  }
  solution.eq_duals = Eigen::VectorXd::Zero(mg);
  for (int i = ma; i < m; ++i) {
    solution.eq_duals[i - ma] = row_active[i] ? -sigma[i] * objrow[art_col[i]] : 0.0;
  }
  return solution;
}

}  // namespace lp_detail

// Solve with the configured pivot cadence; if numerics break down anyway,
// retry once under near-continuous refactorization before giving up.
inline LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options = {}) {
  try {
    return lp_detail::solve_lp_once(problem, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NumericalBreakdown || options.refactor_period <= 8) throw;
    SimplexOptions retry = options;
    retry.refactor_period = 8;
    retry.max_refactorizations = std::max(retry.max_refactorizations, 1 << 14);
    return lp_detail::solve_lp_once(problem, retry);
  }
}

// Residuals of the KKT system for a claimed-optimal solution. Callers (tests
// in particular) assert these against the advertised tolerances.
inline LpCertificate certify(const LpProblem& problem, const LpSolution& solution) {
  LpCertificate cert;
  if (solution.status != LpStatus::Optimal) return cert;
  const int nv = static_cast<int>(problem.c.size());
  const auto nonneg = [&](int j) { return problem.nonneg.empty() || problem.nonneg[j]; };

  Eigen::VectorXd slack;  // b - A z
  if (problem.b.size() > 0) {
    slack = problem.b - problem.A * solution.z;
    cert.primal_residual = std::max(cert.primal_residual, std::max(0.0, -slack.minCoeff()));
  }
  if (problem.h.size() > 0) {
    cert.primal_residual = std::max(cert.primal_residual,
                                    (problem.G * solution.z - problem.h).cwiseAbs().maxCoeff());
  }
  for (int j = 0; j < nv; ++j) {
    if (nonneg(j)) cert.primal_residual = std::max(cert.primal_residual, -solution.z[j]);
  }

  Eigen::VectorXd reduced = problem.c;  // c - A^T lambda - G^T mu
  if (problem.b.size() > 0) reduced -= problem.A.transpose() * solution.ineq_duals;
  if (problem.h.size() > 0) reduced -= problem.G.transpose() * solution.eq_duals;
  for (int j = 0; j < nv; ++j) {
    const double viol = nonneg(j) ? reduced[j] : std::abs(reduced[j]);
    cert.dual_residual = std::max(cert.dual_residual, viol);
    cert.complementary_slackness =
        std::max(cert.complementary_slackness, std::abs(solution.z[j] * reduced[j]));
  }
  if (problem.b.size() > 0) {
    cert.dual_residual = std::max(cert.dual_residual, -solution.ineq_duals.minCoeff());
    cert.complementary_slackness =
        std::max(cert.complementary_slackness,
                 solution.ineq_duals.cwiseProduct(slack).cwiseAbs().maxCoeff());
  }

  double dual_value = 0.0;
  if (problem.b.size() > 0) dual_value += problem.b.dot(solution.ineq_duals);
  if (problem.h.size() > 0) dual_value += problem.h.dot(solution.eq_duals);
  cert.duality_gap = std::abs(solution.value - dual_value);
  return cert;
}

}  // namespace campopt

#endif  // CAMPOPT_LP_HPP_
