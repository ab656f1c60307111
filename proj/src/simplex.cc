// Copyright 2026 The BufferNet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "buffernet/errors.h"
#include "buffernet/lp.h"

namespace buffernet::lp {
namespace {

enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Bounded-variable primal simplex over the column set [G | I | -E], where the
// identity block holds the row slacks and E selects the rows that start out
// violated and therefore need an artificial variable in phase 1.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SimplexOptions& options);

  LpSolution Run();

 private:
  enum class PhaseResult { kOptimal, kUnbounded };

  PhaseResult RunPhase();
  void Refactor();
  int SelectEntering(bool bland) const;
  void Pivot(int row, int col);
  void SetPhaseCost(const Eigen::VectorXd& cost);
  double ArtificialSum() const;

  const LinearProgram& lp_;
  SimplexOptions options_;
  int rows_ = 0;
  int structurals_ = 0;
  int first_artificial_ = 0;
  int columns_count_ = 0;

  Eigen::MatrixXd columns_;  // original constraint columns, rows_ x columns_
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  Eigen::VectorXd cost_;
  Eigen::VectorXd x_;
  std::vector<int> basis_;
  std::vector<VarState> state_;

  Eigen::MatrixXd tableau_;  // B^-1 * columns_
  Eigen::VectorXd reduced_;  // cost_ - tableau_' * cost_B

  int64_t iterations_ = 0;
  int64_t iteration_limit_ = 0;
  int since_refactor_ = 0;
  int refactor_interval_ = 0;
};

BoundedSimplex::BoundedSimplex(const LinearProgram& lp,
                               const SimplexOptions& options)
    : lp_(lp), options_(options) {
  rows_ = lp.num_constraints();
  structurals_ = lp.num_variables();

  // Structurals start at the bound their cost pulls them towards when that
  // bound is finite, otherwise at any finite bound, otherwise at zero.
  Eigen::VectorXd start(structurals_);
  std::vector<VarState> structural_state(structurals_);
  for (int j = 0; j < structurals_; ++j) {
    const double lo = lp.lower_bounds[j];
    const double hi = lp.upper_bounds[j];
    const bool lo_finite = std::isfinite(lo);
    const bool hi_finite = std::isfinite(hi);
    if (hi_finite && (lp.objective[j] < 0.0 || !lo_finite)) {
      start[j] = hi;
      structural_state[j] = VarState::kAtUpper;
    } else if (lo_finite) {
      start[j] = lo;
      structural_state[j] = VarState::kAtLower;
    } else {
      start[j] = 0.0;
      structural_state[j] = VarState::kFree;
    }
  }

  const Eigen::VectorXd residual =
      rows_ > 0 ? Eigen::VectorXd(lp.inequality_rhs -
                                  lp.inequality_lhs * start)
                : Eigen::VectorXd(0);
  std::vector<int> artificial_rows;
  for (int i = 0; i < rows_; ++i) {
    if (residual[i] < 0.0) artificial_rows.push_back(i);
  }

  first_artificial_ = structurals_ + rows_;
  columns_count_ = first_artificial_ + static_cast<int>(artificial_rows.size());

  columns_ = Eigen::MatrixXd::Zero(rows_, columns_count_);
  if (rows_ > 0 && structurals_ > 0) {
    columns_.leftCols(structurals_) = lp.inequality_lhs;
  }
  for (int i = 0; i < rows_; ++i) columns_(i, structurals_ + i) = 1.0;
  for (size_t k = 0; k < artificial_rows.size(); ++k) {
    columns_(artificial_rows[k], first_artificial_ + static_cast<int>(k)) =
        -1.0;
  }

  lower_ = Eigen::VectorXd::Zero(columns_count_);
  upper_ = Eigen::VectorXd::Constant(columns_count_, kInfinity);
  lower_.head(structurals_) = lp.lower_bounds;
  upper_.head(structurals_) = lp.upper_bounds;

  x_ = Eigen::VectorXd::Zero(columns_count_);
  x_.head(structurals_) = start;
  state_.assign(columns_count_, VarState::kAtLower);
  std::copy(structural_state.begin(), structural_state.end(), state_.begin());

  basis_.assign(rows_, -1);
  for (int i = 0; i < rows_; ++i) basis_[i] = structurals_ + i;
  for (size_t k = 0; k < artificial_rows.size(); ++k) {
    basis_[artificial_rows[k]] = first_artificial_ + static_cast<int>(k);
  }
  for (int i = 0; i < rows_; ++i) state_[basis_[i]] = VarState::kBasic;

  iteration_limit_ = options_.iteration_limit > 0
                         ? options_.iteration_limit
                         : 50LL * (rows_ + columns_count_) + 10000;
  cost_ = Eigen::VectorXd::Zero(columns_count_);
  // A rebuild costs about as much as `rows_` pivots.
  refactor_interval_ = std::max(options_.refactor_interval, rows_);
}

void BoundedSimplex::SetPhaseCost(const Eigen::VectorXd& cost) {
  cost_ = cost;
  Refactor();
}

void BoundedSimplex::Refactor() {
  since_refactor_ = 0;
  Eigen::VectorXd nonbasic = x_;
  for (int i = 0; i < rows_; ++i) nonbasic[basis_[i]] = 0.0;

  if (rows_ == 0) {
    tableau_.resize(0, columns_count_);
    reduced_ = cost_;
    return;
  }

  Eigen::MatrixXd basis_matrix(rows_, rows_);
  Eigen::VectorXd basic_cost(rows_);
  for (int i = 0; i < rows_; ++i) {
    basis_matrix.col(i) = columns_.col(basis_[i]);
    basic_cost[i] = cost_[basis_[i]];
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
  tableau_ = lu.solve(columns_);
  for (int i = 0; i < rows_; ++i) {
    tableau_.col(basis_[i]).setZero();
    tableau_(i, basis_[i]) = 1.0;
  }
  const Eigen::VectorXd basic_values =
      lu.solve(lp_.inequality_rhs - columns_ * nonbasic);
  for (int i = 0; i < rows_; ++i) x_[basis_[i]] = basic_values[i];

  reduced_ = cost_ - tableau_.transpose() * basic_cost;
  for (int i = 0; i < rows_; ++i) reduced_[basis_[i]] = 0.0;
}

int BoundedSimplex::SelectEntering(bool bland) const {
  const double tol = options_.optimality_tolerance;
  int best = -1;
  double best_score = 0.0;
  for (int j = 0; j < columns_count_; ++j) {
    const VarState state = state_[j];
    if (state == VarState::kBasic || lower_[j] == upper_[j]) continue;
    const double d = reduced_[j];
    const bool eligible = (state == VarState::kAtLower && d < -tol) ||
                          (state == VarState::kAtUpper && d > tol) ||
                          (state == VarState::kFree && std::abs(d) > tol);
    if (!eligible) continue;
    if (bland) return j;
    if (std::abs(d) > best_score) {
      best_score = std::abs(d);
      best = j;
    }
  }
  return best;
}

void BoundedSimplex::Pivot(int row, int col) {
  const double pivot = tableau_(row, col);
  tableau_.row(row) /= pivot;
  Eigen::VectorXd factor = tableau_.col(col);
  factor[row] = 0.0;
  const Eigen::RowVectorXd pivot_row = tableau_.row(row);

  // Block-structured models leave most of both vectors at zero, so the
  // rank-one update only visits the nonzero cross product.
  std::vector<int> touched_rows;
  for (int i = 0; i < rows_; ++i) {
    if (factor[i] != 0.0) touched_rows.push_back(i);
  }
  if (2 * touched_rows.size() > static_cast<size_t>(rows_)) {
    tableau_.noalias() -= factor * pivot_row;
  } else {
    for (int j = 0; j < columns_count_; ++j) {
      const double r = pivot_row[j];
      if (r == 0.0) continue;
      double* column = tableau_.col(j).data();
      for (int i : touched_rows) column[i] -= factor[i] * r;
    }
  }
  tableau_.col(col).setZero();
  tableau_(row, col) = 1.0;

  const double d = reduced_[col];
  reduced_.noalias() -= d * pivot_row.transpose();
  reduced_[col] = 0.0;
}

BoundedSimplex::PhaseResult BoundedSimplex::RunPhase() {
  int stalled = 0;
  bool fresh = true;
  while (true) {
    if (iterations_ >= iteration_limit_) {
      throw NumericalFailure("simplex iteration limit of " +
                             std::to_string(iteration_limit_) + " exhausted");
    }
    if (since_refactor_ >= refactor_interval_) {
      Refactor();
      fresh = true;
    }
    const bool bland = stalled > options_.stall_threshold;
    const int entering = SelectEntering(bland);
    if (entering < 0) {
      if (fresh) return PhaseResult::kOptimal;
      // Confirm optimality against a freshly rebuilt tableau.
      Refactor();
      fresh = true;
      continue;
    }

    const double direction = reduced_[entering] < 0.0 ? 1.0 : -1.0;
    double step = upper_[entering] - lower_[entering];  // bound flip
    if (!std::isfinite(step)) step = kInfinity;
    int leaving_row = -1;
    double leaving_alpha = 0.0;

    for (int i = 0; i < rows_; ++i) {
      const double alpha = direction * tableau_(i, entering);
      if (std::abs(alpha) <= options_.pivot_tolerance) continue;
      const int var = basis_[i];
      double ratio;
      if (alpha > 0.0) {
        if (!std::isfinite(lower_[var])) continue;
        ratio = (x_[var] - lower_[var]) / alpha;
      } else {
        if (!std::isfinite(upper_[var])) continue;
        ratio = (upper_[var] - x_[var]) / -alpha;
      }
      ratio = std::max(ratio, 0.0);
      const double tie =
          1e-12 * (std::isfinite(step) ? std::max(1.0, std::abs(step)) : 1.0);
      bool take = false;
      if (ratio < step - tie) {
        take = true;
      } else if (ratio <= step + tie) {
        if (leaving_row < 0) {
          take = ratio < step;  // ties with a bound flip keep the flip
        } else {
          take = bland ? var < basis_[leaving_row]
                       : std::abs(alpha) > std::abs(leaving_alpha);
        }
      }
      if (take) {
        step = ratio;
        leaving_row = i;
        leaving_alpha = alpha;
      }
    }

    if (!std::isfinite(step)) return PhaseResult::kUnbounded;

    ++iterations_;
    ++since_refactor_;
    fresh = false;
    stalled = step <= 1e-12 ? stalled + 1 : 0;

    if (step > 0.0) {
      x_[entering] += direction * step;
      for (int i = 0; i < rows_; ++i) {
        x_[basis_[i]] -= direction * step * tableau_(i, entering);
      }
    }

    if (leaving_row < 0) {
      state_[entering] =
          direction > 0.0 ? VarState::kAtUpper : VarState::kAtLower;
      x_[entering] = direction > 0.0 ? upper_[entering] : lower_[entering];
      continue;
    }

    const int leaving = basis_[leaving_row];
    if (leaving_alpha > 0.0) {
      state_[leaving] = VarState::kAtLower;
      x_[leaving] = lower_[leaving];
    } else {
      state_[leaving] = VarState::kAtUpper;
      x_[leaving] = upper_[leaving];
    }
    Pivot(leaving_row, entering);
    basis_[leaving_row] = entering;
    state_[entering] = VarState::kBasic;
  }
}

double BoundedSimplex::ArtificialSum() const {
  double total = 0.0;
  for (int j = first_artificial_; j < columns_count_; ++j) total += x_[j];
  return total;
}

LpSolution BoundedSimplex::Run() {
  LpSolution solution;

  if (columns_count_ > first_artificial_) {
    Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(columns_count_);
    phase_one.tail(columns_count_ - first_artificial_).setOnes();
    SetPhaseCost(phase_one);
    RunPhase();
    Refactor();
    solution.phase_one_objective = ArtificialSum();
    if (solution.phase_one_objective > options_.feasibility_tolerance) {
      solution.status = Status::kInfeasible;
      solution.iterations = iterations_;
      solution.primal = x_.head(structurals_);
      solution.duals = Eigen::VectorXd::Zero(rows_);
      return solution;
    }
    // Artificials are pinned at zero for the rest of the solve.
    for (int j = first_artificial_; j < columns_count_; ++j) {
      upper_[j] = 0.0;
      if (state_[j] != VarState::kBasic) {
        state_[j] = VarState::kAtLower;
        x_[j] = 0.0;
      }
    }
  }

  Eigen::VectorXd phase_two = Eigen::VectorXd::Zero(columns_count_);
  phase_two.head(structurals_) = lp_.objective;
  SetPhaseCost(phase_two);
  const PhaseResult result = RunPhase();
  Refactor();

  solution.iterations = iterations_;
  solution.primal = x_.head(structurals_);
  if (result == PhaseResult::kUnbounded) {
    solution.status = Status::kUnbounded;
    solution.objective_value = -kInfinity;
    solution.duals = Eigen::VectorXd::Zero(rows_);
    return solution;
  }

  // Round-off can leave basics a hair outside their box.
  for (int j = 0; j < structurals_; ++j) {
    solution.primal[j] = std::clamp(solution.primal[j], lower_[j], upper_[j]);
  }
  solution.status = Status::kOptimal;
  solution.objective_value = lp_.objective.dot(solution.primal);
  // The reduced cost of slack i is -y_i, which is the row multiplier.
  solution.duals = reduced_.segment(structurals_, rows_).cwiseMax(0.0);
  return solution;
}

}  // namespace

LinearProgram LinearProgram::Zeros(int rows, int cols) {
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(cols);
  lp.inequality_lhs = Eigen::MatrixXd::Zero(rows, cols);
  lp.inequality_rhs = Eigen::VectorXd::Zero(rows);
  lp.lower_bounds = Eigen::VectorXd::Zero(cols);
  lp.upper_bounds = Eigen::VectorXd::Constant(cols, kInfinity);
  return lp;
}

void CheckWellFormed(const LinearProgram& lp) {
  const auto n = lp.objective.size();
  if (lp.inequality_lhs.rows() != lp.inequality_rhs.size()) {
    throw std::invalid_argument("constraint matrix rows != rhs length");
  }
  if (lp.inequality_lhs.cols() != n && lp.inequality_lhs.rows() > 0) {
    throw std::invalid_argument("constraint matrix cols != objective length");
  }
  if (lp.lower_bounds.size() != n || lp.upper_bounds.size() != n) {
    throw std::invalid_argument("bound vectors do not match objective length");
  }
  if (!lp.variable_names.empty() &&
      static_cast<Eigen::Index>(lp.variable_names.size()) != n) {
    throw std::invalid_argument("variable_names length mismatch");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(lp.lower_bounds[j] <= lp.upper_bounds[j])) {
      throw std::invalid_argument("lower bound exceeds upper bound for " +
                                  std::to_string(j));
    }
    if (lp.lower_bounds[j] == kInfinity || lp.upper_bounds[j] == -kInfinity) {
      throw std::invalid_argument("bound is infinite on the wrong side");
    }
  }
}

const char* StatusName(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpSolution SimplexSolver::Solve(const LinearProgram& lp) const {
  CheckWellFormed(lp);
  BoundedSimplex simplex(lp, options_);
  return simplex.Run();
}

LpSolution Solve(const LinearProgram& lp) { return SimplexSolver().Solve(lp); }

}  // namespace buffernet::lp
