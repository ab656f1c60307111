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

#ifndef BUFFERNET_LP_H_
#define BUFFERNET_LP_H_

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace buffernet::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Tolerances shared by the built-in solver and the verifier.
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kGapTolerance = 1e-7;
inline constexpr double kPivotTolerance = 1e-10;

// minimize objective'x  s.t.  inequality_lhs * x <= inequality_rhs,
//                             lower_bounds <= x <= upper_bounds.
// Bounds may be infinite. Equalities are written as two opposite rows.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd inequality_lhs;
  Eigen::VectorXd inequality_rhs;
  Eigen::VectorXd lower_bounds;
  Eigen::VectorXd upper_bounds;
  std::vector<std::string> variable_names;  // optional, diagnostics only

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_constraints() const {
    return static_cast<int>(inequality_rhs.size());
  }

  // Allocates an LP with `rows` zero constraints over `cols` variables that
  // are bounded below by zero and unbounded above.
  static LinearProgram Zeros(int rows, int cols);
};

// Throws std::invalid_argument if dimensions or bounds are inconsistent.
void CheckWellFormed(const LinearProgram& lp);

enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* StatusName(Status status);

struct LpSolution {
  Status status = Status::kInfeasible;
  Eigen::VectorXd primal;
  double objective_value = 0.0;
  // Nonnegative multipliers of the inequality rows: at optimality
  // objective + G' * duals equals the bound multipliers.
  Eigen::VectorXd duals;
  int64_t iterations = 0;
  // Phase-1 optimum (sum of artificial values). Positive when infeasible.
  double phase_one_objective = 0.0;
};

// Pluggable solver interface. The built-in simplex is the default backend.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution Solve(const LinearProgram& lp) const = 0;
};

struct SimplexOptions {
  double feasibility_tolerance = kFeasibilityTolerance;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = kPivotTolerance;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int stall_threshold = 50;
  // Minimum number of pivots between tableau rebuilds; large models rebuild
  // once per row count of pivots.
  int refactor_interval = 100;
  // 0 picks a size-dependent cap.
  int64_t iteration_limit = 0;
};

// Dense-tableau two-phase primal simplex on bounded variables. Dantzig
// pricing, falling back to Bland's rule while the objective stalls.
class SimplexSolver : public LpSolver {
 public:
  SimplexSolver() = default;
  explicit SimplexSolver(const SimplexOptions& options) : options_(options) {}

  LpSolution Solve(const LinearProgram& lp) const override;

 private:
  SimplexOptions options_;
};

// Solves with the built-in simplex.
LpSolution Solve(const LinearProgram& lp);

struct VerificationReport {
  double primal_residual = 0.0;  // max(G x - h, bound violations, 0)
  double dual_residual = 0.0;    // negative multipliers, unsupported bounds
  double complementarity = 0.0;  // max |multiplier * slack|
  double duality_gap = 0.0;      // |primal objective - dual objective|
  double tolerance = kGapTolerance;
  bool passed = false;
};

// KKT check of an optimal solution. Never throws on bad numbers; the report
// simply fails.
VerificationReport Verify(const LinearProgram& lp, const LpSolution& solution,
                          double tolerance = kGapTolerance);

// Fixed-layout text dump: header, objective row, one "G | h" row per
// constraint, then the lower and upper bound rows.
void DumpLp(const LinearProgram& lp, std::ostream& out);

}  // namespace buffernet::lp

#endif  // BUFFERNET_LP_H_
