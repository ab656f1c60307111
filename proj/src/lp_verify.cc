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
#include <cstdio>
#include <ostream>
#include <string>

#include "buffernet/lp.h"

namespace buffernet::lp {

VerificationReport Verify(const LinearProgram& lp, const LpSolution& solution,
                          double tolerance) {
  VerificationReport report;
  report.tolerance = tolerance;
  const Eigen::Index n = lp.objective.size();
  const Eigen::Index m = lp.inequality_rhs.size();
  if (solution.status != Status::kOptimal || solution.primal.size() != n ||
      solution.duals.size() != m) {
    report.primal_residual = kInfinity;
    report.dual_residual = kInfinity;
    report.complementarity = kInfinity;
    report.duality_gap = kInfinity;
    return report;
  }

  const Eigen::VectorXd& x = solution.primal;
  const Eigen::VectorXd& lambda = solution.duals;
  const Eigen::VectorXd activity =
      m > 0 ? Eigen::VectorXd(lp.inequality_lhs * x) : Eigen::VectorXd(0);
  const Eigen::VectorXd reduced =
      m > 0 ? Eigen::VectorXd(lp.objective +
                              lp.inequality_lhs.transpose() * lambda)
            : lp.objective;

  double primal = 0.0;
  double dual = 0.0;
  double complementarity = 0.0;
  double dual_objective = 0.0;

  for (Eigen::Index i = 0; i < m; ++i) {
    const double slack = lp.inequality_rhs[i] - activity[i];
    primal = std::max(primal, -slack);
    dual = std::max(dual, -lambda[i]);
    complementarity = std::max(complementarity, std::abs(lambda[i] * slack));
    dual_objective -= lambda[i] * lp.inequality_rhs[i];
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = lp.lower_bounds[j];
    const double hi = lp.upper_bounds[j];
    primal = std::max({primal, lo - x[j], x[j] - hi});
    const double z = reduced[j];
    if (z > 0.0) {
      if (std::isfinite(lo)) {
        dual_objective += z * lo;
        complementarity = std::max(complementarity, z * (x[j] - lo));
      } else {
        dual = std::max(dual, z);
      }
    } else if (z < 0.0) {
      if (std::isfinite(hi)) {
        dual_objective += z * hi;
        complementarity = std::max(complementarity, -z * (hi - x[j]));
      } else {
        dual = std::max(dual, -z);
      }
    }
  }

  report.primal_residual = primal;
  report.dual_residual = dual;
  report.complementarity = complementarity;
  report.duality_gap = std::abs(lp.objective.dot(x) - dual_objective);
  report.passed = report.primal_residual <= tolerance &&
                  report.dual_residual <= tolerance &&
                  report.complementarity <= tolerance &&
                  report.duality_gap <= tolerance;
  return report;
}

namespace {

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.15g", value);
  return buffer;
}

void WriteRow(std::ostream& out, const Eigen::VectorXd& row) {
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    out << ' ' << FormatNumber(row[j]);
  }
}

}  // namespace

void DumpLp(const LinearProgram& lp, std::ostream& out) {
  out << "LP " << lp.num_variables() << ' ' << lp.num_constraints() << '\n';
  out << "c";
  WriteRow(out, lp.objective);
  out << '\n';
  for (int i = 0; i < lp.num_constraints(); ++i) {
    out << "g";
    WriteRow(out, lp.inequality_lhs.row(i).transpose());
    out << " | " << FormatNumber(lp.inequality_rhs[i]) << '\n';
  }
  out << "l";
  WriteRow(out, lp.lower_bounds);
  out << '\n' << "u";
  WriteRow(out, lp.upper_bounds);
  out << '\n';
}

}  // namespace buffernet::lp
