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

#include "buffernet/clearing.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "buffernet/errors.h"
#include "lp_blocks.h"

namespace buffernet {
namespace {

std::vector<int> DefaultSet(const Eigen::VectorXd& total,
                            const Eigen::VectorXd& payments) {
  std::vector<int> defaults;
  for (Eigen::Index i = 0; i < total.size(); ++i) {
    if (payments[i] < total[i] - kDefaultTolerance) {
      defaults.push_back(static_cast<int>(i));
    }
  }
  return defaults;
}

double ShortfallSum(const Eigen::VectorXd& total,
                    const Eigen::VectorXd& payments) {
  return std::max(0.0, (total - payments).sum());
}

void CheckLength(const Eigen::VectorXd& v, int n, const char* what) {
  if (v.size() != n) {
    throw PreconditionError(std::string(what) + " has length " +
                            std::to_string(v.size()) + ", expected " +
                            std::to_string(n));
  }
}

}  // namespace

lp::LinearProgram BuildClearingLp(const DerivedQuantities& derived,
                                  const Eigen::VectorXd& inflow) {
  const int n = static_cast<int>(derived.total_liabilities.size());
  lp::LinearProgram lp = lp::LinearProgram::Zeros(n, n);
  lp.objective.setConstant(-1.0);
  internal::AddClearingRows(derived.relative_liabilities, 0, 0, -1,
                            lp.inequality_lhs);
  lp.inequality_rhs = inflow;
  lp.upper_bounds = derived.total_liabilities;
  return lp;
}

ClearingResult Clear(const DerivedQuantities& derived,
                     const Eigen::VectorXd& inflow) {
  CheckLength(inflow, static_cast<int>(derived.total_liabilities.size()),
              "inflow");
  const lp::LinearProgram lp = BuildClearingLp(derived, inflow);
  const lp::LpSolution solution = lp::Solve(lp);

  ClearingResult result;
  result.iterations = solution.iterations;
  if (solution.status != lp::Status::kOptimal) {
    // The feasible set is a box intersected with half-spaces, so the LP is
    // never unbounded; anything but optimal is infeasibility.
    return result;
  }
  result.feasible = true;
  result.clearing_vector = solution.primal;
  result.systemic_loss = ExtendedReal::Finite(
      ShortfallSum(derived.total_liabilities, solution.primal));
  result.default_set = DefaultSet(derived.total_liabilities, solution.primal);
  return result;
}

ClearingResult Clear(const NetworkInstance& instance,
                     const Eigen::VectorXd& inflow) {
  return Clear(Derive(instance), inflow);
}

ClearingResult FictitiousDefault(const NetworkInstance& instance,
                                 const Eigen::VectorXd& inflow,
                                 const FictitiousDefaultOptions& options) {
  CheckLength(inflow, instance.num_banks(), "inflow");
  const DerivedQuantities derived = Derive(instance);
  const Eigen::VectorXd& total = derived.total_liabilities;
  const Eigen::MatrixXd relative_t = derived.relative_liabilities.transpose();

  ClearingResult result;
  Eigen::VectorXd payments = total;
  if (options.observer) options.observer(payments);

  for (int64_t k = 1; k <= options.max_iterations; ++k) {
    Eigen::VectorXd next =
        total.cwiseMin(inflow + relative_t * payments);
    result.iterations = k;
    if (options.observer) options.observer(next);
    // Iterates are nonincreasing and bound every feasible payment vector
    // from above, so a negative component rules out feasibility.
    if (next.minCoeff() < -1e-12) return result;
    const double change = (next - payments).cwiseAbs().maxCoeff();
    payments = std::move(next);
    if (!(change > options.tolerance)) {
      payments = payments.cwiseMax(0.0);
      result.feasible = true;
      result.clearing_vector = payments;
      result.systemic_loss =
          ExtendedReal::Finite(ShortfallSum(total, payments));
      result.default_set = DefaultSet(total, payments);
      return result;
    }
  }
  throw IterationLimit("fictitious default did not settle within " +
                       std::to_string(options.max_iterations) +
                       " iterations");
}

WorstCaseLoss ComputeWorstCaseLoss(const NetworkInstance& instance,
                                   const Eigen::VectorXd& buffer,
                                   const UncertaintyModel& uncertainty) {
  const int n = instance.num_banks();
  CheckLength(buffer, n, "buffer");
  if (uncertainty.radius < 0.0) {
    throw PreconditionError("uncertainty radius must be nonnegative");
  }
  const DerivedQuantities derived = Derive(instance);
  const Eigen::VectorXd shifted = instance.external + buffer;

  WorstCaseLoss result;
  if (uncertainty.norm == Norm::kLInf) {
    result.loss =
        Clear(derived, shifted - uncertainty.radius *
                                     derived.stress_vector_linf)
            .systemic_loss;
    return result;
  }

  const int blocks = std::max(1, instance.num_assets());
  result.loss = ExtendedReal::Finite(0.0);
  for (int k = 0; k < blocks; ++k) {
    Eigen::VectorXd inflow = shifted;
    if (instance.num_assets() > 0) {
      inflow -= uncertainty.radius * derived.asset_columns.col(k);
    }
    const ClearingResult block = Clear(derived, inflow);
    if (!block.feasible) {
      result.loss = ExtendedReal::Infinity();
      result.worst_block = k;
      result.infeasible_block = k;
      return result;
    }
    if (result.worst_block < 0 ||
        block.systemic_loss.value > result.loss.value) {
      result.loss = block.systemic_loss;
      result.worst_block = k;
    }
  }
  return result;
}

VertexOracleResult VertexOracle(const NetworkInstance& instance,
                                const Eigen::VectorXd& buffer,
                                const UncertaintyModel& uncertainty) {
  const int n = instance.num_banks();
  const int m = instance.num_assets();
  CheckLength(buffer, n, "buffer");
  if (uncertainty.norm == Norm::kLInf && m > kMaxVertexAssets) {
    throw DimensionTooLarge("linf vertex enumeration needs 2^" +
                            std::to_string(m) + " clearings; limit is 2^" +
                            std::to_string(kMaxVertexAssets));
  }
  const DerivedQuantities derived = Derive(instance);
  const Eigen::VectorXd shifted = instance.external + buffer;
  const double eps = uncertainty.radius;

  std::vector<Eigen::VectorXd> shocks;
  if (uncertainty.norm == Norm::kLInf) {
    const uint64_t count = uint64_t{1} << m;
    shocks.reserve(count);
    for (uint64_t mask = 0; mask < count; ++mask) {
      Eigen::VectorXd delta(m);
      for (int k = 0; k < m; ++k) delta[k] = (mask >> k) & 1 ? eps : -eps;
      shocks.push_back(std::move(delta));
    }
  } else {
    shocks.push_back(Eigen::VectorXd::Zero(m));
    for (int k = 0; k < m; ++k) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd delta = Eigen::VectorXd::Zero(m);
        delta[k] = sign * eps;
        shocks.push_back(std::move(delta));
      }
    }
  }

  VertexOracleResult result;
  bool first = true;
  for (const Eigen::VectorXd& delta : shocks) {
    const ClearingResult cleared =
        Clear(derived, shifted + instance.portfolio * delta);
    const ExtendedReal& loss = cleared.systemic_loss;
    const bool better =
        first || (!result.loss.infinite &&
                  (loss.infinite || loss.value > result.loss.value));
    if (better) {
      result.loss = loss;
      result.worst_shock = delta;
      first = false;
    }
    if (result.loss.infinite) break;
  }
  return result;
}

}  // namespace buffernet
