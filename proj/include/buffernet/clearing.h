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

#ifndef BUFFERNET_CLEARING_H_
#define BUFFERNET_CLEARING_H_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "buffernet/extended_real.h"
#include "buffernet/lp.h"
#include "buffernet/network.h"

namespace buffernet {

// Payments below p̄_i - kDefaultTolerance count as a default.
inline constexpr double kDefaultTolerance = 1e-7;

struct ClearingResult {
  bool feasible = false;
  Eigen::VectorXd clearing_vector;  // empty when infeasible
  ExtendedReal systemic_loss = ExtendedReal::Infinity();
  std::vector<int> default_set;
  int64_t iterations = 0;  // simplex pivots or fixed-point sweeps
};

// The clearing LP for a realized inflow c:
//   minimize -1'p  s.t.  (I - A') p <= c,  0 <= p <= p̄.
// Its optimum plus 1'p̄ is the systemic loss.
lp::LinearProgram BuildClearingLp(const DerivedQuantities& derived,
                                  const Eigen::VectorXd& inflow);

// Maximal clearing vector for the realized inflow. Infeasibility is a
// result: feasible = false and an infinite loss.
ClearingResult Clear(const NetworkInstance& instance,
                     const Eigen::VectorXd& inflow);
ClearingResult Clear(const DerivedQuantities& derived,
                     const Eigen::VectorXd& inflow);

struct FictitiousDefaultOptions {
  double tolerance = 1e-12;
  int64_t max_iterations = 1'000'000;
  // Called with every iterate, starting from p̄.
  std::function<void(const Eigen::VectorXd&)> observer;
};

// Greatest fixed point of p -> min(p̄, c + A'p), iterating down from p̄.
// A negative iterate proves the clearing LP infeasible. Throws
// IterationLimit if the cap is hit.
ClearingResult FictitiousDefault(const NetworkInstance& instance,
                                 const Eigen::VectorXd& inflow,
                                 const FictitiousDefaultOptions& options = {});

struct WorstCaseLoss {
  ExtendedReal loss;
  // Asset block attaining the maximum (l1 only, -1 otherwise).
  int worst_block = -1;
  // First asset block whose clearing is infeasible (l1 only, -1 if none).
  int infeasible_block = -1;
};

// Worst-case systemic loss for a fixed buffer. linf stresses every bank by
// radius * |S|1; l1 takes the worst single-asset block radius * |S_k|.
WorstCaseLoss ComputeWorstCaseLoss(const NetworkInstance& instance,
                                   const Eigen::VectorXd& buffer,
                                   const UncertaintyModel& uncertainty);

struct VertexOracleResult {
  ExtendedReal loss;
  Eigen::VectorXd worst_shock;  // price perturbation attaining the maximum
};

inline constexpr int kMaxVertexAssets = 16;

// Brute-force maximum of the clearing loss over the extreme points of the
// shock set: 2^m sign patterns for linf, {0, ±radius e_k} for l1. Throws
// DimensionTooLarge for linf with more than kMaxVertexAssets assets.
VertexOracleResult VertexOracle(const NetworkInstance& instance,
                                const Eigen::VectorXd& buffer,
                                const UncertaintyModel& uncertainty);

}  // namespace buffernet

#endif  // BUFFERNET_CLEARING_H_
