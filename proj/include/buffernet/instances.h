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

#ifndef BUFFERNET_INSTANCES_H_
#define BUFFERNET_INSTANCES_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "buffernet/network.h"

namespace buffernet {

// Block-structured random network: a dense core of `core_size` banks and a
// sparse periphery. Links are Bernoulli per block density with log-normal
// weights (median = scale, log-sd = weight_shape). Holdings are nonnegative
// log-normal draws, larger for core banks. External inflows are back-solved
// so that the nominal margin equals margin_level * (1 + p̄_i).
struct CorePeripheryParams {
  int n = 353;
  int core_size = 18;
  int m = 5;
  uint64_t seed = 42;
  double core_core_density = 0.9;
  double core_periphery_density = 0.15;
  double periphery_periphery_density = 0.01;
  double liability_scale_core = 20.0;
  double liability_scale_periphery = 1.0;
  double holding_scale_core = 50.0;
  double holding_scale_periphery = 2.0;
  double weight_shape = 0.5;
  double margin_level = 0.1;
};

// Throws PreconditionError on invalid params, DegenerateDraw if repeated
// draws fail validation.
NetworkInstance GenerateCorePeriphery(const CorePeripheryParams& params);

// Row and column totals of a bilateral matrix, one entry per bank.
struct MarginalData {
  Eigen::VectorXd row_totals;
  Eigen::VectorXd col_totals;
  std::vector<std::string> names;
};

// Scales both sides to the common aggregate T = (sum(rows) + sum(cols)) / 2.
// Throws ZeroMass if either side sums to zero.
MarginalData Reconcile(const MarginalData& marginals);

struct IpfOptions {
  bool forbid_diagonal = true;
  double tolerance = 1e-9;
  int max_iterations = 100000;
};

struct IpfResult {
  Eigen::MatrixXd matrix;
  int iterations = 0;
  // Max relative marginal error after each full row+column sweep.
  std::vector<double> error_history;
};

// Iterative proportional fitting from the outer-product seed rows * cols' / T
// with forbidden cells zeroed. Zero cells stay zero. Throws NoConvergence
// when the marginals cannot be matched on the allowed support.
IpfResult IpfReconstruct(const MarginalData& marginals,
                         const IpfOptions& options = {});

// Max relative mismatch between the matrix marginals and the targets.
double MaxMarginalError(const Eigen::MatrixXd& matrix,
                        const MarginalData& marginals);

// Builds a validated instance whose liabilities are reconstructed from the
// marginals (reconciled first when unbalanced). Row totals are what each bank
// owes; column totals what it is owed. Reconciliation, when it happens, is
// reported through `notes`.
NetworkInstance AssembleFromMarginals(
    const MarginalData& marginals, const Eigen::MatrixXd& holdings,
    const Eigen::VectorXd& externals, const Eigen::VectorXd& costs,
    const IpfOptions& options = {}, std::vector<std::string>* notes = nullptr);

}  // namespace buffernet

#endif  // BUFFERNET_INSTANCES_H_
