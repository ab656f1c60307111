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

#ifndef BUFFERNET_DESIGN_H_
#define BUFFERNET_DESIGN_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "buffernet/extended_real.h"
#include "buffernet/lp.h"
#include "buffernet/network.h"

namespace buffernet {

// Buffers above this count as active in diagnostics.
inline constexpr double kActiveBufferThreshold = 1e-9;

enum class DesignStatus { kOptimal, kInfeasible };

struct DesignResult {
  DesignStatus status = DesignStatus::kInfeasible;
  Eigen::VectorXd buffer;
  // Achieved margin (margin designs) or worst-case loss (loss designs).
  ExtendedReal objective = ExtendedReal::Infinity();
  double spend = 0.0;
  int64_t iterations = 0;
  std::vector<int> active_banks;
};

// Largest radius at which every admissible shock still clears in full:
// min_i (r_i + b_i) / alpha_i, with x / 0 = +inf.
ExtendedReal DefaultMargin(const NetworkInstance& instance,
                           const Eigen::VectorXd& buffer, Norm norm);

// Buffer maximizing the default margin under q'b <= budget. Requires r > 0.
DesignResult MaxDefaultMargin(const NetworkInstance& instance, double budget,
                              Norm norm);

struct BudgetCertificate {
  double budget = 0.0;    // sum_i q_i [alpha_i eps - r_i]_+
  Eigen::VectorXd buffer;  // [alpha_i eps - r_i]_+
};

// Cheapest buffer guaranteeing a default margin of at least `radius`. It is
// also the exact budget at which the optimized worst-case loss reaches zero.
BudgetCertificate MinimalBudgetCertificate(const NetworkInstance& instance,
                                           double radius, Norm norm);

// Largest radius keeping the clearing LP feasible under every shock, for a
// fixed buffer. Infinite when the stress vector vanishes; infeasible status
// (returned as nullopt) when even the unshocked clearing is infeasible.
std::optional<ExtendedReal> InsolvencyMargin(const NetworkInstance& instance,
                                             const Eigen::VectorXd& buffer,
                                             Norm norm);

// Buffer maximizing the insolvency margin under q'b <= budget.
DesignResult MaxInsolvencyMargin(const NetworkInstance& instance,
                                 double budget, Norm norm);

// Buffer minimizing the worst-case loss at a fixed radius under q'b <= budget.
// Infeasible status means the loss is +inf for every admissible buffer.
DesignResult MinLossLinf(const NetworkInstance& instance, double radius,
                         double budget);
// One clearing block per asset plus an epigraph variable.
DesignResult MinLossL1(const NetworkInstance& instance, double radius,
                       double budget);
DesignResult MinLoss(const NetworkInstance& instance,
                     const UncertaintyModel& uncertainty, double budget);

// LPs behind the loss designs, exposed for inspection and verification.
// Variable layouts: linf [p, b]; l1 [t, b, p(1), ..., p(m)].
lp::LinearProgram BuildMinLossLinfLp(const NetworkInstance& instance,
                                     const DerivedQuantities& derived,
                                     double radius, double budget);
lp::LinearProgram BuildMinLossL1Lp(const NetworkInstance& instance,
                                   const DerivedQuantities& derived,
                                   double radius, double budget);

// Equal spending q_i b_i = budget / n.
BufferAllocation BaselineUniform(const NetworkInstance& instance,
                                 double budget);
// Spending proportional to the norm-matched exposure score; uniform when all
// scores vanish.
BufferAllocation BaselineExposureProportional(const NetworkInstance& instance,
                                              double budget, Norm norm);

enum class Policy {
  kOptMargin,
  kOptLoss,
  kUniform,
  kExposureProportional,
  kMarginThenLoss,
};

const char* PolicyName(Policy policy);
// Accepts the canonical names plus the short CLI aliases; "opt" expands to
// both optimal policies. Throws ParseError on unknown names.
std::vector<Policy> ParsePolicies(std::string_view list);

enum class Metric { kMargin, kLoss };

const char* MetricName(Metric metric);

struct SweepRow {
  double budget = 0.0;
  Policy policy = Policy::kOptMargin;
  Metric metric = Metric::kMargin;
  // nullopt when the cell failed; the failure is described in `note`.
  std::optional<ExtendedReal> value;
  double spend = 0.0;
  Eigen::VectorXd buffer;
  std::string note;
};

struct SweepOptions {
  std::vector<double> budgets;  // nondecreasing
  std::optional<double> radius;  // loss metrics need it
  Norm norm = Norm::kLInf;
  std::vector<Policy> policies;
  int threads = 1;  // 0 = hardware concurrency
};

// Evaluates every (budget, policy, metric) cell. Margins come from
// DefaultMargin on the allocated buffer (or MaxDefaultMargin for
// opt_margin); losses from the worst-case loss at the given radius (or
// MinLoss for opt_loss). Cells that throw are recorded, never fatal. Rows are
// ordered by budget, then policy, then metric, independent of threading.
std::vector<SweepRow> Sweep(const NetworkInstance& instance,
                            const SweepOptions& options);

// Header: budget,policy,metric,value,spend,b_1,...,b_n
void WriteSweepCsv(const std::vector<SweepRow>& rows, int num_banks,
                   std::ostream& out);

// Parses "start:stop:step" into an inclusive grid.
std::vector<double> ParseBudgetGrid(std::string_view text);

}  // namespace buffernet

#endif  // BUFFERNET_DESIGN_H_
