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

#include "buffernet/instances.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "buffernet/errors.h"

namespace buffernet {
namespace {

// Distribution transforms are written out by hand: the standard library
// fixes the engines bit-for-bit but not its distributions.
class StableRandom {
 public:
  explicit StableRandom(uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double Uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller, one variate per call.
  double Normal() {
    const double u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double LogNormal(double median, double shape) {
    return median * std::exp(shape * Normal());
  }

 private:
  std::mt19937_64 engine_;
};

void CheckParams(const CorePeripheryParams& p) {
  std::vector<std::string> problems;
  if (p.n < 1) problems.push_back("n must be positive");
  if (p.core_size < 0 || p.core_size > p.n) {
    problems.push_back("core_size must lie in [0, n]");
  }
  if (p.m < 0) problems.push_back("m must be nonnegative");
  for (double d : {p.core_core_density, p.core_periphery_density,
                   p.periphery_periphery_density}) {
    if (!(d >= 0.0 && d <= 1.0)) {
      problems.push_back("densities must lie in [0, 1]");
      break;
    }
  }
  for (double s : {p.liability_scale_core, p.liability_scale_periphery,
                   p.holding_scale_core, p.holding_scale_periphery,
                   p.margin_level}) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      problems.push_back("scales and margin_level must be positive");
      break;
    }
  }
  if (!(p.weight_shape >= 0.0)) problems.push_back("weight_shape must be >= 0");
  if (!problems.empty()) {
    std::string text = "invalid core-periphery parameters:";
    for (const auto& s : problems) text += " " + s + ";";
    throw PreconditionError(text);
  }
}

constexpr int kMaxDraws = 8;

}  // namespace

NetworkInstance GenerateCorePeriphery(const CorePeripheryParams& params) {
  CheckParams(params);
  const int n = params.n;
  const int m = params.m;
  StableRandom random(params.seed);

  for (int draw = 0; draw < kMaxDraws; ++draw) {
    NetworkInstance instance;
    instance.liabilities = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const bool core_i = i < params.core_size;
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool core_j = j < params.core_size;
        const double density =
            core_i && core_j ? params.core_core_density
            : core_i || core_j ? params.core_periphery_density
                               : params.periphery_periphery_density;
        if (random.Uniform() >= density) continue;
        const double scale = core_i && core_j
                                 ? params.liability_scale_core
                                 : params.liability_scale_periphery;
        instance.liabilities(i, j) =
            random.LogNormal(scale, params.weight_shape);
      }
    }

    instance.portfolio = Eigen::MatrixXd::Zero(n, m);
    for (int i = 0; i < n; ++i) {
      const double scale = i < params.core_size
                               ? params.holding_scale_core
                               : params.holding_scale_periphery;
      for (int k = 0; k < m; ++k) {
        instance.portfolio(i, k) = random.LogNormal(scale, params.weight_shape);
      }
    }

    instance.costs = Eigen::VectorXd::Ones(n);
    instance.names.reserve(n);
    for (int i = 0; i < n; ++i) {
      char name[16];
      std::snprintf(name, sizeof(name), "%c%03d",
                    i < params.core_size ? 'C' : 'P', i + 1);
      instance.names.emplace_back(name);
    }

    // Back-solve c̄ = r_target - (A' - I) p̄ so the nominal margin is
    // margin_level * (1 + p̄) > 0 by construction.
    instance.external = Eigen::VectorXd::Zero(n);
    const DerivedQuantities derived = Derive(instance);
    const Eigen::VectorXd target =
        params.margin_level *
        (Eigen::VectorXd::Ones(n) + derived.total_liabilities);
    instance.external =
        target -
        derived.relative_liabilities.transpose() * derived.total_liabilities +
        derived.total_liabilities;

    const ValidationReport report = Inspect(instance);
    if (report.structurally_valid() && report.nominal_no_default) {
      return instance;
    }
  }
  throw DegenerateDraw("core-periphery generator produced " +
                       std::to_string(kMaxDraws) + " invalid draws");
}

MarginalData Reconcile(const MarginalData& marginals) {
  const double row_sum = marginals.row_totals.sum();
  const double col_sum = marginals.col_totals.sum();
  if (!(row_sum > 0.0) || !(col_sum > 0.0)) {
    throw ZeroMass("cannot reconcile marginals with zero total mass");
  }
  if (marginals.row_totals.minCoeff() < 0.0 ||
      marginals.col_totals.minCoeff() < 0.0) {
    throw PreconditionError("marginal totals must be nonnegative");
  }
  if (row_sum == col_sum) return marginals;
  const double target = 0.5 * (row_sum + col_sum);
  MarginalData out = marginals;
  out.row_totals *= target / row_sum;
  out.col_totals *= target / col_sum;
  return out;
}

double MaxMarginalError(const Eigen::MatrixXd& matrix,
                        const MarginalData& marginals) {
  auto error = [](double actual, double target) {
    return target > 0.0 ? std::abs(actual - target) / target
                        : std::abs(actual);
  };
  double worst = 0.0;
  const Eigen::VectorXd rows = matrix.rowwise().sum();
  const Eigen::VectorXd cols = matrix.colwise().sum().transpose();
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    worst = std::max(worst, error(rows[i], marginals.row_totals[i]));
  }
  for (Eigen::Index j = 0; j < cols.size(); ++j) {
    worst = std::max(worst, error(cols[j], marginals.col_totals[j]));
  }
  return worst;
}

IpfResult IpfReconstruct(const MarginalData& marginals,
                         const IpfOptions& options) {
  const Eigen::VectorXd& rows = marginals.row_totals;
  const Eigen::VectorXd& cols = marginals.col_totals;
  const auto n = rows.size();
  if (cols.size() != n) {
    throw PreconditionError("row and column totals differ in length");
  }
  if (n > 0 && (rows.minCoeff() < 0.0 || cols.minCoeff() < 0.0)) {
    throw PreconditionError("marginal totals must be nonnegative");
  }
  const double total = rows.sum();
  if (!(total > 0.0)) throw ZeroMass("marginals have zero total mass");
  if (std::abs(total - cols.sum()) > 1e-9 * total) {
    throw PreconditionError("marginals are not reconciled (row and column "
                            "sums differ)");
  }

  IpfResult result;
  result.matrix = rows * cols.transpose() / total;
  if (options.forbid_diagonal) result.matrix.diagonal().setZero();

  // A positive target with no allowed mass can never be met.
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rows[i] > 0.0 && result.matrix.row(i).sum() == 0.0) {
      throw NoConvergence("row " + std::to_string(i) +
                          " has a positive total but no admissible cells");
    }
    if (cols[i] > 0.0 && result.matrix.col(i).sum() == 0.0) {
      throw NoConvergence("column " + std::to_string(i) +
                          " has a positive total but no admissible cells");
    }
  }

  for (int it = 1; it <= options.max_iterations; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sum = result.matrix.row(i).sum();
      if (sum > 0.0) result.matrix.row(i) *= rows[i] / sum;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double sum = result.matrix.col(j).sum();
      if (sum > 0.0) result.matrix.col(j) *= cols[j] / sum;
    }
    const double error = MaxMarginalError(result.matrix, marginals);
    result.error_history.push_back(error);
    result.iterations = it;
    if (error <= options.tolerance) return result;
  }
  throw NoConvergence("IPF did not reach tolerance " +
                      std::to_string(options.tolerance) + " within " +
                      std::to_string(options.max_iterations) +
                      " iterations; the support may be infeasible");
}

NetworkInstance AssembleFromMarginals(const MarginalData& marginals,
                                      const Eigen::MatrixXd& holdings,
                                      const Eigen::VectorXd& externals,
                                      const Eigen::VectorXd& costs,
                                      const IpfOptions& options,
                                      std::vector<std::string>* notes) {
  const auto n = marginals.row_totals.size();
  if (marginals.col_totals.size() != n || holdings.rows() != n ||
      externals.size() != n || costs.size() != n ||
      static_cast<Eigen::Index>(marginals.names.size()) != n) {
    throw PreconditionError("marginals, holdings, externals, costs and names "
                            "must all have one entry per bank");
  }
  const MarginalData balanced = Reconcile(marginals);
  if (notes != nullptr && balanced.row_totals != marginals.row_totals) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "reconciled marginals: row sum %.12g, column sum %.12g -> "
                  "%.12g",
                  marginals.row_totals.sum(), marginals.col_totals.sum(),
                  balanced.row_totals.sum());
    notes->push_back(line);
  }
  NetworkInstance instance;
  instance.liabilities = IpfReconstruct(balanced, options).matrix;
  instance.portfolio = holdings;
  instance.external = externals;
  instance.costs = costs;
  instance.names = marginals.names;
  Validate(instance);
  return instance;
}

}  // namespace buffernet
