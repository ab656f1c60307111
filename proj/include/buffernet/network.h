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

#ifndef BUFFERNET_NETWORK_H_
#define BUFFERNET_NETWORK_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace buffernet {

// Geometry of the price-shock set: box (diffuse) or cross-polytope
// (concentrated).
enum class Norm { kLInf, kL1 };

const char* NormName(Norm norm);  // "linf" / "l1"
// Accepts "linf", "l1" (case-insensitive). Throws ParseError otherwise.
Norm ParseNorm(std::string_view text);

// One-period interbank network with common external assets.
//
// liabilities(i, j) is what bank i owes bank j; portfolio(i, k) is bank i's
// signed position in asset k; external is the nominal external net inflow;
// costs is the per-unit price of buffering each bank.
struct NetworkInstance {
  Eigen::MatrixXd liabilities;
  Eigen::MatrixXd portfolio;
  Eigen::VectorXd external;
  Eigen::VectorXd costs;
  std::vector<std::string> names;

  int num_banks() const { return static_cast<int>(liabilities.rows()); }
  int num_assets() const { return static_cast<int>(portfolio.cols()); }

  friend bool operator==(const NetworkInstance& a, const NetworkInstance& b);
};

struct DerivedQuantities {
  Eigen::VectorXd total_liabilities;     // row sums of the liabilities
  Eigen::MatrixXd relative_liabilities;  // row-stochastic A
  Eigen::VectorXd nominal_margin;        // external + (A' - I) total
  Eigen::VectorXd exposure_scores_linf;  // l1 norm of each portfolio row
  Eigen::VectorXd exposure_scores_l1;    // max-abs of each portfolio row
  Eigen::VectorXd stress_vector_linf;    // |S| * 1
  Eigen::MatrixXd asset_columns;         // |S|, column k is asset k's profile

  // Dual-norm score matching the shock geometry.
  const Eigen::VectorXd& exposure_scores(Norm norm) const {
    return norm == Norm::kLInf ? exposure_scores_linf : exposure_scores_l1;
  }
};

struct UncertaintyModel {
  Norm norm = Norm::kLInf;
  double radius = 0.0;
};

struct BufferAllocation {
  Eigen::VectorXd buffer;
  double spend = 0.0;
  double budget_cap = 0.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  // Advisory: whether the nominal margin is strictly positive everywhere.
  bool nominal_no_default = false;
  double min_nominal_margin = 0.0;

  bool structurally_valid() const { return violations.empty(); }
};

DerivedQuantities Derive(const NetworkInstance& instance);

// Lists every structural violation without throwing.
ValidationReport Inspect(const NetworkInstance& instance);

// As Inspect, but throws StructuralError when the structure is broken.
ValidationReport Validate(const NetworkInstance& instance);

// Throws PreconditionError unless every nominal margin is positive.
void RequireNominalNoDefault(const DerivedQuantities& derived);

}  // namespace buffernet

#endif  // BUFFERNET_NETWORK_H_
