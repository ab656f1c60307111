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

#include "buffernet/network.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "buffernet/errors.h"

namespace buffernet {

const char* NormName(Norm norm) {
  return norm == Norm::kLInf ? "linf" : "l1";
}

Norm ParseNorm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "linf") return Norm::kLInf;
  if (lower == "l1") return Norm::kL1;
  throw ParseError("unknown norm '" + std::string(text) +
                   "' (expected linf or l1)");
}

bool operator==(const NetworkInstance& a, const NetworkInstance& b) {
  auto same_shape = [](const auto& x, const auto& y) {
    return x.rows() == y.rows() && x.cols() == y.cols();
  };
  return same_shape(a.liabilities, b.liabilities) &&
         same_shape(a.portfolio, b.portfolio) &&
         same_shape(a.external, b.external) && same_shape(a.costs, b.costs) &&
         a.liabilities == b.liabilities && a.portfolio == b.portfolio &&
         a.external == b.external && a.costs == b.costs && a.names == b.names;
}

DerivedQuantities Derive(const NetworkInstance& instance) {
  const int n = instance.num_banks();
  DerivedQuantities d;
  d.total_liabilities = instance.liabilities.rowwise().sum();

  d.relative_liabilities = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (d.total_liabilities[i] > 0.0) {
      d.relative_liabilities.row(i) =
          instance.liabilities.row(i) / d.total_liabilities[i];
    } else {
      d.relative_liabilities(i, i) = 1.0;
    }
  }

  d.nominal_margin = instance.external +
                     d.relative_liabilities.transpose() * d.total_liabilities -
                     d.total_liabilities;

  d.asset_columns = instance.portfolio.cwiseAbs();
  d.stress_vector_linf = d.asset_columns.rowwise().sum();
  d.exposure_scores_linf = d.stress_vector_linf;
  if (instance.num_assets() > 0) {
    d.exposure_scores_l1 = d.asset_columns.rowwise().maxCoeff();
  } else {
    d.exposure_scores_l1 = Eigen::VectorXd::Zero(n);
  }
  return d;
}

ValidationReport Inspect(const NetworkInstance& instance) {
  ValidationReport report;
  auto& v = report.violations;
  const auto n = instance.liabilities.rows();

  if (instance.liabilities.cols() != n) {
    v.push_back("liabilities must be square, got " + std::to_string(n) + "x" +
                std::to_string(instance.liabilities.cols()));
  }
  if (instance.portfolio.rows() != n) {
    v.push_back("portfolio has " + std::to_string(instance.portfolio.rows()) +
                " rows, expected " + std::to_string(n));
  }
  if (instance.external.size() != n) {
    v.push_back("external has length " +
                std::to_string(instance.external.size()) + ", expected " +
                std::to_string(n));
  }
  if (instance.costs.size() != n) {
    v.push_back("costs has length " + std::to_string(instance.costs.size()) +
                ", expected " + std::to_string(n));
  }
  if (static_cast<Eigen::Index>(instance.names.size()) != n) {
    v.push_back("names has length " + std::to_string(instance.names.size()) +
                ", expected " + std::to_string(n));
  }
  if (!v.empty()) return report;

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double value = instance.liabilities(i, j);
      if (!std::isfinite(value)) {
        v.push_back("liabilities(" + std::to_string(i) + "," +
                    std::to_string(j) + ") is not finite");
      } else if (value < 0.0) {
        v.push_back("liabilities(" + std::to_string(i) + "," +
                    std::to_string(j) + ") is negative");
      } else if (i == j && value != 0.0) {
        v.push_back("liabilities(" + std::to_string(i) + "," +
                    std::to_string(i) + ") is a nonzero self-liability");
      }
    }
  }
  if (!instance.portfolio.allFinite()) {
    v.push_back("portfolio has non-finite entries");
  }
  if (!instance.external.allFinite()) {
    v.push_back("external has non-finite entries");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(instance.costs[i] > 0.0) || !std::isfinite(instance.costs[i])) {
      v.push_back("costs(" + std::to_string(i) + ") must be positive");
    }
  }
  if (!v.empty()) return report;

  const DerivedQuantities derived = Derive(instance);
  report.min_nominal_margin =
      n > 0 ? derived.nominal_margin.minCoeff() : 0.0;
  report.nominal_no_default = n == 0 || report.min_nominal_margin > 0.0;
  return report;
}

ValidationReport Validate(const NetworkInstance& instance) {
  ValidationReport report = Inspect(instance);
  if (!report.structurally_valid()) throw StructuralError(report.violations);
  return report;
}

void RequireNominalNoDefault(const DerivedQuantities& derived) {
  for (Eigen::Index i = 0; i < derived.nominal_margin.size(); ++i) {
    if (!(derived.nominal_margin[i] > 0.0)) {
      throw PreconditionError("nominal margin of bank " + std::to_string(i) +
                              " is not positive; design requires r > 0");
    }
  }
}

}  // namespace buffernet
