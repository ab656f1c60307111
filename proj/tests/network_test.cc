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

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "buffernet/errors.h"
#include "buffernet/network.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace buffernet {
namespace {

using ::buffernet::testing::RandomInstance;
using ::buffernet::testing::RandomInstanceOptions;
using ::buffernet::testing::Tiny2;
using ::buffernet::testing::Vec;

TEST(DeriveTest, Tiny2HandValues) {
  const DerivedQuantities d = Derive(Tiny2());
  EXPECT_TRUE(d.total_liabilities.isApprox(Vec({1.0, 0.0})));
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, 0.0, 1.0;
  EXPECT_EQ(d.relative_liabilities, a);
  EXPECT_NEAR(d.nominal_margin[0], 0.5, 1e-15);
  EXPECT_NEAR(d.nominal_margin[1], 1.2, 1e-15);
  EXPECT_EQ(d.stress_vector_linf, Vec({1.0, 2.0}));
  EXPECT_EQ(d.exposure_scores_linf, Vec({1.0, 2.0}));
  EXPECT_EQ(d.exposure_scores_l1, Vec({1.0, 2.0}));
}

TEST(DeriveTest, ZeroPortfolioHasZeroScores) {
  NetworkInstance instance = Tiny2();
  instance.portfolio.setZero();
  const DerivedQuantities d = Derive(instance);
  EXPECT_TRUE(d.exposure_scores_linf.isZero(0.0));
  EXPECT_TRUE(d.exposure_scores_l1.isZero(0.0));
}

TEST(DeriveTest, ZeroLiabilityRowIsUnitVector) {
  const DerivedQuantities d = Derive(Tiny2());
  EXPECT_EQ(d.relative_liabilities(1, 0), 0.0);
  EXPECT_EQ(d.relative_liabilities(1, 1), 1.0);
}

// Element-by-element recomputation of every derived quantity.
TEST(DerivePropertyTest, AgreesWithDirectArithmetic) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    RandomInstanceOptions options;
    options.n = 2 + trial % 9;
    options.m = trial % 4;
    options.link_probability = 0.3;
    const NetworkInstance inst = RandomInstance(rng, options);
    const DerivedQuantities d = Derive(inst);
    const int n = inst.num_banks();
    for (int i = 0; i < n; ++i) {
      double total = 0.0;
      for (int j = 0; j < n; ++j) total += inst.liabilities(i, j);
      EXPECT_NEAR(d.total_liabilities[i], total, 1e-14);
      double row_sum = 0.0;
      for (int j = 0; j < n; ++j) {
        const double expected = total > 0.0 ? inst.liabilities(i, j) / total
                                            : (i == j ? 1.0 : 0.0);
        EXPECT_NEAR(d.relative_liabilities(i, j), expected, 1e-15);
        row_sum += d.relative_liabilities(i, j);
      }
      EXPECT_NEAR(row_sum, 1.0, 1e-12);

      double inflow = 0.0;  // what others pay bank i at full clearing
      for (int j = 0; j < n; ++j) inflow += inst.liabilities(j, i);
      EXPECT_NEAR(d.nominal_margin[i], inst.external[i] + inflow - total,
                  1e-12);
      // r + p̄ - A'p̄ reconstructs c̄.
      const double rebuilt =
          d.nominal_margin[i] + d.total_liabilities[i] -
          d.relative_liabilities.col(i).dot(d.total_liabilities);
      EXPECT_NEAR(rebuilt, inst.external[i], 1e-12);

      double l1 = 0.0;
      double linf = 0.0;
      for (int k = 0; k < inst.num_assets(); ++k) {
        l1 += std::abs(inst.portfolio(i, k));
        linf = std::max(linf, std::abs(inst.portfolio(i, k)));
      }
      EXPECT_NEAR(d.exposure_scores_linf[i], l1, 1e-14);
      EXPECT_NEAR(d.exposure_scores_l1[i], linf, 0.0);
      EXPECT_EQ(d.stress_vector_linf[i], d.exposure_scores_linf[i]);
    }
  }
}

TEST(ValidateTest, Tiny2IsValidWithPositiveMargin) {
  const ValidationReport report = Validate(Tiny2());
  EXPECT_TRUE(report.structurally_valid());
  EXPECT_TRUE(report.nominal_no_default);
  EXPECT_NEAR(report.min_nominal_margin, 0.5, 1e-15);
}

TEST(ValidateTest, LowExternalInflowFailsAdvisoryFlagOnly) {
  NetworkInstance instance = Tiny2();
  instance.external = Vec({0.5, 0.2});
  const ValidationReport report = Validate(instance);
  EXPECT_TRUE(report.structurally_valid());
  EXPECT_FALSE(report.nominal_no_default);
  EXPECT_NEAR(report.min_nominal_margin, -0.5, 1e-15);
}

TEST(ValidateTest, NegativeLiabilityThrowsStructuralError) {
  NetworkInstance instance = Tiny2();
  instance.liabilities(0, 1) = -1.0;
  EXPECT_THROW(Validate(instance), StructuralError);
}

TEST(ValidateTest, ReportsEveryViolation) {
  NetworkInstance instance = Tiny2();
  instance.liabilities(0, 1) = -1.0;
  instance.liabilities(1, 1) = 2.0;
  instance.costs[0] = 0.0;
  try {
    Validate(instance);
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& e) {
    EXPECT_EQ(e.violations().size(), 3u);
  }
}

TEST(ValidateTest, DimensionMismatch) {
  NetworkInstance instance = Tiny2();
  instance.external = Vec({1.0});
  const ValidationReport report = Inspect(instance);
  EXPECT_FALSE(report.structurally_valid());
}

TEST(NormTest, ParsesNames) {
  EXPECT_EQ(ParseNorm("linf"), Norm::kLInf);
  EXPECT_EQ(ParseNorm("L1"), Norm::kL1);
  EXPECT_THROW(ParseNorm("l2"), ParseError);
}

}  // namespace
}  // namespace buffernet
