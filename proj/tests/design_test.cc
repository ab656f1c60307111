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
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "buffernet/clearing.h"
#include "buffernet/design.h"
#include "buffernet/errors.h"
#include "buffernet/lp.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace buffernet {
namespace {

using ::buffernet::testing::RandomInstance;
using ::buffernet::testing::RandomInstanceOptions;
using ::buffernet::testing::Tiny2;
using ::buffernet::testing::Vec;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest eps with B_def(eps) <= budget, by bisection on the closed form.
double InvertCertificate(const NetworkInstance& inst, double budget,
                         Norm norm) {
  const DerivedQuantities d = Derive(inst);
  const Eigen::VectorXd& alpha = d.exposure_scores(norm);
  if (alpha.maxCoeff() <= 0.0) return kInf;
  auto cost = [&](double eps) {
    double total = 0.0;
    for (int i = 0; i < alpha.size(); ++i) {
      total += inst.costs[i] *
               std::max(0.0, alpha[i] * eps - d.nominal_margin[i]);
    }
    return total;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (cost(hi) <= budget) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cost(mid) <= budget ? lo : hi) = mid;
  }
  return lo;
}

// Robust clearing feasibility at a fixed radius, with the buffer fixed.
bool ClearsUnderStress(const NetworkInstance& inst, const Eigen::VectorXd& b,
                       double eps, Norm norm) {
  const DerivedQuantities d = Derive(inst);
  const Eigen::VectorXd inflow =
      inst.external + b - eps * d.exposure_scores(norm);
  return Clear(inst, inflow).feasible;
}

// Robust clearing feasibility at a fixed radius, with the buffer free under a
// budget. Variables [p, b]; a zero objective turns the solve into a
// feasibility test.
bool ClearsWithBudget(const NetworkInstance& inst, double budget, double eps,
                      Norm norm) {
  const DerivedQuantities d = Derive(inst);
  const int n = inst.num_banks();
  lp::LinearProgram lp = lp::LinearProgram::Zeros(n + 1, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lp.inequality_lhs(i, j) =
          (i == j ? 1.0 : 0.0) - d.relative_liabilities(j, i);
    }
    lp.inequality_lhs(i, n + i) = -1.0;
    lp.inequality_lhs(n, n + i) = inst.costs[i];
    lp.upper_bounds[i] = d.total_liabilities[i];
  }
  lp.inequality_rhs.head(n) =
      inst.external - eps * d.exposure_scores(norm);
  lp.inequality_rhs[n] = budget;
  return lp::Solve(lp).status == lp::Status::kOptimal;
}

template <typename Feasible>
double BisectRadius(Feasible feasible) {
  if (!feasible(0.0)) return -1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) return kInf;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

TEST(DefaultMarginTest, Tiny2) {
  const NetworkInstance tiny = Tiny2();
  EXPECT_EQ(DefaultMargin(tiny, Vec({0, 0}), Norm::kLInf),
            ExtendedReal::Finite(0.5));
  EXPECT_DOUBLE_EQ(DefaultMargin(tiny, Vec({0, 0.8}), Norm::kLInf).value, 0.5);
  NetworkInstance flat = tiny;
  flat.portfolio.setZero();
  EXPECT_TRUE(DefaultMargin(flat, Vec({0, 0}), Norm::kL1).infinite);
}

TEST(MaxDefaultMarginTest, Tiny2) {
  const DesignResult zero = MaxDefaultMargin(Tiny2(), 0.0, Norm::kLInf);
  ASSERT_EQ(zero.status, DesignStatus::kOptimal);
  EXPECT_NEAR(zero.objective.value, 0.5, 1e-9);
  EXPECT_NEAR(zero.buffer.cwiseAbs().maxCoeff(), 0.0, 1e-12);
  const DesignResult full = MaxDefaultMargin(Tiny2(), 1.3, Norm::kLInf);
  EXPECT_NEAR(full.objective.value, 1.0, 1e-9);
  EXPECT_NEAR(full.spend, 1.3, 1e-9);
  EXPECT_EQ(full.active_banks, (std::vector<int>{0, 1}));
}

TEST(MaxDefaultMarginTest, ZeroPortfolioIsInfinite) {
  NetworkInstance flat = Tiny2();
  flat.portfolio.setZero();
  EXPECT_TRUE(MaxDefaultMargin(flat, 1.0, Norm::kLInf).objective.infinite);
}

TEST(MaxDefaultMarginTest, RequiresPositiveMargins) {
  NetworkInstance bad = Tiny2();
  bad.external[0] = 0.5;
  EXPECT_THROW(MaxDefaultMargin(bad, 1.0, Norm::kLInf), PreconditionError);
  EXPECT_THROW(MaxDefaultMargin(Tiny2(), -1.0, Norm::kLInf),
               PreconditionError);
}

TEST(CertificateTest, Tiny2) {
  const BudgetCertificate one =
      MinimalBudgetCertificate(Tiny2(), 1.0, Norm::kLInf);
  EXPECT_NEAR(one.budget, 1.3, 1e-12);
  EXPECT_TRUE(one.buffer.isApprox(Vec({0.5, 0.8}), 1e-12));
  const BudgetCertificate small =
      MinimalBudgetCertificate(Tiny2(), 0.55, Norm::kLInf);
  EXPECT_NEAR(small.budget, 0.05, 1e-12);
  EXPECT_NEAR(small.buffer[0], 0.05, 1e-12);
  EXPECT_EQ(small.buffer[1], 0.0);
  const BudgetCertificate none =
      MinimalBudgetCertificate(Tiny2(), 0.4, Norm::kLInf);
  EXPECT_EQ(none.budget, 0.0);
  EXPECT_TRUE(none.buffer.isZero());
}

TEST(CertificateTest, RemovingMassBreaksGuarantee) {
  const BudgetCertificate cert =
      MinimalBudgetCertificate(Tiny2(), 1.0, Norm::kLInf);
  for (int i = 0; i < 2; ++i) {
    Eigen::VectorXd thinner = cert.buffer;
    thinner[i] *= 0.99;
    EXPECT_LT(DefaultMargin(Tiny2(), thinner, Norm::kLInf).value, 1.0);
  }
}

TEST(InsolvencyMarginTest, Tiny2) {
  const DesignResult r = MaxInsolvencyMargin(Tiny2(), 0.0, Norm::kLInf);
  ASSERT_EQ(r.status, DesignStatus::kOptimal);
  EXPECT_NEAR(r.objective.value, 17.0 / 30.0, 1e-9);
  const std::optional<ExtendedReal> fixed =
      InsolvencyMargin(Tiny2(), Vec({0, 0}), Norm::kLInf);
  ASSERT_TRUE(fixed.has_value());
  EXPECT_NEAR(fixed->value, 17.0 / 30.0, 1e-9);
}

TEST(InsolvencyMarginTest, LargeBudgetMatchesBisection) {
  const NetworkInstance tiny = Tiny2();
  const DesignResult r = MaxInsolvencyMargin(tiny, 10.0, Norm::kLInf);
  ASSERT_EQ(r.status, DesignStatus::kOptimal);
  const double oracle = BisectRadius([&](double eps) {
    return ClearsWithBudget(tiny, 10.0, eps, Norm::kLInf);
  });
  EXPECT_GT(r.objective.value, 17.0 / 30.0);
  EXPECT_NEAR(r.objective.value, oracle, 1e-6);
}

TEST(InsolvencyMarginTest, InfeasibleWhenNominalClearingFails) {
  NetworkInstance broken = Tiny2();
  broken.external << -0.2, 0.5;
  EXPECT_FALSE(InsolvencyMargin(broken, Vec({0, 0}), Norm::kLInf));
  EXPECT_EQ(MaxInsolvencyMargin(broken, 0.0, Norm::kLInf).status,
            DesignStatus::kInfeasible);
}

TEST(MinLossTest, Tiny2Linf) {
  const DesignResult enough = MinLossLinf(Tiny2(), 0.55, 0.05);
  ASSERT_EQ(enough.status, DesignStatus::kOptimal);
  EXPECT_NEAR(enough.objective.value, 0.0, 1e-9);
  EXPECT_NEAR(enough.buffer[0], 0.05, 1e-9);
  EXPECT_NEAR(enough.buffer[1], 0.0, 1e-9);
  const DesignResult short_by = MinLossLinf(Tiny2(), 0.55, 0.02);
  EXPECT_NEAR(short_by.objective.value, 0.03, 1e-9);
  EXPECT_NEAR(short_by.buffer[0], 0.02, 1e-9);
}

TEST(MinLossTest, Tiny2L1MatchesLinfWithOneAsset) {
  const DesignResult r = MinLossL1(Tiny2(), 0.55, 0.05);
  ASSERT_EQ(r.status, DesignStatus::kOptimal);
  EXPECT_NEAR(r.objective.value, 0.0, 1e-9);
  EXPECT_NEAR(MinLossL1(Tiny2(), 0.55, 0.02).objective.value, 0.03, 1e-9);
}

TEST(MinLossTest, InfeasibleRadius) {
  const DesignResult r = MinLossLinf(Tiny2(), 0.6, 0.0);
  EXPECT_EQ(r.status, DesignStatus::kInfeasible);
  EXPECT_TRUE(r.objective.infinite);
  EXPECT_EQ(MinLossL1(Tiny2(), 0.6, 0.0).status, DesignStatus::kInfeasible);
}

TEST(MinLossTest, LpSizes) {
  std::mt19937_64 rng(3);
  RandomInstanceOptions options;
  options.n = 7;
  options.m = 5;
  const NetworkInstance inst = RandomInstance(rng, options);
  const DerivedQuantities d = Derive(inst);
  EXPECT_EQ(BuildMinLossLinfLp(inst, d, 0.1, 1.0).objective.size(), 14);
  EXPECT_EQ(BuildMinLossL1Lp(inst, d, 0.1, 1.0).objective.size(),
            1 + 7 + 5 * 7);
}

TEST(MinLossTest, NoShockNoLoss) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const NetworkInstance inst = RandomInstance(rng, {});
    for (Norm norm : {Norm::kLInf, Norm::kL1}) {
      const DesignResult r = MinLoss(inst, {norm, 0.0}, 0.0);
      ASSERT_EQ(r.status, DesignStatus::kOptimal);
      EXPECT_NEAR(r.objective.value, 0.0, 1e-9);
    }
  }
}

TEST(BaselineTest, Uniform) {
  EXPECT_TRUE(BaselineUniform(Tiny2(), 1.0).buffer.isApprox(Vec({0.5, 0.5})));
  NetworkInstance weighted = Tiny2();
  weighted.costs << 1.0, 2.0;
  const BufferAllocation a = BaselineUniform(weighted, 2.0);
  EXPECT_TRUE(a.buffer.isApprox(Vec({1.0, 0.5})));
  EXPECT_DOUBLE_EQ(a.spend, 2.0);
  EXPECT_TRUE(BaselineUniform(Tiny2(), 0.0).buffer.isZero());
}

TEST(BaselineTest, ExposureProportional) {
  const BufferAllocation a =
      BaselineExposureProportional(Tiny2(), 3.0, Norm::kLInf);
  EXPECT_TRUE(a.buffer.isApprox(Vec({1.0, 2.0})));
  EXPECT_DOUBLE_EQ(a.spend, 3.0);
  NetworkInstance flat = Tiny2();
  flat.portfolio.setZero();
  EXPECT_TRUE(BaselineExposureProportional(flat, 1.0, Norm::kLInf)
                  .buffer.isApprox(Vec({0.5, 0.5})));
  EXPECT_TRUE(BaselineExposureProportional(Tiny2(), 3.0, Norm::kL1)
                  .buffer.isApprox(a.buffer));
}

TEST(SweepTest, Tiny2OptLoss) {
  SweepOptions options;
  options.budgets = {0.0, 0.02, 0.05};
  options.radius = 0.55;
  options.policies = {Policy::kOptLoss};
  const std::vector<SweepRow> rows = Sweep(Tiny2(), options);
  ASSERT_EQ(rows.size(), 3u);
  const double expected[] = {0.05, 0.03, 0.0};
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(rows[k].metric, Metric::kLoss);
    ASSERT_TRUE(rows[k].value.has_value());
    EXPECT_NEAR(rows[k].value->value, expected[k], 1e-9);
  }
}

TEST(SweepTest, CsvLayoutAndInfinity) {
  SweepOptions options;
  options.budgets = {0.0};
  options.radius = 0.6;
  options.policies = {Policy::kUniform};
  const std::vector<SweepRow> rows = Sweep(Tiny2(), options);
  ASSERT_EQ(rows.size(), 2u);
  std::ostringstream csv;
  WriteSweepCsv(rows, 2, csv);
  EXPECT_EQ(csv.str(),
            "budget,policy,metric,value,spend,b_1,b_2\n"
            "0,uniform,margin,0.5,0,0,0\n"
            "0,uniform,loss,inf,0,0,0\n");
}

TEST(SweepTest, ParallelMatchesSerial) {
  std::mt19937_64 rng(12);
  const NetworkInstance inst = RandomInstance(rng, {});
  SweepOptions options;
  options.budgets = ParseBudgetGrid("0:1:0.25");
  options.radius = 0.3;
  options.policies = ParsePolicies("opt,uniform,expprop,margin");
  options.threads = 1;
  std::ostringstream serial;
  WriteSweepCsv(Sweep(inst, options), 5, serial);
  options.threads = 4;
  std::ostringstream parallel;
  WriteSweepCsv(Sweep(inst, options), 5, parallel);
  EXPECT_EQ(serial.str(), parallel.str());
}

TEST(SweepTest, ParseBudgetGrid) {
  EXPECT_EQ(ParseBudgetGrid("0:0.1:0.05"),
            (std::vector<double>{0.0, 0.05, 0.1}));
  EXPECT_EQ(ParseBudgetGrid("0,0.02,0.05"),
            (std::vector<double>{0.0, 0.02, 0.05}));
  EXPECT_THROW(ParseBudgetGrid("1,0"), ParseError);
  EXPECT_THROW(ParseBudgetGrid("a:b"), ParseError);
}

TEST(SweepTest, ParsePolicies) {
  EXPECT_EQ(ParsePolicies("opt"),
            (std::vector<Policy>{Policy::kOptMargin, Policy::kOptLoss}));
  EXPECT_THROW(ParsePolicies("greedy"), ParseError);
}

// Property suites.

TEST(DesignPropertyTest, CertificateInversion) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    RandomInstanceOptions options;
    options.n = 2 + trial % 8;
    options.random_costs = trial % 2 == 1;
    const NetworkInstance inst = RandomInstance(rng, options);
    for (Norm norm : {Norm::kLInf, Norm::kL1}) {
      for (double budget : {0.0, 0.1, 0.7, 3.0}) {
        const DesignResult r = MaxDefaultMargin(inst, budget, norm);
        ASSERT_EQ(r.status, DesignStatus::kOptimal);
        EXPECT_NEAR(r.objective.value, InvertCertificate(inst, budget, norm),
                    1e-7);
        EXPECT_NEAR(DefaultMargin(inst, r.buffer, norm).value,
                    r.objective.value, 1e-7);
        EXPECT_LE(r.spend, budget + 1e-9);
        const double eps = r.objective.value;
        const BudgetCertificate cert =
            MinimalBudgetCertificate(inst, eps, norm);
        EXPECT_GE(DefaultMargin(inst, cert.buffer, norm).value, eps - 1e-12);
      }
    }
  }
}

TEST(DesignPropertyTest, MarginOrderingAndBisection) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    RandomInstanceOptions options;
    options.n = 2 + trial % 6;
    const NetworkInstance inst = RandomInstance(rng, options);
    Eigen::VectorXd b(options.n);
    for (int i = 0; i < options.n; ++i) b[i] = 0.5 * unit(rng);
    const Norm norm = trial % 2 ? Norm::kL1 : Norm::kLInf;
    const std::optional<ExtendedReal> ub = InsolvencyMargin(inst, b, norm);
    ASSERT_TRUE(ub.has_value());
    EXPECT_GE(ub->value, DefaultMargin(inst, b, norm).value - 1e-7);
    const double oracle = BisectRadius(
        [&](double eps) { return ClearsUnderStress(inst, b, eps, norm); });
    EXPECT_NEAR(ub->value, oracle, 1e-6) << "trial " << trial;
  }
}

TEST(DesignPropertyTest, ZeroLossThreshold) {
  std::mt19937_64 rng(107);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    RandomInstanceOptions options;
    options.n = 2 + trial % 6;
    options.m = 1 + trial % 3;
    const NetworkInstance inst = RandomInstance(rng, options);
    for (Norm norm : {Norm::kLInf, Norm::kL1}) {
      const double eps = 1.5 * InvertCertificate(inst, 0.0, norm);
      const double threshold =
          MinimalBudgetCertificate(inst, eps, norm).budget;
      if (threshold <= 0.0) continue;
      ++checked;
      const DesignResult at = MinLoss(inst, {norm, eps}, threshold);
      ASSERT_EQ(at.status, DesignStatus::kOptimal);
      EXPECT_LE(at.objective.value, 1e-7);
      const DesignResult below = MinLoss(inst, {norm, eps}, 0.999 * threshold);
      EXPECT_GT(below.objective.AsDouble(), 1e-7);
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(DesignPropertyTest, ObjectivesReevaluate) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    RandomInstanceOptions options;
    options.n = 3 + trial % 5;
    const NetworkInstance inst = RandomInstance(rng, options);
    const double eps = 1.3 * InvertCertificate(inst, 0.0, Norm::kLInf);
    for (Norm norm : {Norm::kLInf, Norm::kL1}) {
      const DesignResult r = MinLoss(inst, {norm, eps}, 0.2);
      if (r.status != DesignStatus::kOptimal) continue;
      const ExtendedReal check =
          ComputeWorstCaseLoss(inst, r.buffer, {norm, eps}).loss;
      ASSERT_FALSE(check.infinite);
      EXPECT_NEAR(check.value, r.objective.value, 1e-6);
    }
  }
}

TEST(DesignPropertyTest, ShapeAndDominance) {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 6; ++trial) {
    RandomInstanceOptions options;
    options.n = 4 + trial % 3;
    const NetworkInstance inst = RandomInstance(rng, options);
    SweepOptions sweep;
    sweep.budgets = ParseBudgetGrid("0:1.4:0.1");
    sweep.norm = trial % 2 ? Norm::kL1 : Norm::kLInf;
    sweep.radius = 1.4 * InvertCertificate(inst, 0.0, sweep.norm);
    sweep.policies = ParsePolicies("opt,uniform,expprop");
    sweep.threads = 2;
    const std::vector<SweepRow> rows = Sweep(inst, sweep);

    auto column = [&](Policy policy, Metric metric) {
      std::vector<double> values;
      for (const SweepRow& row : rows) {
        if (row.policy == policy && row.metric == metric) {
          values.push_back(row.value->AsDouble());
        }
      }
      return values;
    };
    const std::vector<double> margin = column(Policy::kOptMargin,
                                              Metric::kMargin);
    const std::vector<double> loss = column(Policy::kOptLoss, Metric::kLoss);
    ASSERT_EQ(margin.size(), 15u);
    ASSERT_EQ(loss.size(), 15u);
    for (size_t k = 1; k < margin.size(); ++k) {
      EXPECT_GE(margin[k], margin[k - 1] - 1e-7);
      if (std::isfinite(loss[k - 1])) EXPECT_LE(loss[k], loss[k - 1] + 1e-7);
    }
    for (size_t k = 2; k < margin.size(); ++k) {
      EXPECT_LE(margin[k] - 2 * margin[k - 1] + margin[k - 2], 1e-7);
      if (std::isfinite(loss[k - 2])) {
        EXPECT_GE(loss[k] - 2 * loss[k - 1] + loss[k - 2], -1e-7);
      }
    }
    for (Policy base : {Policy::kUniform, Policy::kExposureProportional}) {
      const std::vector<double> base_margin = column(base, Metric::kMargin);
      const std::vector<double> base_loss = column(base, Metric::kLoss);
      for (size_t k = 0; k < margin.size(); ++k) {
        EXPECT_GE(margin[k], base_margin[k] - 1e-7);
        EXPECT_LE(loss[k], base_loss[k] + 1e-7);
      }
    }
  }
}

}  // namespace
}  // namespace buffernet
