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

#include "buffernet/design.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "buffernet/clearing.h"
#include "buffernet/errors.h"
#include "buffernet/format.h"
#include "lp_blocks.h"

namespace buffernet {
namespace {

void CheckBudget(double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw PreconditionError("budget must be a finite nonnegative number");
  }
}

void CheckRadius(double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw PreconditionError("radius must be a finite nonnegative number");
  }
}

std::vector<int> ActiveBanks(const Eigen::VectorXd& buffer) {
  std::vector<int> active;
  for (Eigen::Index i = 0; i < buffer.size(); ++i) {
    if (buffer[i] > kActiveBufferThreshold) {
      active.push_back(static_cast<int>(i));
    }
  }
  return active;
}

// Fills buffer, spend and diagnostics from an LP whose buffer block starts at
// `buffer_col`.
void TakeBuffer(const NetworkInstance& instance,
                const lp::LpSolution& solution, int buffer_col,
                DesignResult& result) {
  const int n = instance.num_banks();
  result.iterations = solution.iterations;
  if (solution.status == lp::Status::kOptimal) {
    // Snap pivoting round-off to exact zeros.
    result.buffer = solution.primal.segment(buffer_col, n).unaryExpr(
        [](double x) { return x > 1e-12 ? x : 0.0; });
  } else {
    result.buffer = Eigen::VectorXd::Zero(n);
  }
  result.spend = instance.costs.dot(result.buffer);
  result.active_banks = ActiveBanks(result.buffer);
}

void AddBudgetRow(const NetworkInstance& instance, int row, int buffer_col,
                  double budget, lp::LinearProgram& lp) {
  lp.inequality_lhs.block(row, buffer_col, 1, instance.num_banks()) =
      instance.costs.transpose();
  lp.inequality_rhs[row] = budget;
}

}  // namespace

ExtendedReal DefaultMargin(const NetworkInstance& instance,
                           const Eigen::VectorXd& buffer, Norm norm) {
  const DerivedQuantities derived = Derive(instance);
  const Eigen::VectorXd& alpha = derived.exposure_scores(norm);
  if (buffer.size() != alpha.size()) {
    throw PreconditionError("buffer length does not match bank count");
  }
  ExtendedReal margin = ExtendedReal::Infinity();
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    const double ratio = (derived.nominal_margin[i] + buffer[i]) / alpha[i];
    if (margin.infinite || ratio < margin.value) {
      margin = ExtendedReal::Finite(ratio);
    }
  }
  return margin;
}

DesignResult MaxDefaultMargin(const NetworkInstance& instance, double budget,
                              Norm norm) {
  CheckBudget(budget);
  const DerivedQuantities derived = Derive(instance);
  RequireNominalNoDefault(derived);
  const int n = instance.num_banks();
  const Eigen::VectorXd& alpha = derived.exposure_scores(norm);

  // Variables [eps, b]. Rows: alpha_i eps - b_i <= r_i, then q'b <= B.
  lp::LinearProgram lp = lp::LinearProgram::Zeros(n + 1, n + 1);
  lp.objective[0] = -1.0;
  lp.lower_bounds[0] = -lp::kInfinity;
  lp.inequality_lhs.block(0, 0, n, 1) = alpha;
  lp.inequality_lhs.block(0, 1, n, n) = -Eigen::MatrixXd::Identity(n, n);
  lp.inequality_rhs.head(n) = derived.nominal_margin;
  AddBudgetRow(instance, n, 1, budget, lp);

  const lp::LpSolution solution = lp::Solve(lp);
  DesignResult result;
  if (solution.status == lp::Status::kUnbounded) {
    // Only possible when every exposure score is zero.
    result.status = DesignStatus::kOptimal;
    result.objective = ExtendedReal::Infinity();
    result.buffer = Eigen::VectorXd::Zero(n);
    result.iterations = solution.iterations;
    return result;
  }
  if (solution.status != lp::Status::kOptimal) {
    throw NumericalFailure("default-margin LP reported infeasible");
  }
  TakeBuffer(instance, solution, 1, result);
  result.status = DesignStatus::kOptimal;
  result.objective = ExtendedReal::Finite(solution.primal[0]);
  return result;
}

BudgetCertificate MinimalBudgetCertificate(const NetworkInstance& instance,
                                           double radius, Norm norm) {
  CheckRadius(radius);
  const DerivedQuantities derived = Derive(instance);
  RequireNominalNoDefault(derived);
  const Eigen::VectorXd& alpha = derived.exposure_scores(norm);
  BudgetCertificate certificate;
  certificate.buffer =
      (alpha * radius - derived.nominal_margin).cwiseMax(0.0);
  certificate.budget = instance.costs.dot(certificate.buffer);
  return certificate;
}

std::optional<ExtendedReal> InsolvencyMargin(const NetworkInstance& instance,
                                             const Eigen::VectorXd& buffer,
                                             Norm norm) {
  const DerivedQuantities derived = Derive(instance);
  const int n = instance.num_banks();
  if (buffer.size() != n) {
    throw PreconditionError("buffer length does not match bank count");
  }
  // Variables [eps, p]. Rows: s eps + (I - A') p <= c̄ + b.
  lp::LinearProgram lp = lp::LinearProgram::Zeros(n, n + 1);
  lp.objective[0] = -1.0;
  lp.inequality_lhs.col(0) = derived.exposure_scores(norm);
  internal::AddClearingRows(derived.relative_liabilities, 0, 1, -1,
                            lp.inequality_lhs);
  lp.inequality_rhs = instance.external + buffer;
  lp.upper_bounds.tail(n) = derived.total_liabilities;

  const lp::LpSolution solution = lp::Solve(lp);
  switch (solution.status) {
    case lp::Status::kOptimal:
      return ExtendedReal::Finite(solution.primal[0]);
    case lp::Status::kUnbounded:
      return ExtendedReal::Infinity();
    case lp::Status::kInfeasible:
      break;
  }
  return std::nullopt;
}

DesignResult MaxInsolvencyMargin(const NetworkInstance& instance,
                                 double budget, Norm norm) {
  CheckBudget(budget);
  const DerivedQuantities derived = Derive(instance);
  const int n = instance.num_banks();

  // Variables [eps, p, b]. Rows: s eps + (I - A') p - b <= c̄, q'b <= B.
  lp::LinearProgram lp = lp::LinearProgram::Zeros(n + 1, 2 * n + 1);
  lp.objective[0] = -1.0;
  lp.inequality_lhs.block(0, 0, n, 1) = derived.exposure_scores(norm);
  internal::AddClearingRows(derived.relative_liabilities, 0, 1, n + 1,
                            lp.inequality_lhs);
  lp.inequality_rhs.head(n) = instance.external;
  AddBudgetRow(instance, n, n + 1, budget, lp);
  lp.upper_bounds.segment(1, n) = derived.total_liabilities;

  const lp::LpSolution solution = lp::Solve(lp);
  DesignResult result;
  result.iterations = solution.iterations;
  switch (solution.status) {
    case lp::Status::kOptimal:
      TakeBuffer(instance, solution, n + 1, result);
      result.status = DesignStatus::kOptimal;
      result.objective = ExtendedReal::Finite(solution.primal[0]);
      break;
    case lp::Status::kUnbounded:
      result.status = DesignStatus::kOptimal;
      result.objective = ExtendedReal::Infinity();
      result.buffer = Eigen::VectorXd::Zero(n);
      break;
    case lp::Status::kInfeasible:
      result.status = DesignStatus::kInfeasible;
      result.buffer = Eigen::VectorXd::Zero(n);
      break;
  }
  return result;
}

lp::LinearProgram BuildMinLossLinfLp(const NetworkInstance& instance,
                                     const DerivedQuantities& derived,
                                     double radius, double budget) {
  const int n = instance.num_banks();
  lp::LinearProgram lp = lp::LinearProgram::Zeros(n + 1, 2 * n);
  lp.objective.head(n).setConstant(-1.0);
  internal::AddClearingRows(derived.relative_liabilities, 0, 0, n,
                            lp.inequality_lhs);
  lp.inequality_rhs.head(n) =
      instance.external - radius * derived.stress_vector_linf;
  AddBudgetRow(instance, n, n, budget, lp);
  lp.upper_bounds.head(n) = derived.total_liabilities;
  return lp;
}

lp::LinearProgram BuildMinLossL1Lp(const NetworkInstance& instance,
                                   const DerivedQuantities& derived,
                                   double radius, double budget) {
  const int n = instance.num_banks();
  const int m = instance.num_assets();
  const int blocks = std::max(1, m);
  const int first_payment = 1 + n;
  const int clearing_row = blocks;
  const int rows = blocks + blocks * n + 1;
  const int cols = 1 + n + blocks * n;
  const double total = derived.total_liabilities.sum();

  lp::LinearProgram lp = lp::LinearProgram::Zeros(rows, cols);
  lp.objective[0] = 1.0;
  lp.lower_bounds[0] = -lp::kInfinity;
  for (int k = 0; k < blocks; ++k) {
    const int payment_col = first_payment + k * n;
    // -t - 1'p(k) <= -1'p̄
    lp.inequality_lhs(k, 0) = -1.0;
    lp.inequality_lhs.block(k, payment_col, 1, n).setConstant(-1.0);
    lp.inequality_rhs[k] = -total;

    const int row = clearing_row + k * n;
    internal::AddClearingRows(derived.relative_liabilities, row, payment_col,
                              1, lp.inequality_lhs);
    Eigen::VectorXd rhs = instance.external;
    if (m > 0) rhs -= radius * derived.asset_columns.col(k);
    lp.inequality_rhs.segment(row, n) = rhs;
    lp.upper_bounds.segment(payment_col, n) = derived.total_liabilities;
  }
  AddBudgetRow(instance, rows - 1, 1, budget, lp);
  return lp;
}

DesignResult MinLossLinf(const NetworkInstance& instance, double radius,
                         double budget) {
  CheckRadius(radius);
  CheckBudget(budget);
  const DerivedQuantities derived = Derive(instance);
  const int n = instance.num_banks();
  const lp::LpSolution solution =
      lp::Solve(BuildMinLossLinfLp(instance, derived, radius, budget));

  DesignResult result;
  TakeBuffer(instance, solution, n, result);
  if (solution.status != lp::Status::kOptimal) {
    result.status = DesignStatus::kInfeasible;
    result.objective = ExtendedReal::Infinity();
    return result;
  }
  result.status = DesignStatus::kOptimal;
  result.objective = ExtendedReal::Finite(std::max(
      0.0, (derived.total_liabilities - solution.primal.head(n)).sum()));
  return result;
}

DesignResult MinLossL1(const NetworkInstance& instance, double radius,
                       double budget) {
  CheckRadius(radius);
  CheckBudget(budget);
  const DerivedQuantities derived = Derive(instance);
  const int n = instance.num_banks();
  const int blocks = std::max(1, instance.num_assets());
  const lp::LpSolution solution =
      lp::Solve(BuildMinLossL1Lp(instance, derived, radius, budget));

  DesignResult result;
  TakeBuffer(instance, solution, 1, result);
  if (solution.status != lp::Status::kOptimal) {
    result.status = DesignStatus::kInfeasible;
    result.objective = ExtendedReal::Infinity();
    return result;
  }
  double worst = 0.0;
  for (int k = 0; k < blocks; ++k) {
    const auto payments = solution.primal.segment(1 + n + k * n, n);
    worst = std::max(worst, (derived.total_liabilities - payments).sum());
  }
  result.status = DesignStatus::kOptimal;
  result.objective = ExtendedReal::Finite(worst);
  return result;
}

DesignResult MinLoss(const NetworkInstance& instance,
                     const UncertaintyModel& uncertainty, double budget) {
  return uncertainty.norm == Norm::kLInf
             ? MinLossLinf(instance, uncertainty.radius, budget)
             : MinLossL1(instance, uncertainty.radius, budget);
}

BufferAllocation BaselineUniform(const NetworkInstance& instance,
                                 double budget) {
  CheckBudget(budget);
  const int n = instance.num_banks();
  BufferAllocation allocation;
  allocation.budget_cap = budget;
  allocation.buffer = Eigen::VectorXd::Zero(n);
  if (n == 0) return allocation;
  for (int i = 0; i < n; ++i) {
    allocation.buffer[i] = budget / (n * instance.costs[i]);
  }
  allocation.spend = instance.costs.dot(allocation.buffer);
  return allocation;
}

BufferAllocation BaselineExposureProportional(const NetworkInstance& instance,
                                              double budget, Norm norm) {
  CheckBudget(budget);
  const Eigen::VectorXd alpha = Derive(instance).exposure_scores(norm);
  const double total = alpha.sum();
  if (!(total > 0.0)) return BaselineUniform(instance, budget);
  BufferAllocation allocation;
  allocation.budget_cap = budget;
  allocation.buffer =
      (budget * alpha / total).cwiseQuotient(instance.costs);
  allocation.spend = instance.costs.dot(allocation.buffer);
  return allocation;
}

const char* PolicyName(Policy policy) {
  switch (policy) {
    case Policy::kOptMargin:
      return "opt_margin";
    case Policy::kOptLoss:
      return "opt_loss";
    case Policy::kUniform:
      return "uniform";
    case Policy::kExposureProportional:
      return "exposure_proportional";
    case Policy::kMarginThenLoss:
      return "margin_then_loss";
  }
  return "unknown";
}

std::vector<Policy> ParsePolicies(std::string_view list) {
  std::vector<Policy> policies;
  auto add = [&policies](Policy p) {
    if (std::find(policies.begin(), policies.end(), p) == policies.end()) {
      policies.push_back(p);
    }
  };
  size_t start = 0;
  while (start <= list.size()) {
    size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string name(list.substr(start, end - start));
    name.erase(std::remove_if(name.begin(), name.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               name.end());
    if (name == "opt") {
      add(Policy::kOptMargin);
      add(Policy::kOptLoss);
    } else if (name == "opt_margin") {
      add(Policy::kOptMargin);
    } else if (name == "opt_loss") {
      add(Policy::kOptLoss);
    } else if (name == "uniform") {
      add(Policy::kUniform);
    } else if (name == "expprop" || name == "exposure_proportional") {
      add(Policy::kExposureProportional);
    } else if (name == "margin" || name == "margin_then_loss") {
      add(Policy::kMarginThenLoss);
    } else if (!name.empty()) {
      throw ParseError("unknown policy '" + name + "'");
    }
    start = end + 1;
  }
  if (policies.empty()) throw ParseError("empty policy list");
  return policies;
}

const char* MetricName(Metric metric) {
  return metric == Metric::kMargin ? "margin" : "loss";
}

namespace {

struct SweepCell {
  double budget;
  Policy policy;
  Metric metric;
};

void EvaluateCell(const NetworkInstance& instance, const SweepOptions& options,
                  const SweepCell& cell, SweepRow& row) {
  row.budget = cell.budget;
  row.policy = cell.policy;
  row.metric = cell.metric;
  const int n = instance.num_banks();
  row.buffer = Eigen::VectorXd::Zero(n);
  try {
    const UncertaintyModel model{options.norm, options.radius.value_or(0.0)};
    auto take_allocation = [&](const BufferAllocation& allocation) {
      row.buffer = allocation.buffer;
      row.spend = allocation.spend;
      if (cell.metric == Metric::kMargin) {
        row.value = DefaultMargin(instance, allocation.buffer, options.norm);
      } else {
        row.value =
            ComputeWorstCaseLoss(instance, allocation.buffer, model).loss;
      }
    };
    switch (cell.policy) {
      case Policy::kOptMargin: {
        const DesignResult design =
            MaxDefaultMargin(instance, cell.budget, options.norm);
        row.buffer = design.buffer;
        row.spend = design.spend;
        row.value = design.objective;
        break;
      }
      case Policy::kOptLoss: {
        const DesignResult design = MinLoss(instance, model, cell.budget);
        row.buffer = design.buffer;
        row.spend = design.spend;
        row.value = design.objective;
        break;
      }
      case Policy::kMarginThenLoss: {
        const DesignResult design =
            MaxDefaultMargin(instance, cell.budget, options.norm);
        row.buffer = design.buffer;
        row.spend = design.spend;
        row.value = ComputeWorstCaseLoss(instance, design.buffer, model).loss;
        break;
      }
      case Policy::kUniform:
        take_allocation(BaselineUniform(instance, cell.budget));
        break;
      case Policy::kExposureProportional:
        take_allocation(
            BaselineExposureProportional(instance, cell.budget, options.norm));
        break;
    }
  } catch (const Error& e) {
    row.value.reset();
    row.note = e.what();
  }
}

}  // namespace

std::vector<SweepRow> Sweep(const NetworkInstance& instance,
                            const SweepOptions& options) {
  for (size_t i = 0; i < options.budgets.size(); ++i) {
    CheckBudget(options.budgets[i]);
    if (i > 0 && options.budgets[i] < options.budgets[i - 1]) {
      throw PreconditionError("budget grid must be nondecreasing");
    }
  }
  if (options.radius) CheckRadius(*options.radius);

  std::vector<SweepCell> cells;
  for (double budget : options.budgets) {
    for (Policy policy : options.policies) {
      const bool has_margin = policy == Policy::kOptMargin ||
                              policy == Policy::kUniform ||
                              policy == Policy::kExposureProportional;
      const bool has_loss = options.radius.has_value() &&
                            policy != Policy::kOptMargin;
      if (has_margin) cells.push_back({budget, policy, Metric::kMargin});
      if (has_loss) cells.push_back({budget, policy, Metric::kLoss});
    }
  }

  std::vector<SweepRow> rows(cells.size());
  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min<int>(threads, static_cast<int>(cells.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) {
      EvaluateCell(instance, options, cells[i], rows[i]);
    }
    return rows;
  }

  std::atomic<size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (size_t i = next++; i < cells.size(); i = next++) {
        EvaluateCell(instance, options, cells[i], rows[i]);
      }
    });
  }
  workers.clear();  // joins
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow>& rows, int num_banks,
                   std::ostream& out) {
  out << "budget,policy,metric,value,spend";
  for (int i = 1; i <= num_banks; ++i) out << ",b_" << i;
  out << '\n';
  for (const SweepRow& row : rows) {
    out << FormatNumber(row.budget) << ',' << PolicyName(row.policy) << ','
        << MetricName(row.metric) << ','
        << (row.value ? FormatNumber(*row.value) : std::string()) << ','
        << FormatNumber(row.spend);
    for (int i = 0; i < num_banks; ++i) {
      out << ',';
      if (i < row.buffer.size()) out << FormatNumber(row.buffer[i]);
    }
    out << '\n';
  }
}

namespace {

double ParseDouble(std::string_view text) {
  std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size()) {
    throw ParseError("invalid number '" + owned + "' in budget grid");
  }
  return value;
}

}  // namespace

std::vector<double> ParseBudgetGrid(std::string_view text) {
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const size_t a = text.find(':');
    const size_t b = text.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw ParseError("budget grid must be start:stop:step");
    }
    const double start = ParseDouble(text.substr(0, a));
    const double stop = ParseDouble(text.substr(a + 1, b - a - 1));
    const double step = ParseDouble(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) {
      throw ParseError("budget grid needs step > 0 and stop >= start");
    }
    const auto count =
        static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      grid.push_back(RoundSignificant(start + static_cast<double>(i) * step));
    }
    return grid;
  }
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    grid.push_back(ParseDouble(text.substr(start, end - start)));
    if (grid.size() > 1 && grid.back() < grid[grid.size() - 2]) {
      throw ParseError("budget list must be nondecreasing");
    }
    start = end + 1;
  }
  return grid;
}

}  // namespace buffernet
