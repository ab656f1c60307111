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

#ifndef BUFFERNET_TESTS_TEST_UTIL_H_
#define BUFFERNET_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "buffernet/network.h"

namespace buffernet::testing {

// Two banks, one asset. Bank 1 owes bank 2 one unit; bank 2 owes nothing.
inline NetworkInstance Tiny2() {
  NetworkInstance instance;
  instance.liabilities.resize(2, 2);
  instance.liabilities << 0.0, 1.0, 0.0, 0.0;
  instance.portfolio.resize(2, 1);
  instance.portfolio << 1.0, 2.0;
  instance.external.resize(2);
  instance.external << 1.5, 0.2;
  instance.costs = Eigen::VectorXd::Ones(2);
  instance.names = {"bank_1", "bank_2"};
  return instance;
}

inline Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

struct RandomInstanceOptions {
  int n = 5;
  int m = 3;
  double link_probability = 0.5;
  bool nonnegative_portfolio = false;
  // Back-solve the external inflow so that every nominal margin lies in
  // [margin_low, margin_high].
  double margin_low = 0.1;
  double margin_high = 1.0;
  bool random_costs = false;
};

inline NetworkInstance RandomInstance(std::mt19937_64& rng,
                                      const RandomInstanceOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = options.n;
  const int m = options.m;
  NetworkInstance instance;
  instance.liabilities = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && unit(rng) < options.link_probability) {
        instance.liabilities(i, j) = 0.1 + 2.0 * unit(rng);
      }
    }
  }
  instance.portfolio.resize(n, m);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      instance.portfolio(i, k) = options.nonnegative_portfolio
                                     ? 2.0 * unit(rng)
                                     : 4.0 * unit(rng) - 2.0;
    }
  }
  instance.costs = Eigen::VectorXd::Ones(n);
  if (options.random_costs) {
    for (int i = 0; i < n; ++i) instance.costs[i] = 0.5 + unit(rng);
  }
  for (int i = 0; i < n; ++i) instance.names.push_back("b" + std::to_string(i));

  Eigen::VectorXd margin(n);
  for (int i = 0; i < n; ++i) {
    margin[i] = options.margin_low +
                (options.margin_high - options.margin_low) * unit(rng);
  }
  instance.external = Eigen::VectorXd::Zero(n);
  const DerivedQuantities d = Derive(instance);
  instance.external = margin -
                      d.relative_liabilities.transpose() * d.total_liabilities +
                      d.total_liabilities;
  return instance;
}

}  // namespace buffernet::testing

#endif  // BUFFERNET_TESTS_TEST_UTIL_H_
