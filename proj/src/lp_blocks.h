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

#ifndef BUFFERNET_SRC_LP_BLOCKS_H_
#define BUFFERNET_SRC_LP_BLOCKS_H_

#include <Eigen/Dense>

namespace buffernet::internal {

// Writes the clearing rows  (I - A') p  [- b]  <= rhs  into `g`, with the
// payment block starting at column `payment_col` and, when `buffer_col` is
// nonnegative, the buffer block at `buffer_col`.
inline void AddClearingRows(const Eigen::MatrixXd& relative, int row,
                            int payment_col, int buffer_col,
                            Eigen::MatrixXd& g) {
  const auto n = relative.rows();
  g.block(row, payment_col, n, n) =
      Eigen::MatrixXd::Identity(n, n) - relative.transpose();
  if (buffer_col >= 0) {
    g.block(row, buffer_col, n, n) = -Eigen::MatrixXd::Identity(n, n);
  }
}

}  // namespace buffernet::internal

#endif  // BUFFERNET_SRC_LP_BLOCKS_H_
