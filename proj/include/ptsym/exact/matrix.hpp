// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ptsym/exact/rational.hpp"

namespace ptsym {

/// Row-major dense matrix over any value type; used for exact blocks.
template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const S& xik = x(i, k);
        if (is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          if (is_zero(y(k, j))) continue;
          r(i, j) += xik * y(k, j);
        }
      }
    }
    return r;
  }

  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  bool is_zero_matrix() const {
    for (const auto& v : data_) {
      if (!is_zero(v)) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

}  // namespace ptsym
