#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "weylns/checked.hpp"

namespace weylns {

/// Dense row-major integer matrix with checked arithmetic.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  /// Builds a matrix whose j-th column is `columns[j]`.
  static IntMatrix from_columns(const std::vector<std::vector<Int>>& columns);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Int> column(std::size_t c) const;
  std::vector<Int> row(std::size_t r) const;
  std::vector<std::vector<Int>> to_rows() const;

  IntMatrix transposed() const;
  std::vector<Int> apply(std::span<const Int> x) const;
  bool is_identity() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(Int s, const IntMatrix& a);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix power(const IntMatrix& m, int k);

/// x^T G y
Int bilinear(const IntMatrix& gram, std::span<const Int> x, std::span<const Int> y);

/// True iff M^T G M == G.
bool preserves_form(const IntMatrix& m, const IntMatrix& gram);

std::string to_string(const IntMatrix& m);

} // namespace weylns
