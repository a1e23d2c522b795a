#include "weylns/matrix.hpp"

#include <sstream>

namespace weylns {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Int>>& columns) {
  if (columns.empty()) return {};
  IntMatrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m.rows()) throw Error(ErrorCode::ShapeError, "ragged columns");
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorCode::ShapeError, "ragged rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Int> IntMatrix::column(std::size_t c) const {
  std::vector<Int> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Int> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<std::vector<Int>> IntMatrix::to_rows() const {
  std::vector<std::vector<Int>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<Int> IntMatrix::apply(std::span<const Int> x) const {
  if (x.size() != cols_) throw Error(ErrorCode::ShapeError, "matrix-vector size mismatch");
  std::vector<Int> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Int acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (Int a = (*this)(r, c)) acc = fma(acc, a, x[c]);
    y[r] = acc;
  }
  return y;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeError, "matrix product size mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (Int bkj = b(k, j)) out(i, j) = fma(out(i, j), aik, bkj);
    }
  return out;
}

IntMatrix operator*(Int s, const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& x : out.data_) x = mul(s, x);
  return out;
}

IntMatrix power(const IntMatrix& m, int k) {
  IntMatrix out = IntMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

Int bilinear(const IntMatrix& gram, std::span<const Int> x, std::span<const Int> y) {
  if (x.size() != gram.rows() || y.size() != gram.cols())
    throw Error(ErrorCode::ShapeError, "vector does not match the Gram matrix");
  Int acc = 0;
  for (std::size_t r = 0; r < gram.rows(); ++r) {
    if (x[r] == 0) continue;
    Int row = 0;
    for (std::size_t c = 0; c < gram.cols(); ++c)
      if (Int g = gram(r, c)) row = fma(row, g, y[c]);
    acc = fma(acc, x[r], row);
  }
  return acc;
}

bool preserves_form(const IntMatrix& m, const IntMatrix& gram) {
  if (m.rows() != gram.rows() || m.cols() != gram.cols()) return false;
  return m.transposed() * gram * m == gram;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os.str();
}

} // namespace weylns
