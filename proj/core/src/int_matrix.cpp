#include "invlim/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "invlim/error.hpp"

namespace invlim {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows, std::size_t cols)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : cols) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  IntMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  }
  return b;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
  }
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
  IntMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes");
  IntMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
  }
  return out;
}

IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack column counts");
  IntMatrix out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

IntMatrix hstack(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows() != right.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack row counts");
  IntMatrix out(left.rows(), left.cols() + right.cols());
  out.set_block(0, 0, left);
  out.set_block(0, left.cols(), right);
  return out;
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm f{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0};
  IntMatrix& a = f.d;

  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    a.add_row_multiple(dst, src, q);
    f.u.add_row_multiple(dst, src, q);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    a.add_col_multiple(dst, src, q);
    f.v.add_col_multiple(dst, src, q);
  };

  const std::size_t diag = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < diag; ++t) {
    for (;;) {
      // Least |entry| in the remaining block, first in row-major order.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (pr == rows || abs(a(i, j)) < abs(a(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) break;  // block is zero
      a.swap_rows(t, pr);
      f.u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      f.v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_op(i, t, -(a(i, t) / a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column are clear; enforce d_t | every remaining entry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            row_op(t, i, BigInt(1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a(t, t) == 0) break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      f.u.negate_row(t);
    }
  }
  f.rank = t;
  return f;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix row_lattice_basis(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on the column below r until a single nonzero remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
      }
      if (best == rows) break;
      a.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row_multiple(i, r, -(a(i, c) / a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = a(i, c) / a(r, c);
      if (a(i, c) % a(r, c) < 0) q -= 1;
      a.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return a.block(0, 0, r, cols);
}

std::size_t rank(const IntMatrix& m) { return row_lattice_basis(m).rows(); }

IntMatrix integer_kernel(const IntMatrix& m) {
  auto f = smith_normal_form(m);
  const std::size_t cols = m.cols();
  IntMatrix basis(cols - f.rank, cols);
  for (std::size_t k = f.rank; k < cols; ++k) {
    for (std::size_t r = 0; r < cols; ++r) basis(k - f.rank, r) = f.v(r, k);
  }
  return row_lattice_basis(basis);
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
  auto f = smith_normal_form(m);
  IntVector ub = f.u * b;
  IntVector z(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < f.rank) {
      if (ub[i] % f.d(i, i) != 0) return std::nullopt;
      z[i] = ub[i] / f.d(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return f.v * z;
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis_rows, const IntVector& v) {
  if (basis_rows.rows() == 0) {
    bool zero = std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
    if (zero) return IntVector{};
    return std::nullopt;
  }
  return solve_integer(basis_rows.transposed(), v);
}

}  // namespace invlim
