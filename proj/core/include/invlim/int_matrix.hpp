#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace invlim {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Row-wise literal; every row must have the same length. `cols` fixes the
  /// width when the list is empty.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows, std::size_t cols = 0);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transposed() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  /// Rows [r0, r0+nr) x cols [c0, c0+nc).
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& m);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;  // [[a,b],[c,d]]

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);

/// Stack vertically (same column count) / horizontally (same row count).
IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);

/// D = U * M * V with U, V unimodular and D diagonal, d1 | d2 | ..., all >= 0.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  std::size_t rank = 0;
  /// Nonzero diagonal entries of D, in order.
  std::vector<BigInt> diagonal() const;
};

/// Pivot rule: the nonzero entry of least absolute value in the remaining
/// block, ties broken in row-major order.
SmithForm smith_normal_form(const IntMatrix& m);

/// Exact determinant (fraction-free Bareiss elimination); square input only.
BigInt determinant(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Rows form a Z-basis of {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Some x with m x = b, or nothing if no integer solution exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

/// Row Hermite normal form with zero rows dropped: a canonical Z-basis of the
/// row lattice of m. Pivots positive, entries above each pivot reduced into [0, pivot).
IntMatrix row_lattice_basis(const IntMatrix& m);

/// Coordinates of the row vector v in the given row basis, or nothing if v
/// lies outside the lattice spanned by the rows.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis_rows, const IntVector& v);

}  // namespace invlim
