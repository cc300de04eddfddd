#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toric/integer.hpp"

namespace toric {

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  std::vector<IntVector> row_vectors() const;
  std::vector<IntVector> column_vectors() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Integer& k);
  void add_column_multiple(std::size_t a, std::size_t b, const Integer& k);
  void negate_row(std::size_t r);
  void negate_column(std::size_t c);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& a);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& a);
std::size_t rank(const std::vector<IntVector>& vectors, std::size_t dim);

IntMatrix power(const IntMatrix& a, unsigned exponent);

std::string to_string(const IntMatrix& a);

}  // namespace toric
