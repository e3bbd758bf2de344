#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "dlcat/laurent.hpp"

namespace dlcat {

// Dense rectangular matrix over Z with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(const BigInt& c) const;
  IntMatrix transpose() const;
  bool is_identity() const;
  bool is_diagonal() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  // Exact determinant (fraction-free elimination). Square matrices only.
  BigInt determinant() const;

  std::vector<long> to_longs() const;
  std::string to_string() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& c);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& c);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithForm {
  IntMatrix D;  // diagonal, d1 | d2 | ..., di >= 0
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix V;  // unimodular, cols x cols
  // Diagonal entries d1..d_min(rows, cols).
  std::vector<BigInt> invariants() const;
};

// U * M * V = D.
SmithForm smith_normal_form(const IntMatrix& M);

}  // namespace dlcat
