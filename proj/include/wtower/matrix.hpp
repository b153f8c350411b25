#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtower/integer.hpp"

namespace wtower {

// Sorted sparse integer vector without zero entries.
class SparseVec {
 public:
  struct Term {
    std::size_t index;
    Integer coeff;
    bool operator==(const Term&) const = default;
  };

  SparseVec() = default;
  static SparseVec unit(std::size_t index, Integer coeff = 1);
  // Sums duplicate indices and drops zeros.
  static SparseVec from_pairs(std::vector<std::pair<std::size_t, Integer>> pairs);
  static SparseVec from_dense(const std::vector<Integer>& dense);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer get(std::size_t index) const;
  std::vector<Integer> to_dense(std::size_t length) const;

  // *this += c * other
  SparseVec& add_scaled(const SparseVec& other, const Integer& c);
  SparseVec& operator+=(const SparseVec& other) { return add_scaled(other, 1); }
  SparseVec& operator-=(const SparseVec& other) { return add_scaled(other, -1); }
  SparseVec& scale(const Integer& c);
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const Integer& c, SparseVec a) { return a.scale(c); }
  SparseVec operator-() const { return Integer(-1) * *this; }
  bool operator==(const SparseVec&) const = default;

 private:
  std::vector<Term> terms_;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols,
                                std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> row(std::size_t r) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  std::vector<Integer> apply(const std::vector<Integer>& v) const;
  bool operator==(const IntMatrix&) const = default;
  std::string to_string() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& c);
  // col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& c);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix S;     // S = U * M * V
  IntMatrix U;     // unimodular, rows x rows
  IntMatrix V;     // unimodular, cols x cols
  IntMatrix Uinv;  // inverse of U
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;  // first `rank` diagonal entries
};

// Smith normal form with transforms. Nonzero diagonal entries are positive
// and form a divisibility chain.
SmithForm smith_normal_form(const IntMatrix& M);

// Lattice spanned by the columns of a matrix, kept in column Hermite form.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(const IntMatrix& generators);

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return pivots_.size(); }
  bool contains(const std::vector<Integer>& y) const;
  // Coefficients x with generators * x = y, if y lies in the lattice.
  std::optional<std::vector<Integer>> solve(const std::vector<Integer>& y) const;
  // Basis of the integer relations among the generating columns.
  std::vector<std::vector<Integer>> kernel() const;
  const IntMatrix& hermite() const { return H_; }
  const IntMatrix& transform() const { return V_; }

 private:
  std::size_t dim_ = 0;
  std::size_t ngens_ = 0;
  IntMatrix H_;  // dim x ngens, columns [pivot columns | zero columns]
  IntMatrix V_;  // generators * V = H
  std::vector<std::size_t> pivots_;  // pivot row of column j, increasing
};

// Column Hermite form of M with transform: M * V = H.
std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix& M);

}  // namespace wtower
