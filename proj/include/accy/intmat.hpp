#pragma once

// Dense arbitrary-precision integer matrices with the two normal forms the
// lattice modules rely on: row Hermite form (with unimodular row transform)
// and Smith form (with transforms on both sides).

#include "accy/numeric.hpp"

namespace accy {

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("IntMatrix: dimensions must be positive");
  }
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<Vec3>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void scale_row(int i, const Int& s);
  // row i += s * row j
  void add_row(int i, int j, const Int& s);
  void add_col(int i, int j, const Int& s);

  Int det() const;           // square only; exact Bareiss elimination
  int rank() const;          // rank over Q
  IntMatrix inverse_unimodular() const;  // requires |det| = 1

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

struct HnfResult {
  IntMatrix h;  // row Hermite normal form
  IntMatrix u;  // unimodular, u*m = h
};

struct SnfResult {
  IntMatrix s;  // diagonal, d_i | d_{i+1}
  IntMatrix u;  // unimodular
  IntMatrix v;  // unimodular, u*m*v = s
};

// Row-style Hermite normal form: pivots positive, entries above a pivot
// reduced into [0, pivot).
HnfResult hnf(const IntMatrix& m);

SnfResult snf(const IntMatrix& m);

// Invariant factors d_1 | d_2 | ... (nonzero diagonal of the Smith form).
std::vector<Int> invariant_factors(const IntMatrix& m);

// Unimodular matrix whose first row is the given primitive vector.
IntMatrix complete_to_unimodular(const Vec3& w);

}  // namespace accy
