#include "accy/intmat.hpp"

#include <sstream>

namespace accy {

std::string bigfloat_str(const BigFloat& x, int digits) {
  mp_exp_t exp;
  std::string mant = x.get_str(exp, 10, 0);
  bool negative = !mant.empty() && mant[0] == '-';
  if (negative) mant = mant.substr(1);
  if (mant.empty()) mant = "0";
  // value = 0.mant * 10^exp
  std::string out;
  std::string intpart, fracpart;
  if (exp <= 0) {
    intpart = "0";
    fracpart = std::string(size_t(-exp), '0') + mant;
  } else if (size_t(exp) >= mant.size()) {
    intpart = mant + std::string(size_t(exp) - mant.size(), '0');
    fracpart = "";
  } else {
    intpart = mant.substr(0, size_t(exp));
    fracpart = mant.substr(size_t(exp));
  }
  if (int(fracpart.size()) > digits) fracpart = fracpart.substr(0, size_t(digits));
  while (int(fracpart.size()) < digits) fracpart += '0';
  out = (negative ? "-" : "") + intpart;
  if (digits > 0) out += "." + fracpart;
  return out;
}

double GRat::abs_double() const {
  BigFloat n = big(norm2());
  BigFloat r;
  mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
  return r.get_d();
}

std::string GRat::str() const {
  if (im == 0) return re.get_str();
  std::ostringstream os;
  os << re.get_str() << (im > 0 ? "+" : "-");
  Rat a = abs(im);
  if (a != 1) os << a.get_str() << "*";
  os << "i";
  return os.str();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = int(rows.size());
  cols_ = rows_ ? int(rows.begin()->size()) : 0;
  if (rows_ <= 0 || cols_ <= 0) throw std::invalid_argument("IntMatrix: dimensions must be positive");
  a_.reserve(size_t(rows_) * cols_);
  for (const auto& r : rows) {
    if (int(r.size()) != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (long v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec3>& rows) {
  IntMatrix m(int(rows.size()), 3);
  for (int i = 0; i < int(rows.size()); ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = rows[size_t(i)][size_t(j)];
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool IntMatrix::is_zero() const {
  for (const Int& x : a_)
    if (x != 0) return false;
  return true;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::scale_row(int i, const Int& s) {
  for (int k = 0; k < cols_; ++k) at(i, k) *= s;
}

void IntMatrix::add_row(int i, int j, const Int& s) {
  if (s == 0) return;
  for (int k = 0; k < cols_; ++k) at(i, k) += s * at(j, k);
}

void IntMatrix::add_col(int i, int j, const Int& s) {
  if (s == 0) return;
  for (int k = 0; k < rows_; ++k) at(k, i) += s * at(k, j);
}

Int IntMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det: square matrices only");
  int n = rows_;
  IntMatrix m = *this;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = t / prev;  // exact division (Bareiss)
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

int IntMatrix::rank() const {
  IntMatrix m = *this;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int p = -1;
    for (int i = r; i < rows_; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    m.swap_rows(r, p);
    for (int i = r + 1; i < rows_; ++i) {
      if (m.at(i, c) == 0) continue;
      Int g = gcd(m.at(r, c), m.at(i, c));
      Int fr = m.at(i, c) / g, fi = m.at(r, c) / g;
      for (int j = c; j < cols_; ++j) m.at(i, j) = m.at(i, j) * fi - m.at(r, j) * fr;
    }
    ++r;
  }
  return r;
}

IntMatrix IntMatrix::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: |det| != 1");
  int n = rows_;
  // adjugate via cofactors; n is small everywhere this is used
  IntMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix minor(n - 1 > 0 ? n - 1 : 1, n - 1 > 0 ? n - 1 : 1);
      if (n == 1) {
        inv.at(0, 0) = d;
        continue;
      }
      int mi = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int mj = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(mi, mj) = at(r, c);
          ++mj;
        }
        ++mi;
      }
      Int cof = minor.det();
      if ((i + j) % 2 == 1) cof = -cof;
      inv.at(j, i) = cof * d;  // adjugate transposed, divided by det (= ±1)
    }
  return inv;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
  }
  os << "]";
  return os.str();
}

namespace {

// Eliminate m(i2,c) against pivot m(i1,c) by a unimodular 2-row combination,
// mirroring every operation on u.
void row_gcd_step(IntMatrix& m, IntMatrix& u, int i1, int i2, int c) {
  const Int a = m.at(i1, c), b = m.at(i2, c);
  if (b == 0) return;
  Int g, p, q;
  mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int af = a / g, bf = b / g;
  // [p q; -bf af] has determinant p*af + q*bf = (pa + qb)/g = 1
  for (IntMatrix* t : {&m, &u}) {
    int n = t->cols();
    for (int j = 0; j < n; ++j) {
      Int x = t->at(i1, j), y = t->at(i2, j);
      t->at(i1, j) = p * x + q * y;
      t->at(i2, j) = af * y - bf * x;
    }
  }
}

}  // namespace

HnfResult hnf(const IntMatrix& m0) {
  if (m0.is_zero()) throw std::invalid_argument("hnf: zero matrix");
  IntMatrix m = m0;
  IntMatrix u = IntMatrix::identity(m.rows());
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r) { m.swap_rows(r, p); u.swap_rows(r, p); }
    for (int i = r + 1; i < m.rows(); ++i) row_gcd_step(m, u, r, i, c);
    if (m.at(r, c) < 0) { m.scale_row(r, -1); u.scale_row(r, -1); }
    // reduce entries above the pivot into [0, pivot)
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(r, c).get_mpz_t());
      m.add_row(i, r, -q);
      u.add_row(i, r, -q);
    }
    ++r;
  }
  return {m, u};
}

SnfResult snf(const IntMatrix& m0) {
  if (m0.is_zero()) throw std::invalid_argument("snf: zero matrix");
  IntMatrix s = m0;
  IntMatrix u = IntMatrix::identity(s.rows());
  IntMatrix v = IntMatrix::identity(s.cols());
  int n = std::min(s.rows(), s.cols());

  auto col_gcd_step = [&](int j1, int j2, int r) {
    const Int a = s.at(r, j1), b = s.at(r, j2);
    if (b == 0) return;
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int af = a / g, bf = b / g;
    for (IntMatrix* t : {&s, &v}) {
      int rows = t->rows();
      for (int i = 0; i < rows; ++i) {
        Int x = t->at(i, j1), y = t->at(i, j2);
        t->at(i, j1) = p * x + q * y;
        t->at(i, j2) = af * y - bf * x;
      }
    }
  };

  for (int k = 0; k < n; ++k) {
    // move a nonzero entry into (k,k)
    int pi = -1, pj = -1;
    for (int i = k; i < s.rows() && pi < 0; ++i)
      for (int j = k; j < s.cols(); ++j)
        if (s.at(i, j) != 0) { pi = i; pj = j; break; }
    if (pi < 0) break;
    if (pi != k) { s.swap_rows(k, pi); u.swap_rows(k, pi); }
    if (pj != k) { s.swap_cols(k, pj); v.swap_cols(k, pj); }
    // alternate row/column elimination until the cross is clear
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = k + 1; i < s.rows(); ++i)
        if (s.at(i, k) != 0) { row_gcd_step(s, u, k, i, k); dirty = true; }
      for (int j = k + 1; j < s.cols(); ++j)
        if (s.at(k, j) != 0) { col_gcd_step(k, j, k); dirty = true; }
    }
    if (s.at(k, k) < 0) { s.scale_row(k, -1); u.scale_row(k, -1); }
  }
  // enforce divisibility d_k | d_{k+1}
  for (bool again = true; again;) {
    again = false;
    for (int k = 0; k + 1 < n; ++k) {
      Int a = s.at(k, k), b = s.at(k + 1, k + 1);
      if (a == 0 || b == 0 || b % a == 0) continue;
      // fold column k+1 into column k and re-clear the 2x2 block
      s.add_col(k, k + 1, 1);
      v.add_col(k, k + 1, 1);
      row_gcd_step(s, u, k, k + 1, k);
      for (int j = k + 1; j < s.cols(); ++j)
        if (s.at(k, j) != 0) col_gcd_step(k, j, k);
      for (int i = k + 1; i < s.rows(); ++i)
        if (s.at(i, k) != 0) row_gcd_step(s, u, k, i, k);
      if (s.at(k, k) < 0) { s.scale_row(k, -1); u.scale_row(k, -1); }
      if (s.at(k + 1, k + 1) < 0) { s.scale_row(k + 1, -1); u.scale_row(k + 1, -1); }
      again = true;
    }
  }
  return {s, u, v};
}

std::vector<Int> invariant_factors(const IntMatrix& m) {
  SnfResult r = snf(m);
  std::vector<Int> out;
  int n = std::min(r.s.rows(), r.s.cols());
  for (int i = 0; i < n; ++i)
    if (r.s.at(i, i) != 0) out.push_back(r.s.at(i, i));
  return out;
}

IntMatrix complete_to_unimodular(const Vec3& w) {
  Int g = gcd(gcd(w[0], w[1]), w[2]);
  if (g != 1) throw std::invalid_argument("complete_to_unimodular: vector not primitive");
  // column-HNF the 1x3 row w: find unimodular V with w*V = (1,0,0);
  // then the first row of V^{-1} is w.
  IntMatrix row(1, 3);
  for (int j = 0; j < 3; ++j) row.at(0, j) = w[size_t(j)];
  HnfResult r = hnf(row.transpose());  // u * w^T = (g,0,0)^T
  // u*w^T = e1 means first row of u has dot 1 with w; rows of u form a basis.
  // We want first ROW = w itself: take U = (u^{-1} with columns permuted)?
  // Simpler: u * w^T = e1^T  =>  w = (u^{-1}) e1 as a column = first column of
  // u^{-1}. So u^{-1} has first COLUMN w; transpose to get first ROW w with
  // the transpose of an inverse still unimodular.
  IntMatrix uinv = r.u.inverse_unimodular();
  IntMatrix m = uinv.transpose();
  // sanity: first row equals w
  for (int j = 0; j < 3; ++j)
    if (m.at(0, j) != w[size_t(j)]) throw std::logic_error("complete_to_unimodular: construction failed");
  return m;
}

}  // namespace accy
