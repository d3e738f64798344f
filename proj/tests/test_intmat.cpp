#include "accy/intmat.hpp"

#include <doctest.h>

#include <random>

using namespace accy;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int span) {
  std::uniform_int_distribution<int> dist(-span, span);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
  return m;
}

bool is_unimodular(const IntMatrix& u) {
  Int d = u.det();
  return d == 1 || d == -1;
}

bool is_row_hnf(const IntMatrix& h) {
  int prev_col = -1;
  bool seen_zero_row = false;
  for (int i = 0; i < h.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < h.cols(); ++j)
      if (h.at(i, j) != 0) { lead = j; break; }
    if (lead < 0) { seen_zero_row = true; continue; }
    if (seen_zero_row) return false;          // zero rows must trail
    if (lead <= prev_col) return false;       // pivots strictly right
    if (h.at(i, lead) <= 0) return false;     // positive pivot
    for (int k = 0; k < i; ++k) {
      if (h.at(k, lead) < 0 || h.at(k, lead) >= h.at(i, lead)) return false;
    }
    prev_col = lead;
  }
  return true;
}

}  // namespace

TEST_CASE("hnf identity and diagonal cases") {
  IntMatrix id = IntMatrix::identity(3);
  HnfResult r = hnf(id);
  CHECK(r.h == id);
  CHECK(r.u == id);

  IntMatrix d{{2, 0}, {0, 3}};
  HnfResult r2 = hnf(d);
  CHECK(r2.h == d);
  CHECK(r2.u == IntMatrix::identity(2));
}

TEST_CASE("hnf of the conifold rays confirms they span Z^3") {
  IntMatrix m{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
  HnfResult r = hnf(m);
  CHECK(r.u * m == r.h);
  CHECK(is_unimodular(r.u));
  // diagonal (1,1,1) on the pivot rows, zero padding row
  CHECK(r.h.at(0, 0) == 1);
  CHECK(r.h.at(1, 1) == 1);
  CHECK(r.h.at(2, 2) == 1);
  for (int j = 0; j < 3; ++j) CHECK(r.h.at(3, j) == 0);
}

TEST_CASE("snf identity, worked 2x2, and smooth-cone basis") {
  SnfResult r = snf(IntMatrix::identity(2));
  CHECK(r.s == IntMatrix::identity(2));

  IntMatrix m{{2, 4}, {6, 8}};
  SnfResult r2 = snf(m);
  CHECK(r2.u * m * r2.v == r2.s);
  CHECK(is_unimodular(r2.u));
  CHECK(is_unimodular(r2.v));
  CHECK(r2.s.at(0, 0) == 2);
  CHECK(r2.s.at(1, 1) == 4);

  IntMatrix flat{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
  SnfResult r3 = snf(flat);
  CHECK(r3.s == IntMatrix::identity(3));
  CHECK(flat.det() == 1);
}

TEST_CASE("hnf/snf reassembly identities on random matrices") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + int(rng() % 4), cols = 1 + int(rng() % 4);
    IntMatrix m = random_matrix(rng, rows, cols, 9);
    if (m.is_zero()) continue;
    HnfResult h = hnf(m);
    CHECK(h.u * m == h.h);
    CHECK(is_unimodular(h.u));
    CHECK(is_row_hnf(h.h));
    SnfResult s = snf(m);
    CHECK(s.u * m * s.v == s.s);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    // diagonal with divisibility
    int n = std::min(rows, cols);
    for (int i = 0; i < s.s.rows(); ++i)
      for (int j = 0; j < s.s.cols(); ++j)
        if (i != j) CHECK(s.s.at(i, j) == 0);
    for (int i = 0; i + 1 < n; ++i) {
      if (s.s.at(i + 1, i + 1) != 0) {
        REQUIRE(s.s.at(i, i) != 0);
        CHECK(s.s.at(i + 1, i + 1) % s.s.at(i, i) == 0);
      }
    }
  }
}

TEST_CASE("complete_to_unimodular puts the vector in the first row") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Vec3 w{int(rng() % 19) - 9, int(rng() % 19) - 9, int(rng() % 19) - 9};
    if (is_zero(w)) continue;
    w = primitive(w);
    IntMatrix u = complete_to_unimodular(w);
    CHECK(is_unimodular(u));
    for (int j = 0; j < 3; ++j) CHECK(u.at(0, j) == w[size_t(j)]);
  }
}

TEST_CASE("bareiss determinant and unimodular inverse") {
  IntMatrix m{{2, 3, 1}, {0, 1, 4}, {5, 6, 0}};
  CHECK(m.det() == Int(2 * (1 * 0 - 4 * 6) - 3 * (0 * 0 - 4 * 5) + 1 * (0 * 6 - 1 * 5)));
  IntMatrix u{{1, 2, 0}, {0, 1, 3}, {0, 0, 1}};
  IntMatrix inv = u.inverse_unimodular();
  CHECK(u * inv == IntMatrix::identity(3));
}
