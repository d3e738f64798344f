#pragma once

// Reeb vector fields of a Gorenstein toric cone: the open Reeb polygon at
// height 3, the exact volume functional, its damped-Newton minimizer, and
// Dirichlet rational approximants.

#include "accy/toric.hpp"

namespace accy {

// A Reeb vector (3, a, b) in the cone's height-1 basis. Coordinates are held
// as exact rationals; irrational minimizers are represented by a rational
// iterate carrying well over 50 correct digits (denominator 10^60).
struct ReebVector {
  Rat a, b;
  bool exact = true;  // false when the value only approximates an irrational target

  QVec3 coords() const { return {Rat(3), a, b}; }
};

struct ReebPolygon {
  // strict inequalities p*x + q*y + r > 0 on (x, y) = (a, b)
  struct Ineq { Int p, q, r; };
  std::vector<Ineq> inequalities;
  std::vector<std::array<Rat, 2>> vertices;  // of the closure, counterclockwise

  bool contains(const Rat& a, const Rat& b) const {
    for (const auto& in : inequalities)
      if (Rat(in.p) * a + Rat(in.q) * b + Rat(in.r) <= 0) return false;
    return true;
  }
  std::array<Rat, 2> barycenter() const;
};

ReebPolygon reeb_polygon(const GoodCone& c);

// 6 * EuclideanVolume({y in dual cone : <y, xi> <= 1}); exact.
Rat volume(const GoodCone& c, const ReebVector& xi);

// same functional on a raw interior vector of the cone, stated in the
// height-1 basis but without the first-coordinate-3 normalization (exposes the
// degree -3 homogeneity)
Rat volume_unnormalized(const GoodCone& c, const QVec3& xi_height_basis);

struct MinimizeOptions {
  Rat tol = Rat(1, Int("10000000000"));  // 1e-10 on the gradient max-norm
  int max_iterations = 500;
};

struct MinimizeResult {
  ReebVector xi_star;
  BigFloat gradient_norm;
  Rat value;
  int iterations = 0;
};

// Damped Newton with exact central finite differences, barycenter start,
// backtracking that preserves interiority. Deterministic.
MinimizeResult minimize_volume(const GoodCone& c, const MinimizeOptions& opt = {});

struct DirichletApproximant {
  Rat a, b;        // the rational Reeb coordinates (3, a, b)
  Int c;           // minimal positive integer with c*(3,a,b) integral
  BigFloat error;  // max-norm distance to the target
  BigFloat bound;  // c^{-3/2}
};

// `count` approximants of xi with strictly increasing c_i, each obeying
// |xi_i - xi| <= c_i^{-3/2} and interior to the Reeb polygon.
// A rational target yields itself once and then TargetRational.
std::vector<DirichletApproximant> dirichlet_approximants(const GoodCone& c,
                                                         const ReebVector& xi,
                                                         int count);

}  // namespace accy
