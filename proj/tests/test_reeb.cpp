#include "accy/reeb.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace accy;

namespace {

std::string data_path(const std::string& name) {
  return std::string(ACCY_DATA_DIR) + "/cones/" + name;
}

Rat tol10() { return Rat(1, Int("10000000000")); }

BigFloat bf_sqrt(const BigFloat& x) {
  BigFloat r(0, kBigFloatBits);
  mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
  return r;
}

// random interior rational point of the Reeb polygon (vertex convex combo)
std::pair<Rat, Rat> random_interior(const ReebPolygon& poly, std::mt19937_64& rng) {
  size_t n = poly.vertices.size();
  std::vector<Rat> w;
  Rat total(0);
  for (size_t k = 0; k < n; ++k) {
    Rat wk(1 + int(rng() % 97), 1 + int(rng() % 13));
    w.push_back(wk);
    total += wk;
  }
  Rat a(0), b(0);
  for (size_t k = 0; k < n; ++k) {
    a += w[k] / total * poly.vertices[k][0];
    b += w[k] / total * poly.vertices[k][1];
  }
  return {a, b};
}

}  // namespace

TEST_CASE("reeb polygon of the conifold is the open 3x-square") {
  GoodCone cone = load_cone_file(data_path("conifold.cone"));
  ReebPolygon poly = reeb_polygon(cone);
  CHECK(poly.vertices.size() == 4);
  CHECK(poly.contains(Rat(3, 2), Rat(3, 2)));
  CHECK_FALSE(poly.contains(Rat(0), Rat(0)));  // the boundary point (3,0,0)
  CHECK_FALSE(poly.contains(Rat(3), Rat(0)));
  CHECK(poly.contains(Rat(1, 10), Rat(29, 10)));
}

TEST_CASE("reeb polygon of C3/Z3 has vertices (3,3,0),(3,0,3),(3,-3,-3)") {
  GoodCone cone = load_cone_file(data_path("c3z3.cone"));
  ReebPolygon poly = reeb_polygon(cone);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& v : poly.vertices) got.insert({v[0].get_str(), v[1].get_str()});
  std::set<std::pair<std::string, std::string>> expect{{"3", "0"}, {"0", "3"}, {"-3", "-3"}};
  CHECK(got == expect);
}

TEST_CASE("exact volume values: flat, conifold, and their 16/27 ratio") {
  GoodCone flat = load_cone_file(data_path("flat.cone"));
  GoodCone conifold = load_cone_file(data_path("conifold.cone"));
  Rat v_flat = volume(flat, ReebVector{Rat(1), Rat(1), true});
  Rat v_con = volume(conifold, ReebVector{Rat(3, 2), Rat(3, 2), true});
  CHECK(v_flat == 1);
  CHECK(v_con == Rat(16, 27));
  CHECK(v_con / v_flat == Rat(16, 27));
  // cross-check in floating point
  CHECK(std::abs(big(v_con).get_d() - 16.0 / 27.0) < 1e-15);
}

TEST_CASE("volume is homogeneous of degree -3 before normalization") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  std::mt19937_64 rng(5);
  ReebPolygon poly = reeb_polygon(cone);
  for (int trial = 0; trial < 10; ++trial) {
    auto [a, b] = random_interior(poly, rng);
    Rat v1 = volume_unnormalized(cone, QVec3{Rat(3), a, b});
    Rat v2 = volume_unnormalized(cone, QVec3{Rat(6), 2 * a, 2 * b});
    CHECK(v1 == 8 * v2);
  }
}

TEST_CASE("volume outside the polygon throws") {
  GoodCone cone = load_cone_file(data_path("conifold.cone"));
  CHECK_THROWS_AS(volume(cone, ReebVector{Rat(5), Rat(5), true}), Error);
}

TEST_CASE("minimizers forced by symmetry: conifold and C3/Z3") {
  GoodCone conifold = load_cone_file(data_path("conifold.cone"));
  MinimizeResult r = minimize_volume(conifold);
  CHECK(r.xi_star.a == Rat(3, 2));
  CHECK(r.xi_star.b == Rat(3, 2));
  CHECK(r.value == Rat(16, 27));
  CHECK(r.iterations == 0);  // the barycenter start is the symmetry fixed point

  GoodCone c3z3 = load_cone_file(data_path("c3z3.cone"));
  MinimizeResult r2 = minimize_volume(c3z3);
  CHECK(r2.xi_star.a == 0);
  CHECK(r2.xi_star.b == 0);
  CHECK(r2.value == Rat(1, 3));
}

TEST_CASE("dP2 minimizer: symmetric, irrational, matches the algebraic root") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  MinimizeResult r = minimize_volume(cone);
  CHECK(big(r.gradient_norm).get_d() <= 1e-10);
  // lies on the a = b symmetry line exactly (symmetric Newton stencil)
  CHECK(r.xi_star.a == r.xi_star.b);
  // independent oracle: the exact minimizer solves 8 t^2 + 57 t + 18 = 0,
  // t* = (-57 + 9 sqrt 33)/16
  BigFloat t_star = (big(-57) + big(9) * bf_sqrt(big(33))) / big(16);
  BigFloat diff = big(r.xi_star.a) - t_star;
  CHECK(std::abs(diff.get_d()) <= 1e-10);
  // regression value frozen from the exact expression
  CHECK(std::abs(big(r.value).get_d() - 0.25142014220559324127) <= 1e-12);
  // the minimizer satisfies its own defining polynomial to working precision
  BigFloat a = big(r.xi_star.a);
  BigFloat residual = big(8) * a * a + big(57) * a + big(18);
  CHECK(std::abs(residual.get_d()) < 1e-8);
}

TEST_CASE("dP2 minimizer agrees with an independent coarse grid search") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  MinimizeResult r = minimize_volume(cone);
  ReebPolygon poly = reeb_polygon(cone);
  Rat best_val(-1);
  Rat best_a, best_b;
  const int grid = 24;
  for (int i = -grid; i <= grid; ++i)
    for (int j = -grid; j <= grid; ++j) {
      Rat a(3 * i, grid), b(3 * j, grid);
      a.canonicalize();
      b.canonicalize();
      if (!poly.contains(a, b)) continue;
      Rat v = volume(cone, ReebVector{a, b, true});
      if (best_val < 0 || v < best_val) { best_val = v; best_a = a; best_b = b; }
    }
  // the Newton minimum beats the whole coarse grid and sits near its argmin
  CHECK(r.value <= best_val);
  CHECK(std::abs(big(best_a - r.xi_star.a).get_d()) < 0.3);
  CHECK(std::abs(big(best_b - r.xi_star.b).get_d()) < 0.3);
}

TEST_CASE("midpoint convexity with strict inequality off the diagonal") {
  GoodCone cone = load_cone_file(data_path("dp1.cone"));
  ReebPolygon poly = reeb_polygon(cone);
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    auto [a1, b1] = random_interior(poly, rng);
    auto [a2, b2] = random_interior(poly, rng);
    Rat v1 = volume(cone, ReebVector{a1, b1, true});
    Rat v2 = volume(cone, ReebVector{a2, b2, true});
    Rat vm = volume(cone, ReebVector{(a1 + a2) / 2, (b1 + b2) / 2, true});
    if (a1 == a2 && b1 == b2) {
      CHECK(vm == v1);
    } else {
      CHECK(vm < (v1 + v2) / 2);  // strict: margin positive
    }
  }
}

TEST_CASE("volume is exactly invariant under affine lattice symmetries") {
  for (const char* file : {"conifold.cone", "dp2.cone", "c3z3.cone"}) {
    GoodCone cone = load_cone_file(data_path(file));
    const LatticePolygon& p = cone.polygon();
    auto syms = p.affine_symmetries();
    CHECK(syms.size() >= 2);  // at least identity + one reflection on these
    ReebPolygon poly = reeb_polygon(cone);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      auto [a, b] = random_interior(poly, rng);
      Rat v = volume(cone, ReebVector{a, b, true});
      for (const auto& [m, t] : syms) {
        // Reeb coordinates scale the polygon by 3: (a,b) -> M(a,b) + 3t
        Rat na = Rat(m[0]) * a + Rat(m[1]) * b + Rat(3 * t[0]);
        Rat nb = Rat(m[2]) * a + Rat(m[3]) * b + Rat(3 * t[1]);
        CHECK(volume(cone, ReebVector{na, nb, true}) == v);
      }
    }
  }
}

TEST_CASE("argmin equivariance under unimodular changes of basis") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  MinimizeResult base = minimize_volume(cone);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    IntMatrix u = IntMatrix::identity(3);
    for (int step = 0; step < 6; ++step) {
      int i = int(rng() % 3), j = int(rng() % 3);
      if (i != j) u.add_row(i, j, Int(int(rng() % 3) - 1));
    }
    std::vector<Vec3> moved;
    for (const Vec3& r : cone.input_rays()) {
      Vec3 nr{0, 0, 0};
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) nr[size_t(i)] += u.at(i, k) * r[size_t(k)];
      moved.push_back(nr);
    }
    GoodCone moved_cone(moved, "moved");
    MinimizeResult r = minimize_volume(moved_cone);
    // the value is basis invariant; the argmin moves equivariantly, so compare
    // the multiset of pairings with the facet normals
    CHECK(std::abs(big(r.value - base.value).get_d()) < 1e-30);
    auto pairings = [](const GoodCone& c, const ReebVector& xi) {
      IntMatrix uinv = c.gorenstein().basis_change.inverse_unimodular();
      QVec3 x{Rat(0), Rat(0), Rat(0)};
      QVec3 h = xi.coords();
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) x[size_t(i)] += Rat(uinv.at(i, k)) * h[size_t(k)];
      std::multiset<Rat> out;
      for (const Vec3& fn : c.base().facets()) out.insert(dot(fn, x));
      return out;
    };
    auto pa = pairings(cone, base.xi_star);
    auto pb = pairings(moved_cone, r.xi_star);
    REQUIRE(pa.size() == pb.size());
    auto ita = pa.begin();
    auto itb = pb.begin();
    for (; ita != pa.end(); ++ita, ++itb)
      CHECK(std::abs(big(*ita - *itb).get_d()) < 1e-9);
  }
}

TEST_CASE("dirichlet: rational target returns itself once, then TargetRational") {
  GoodCone cone = load_cone_file(data_path("conifold.cone"));
  ReebVector xi{Rat(3, 2), Rat(3, 2), true};
  auto one = dirichlet_approximants(cone, xi, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].a == Rat(3, 2));
  CHECK(one[0].c == 2);
  CHECK(one[0].error == 0);
  CHECK_THROWS_AS(dirichlet_approximants(cone, xi, 2), Error);
  try {
    dirichlet_approximants(cone, xi, 2);
  } catch (const Error& e) {
    CHECK(e.code == Err::TargetRational);
  }
}

TEST_CASE("dirichlet: golden-ratio target (frozen oracle sequence)") {
  GoodCone cone = load_cone_file(data_path("conifold.cone"));
  // 3(sqrt(5)-1)/2 as a 60-digit rational standin
  BigFloat g = (bf_sqrt(big(5)) - big(1)) / big(2) * big(3);
  Int den = 1;
  for (int k = 0; k < 60; ++k) den *= 10;
  BigFloat scaled = g * big(Rat(den));
  Int num;
  mpz_set_f(num.get_mpz_t(), scaled.get_mpf_t());
  Rat target(num, den);
  target.canonicalize();
  ReebVector xi{target, target, false};
  auto approx = dirichlet_approximants(cone, xi, 6);
  REQUIRE(approx.size() == 6);
  // frozen from the independent prototype oracle
  std::vector<long> expect{1, 4, 5, 6, 7, 8};
  for (size_t k = 0; k < approx.size(); ++k) {
    CHECK(approx[k].c.get_si() == expect[k]);
    // minimality of c: recompute from the reduced fractions
    CHECK(approx[k].c == lcm(Int(approx[k].a.get_den()), Int(approx[k].b.get_den())));
    // the bound holds exactly: err^2 c^3 <= 1
    Rat e1 = abs(approx[k].a - target), e2 = abs(approx[k].b - target);
    Rat err = e1 > e2 ? e1 : e2;
    CHECK(err * err * Rat(approx[k].c * approx[k].c * approx[k].c) <= 1);
    // nearest-numerator optimality at this denominator
    Rat scaled_err = err * Rat(approx[k].c);
    CHECK(scaled_err <= Rat(1, 2));
  }
  for (size_t k = 1; k < approx.size(); ++k) CHECK(approx[k].c > approx[k - 1].c);
}

TEST_CASE("dirichlet: dP2 minimizer yields 5 interior approximants") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  MinimizeResult r = minimize_volume(cone);
  auto approx = dirichlet_approximants(cone, r.xi_star, 5);
  REQUIRE(approx.size() == 5);
  ReebPolygon poly = reeb_polygon(cone);
  for (const auto& d : approx) {
    CHECK(poly.contains(d.a, d.b));
    Rat e1 = abs(d.a - r.xi_star.a), e2 = abs(d.b - r.xi_star.b);
    Rat err = e1 > e2 ? e1 : e2;
    CHECK(err * err * Rat(d.c * d.c * d.c) <= 1);
    CHECK(d.c == lcm(Int(d.a.get_den()), Int(d.b.get_den())));
  }
}

TEST_CASE("minimize respects the tolerance argument") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  MinimizeOptions opt;
  opt.tol = Rat(1, 1000);
  MinimizeResult r = minimize_volume(cone, opt);
  CHECK(big(r.gradient_norm).get_d() <= 1e-3);
}
