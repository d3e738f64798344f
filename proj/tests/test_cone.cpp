#include "accy/cone.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace accy;

namespace {

const std::vector<Vec3> kConifold{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
const std::vector<Vec3> kOctant{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
const std::vector<Vec3> kC3Z3{{1, 1, 0}, {1, 0, 1}, {1, -1, -1}};

std::set<Vec3> ray_set(const RationalCone& c) {
  return {c.rays().begin(), c.rays().end()};
}

}  // namespace

TEST_CASE("positive octant is self-dual") {
  RationalCone oct(kOctant);
  RationalCone dual = dual_cone(oct);
  CHECK(ray_set(dual) == ray_set(oct));
}

TEST_CASE("conifold dual computed from facet cross products") {
  RationalCone cone(kConifold);
  RationalCone dual = dual_cone(cone);
  std::set<Vec3> expect{{0, 0, 1}, {0, 1, 0}, {1, -1, 0}, {1, 0, -1}};
  CHECK(ray_set(dual) == expect);
  // pairing signs: every dual ray pairs >= 0 with every primal ray
  for (const Vec3& d : dual.rays())
    for (const Vec3& r : cone.rays()) CHECK(dot(d, r) >= 0);
}

TEST_CASE("dual_cone is an involution") {
  for (const auto& rays : {kConifold, kOctant, kC3Z3,
                           std::vector<Vec3>{{1, 1, 0}, {1, 0, 1}, {1, -1, -1}, {1, 0, -1}},
                           std::vector<Vec3>{{1, 1, 0}, {1, 0, 1}, {1, -1, -1}, {1, -1, 0}, {1, 0, -1}}}) {
    RationalCone c(rays);
    CHECK(dual_cone(dual_cone(c)) == c);
  }
}

TEST_CASE("degenerate and non-strongly-convex inputs are rejected") {
  CHECK_THROWS_AS(RationalCone({{1, 0, 0}, {0, 1, 0}}), Error);
  CHECK_THROWS_AS(RationalCone({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), Error);
  try {
    RationalCone({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  } catch (const Error& e) {
    CHECK(e.code == Err::NotStronglyConvex);
  }
}

TEST_CASE("hilbert basis of the octant is the standard basis") {
  std::vector<Vec3> hb = hilbert_basis(RationalCone(kOctant));
  std::set<Vec3> got(hb.begin(), hb.end());
  std::set<Vec3> expect{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(got == expect);
}

TEST_CASE("hilbert basis sizes for the paper cones") {
  CHECK(hilbert_basis(dual_cone(RationalCone(kConifold))).size() == 4);
  CHECK(hilbert_basis(dual_cone(RationalCone(kC3Z3))).size() == 10);
}

TEST_CASE("hilbert basis: membership and minimality by direct search") {
  RationalCone dual = dual_cone(RationalCone(kC3Z3));
  std::vector<Vec3> hb = hilbert_basis(dual);

  // 1000 random lattice points of the cone lie in the nonnegative integer span
  std::mt19937_64 rng(777);
  const Vec3 w = dual.interior_functional();
  int found = 0;
  while (found < 1000) {
    Vec3 p{int(rng() % 41) - 20, int(rng() % 41) - 20, int(rng() % 41) - 20};
    if (!dual.contains(p) || is_zero(p)) continue;
    if (dot(w, p) > 40) continue;
    CAPTURE(p[0].get_str());
    CHECK(monoid_member(p, hb, dual));
    ++found;
  }

  // leave-one-out failure: no basis element is generated by the others
  for (size_t k = 0; k < hb.size(); ++k) {
    std::vector<Vec3> rest;
    for (size_t j = 0; j < hb.size(); ++j)
      if (j != k) rest.push_back(hb[j]);
    CHECK_FALSE(monoid_member(hb[k], rest, dual));
  }
}

TEST_CASE("hilbert basis degree cap raises UnboundedComputation") {
  HilbertOptions opt;
  opt.degree_cap = 1;
  CHECK_THROWS_AS(hilbert_basis(dual_cone(RationalCone(kC3Z3)), opt), Error);
}
