#include "accy/deform.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace accy;

namespace {

std::string data_path(const std::string& name) {
  return std::string(ACCY_DATA_DIR) + "/cones/" + name;
}

LatticePolygon unit_square() {
  return LatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

LatticePolygon p2_triangle() {
  return LatticePolygon({{1, 0}, {0, 1}, {-1, -1}});
}

// Minkowski sum of summand vertex sets, as a polygon
LatticePolygon minkowski_sum(const std::vector<MinkowskiSummand>& summands) {
  std::vector<Vec2> pts{{Int(0), Int(0)}};
  for (const auto& s : summands) {
    std::vector<Vec2> next;
    for (const Vec2& p : pts)
      for (const Vec2& q : s.vertices) next.push_back({p[0] + q[0], p[1] + q[1]});
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    pts = next;
  }
  return LatticePolygon(pts);
}

bool same_up_to_translation(const LatticePolygon& a, const LatticePolygon& b) {
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  if (va.size() != vb.size()) return false;
  Vec2 shift{vb[0][0] - va[0][0], vb[0][1] - va[0][1]};
  for (size_t k = 0; k < va.size(); ++k) {
    if (va[k][0] + shift[0] != vb[k][0]) return false;
    if (va[k][1] + shift[1] != vb[k][1]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("unit square decomposes uniquely into two segments") {
  auto ds = minkowski_decompositions(unit_square());
  REQUIRE(ds.size() == 1);
  REQUIRE(ds[0].summands.size() == 2);
  CHECK(ds[0].summands[0].is_segment());
  CHECK(ds[0].summands[1].is_segment());
  std::set<std::pair<std::string, std::string>> dirs;
  for (const auto& s : ds[0].summands) {
    CHECK(s.lattice_point_count() == 2);
    dirs.insert({s.edges[0].first[0].get_str(), s.edges[0].first[1].get_str()});
  }
  // one horizontal and one vertical segment
  CHECK(dirs.count({"1", "0"}) + dirs.count({"-1", "0"}) == 1);
  CHECK(dirs.count({"0", "1"}) + dirs.count({"0", "-1"}) == 1);
}

TEST_CASE("projective-plane triangle is indecomposable") {
  CHECK(minkowski_decompositions(p2_triangle()).empty());
}

TEST_CASE("dP2 pentagon has exactly one nontrivial decomposition") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  auto ds = minkowski_decompositions(cone.polygon());
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].summands.size() == 2);
  // a segment plus a triangle
  int segments = 0, triangles = 0;
  for (const auto& s : ds[0].summands) {
    if (s.is_segment()) ++segments;
    else if (s.vertices.size() == 3) ++triangles;
  }
  CHECK(segments == 1);
  CHECK(triangles == 1);
}

TEST_CASE("minkowski sums of the summands reconstruct the polygon") {
  for (const char* file : {"conifold.cone", "dp2.cone"}) {
    GoodCone cone = load_cone_file(data_path(file));
    for (const auto& d : minkowski_decompositions(cone.polygon())) {
      LatticePolygon sum = minkowski_sum(d.summands);
      CHECK(same_up_to_translation(sum, cone.polygon()));
    }
  }
}

TEST_CASE("decomposition list is invariant under lattice symmetries") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  const LatticePolygon& p = cone.polygon();
  auto base = minkowski_decompositions(p);
  for (const auto& [m, t] : p.affine_symmetries()) {
    std::vector<Vec2> moved;
    for (const Vec2& v : p.lattice_points())
      moved.push_back({m[0] * v[0] + m[1] * v[1] + t[0], m[2] * v[0] + m[3] * v[1] + t[1]});
    auto ds = minkowski_decompositions(LatticePolygon(moved));
    CHECK(ds.size() == base.size());
  }
}

TEST_CASE("rigidity verdicts for the classification cones") {
  CHECK(rigidity(load_cone_file(data_path("c3z3.cone"))).rigid);
  CHECK(rigidity(load_cone_file(data_path("dp1.cone"))).rigid);
  RigidityVerdict conifold = rigidity(load_cone_file(data_path("conifold.cone")));
  CHECK_FALSE(conifold.rigid);
  CHECK(conifold.parameters == 1);
  RigidityVerdict dp2 = rigidity(load_cone_file(data_path("dp2.cone")));
  CHECK_FALSE(dp2.rigid);
  CHECK(dp2.parameters == 1);
}

TEST_CASE("xi-weight certificate: conifold single approximant") {
  GoodCone cone = load_cone_file(data_path("conifold.cone"));
  ReebVector xi{Rat(3, 2), Rat(3, 2), true};
  auto approx = dirichlet_approximants(cone, xi, 1);
  XiWeightCertificate cert = xi_weight(cone, xi, approx);
  REQUIRE(cert.records.size() == 1);
  CHECK(cert.records[0].c == 2);
  CHECK(cert.records[0].mu == 6);
  CHECK(cert.records[0].k == 1);
  CHECK(cert.records[0].lambda == -3);
  CHECK(cert.limit_weight == -3);
}

TEST_CASE("xi-weight certificate: dP2 irregular minimizer, five approximants") {
  GoodCone cone = load_cone_file(data_path("dp2.cone"));
  MinimizeResult r = minimize_volume(cone);
  auto approx = dirichlet_approximants(cone, r.xi_star, 5);
  XiWeightCertificate cert = xi_weight(cone, r.xi_star, approx);
  REQUIRE(cert.records.size() == 5);
  for (const auto& rec : cert.records) {
    CHECK(rec.mu == 3 * rec.c);
    CHECK(rec.k == 1);
    CHECK(rec.lambda == -3);
    // exact identity lambda*c + k*mu = 0
    CHECK(rec.lambda * Rat(rec.c) + Rat(rec.k * rec.mu) == 0);
  }
  CHECK(cert.limit_weight == -3);
}

TEST_CASE("xi-weight errors: rigid cone and empty approximants") {
  GoodCone rigid_cone = load_cone_file(data_path("c3z3.cone"));
  ReebVector xi{Rat(0), Rat(0), true};
  CHECK_THROWS_AS(xi_weight(rigid_cone, xi, {}), Error);
  try {
    xi_weight(rigid_cone, xi, {});
  } catch (const Error& e) {
    CHECK(e.code == Err::NoDeformation);
  }
  GoodCone conifold = load_cone_file(data_path("conifold.cone"));
  try {
    xi_weight(conifold, ReebVector{Rat(3, 2), Rat(3, 2), true}, {});
  } catch (const Error& e) {
    CHECK(e.code == Err::EmptyApproximants);
  }
}

TEST_CASE("user-supplied weight sequences: bounded away from zero") {
  // (c, mu, k) rows with lambda = -k mu / c
  std::vector<std::array<Rat, 3>> good{{Rat(2), Rat(6), Rat(1)}, {Rat(7), Rat(21), Rat(1)}};
  WeightSequenceCheck ok = verify_weight_sequence(good, Rat(3));
  CHECK(ok.bounded_away);
  for (const Rat& l : ok.lambdas) CHECK(l == -3);

  std::vector<std::array<Rat, 3>> decaying{{Rat(2), Rat(1), Rat(1)}, {Rat(100), Rat(1), Rat(1)}};
  WeightSequenceCheck bad = verify_weight_sequence(decaying, Rat(1, 10));
  CHECK_FALSE(bad.bounded_away);
}
