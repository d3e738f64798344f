#include "accy/resolve.hpp"

#include "accy/toric.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace accy;

namespace {

std::string data_path(const std::string& name) {
  return std::string(ACCY_DATA_DIR) + "/cones/" + name;
}

LatticePolygon polygon_of(const std::string& file) {
  return load_cone_file(data_path(file)).polygon();
}

Int cells_area(const Triangulation& t) {
  Int total = 0;
  for (const auto& c : t.cells) {
    const Vec2& a = t.points[size_t(c[0])];
    const Vec2& b = t.points[size_t(c[1])];
    const Vec2& d = t.points[size_t(c[2])];
    Int ar = (b[0] - a[0]) * (d[1] - a[1]) - (b[1] - a[1]) * (d[0] - a[0]);
    total += ar < 0 ? Int(-ar) : ar;
  }
  return total;
}

// connectivity of the flip graph over the enumerated list
bool flip_graph_connected(const std::vector<Triangulation>& all) {
  if (all.empty()) return false;
  std::vector<int> comp(all.size(), -1);
  std::vector<size_t> stack{0};
  comp[0] = 0;
  while (!stack.empty()) {
    size_t cur = stack.back();
    stack.pop_back();
    for (const Triangulation& f : flops(all[cur]))
      for (size_t j = 0; j < all.size(); ++j)
        if (f == all[j] && comp[j] < 0) {
          comp[j] = 0;
          stack.push_back(j);
        }
  }
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

}  // namespace

TEST_CASE("unit square: exactly the two diagonal triangulations") {
  auto tris = enumerate_crepant(polygon_of("conifold.cone"));
  REQUIRE(tris.size() == 2);
  for (const auto& t : tris) {
    CHECK(t.cells.size() == 2);
    CHECK(cells_area(t) == 2);
    auto fl = flops(t);
    REQUIRE(fl.size() == 1);  // the unique flip swaps the diagonal
    CHECK((fl[0] == tris[0] || fl[0] == tris[1]));
    CHECK_FALSE(fl[0] == t);
  }
}

TEST_CASE("projective-plane triangle: only the star, no flips") {
  auto tris = enumerate_crepant(polygon_of("c3z3.cone"));
  REQUIRE(tris.size() == 1);
  CHECK(tris[0].cells.size() == 3);
  CHECK(flops(tris[0]).empty());
}

TEST_CASE("dP1: the star and its unique flop") {
  auto tris = enumerate_crepant(polygon_of("dp1.cone"));
  REQUIRE(tris.size() == 2);
  for (const auto& t : tris) {
    CHECK(cells_area(t) == 4);
    CHECK(flops(t).size() == 1);
  }
}

TEST_CASE("dP2: complete enumeration finds five, in four symmetry classes") {
  // Table-1 counts abstract resolutions: the pentagon's lattice reflection
  // identifies two of the five fine unimodular triangulations, leaving the
  // star, two single flips, and the double flip = 4 classes.
  LatticePolygon p = polygon_of("dp2.cone");
  auto tris = enumerate_crepant(p);
  REQUIRE(tris.size() == 5);
  for (const auto& t : tris) CHECK(cells_area(t) == 5);
  CHECK(flip_graph_connected(tris));

  // symmetry orbits
  auto syms = p.affine_symmetries();
  REQUIRE(syms.size() == 2);  // identity and the (x,y) swap
  std::map<Vec2, int> index;
  const auto& pts = tris[0].points;
  for (int i = 0; i < int(pts.size()); ++i) index[pts[size_t(i)]] = i;
  std::set<std::vector<std::array<int, 3>>> orbit_reps;
  for (const auto& t : tris) {
    std::vector<std::array<int, 3>> best = t.cells;
    for (const auto& [m, tr] : syms) {
      std::vector<std::array<int, 3>> image;
      for (const auto& c : t.cells) {
        std::array<int, 3> nc;
        for (int k = 0; k < 3; ++k) {
          const Vec2& v = pts[size_t(c[size_t(k)])];
          Vec2 mv{m[0] * v[0] + m[1] * v[1] + tr[0], m[2] * v[0] + m[3] * v[1] + tr[1]};
          nc[size_t(k)] = index.at(mv);
        }
        std::sort(nc.begin(), nc.end());
        image.push_back(nc);
      }
      std::sort(image.begin(), image.end());
      best = std::min(best, image);
    }
    orbit_reps.insert(best);
  }
  CHECK(orbit_reps.size() == 4);
}

TEST_CASE("flip symmetry: t' in flops(t) iff t in flops(t')") {
  for (const char* file : {"conifold.cone", "dp1.cone", "dp2.cone"}) {
    auto tris = enumerate_crepant(polygon_of(file));
    for (const auto& t : tris)
      for (const auto& f : flops(t)) {
        auto back = flops(f);
        CHECK(std::find(back.begin(), back.end(), t) != back.end());
      }
  }
}

TEST_CASE("every enumerated triangulation on the paper polygons is regular") {
  for (const char* file : {"conifold.cone", "c3z3.cone", "dp1.cone", "dp2.cone"}) {
    for (const auto& t : enumerate_crepant(polygon_of(file))) CHECK(is_regular(t));
  }
}

TEST_CASE("terminal partial subdivisions") {
  // conifold: the square itself is the single ODP cell
  Subdivision sq = terminal_partial(polygon_of("conifold.cone"));
  REQUIRE(sq.cells.size() == 1);
  CHECK(sq.cells[0].odp);
  CHECK(sq.cells[0].vertices.size() == 4);

  // projective plane: the star triangulation survives, no ODP cells
  Subdivision p2 = terminal_partial(polygon_of("c3z3.cone"));
  CHECK(p2.cells.size() == 3);
  for (const auto& c : p2.cells) CHECK_FALSE(c.odp);

  // dP1: one ODP cell where the flop lives, two triangles remain
  Subdivision dp1 = terminal_partial(polygon_of("dp1.cone"));
  int odp = 0, tri = 0;
  for (const auto& c : dp1.cells) (c.odp ? odp : tri) += 1;
  CHECK(odp == 1);
  CHECK(tri == 2);

  // area bookkeeping: cells cover the polygon exactly
  Int area = 0;
  for (const auto& c : dp1.cells) area += c.odp ? 2 : 1;
  CHECK(area == polygon_of("dp1.cone").normalized_area());
}

TEST_CASE("size cap raises SizeCapExceeded") {
  // a long thin polygon with many lattice points
  std::vector<Vec2> pts;
  for (int x = 0; x <= 20; ++x) pts.push_back({x, 0});
  pts.push_back({0, 1});
  ResolveOptions opt;
  opt.max_lattice_points = 16;
  CHECK_THROWS_AS(enumerate_crepant(LatticePolygon(pts), opt), Error);
}
