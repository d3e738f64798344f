#pragma once

// Convex lattice polygons in Z^2: hull, lattice points, primitive edge
// vectors, affine lattice symmetries. The combinatorial ground floor for the
// deformation and resolution modules.

#include "accy/numeric.hpp"

namespace accy {

inline Int cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

class LatticePolygon {
 public:
  LatticePolygon() = default;
  // vertices in any order; stored as the convex hull, counterclockwise,
  // starting from the lexicographically smallest vertex
  explicit LatticePolygon(std::vector<Vec2> pts);

  const std::vector<Vec2>& vertices() const { return verts_; }
  const std::vector<Vec2>& lattice_points() const { return lattice_; }

  int num_vertices() const { return int(verts_.size()); }
  Int normalized_area() const;  // twice the Euclidean area

  bool contains(const Vec2& p) const;         // closed polygon
  bool contains_interior(const Vec2& p) const;
  bool contains_interior(const std::array<Rat, 2>& p) const;

  // boundary lattice points in counterclockwise order (vertices included)
  std::vector<Vec2> boundary_lattice_points() const;

  // (primitive direction, lattice length) per edge, counterclockwise
  std::vector<std::pair<Vec2, Int>> edges() const;

  // affine lattice maps x -> M x + t with polygon(image) == polygon;
  // each entry is (M row-major [a b; c d], t)
  std::vector<std::pair<std::array<Int, 4>, Vec2>> affine_symmetries() const;

  bool operator==(const LatticePolygon& o) const { return verts_ == o.verts_; }

 private:
  std::vector<Vec2> verts_;
  std::vector<Vec2> lattice_;
};

}  // namespace accy
