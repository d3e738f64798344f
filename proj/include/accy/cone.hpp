#pragma once

// Strongly convex full-dimensional rational cones in Z^3: facet enumeration,
// duality, Hilbert bases of the lattice-point monoid.

#include "accy/intmat.hpp"
#include "accy/numeric.hpp"

namespace accy {

class RationalCone {
 public:
  // Normalizes generators to primitive, removes duplicates and non-extreme
  // rays, computes facet normals. Throws DegenerateCone / NotStronglyConvex.
  explicit RationalCone(std::vector<Vec3> rays);

  const std::vector<Vec3>& rays() const { return rays_; }
  const std::vector<Vec3>& facets() const { return facets_; }

  bool contains(const Vec3& p) const;
  bool contains(const QVec3& p) const;
  bool contains_interior(const QVec3& p) const;

  // A fixed interior functional of the dual cone: positive on every nonzero
  // point of this cone. Used as the Hilbert-basis degree.
  Vec3 interior_functional() const;

  // extreme rays ordered cyclically around the cone (walks facet adjacency)
  std::vector<Vec3> rays_cyclic() const;

  bool operator==(const RationalCone& o) const;

 private:
  std::vector<Vec3> rays_;    // primitive, deduplicated, extreme
  std::vector<Vec3> facets_;  // primitive inward normals
};

RationalCone dual_cone(const RationalCone& c);

struct HilbertOptions {
  Int degree_cap = 64;  // total pairing cap against the interior functional
};

// Minimal generating set of the monoid cone ∩ Z^3, sorted by (degree, lex).
// Throws UnboundedComputation when a required generator would exceed the cap.
std::vector<Vec3> hilbert_basis(const RationalCone& c, const HilbertOptions& opt = {});

// Is p a nonnegative-integer combination of gens? (bounded search, exact)
bool monoid_member(const Vec3& p, const std::vector<Vec3>& gens, const RationalCone& c);

}  // namespace accy
