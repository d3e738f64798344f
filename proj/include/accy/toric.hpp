#pragma once

// 3-dimensional toric Kähler cones: the good-cone and height-1 (Gorenstein)
// conditions, the height-1 cross-section polygon, and the binomial ideal of
// the dual-cone Hilbert-basis embedding.

#include "accy/cone.hpp"
#include "accy/groebner.hpp"
#include "accy/intmat.hpp"
#include "accy/polygon.hpp"

#include <optional>

namespace accy {

struct FaceReport {
  std::vector<Vec3> face_rays;
  std::vector<Int> invariant_factors;  // of the ray matrix restricted to the face
  bool saturated = false;              // generators span Z^3 ∩ lin(face)
};

struct GoodnessReport {
  std::vector<FaceReport> faces;
  bool good = true;
  // the checked condition: each proper face's ray generators generate the full
  // sublattice Z^3 ∩ lin(face) (Smith factors all 1)
  std::string condition = "face-sublattice saturation via Smith normal form";
};

struct GorensteinReport {
  bool gorenstein = false;
  std::string explanation;
  IntMatrix basis_change = IntMatrix::identity(3);  // maps rays to height 1
  std::optional<LatticePolygon> polygon;            // cross-section when gorenstein
};

class GoodCone {
 public:
  // throws NotGood if the goodness check fails
  GoodCone(std::vector<Vec3> rays, std::string label = "");

  const std::string& label() const { return label_; }
  const RationalCone& base() const { return base_; }
  const std::vector<Vec3>& input_rays() const { return input_rays_; }
  const GoodnessReport& goodness() const { return goodness_; }
  const GorensteinReport& gorenstein() const { return gorenstein_; }

  bool is_gorenstein() const { return gorenstein_.gorenstein; }
  const LatticePolygon& polygon() const;  // throws NotGorenstein when absent

 private:
  std::string label_;
  std::vector<Vec3> input_rays_;  // primitive, input order (for round-trip)
  RationalCone base_;
  GoodnessReport goodness_;
  GorensteinReport gorenstein_;
};

// run the face-saturation check without constructing a GoodCone
GoodnessReport check_good(const RationalCone& c);
GorensteinReport check_gorenstein_height_one(const RationalCone& c);

// Cone file format: optional `name: <string>` line, `ray: i j k` lines,
// `#` comments. parse_cone throws ParseError / NotStronglyConvex / NotGood.
GoodCone parse_cone(const std::string& text);
std::string serialize_cone(const GoodCone& c);
GoodCone load_cone_file(const std::string& path);

struct ToricIdealResult {
  int ambient_dimension = 0;                  // size of the dual Hilbert basis
  std::vector<Vec3> hilbert_basis;            // coordinates of the embedding
  std::vector<Poly> generators;               // minimal binomial generators, degree <= max_degree
  std::vector<std::string> variable_names;    // x1..xN
  int max_degree = 2;
  bool degree_sufficient = false;             // generators span the full ideal through checked_degree
  int checked_degree = 0;                     // Hilbert-function comparison bound
};

// Binomial generators of the lattice ideal of the Hilbert-basis monomial map.
ToricIdealResult toric_ideal(const GoodCone& c, int max_degree, const Caps& caps = {});

}  // namespace accy
