#pragma once

// Toric deformation combinatorics: lattice Minkowski decompositions of the
// height-1 polygon, the rigidity verdict, and the xi-weight certificate
// (mu_i = 3 c_i, k_i = 1, lambda_i = -3) for Dirichlet approximants.

#include "accy/polygon.hpp"
#include "accy/reeb.hpp"

namespace accy {

struct MinkowskiSummand {
  // edge cycle of the summand: (primitive direction, multiplicity), ordered by
  // angle; the summand polygon/segment is anchored at the origin
  std::vector<std::pair<Vec2, Int>> edges;
  std::vector<Vec2> vertices;  // translation-normalized, origin = minimum vertex
  bool is_segment() const { return edges.size() == 2; }
  long lattice_point_count() const;
};

struct MinkowskiDecomposition {
  std::vector<MinkowskiSummand> summands;  // >= 2, canonical order
};

struct DecompositionOptions {
  int max_vertices = 12;
};

// Complete list of decompositions into >= 2 nontrivial lattice summands, up to
// reordering and translation; canonical deterministic order.
std::vector<MinkowskiDecomposition> minkowski_decompositions(
    const LatticePolygon& p, const DecompositionOptions& opt = {});

struct RigidityVerdict {
  bool rigid = false;
  int parameters = 0;  // one per decomposition when smoothable
  std::vector<MinkowskiDecomposition> decompositions;
};

RigidityVerdict rigidity(const GoodCone& c);

struct XiWeightRecord {
  Rat a, b;    // the approximant
  Int c;       // its minimal integral multiplier
  Int mu;      // weight of the induced C*-action on the base: 3c
  Int k;       // vanishing order of the Altmann sub-deformation (semi-universality)
  Rat lambda;  // -k*mu/c
};

struct XiWeightCertificate {
  std::vector<XiWeightRecord> records;
  Rat limit_weight;  // limsup lambda_i
  std::string provenance =
      "k_i = 1 certified by semi-universality of the Altmann family; mu_i = 3 c_i";
};

XiWeightCertificate xi_weight(const GoodCone& c, const ReebVector& xi,
                              const std::vector<DirichletApproximant>& approx);

// Definition-level check for user-supplied (c_i, mu_i, k_i) data: every
// lambda_i = -k_i mu_i / c_i must stay <= -bound < 0.
struct WeightSequenceCheck {
  bool bounded_away = false;
  Rat bound;
  std::vector<Rat> lambdas;
};

WeightSequenceCheck verify_weight_sequence(const std::vector<std::array<Rat, 3>>& cmk_triples,
                                           const Rat& bound);

}  // namespace accy
