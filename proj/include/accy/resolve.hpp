#pragma once

// Crepant resolutions of the Gorenstein toric cone as fine unimodular
// triangulations of the height-1 polygon: exhaustive enumeration, bistellar
// flips, regularity (the Kähler test), and the coarsest terminal subdivision.

#include "accy/polygon.hpp"

namespace accy {

struct Triangulation {
  std::vector<Vec2> points;                    // polygon lattice points, sorted
  std::vector<std::array<int, 3>> cells;       // index triples, each sorted; list sorted
  // interior edges with their two adjacent cells
  std::vector<std::array<int, 4>> interior_edges() const;  // {u, v, cell1, cell2}
  bool operator==(const Triangulation& o) const {
    return points == o.points && cells == o.cells;
  }
  bool operator<(const Triangulation& o) const { return cells < o.cells; }
};

struct ResolveOptions {
  int max_lattice_points = 16;
};

// complete list of unimodular triangulations on all lattice points, canonical
// order, duplicates removed
std::vector<Triangulation> enumerate_crepant(const LatticePolygon& p,
                                             const ResolveOptions& opt = {});

// neighbors under a single unimodularity-preserving bistellar flip
std::vector<Triangulation> flops(const Triangulation& t);

// strictly convex piecewise-linear lift exists? (exact rational LP)
bool is_regular(const Triangulation& t);

struct Subdivision {
  std::vector<Vec2> points;
  struct Cell {
    std::vector<int> vertices;  // 3 = unimodular triangle, 4 = empty parallelogram
    bool odp = false;           // ordinary double point cell
  };
  std::vector<Cell> cells;
};

// coarsest subdivision with unimodular-triangle or ODP cells, built by merging
// flip-related parallelogram pairs of the canonical first triangulation
Subdivision terminal_partial(const LatticePolygon& p, const ResolveOptions& opt = {});

}  // namespace accy
