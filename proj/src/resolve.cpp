#include "accy/resolve.hpp"

#include "accy/lp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace accy {

namespace {

Int tri_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool point_in_tri_strict(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  Int s1 = tri_area2(a, b, p), s2 = tri_area2(b, c, p), s3 = tri_area2(c, a, p);
  return (s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0);
}

bool segments_cross(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s) {
  Int d1 = tri_area2(p, q, r), d2 = tri_area2(p, q, s);
  Int d3 = tri_area2(r, s, p), d4 = tri_area2(r, s, q);
  if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) return false;
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool triangles_overlap(const std::array<Vec2, 3>& A, const std::array<Vec2, 3>& B) {
  for (const Vec2& p : A)
    if (point_in_tri_strict(p, B[0], B[1], B[2])) return true;
  for (const Vec2& p : B)
    if (point_in_tri_strict(p, A[0], A[1], A[2])) return true;
  static const int e[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (auto& ea : e)
    for (auto& eb : e)
      if (segments_cross(A[ea[0]], A[ea[1]], B[eb[0]], B[eb[1]])) return true;
  return false;
}

}  // namespace

std::vector<std::array<int, 4>> Triangulation::interior_edges() const {
  std::map<std::pair<int, int>, std::vector<int>> edge_cells;
  for (int ci = 0; ci < int(cells.size()); ++ci) {
    const auto& c = cells[size_t(ci)];
    for (auto [i, j] : {std::pair{c[0], c[1]}, std::pair{c[0], c[2]}, std::pair{c[1], c[2]}})
      edge_cells[{i, j}].push_back(ci);
  }
  std::vector<std::array<int, 4>> out;
  for (const auto& [e, cs] : edge_cells)
    if (cs.size() == 2) out.push_back({e.first, e.second, cs[0], cs[1]});
  return out;
}

std::vector<Triangulation> enumerate_crepant(const LatticePolygon& p, const ResolveOptions& opt) {
  const std::vector<Vec2>& pts = p.lattice_points();
  int n = int(pts.size());
  if (n > opt.max_lattice_points)
    fail(Err::SizeCapExceeded, "polygon exceeds the lattice-point cap for enumeration");

  std::map<Vec2, int> index;
  for (int i = 0; i < n; ++i) index[pts[size_t(i)]] = i;

  // all unimodular triangles (normalized area 1 <=> |det| = 1)
  std::set<std::array<int, 3>> unimodular;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Int ar = tri_area2(pts[size_t(i)], pts[size_t(j)], pts[size_t(k)]);
        if (ar == 1 || ar == -1) unimodular.insert({i, j, k});
      }

  // advancing front over directed edges; unfilled region on the left
  std::vector<std::pair<int, int>> boundary;
  {
    std::vector<Vec2> ring = p.boundary_lattice_points();
    int m = int(ring.size());
    for (int i = 0; i < m; ++i)
      boundary.push_back({index.at(ring[size_t(i)]), index.at(ring[size_t((i + 1) % m)])});
  }

  std::vector<Triangulation> out;
  std::vector<std::array<int, 3>> placed;

  std::function<void(std::set<std::pair<int, int>>&)> rec =
      [&](std::set<std::pair<int, int>>& frontier) {
        if (frontier.empty()) {
          std::vector<bool> used(size_t(n), false);
          for (const auto& c : placed)
            for (int v : c) used[size_t(v)] = true;
          if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) {
            Triangulation t;
            t.points = pts;
            t.cells = placed;
            std::sort(t.cells.begin(), t.cells.end());
            out.push_back(std::move(t));
          }
          return;
        }
        auto e = *frontier.begin();
        auto [u, v] = e;
        for (int w = 0; w < n; ++w) {
          if (w == u || w == v) continue;
          if (tri_area2(pts[size_t(u)], pts[size_t(v)], pts[size_t(w)]) <= 0) continue;
          std::array<int, 3> cell{u, v, w};
          std::sort(cell.begin(), cell.end());
          if (!unimodular.count(cell)) continue;
          std::array<Vec2, 3> tri{pts[size_t(u)], pts[size_t(v)], pts[size_t(w)]};
          bool overlap = false;
          for (const auto& q : placed) {
            std::array<Vec2, 3> qb{pts[size_t(q[0])], pts[size_t(q[1])], pts[size_t(q[2])]};
            if (triangles_overlap(tri, qb)) { overlap = true; break; }
          }
          if (overlap) continue;

          std::set<std::pair<int, int>> nf = frontier;
          nf.erase(e);
          bool ok = true;
          for (auto ne : {std::pair{u, w}, std::pair{w, v}}) {
            std::pair<int, int> rev{ne.second, ne.first};
            if (nf.count(rev)) nf.erase(rev);
            else if (nf.count(ne)) { ok = false; break; }
            else nf.insert(ne);
          }
          if (!ok) continue;
          placed.push_back(cell);
          rec(nf);
          placed.pop_back();
        }
      };

  std::set<std::pair<int, int>> frontier(boundary.begin(), boundary.end());
  rec(frontier);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triangulation> flops(const Triangulation& t) {
  std::vector<Triangulation> out;
  const auto& pts = t.points;
  for (const auto& [u, v, c1, c2] : t.interior_edges()) {
    auto other = [&](const std::array<int, 3>& cell) {
      for (int x : cell)
        if (x != u && x != v) return x;
      return -1;
    };
    int w = other(t.cells[size_t(c1)]);
    int x = other(t.cells[size_t(c2)]);
    // the flip needs the quad to be strictly convex: u,v on opposite sides of
    // the new diagonal wx (w,x already straddle uv by adjacency)
    Int su = tri_area2(pts[size_t(w)], pts[size_t(x)], pts[size_t(u)]);
    Int sv = tri_area2(pts[size_t(w)], pts[size_t(x)], pts[size_t(v)]);
    if (su == 0 || sv == 0 || (su > 0) == (sv > 0)) continue;
    std::array<int, 3> n1{w, x, u}, n2{w, x, v};
    std::sort(n1.begin(), n1.end());
    std::sort(n2.begin(), n2.end());
    // both new cells must stay unimodular (area splits 1+1 automatically, but
    // verify exactly)
    auto area = [&](const std::array<int, 3>& c) {
      Int a = tri_area2(pts[size_t(c[0])], pts[size_t(c[1])], pts[size_t(c[2])]);
      return a < 0 ? Int(-a) : a;
    };
    if (area(n1) != 1 || area(n2) != 1) continue;
    Triangulation nt;
    nt.points = pts;
    for (int ci = 0; ci < int(t.cells.size()); ++ci)
      if (ci != c1 && ci != c2) nt.cells.push_back(t.cells[size_t(ci)]);
    nt.cells.push_back(n1);
    nt.cells.push_back(n2);
    std::sort(nt.cells.begin(), nt.cells.end());
    out.push_back(std::move(nt));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_regular(const Triangulation& t) {
  const auto& pts = t.points;
  int n = int(pts.size());
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  for (const auto& [u, v, c1, c2] : t.interior_edges()) {
    // affine function on cell c1 evaluated at the opposite vertex of c2 must
    // exceed its own height by the unit slack
    const auto& a = t.cells[size_t(c1)];
    int d = -1;
    for (int x : t.cells[size_t(c2)])
      if (x != u && x != v) d = x;
    // barycentric coordinates of pts[d] w.r.t. cell a
    Int A = tri_area2(pts[size_t(a[0])], pts[size_t(a[1])], pts[size_t(a[2])]);
    Rat alpha = Rat(tri_area2(pts[size_t(d)], pts[size_t(a[1])], pts[size_t(a[2])])) / Rat(A);
    Rat beta = Rat(tri_area2(pts[size_t(a[0])], pts[size_t(d)], pts[size_t(a[2])])) / Rat(A);
    Rat gamma = Rat(tri_area2(pts[size_t(a[0])], pts[size_t(a[1])], pts[size_t(d)])) / Rat(A);
    std::vector<Rat> row(size_t(n), Rat(0));
    row[size_t(a[0])] += alpha;
    row[size_t(a[1])] += beta;
    row[size_t(a[2])] += gamma;
    row[size_t(d)] -= 1;
    rows.push_back(std::move(row));
    rhs.push_back(Rat(1));
  }
  return lp_feasible(rows, rhs).feasible;
}

Subdivision terminal_partial(const LatticePolygon& p, const ResolveOptions& opt) {
  std::vector<Triangulation> all = enumerate_crepant(p, opt);
  if (all.empty()) fail(Err::SizeCapExceeded, "no unimodular triangulation found");
  const Triangulation& t = all.front();  // canonical first

  Subdivision out;
  out.points = t.points;
  std::vector<bool> merged(t.cells.size(), false);
  for (const auto& [u, v, c1, c2] : t.interior_edges()) {
    if (merged[size_t(c1)] || merged[size_t(c2)]) continue;
    auto other = [&](const std::array<int, 3>& cell) {
      for (int x : cell)
        if (x != u && x != v) return x;
      return -1;
    };
    int w = other(t.cells[size_t(c1)]);
    int x = other(t.cells[size_t(c2)]);
    // parallelogram: the diagonal midpoints coincide, u+v = w+x
    const auto& P = t.points;
    bool parallelogram = (P[size_t(u)][0] + P[size_t(v)][0] == P[size_t(w)][0] + P[size_t(x)][0]) &&
                         (P[size_t(u)][1] + P[size_t(v)][1] == P[size_t(w)][1] + P[size_t(x)][1]);
    if (!parallelogram) continue;
    merged[size_t(c1)] = merged[size_t(c2)] = true;
    Subdivision::Cell cell;
    cell.vertices = {u, w, v, x};  // cyclic order around the parallelogram
    cell.odp = true;
    out.cells.push_back(std::move(cell));
  }
  for (size_t ci = 0; ci < t.cells.size(); ++ci) {
    if (merged[ci]) continue;
    Subdivision::Cell cell;
    cell.vertices = {t.cells[ci][0], t.cells[ci][1], t.cells[ci][2]};
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace accy
