#include "accy/polygon.hpp"

#include <algorithm>

namespace accy {

LatticePolygon::LatticePolygon(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) fail(Err::DegenerateCone, "polygon needs at least 3 points");

  // Andrew monotone chain
  std::vector<Vec2> hull;
  auto build = [&](auto begin, auto end) {
    size_t start = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= start + 2 &&
             cross2(hull[hull.size() - 2], hull[hull.size() - 1], *it) <= 0)
        hull.pop_back();
      hull.push_back(*it);
    }
  };
  build(pts.begin(), pts.end());
  hull.pop_back();
  build(pts.rbegin(), pts.rend());
  hull.pop_back();
  if (hull.size() < 3) fail(Err::DegenerateCone, "polygon is degenerate (collinear points)");
  // counterclockwise, starting at the lexicographic minimum
  std::reverse(hull.begin(), hull.end());
  auto mn = std::min_element(hull.begin(), hull.end());
  std::rotate(hull.begin(), mn, hull.end());
  verts_ = hull;

  Int xlo = verts_[0][0], xhi = verts_[0][0], ylo = verts_[0][1], yhi = verts_[0][1];
  for (const Vec2& v : verts_) {
    xlo = std::min(xlo, v[0]); xhi = std::max(xhi, v[0]);
    ylo = std::min(ylo, v[1]); yhi = std::max(yhi, v[1]);
  }
  for (Int x = xlo; x <= xhi; ++x)
    for (Int y = ylo; y <= yhi; ++y) {
      Vec2 p{x, y};
      if (contains(p)) lattice_.push_back(p);
    }
}

Int LatticePolygon::normalized_area() const {
  Int a = 0;
  int n = int(verts_.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& p = verts_[size_t(i)];
    const Vec2& q = verts_[size_t((i + 1) % n)];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return a;  // positive for counterclockwise order
}

bool LatticePolygon::contains(const Vec2& p) const {
  int n = int(verts_.size());
  for (int i = 0; i < n; ++i)
    if (cross2(verts_[size_t(i)], verts_[size_t((i + 1) % n)], p) < 0) return false;
  return true;
}

bool LatticePolygon::contains_interior(const Vec2& p) const {
  int n = int(verts_.size());
  for (int i = 0; i < n; ++i)
    if (cross2(verts_[size_t(i)], verts_[size_t((i + 1) % n)], p) <= 0) return false;
  return true;
}

bool LatticePolygon::contains_interior(const std::array<Rat, 2>& p) const {
  int n = int(verts_.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& a = verts_[size_t(i)];
    const Vec2& b = verts_[size_t((i + 1) % n)];
    Rat cr = Rat(b[0] - a[0]) * (p[1] - Rat(a[1])) - Rat(b[1] - a[1]) * (p[0] - Rat(a[0]));
    if (cr <= 0) return false;
  }
  return true;
}

std::vector<Vec2> LatticePolygon::boundary_lattice_points() const {
  std::vector<Vec2> out;
  int n = int(verts_.size());
  for (int i = 0; i < n; ++i) {
    Vec2 a = verts_[size_t(i)], b = verts_[size_t((i + 1) % n)];
    Vec2 d{b[0] - a[0], b[1] - a[1]};
    Int g = gcd(abs(d[0]), abs(d[1]));
    Vec2 step{d[0] / g, d[1] / g};
    Vec2 cur = a;
    for (Int k = 0; k < g; ++k) {
      out.push_back(cur);
      cur = {cur[0] + step[0], cur[1] + step[1]};
    }
  }
  return out;
}

std::vector<std::pair<Vec2, Int>> LatticePolygon::edges() const {
  std::vector<std::pair<Vec2, Int>> out;
  int n = int(verts_.size());
  for (int i = 0; i < n; ++i) {
    Vec2 a = verts_[size_t(i)], b = verts_[size_t((i + 1) % n)];
    Vec2 d{b[0] - a[0], b[1] - a[1]};
    Int g = gcd(abs(d[0]), abs(d[1]));
    out.push_back({{d[0] / g, d[1] / g}, g});
  }
  return out;
}

std::vector<std::pair<std::array<Int, 4>, Vec2>> LatticePolygon::affine_symmetries() const {
  std::vector<std::pair<std::array<Int, 4>, Vec2>> out;
  int n = int(verts_.size());
  const Vec2 v0 = verts_[0], v1 = verts_[1];
  Vec2 e0{v1[0] - v0[0], v1[1] - v0[1]};
  // a symmetry maps the directed edge (v0,v1) to some directed hull edge,
  // traversed either way; solve the 2x2 linear part from the two edge images
  for (int i = 0; i < n; ++i)
    for (int dir : {+1, -1}) {
      Vec2 w0 = verts_[size_t(i)];
      Vec2 w1 = verts_[size_t(((i + dir) % n + n) % n)];
      Vec2 f0{w1[0] - w0[0], w1[1] - w0[1]};
      // also need the image of the next vertex around to pin M; use the edge
      // after v1 and the candidate edge after w1
      const Vec2& v2 = verts_[2 % size_t(n)];
      Vec2 e1{v2[0] - v1[0], v2[1] - v1[1]};
      Vec2 w2 = verts_[size_t((((i + 2 * dir) % n) + n) % n)];
      Vec2 f1{w2[0] - w1[0], w2[1] - w1[1]};
      // M * e0 = f0, M * e1 = f1
      Int det = e0[0] * e1[1] - e0[1] * e1[0];
      if (det == 0) continue;
      // M = [f0 f1] * [e0 e1]^{-1}
      Int a = f0[0] * e1[1] - f1[0] * e0[1];
      Int b = -f0[0] * e1[0] + f1[0] * e0[0];
      Int c = f0[1] * e1[1] - f1[1] * e0[1];
      Int d = -f0[1] * e1[0] + f1[1] * e0[0];
      if (a % det != 0 || b % det != 0 || c % det != 0 || d % det != 0) continue;
      a /= det; b /= det; c /= det; d /= det;
      Int mdet = a * d - b * c;
      if (mdet != 1 && mdet != -1) continue;
      Vec2 t{w0[0] - (a * v0[0] + b * v0[1]), w0[1] - (c * v0[0] + d * v0[1])};
      // verify the full vertex set maps onto itself
      bool ok = true;
      std::vector<Vec2> image;
      for (const Vec2& v : verts_)
        image.push_back({a * v[0] + b * v[1] + t[0], c * v[0] + d * v[1] + t[1]});
      std::vector<Vec2> sorted_img = image, sorted_v = verts_;
      std::sort(sorted_img.begin(), sorted_img.end());
      std::sort(sorted_v.begin(), sorted_v.end());
      ok = (sorted_img == sorted_v);
      if (ok) out.push_back({{a, b, c, d}, t});
    }
  // dedupe
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace accy
