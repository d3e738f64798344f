#include "accy/cone.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace accy {

namespace {

std::vector<Vec3> facet_normals(const std::vector<Vec3>& rays) {
  std::set<Vec3> out;
  int n = int(rays.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec3 nrm = cross(rays[size_t(i)], rays[size_t(j)]);
      if (is_zero(nrm)) continue;
      bool all_nonneg = true, all_nonpos = true;
      for (const Vec3& r : rays) {
        Int d = dot(nrm, r);
        if (d > 0) all_nonpos = false;
        if (d < 0) all_nonneg = false;
      }
      if (all_nonneg) out.insert(primitive(nrm));
      else if (all_nonpos) out.insert(primitive(neg(nrm)));
    }
  return {out.begin(), out.end()};
}

}  // namespace

RationalCone::RationalCone(std::vector<Vec3> rays) {
  std::vector<Vec3> prim;
  for (Vec3& r : rays) {
    if (is_zero(r)) continue;
    Vec3 p = primitive(r);
    if (std::find(prim.begin(), prim.end(), p) == prim.end()) prim.push_back(p);
  }
  if (prim.size() < 3) fail(Err::DegenerateCone, "need at least 3 independent ray generators");
  if (IntMatrix::from_rows(prim).rank() < 3)
    fail(Err::DegenerateCone, "ray generators do not span R^3");

  facets_ = facet_normals(prim);
  if (IntMatrix::from_rows(facets_).rank() < 3)
    fail(Err::NotStronglyConvex, "cone contains a line (facet normals do not span)");
  // strict interior functional exists iff the cone is pointed
  Vec3 w{0, 0, 0};
  for (const Vec3& f : facets_) for (int k = 0; k < 3; ++k) w[size_t(k)] += f[size_t(k)];
  for (const Vec3& r : prim)
    if (dot(w, r) <= 0) fail(Err::NotStronglyConvex, "cone contains a line");

  // keep only extreme rays, in input order
  for (size_t i = 0; i < prim.size(); ++i) {
    int tight = 0;
    for (const Vec3& f : facets_)
      if (dot(f, prim[i]) == 0) ++tight;
    if (tight >= 2) rays_.push_back(prim[i]);  // extreme ray = on >= 2 facets (dim 3)
  }
  if (rays_.size() < 3) fail(Err::DegenerateCone, "fewer than 3 extreme rays");

  // dual-description consistency: every facet tight on >= 2 rays
  for (const Vec3& f : facets_) {
    int tight = 0;
    for (const Vec3& r : rays_)
      if (dot(f, r) == 0) ++tight;
    if (tight < 2) fail(Err::DegenerateCone, "facet/ray duality check failed");
  }
}

bool RationalCone::contains(const Vec3& p) const {
  for (const Vec3& f : facets_)
    if (dot(f, p) < 0) return false;
  return true;
}

bool RationalCone::contains(const QVec3& p) const {
  for (const Vec3& f : facets_)
    if (dot(f, p) < 0) return false;
  return true;
}

bool RationalCone::contains_interior(const QVec3& p) const {
  for (const Vec3& f : facets_)
    if (dot(f, p) <= 0) return false;
  return true;
}

Vec3 RationalCone::interior_functional() const {
  Vec3 w{0, 0, 0};
  for (const Vec3& f : facets_)
    for (int k = 0; k < 3; ++k) w[size_t(k)] += f[size_t(k)];
  return primitive(w);
}

std::vector<Vec3> RationalCone::rays_cyclic() const {
  int n = int(rays_.size());
  // adjacency: two rays adjacent iff tight on a common facet
  std::map<int, std::vector<int>> adj;
  for (const Vec3& f : facets_) {
    std::vector<int> tight;
    for (int i = 0; i < n; ++i)
      if (dot(f, rays_[size_t(i)]) == 0) tight.push_back(i);
    if (tight.size() == 2) {
      adj[tight[0]].push_back(tight[1]);
      adj[tight[1]].push_back(tight[0]);
    }
  }
  std::vector<int> order{0};
  int prev = -1;
  while (int(order.size()) < n) {
    int cur = order.back(), nxt = -1;
    for (int cand : adj[cur])
      if (cand != prev) { nxt = cand; break; }
    if (nxt < 0) fail(Err::DegenerateCone, "ray adjacency walk failed");
    prev = cur;
    order.push_back(nxt);
  }
  std::vector<Vec3> out;
  for (int i : order) out.push_back(rays_[size_t(i)]);
  return out;
}

bool RationalCone::operator==(const RationalCone& o) const {
  std::vector<Vec3> a = rays_, b = o.rays_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

RationalCone dual_cone(const RationalCone& c) { return RationalCone(c.facets()); }

std::vector<Vec3> hilbert_basis(const RationalCone& c, const HilbertOptions& opt) {
  const Vec3 w = c.interior_functional();
  std::set<Vec3> cand;
  for (const Vec3& r : c.rays()) cand.insert(r);

  // lattice points of the half-open parallelepiped of each simplicial piece
  std::vector<Vec3> cyc = c.rays_cyclic();
  for (size_t j = 1; j + 1 < cyc.size(); ++j) {
    const Vec3 &a = cyc[0], &b = cyc[j], &cc = cyc[j + 1];
    IntMatrix m(3, 3);
    for (int k = 0; k < 3; ++k) {
      m.at(k, 0) = a[size_t(k)];
      m.at(k, 1) = b[size_t(k)];
      m.at(k, 2) = cc[size_t(k)];
    }
    Int d = m.det();
    Int ad = abs(d);
    if (ad <= 1) continue;
    // bounding box of {alpha*a + beta*b + gamma*c : 0 <= coeffs < 1}
    long lo[3], hi[3];
    for (int k = 0; k < 3; ++k) {
      Int l = 0, h = 0;
      for (const Vec3* v : {&a, &b, &cc}) {
        const Int& x = (*v)[size_t(k)];
        if (x < 0) l += x; else h += x;
      }
      lo[k] = l.get_si();
      hi[k] = h.get_si();
    }
    // solve m * t = p by Cramer; keep p with all t_i in [0,1)
    for (long x = lo[0]; x <= hi[0]; ++x)
      for (long y = lo[1]; y <= hi[1]; ++y)
        for (long z = lo[2]; z <= hi[2]; ++z) {
          Vec3 p{x, y, z};
          if (is_zero(p)) continue;
          bool ok = true;
          for (int col = 0; col < 3 && ok; ++col) {
            IntMatrix mm = m;
            for (int k = 0; k < 3; ++k) mm.at(k, col) = p[size_t(k)];
            Int num = mm.det();
            // t = num/d must satisfy 0 <= t < 1
            if (d > 0) ok = (num >= 0 && num < d);
            else ok = (num <= 0 && num > d);
          }
          if (ok) cand.insert(p);
        }
  }

  for (const Vec3& p : cand)
    if (dot(w, p) > opt.degree_cap)
      fail(Err::UnboundedComputation, "Hilbert basis candidate exceeds the degree cap");

  // minimality: drop p when p - h stays in the cone for some other candidate h
  std::vector<Vec3> sorted(cand.begin(), cand.end());
  std::sort(sorted.begin(), sorted.end(), [&](const Vec3& p, const Vec3& q) {
    Int dp = dot(w, p), dq = dot(w, q);
    if (dp != dq) return dp < dq;
    return p < q;
  });
  std::vector<Vec3> basis;
  for (const Vec3& p : sorted) {
    bool reducible = false;
    for (const Vec3& h : sorted) {
      if (h == p) continue;
      Vec3 d{p[0] - h[0], p[1] - h[1], p[2] - h[2]};
      if (is_zero(d)) continue;
      if (c.contains(d)) { reducible = true; break; }
    }
    if (!reducible) basis.push_back(p);
  }
  return basis;
}

bool monoid_member(const Vec3& p, const std::vector<Vec3>& gens, const RationalCone& c) {
  if (is_zero(p)) return true;
  if (!c.contains(p)) return false;
  const Vec3 w = c.interior_functional();
  // depth-first with degree descent; generator degrees are positive, so the
  // recursion terminates
  std::set<Vec3> dead;
  std::vector<Vec3> stack{p};
  std::function<bool(const Vec3&)> rec = [&](const Vec3& t) -> bool {
    if (is_zero(t)) return true;
    if (!c.contains(t)) return false;
    if (dead.count(t)) return false;
    for (const Vec3& g : gens) {
      if (dot(w, g) > dot(w, t)) continue;
      Vec3 d{t[0] - g[0], t[1] - g[1], t[2] - g[2]};
      if (rec(d)) return true;
    }
    dead.insert(t);
    return false;
  };
  return rec(p);
}

}  // namespace accy
