#include "accy/deform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace accy {

namespace {

// angle class for sorting primitive directions counterclockwise from (1,0)
int half_plane(const Vec2& v) {
  if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
  return 1;
}

bool angle_less(const Vec2& u, const Vec2& v) {
  int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv;
  Int cr = u[0] * v[1] - u[1] * v[0];
  if (cr != 0) return cr > 0;
  return u < v;
}

std::vector<Vec2> summand_vertices(const std::vector<std::pair<Vec2, Int>>& edges) {
  // walk the edge cycle from 0, then translate so the lexicographic minimum
  // sits at the origin
  std::vector<Vec2> pts{{Int(0), Int(0)}};
  for (const auto& [dir, mult] : edges) {
    const Vec2& last = pts.back();
    pts.push_back({last[0] + dir[0] * mult, last[1] + dir[1] * mult});
  }
  pts.pop_back();  // closes up
  Vec2 mn = *std::min_element(pts.begin(), pts.end());
  for (Vec2& p : pts) p = {p[0] - mn[0], p[1] - mn[1]};
  return pts;
}

}  // namespace

long MinkowskiSummand::lattice_point_count() const {
  if (is_segment()) {
    Int len = edges[0].second;
    return len.get_si() + 1;
  }
  LatticePolygon poly(vertices);
  return long(poly.lattice_points().size());
}

std::vector<MinkowskiDecomposition> minkowskidecompositions_impl(
    const LatticePolygon& p, const DecompositionOptions& opt) {
  if (p.num_vertices() > opt.max_vertices)
    fail(Err::SizeCapExceeded, "polygon exceeds the decomposition vertex cap");

  // unit edge multiset, counterclockwise
  std::vector<Vec2> units;
  for (const auto& [dir, mult] : p.edges())
    for (Int k = 0; k < mult; ++k) units.push_back(dir);
  int m = int(units.size());

  // enumerate set partitions of the unit multiset into zero-sum parts;
  // canonicalize by sorted part representation
  std::set<std::vector<std::vector<Vec2>>> seen;
  std::vector<MinkowskiDecomposition> out;

  std::vector<int> label(size_t(m), -1);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == m) {
      if (used < 2) return;
      std::vector<std::vector<Vec2>> parts(size_t(used));
      for (int k = 0; k < m; ++k) parts[size_t(label[size_t(k)])].push_back(units[size_t(k)]);
      for (auto& part : parts) {
        Vec2 s{Int(0), Int(0)};
        for (const Vec2& v : part) { s[0] += v[0]; s[1] += v[1]; }
        if (!(s[0] == 0 && s[1] == 0)) return;
        std::sort(part.begin(), part.end(), angle_less);
      }
      std::sort(parts.begin(), parts.end());
      if (!seen.insert(parts).second) return;

      MinkowskiDecomposition d;
      for (const auto& part : parts) {
        MinkowskiSummand s;
        // merge equal directions into (direction, multiplicity)
        for (const Vec2& v : part) {
          if (!s.edges.empty() && s.edges.back().first == v) s.edges.back().second += 1;
          else s.edges.push_back({v, Int(1)});
        }
        s.vertices = summand_vertices(s.edges);
        d.summands.push_back(std::move(s));
      }
      out.push_back(std::move(d));
      return;
    }
    // standard set-partition enumeration: first unit opens part 0; each later
    // unit joins an existing part or opens the next one
    int limit = std::min(used + 1, m);
    for (int l = 0; l < limit; ++l) {
      label[size_t(pos)] = l;
      rec(pos + 1, std::max(used, l + 1));
    }
    label[size_t(pos)] = -1;
  };
  rec(0, 0);

  // deterministic order: by number of summands, then by the canonical parts
  std::sort(out.begin(), out.end(), [](const MinkowskiDecomposition& x,
                                       const MinkowskiDecomposition& y) {
    if (x.summands.size() != y.summands.size()) return x.summands.size() < y.summands.size();
    auto key = [](const MinkowskiDecomposition& d) {
      std::vector<std::vector<Vec2>> k;
      for (const auto& s : d.summands) k.push_back(s.vertices);
      return k;
    };
    return key(x) < key(y);
  });
  return out;
}

std::vector<MinkowskiDecomposition> minkowski_decompositions(
    const LatticePolygon& p, const DecompositionOptions& opt) {
  return minkowskidecompositions_impl(p, opt);
}

RigidityVerdict rigidity(const GoodCone& c) {
  RigidityVerdict v;
  v.decompositions = minkowski_decompositions(c.polygon());
  v.rigid = v.decompositions.empty();
  v.parameters = v.rigid ? 0 : int(v.decompositions.size());
  return v;
}

XiWeightCertificate xi_weight(const GoodCone& c, const ReebVector& xi,
                              const std::vector<DirichletApproximant>& approx) {
  RigidityVerdict r = rigidity(c);
  if (r.rigid) fail(Err::NoDeformation, "cone is rigid: no Altmann deformation to weight");
  if (approx.empty()) fail(Err::EmptyApproximants, "xi_weight needs at least one approximant");
  (void)xi;

  XiWeightCertificate cert;
  for (const DirichletApproximant& d : approx) {
    XiWeightRecord rec;
    rec.a = d.a;
    rec.b = d.b;
    rec.c = d.c;
    rec.mu = 3 * d.c;
    rec.k = 1;
    rec.lambda = Rat(-rec.k * rec.mu, rec.c);
    rec.lambda.canonicalize();
    // re-verify the defining identity exactly: lambda*c + k*mu = 0
    if (rec.lambda * Rat(rec.c) + Rat(rec.k * rec.mu) != 0)
      fail(Err::NoDeformation, "xi-weight arithmetic identity failed");
    cert.records.push_back(rec);
  }
  cert.limit_weight = cert.records.back().lambda;
  for (const auto& rec : cert.records)
    if (rec.lambda > cert.limit_weight) cert.limit_weight = rec.lambda;
  return cert;
}

WeightSequenceCheck verify_weight_sequence(const std::vector<std::array<Rat, 3>>& cmk_triples,
                                           const Rat& bound) {
  if (bound <= 0) fail(Err::UsageError, "bound must be positive");
  WeightSequenceCheck out;
  out.bound = bound;
  out.bounded_away = true;
  for (const auto& [ci, mui, ki] : cmk_triples) {
    if (ci <= 0) fail(Err::UsageError, "c_i must be positive");
    Rat lambda = -(ki * mui) / ci;
    out.lambdas.push_back(lambda);
    if (lambda > -bound) out.bounded_away = false;
  }
  return out;
}

}  // namespace accy
