#include "accy/reeb.hpp"

#include <algorithm>

namespace accy {

namespace {

const Int kDenCap = [] {
  Int d = 1;
  for (int k = 0; k < 60; ++k) d *= 10;
  return d;
}();

BigFloat bf_abs(const BigFloat& x) { return x < 0 ? BigFloat(-x) : x; }

BigFloat bf_sqrt(const BigFloat& x) {
  BigFloat r(0, kBigFloatBits);
  mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
  return r;
}

}  // namespace

std::array<Rat, 2> ReebPolygon::barycenter() const {
  Rat a(0), b(0);
  for (const auto& v : vertices) { a += v[0]; b += v[1]; }
  Rat n(Int(vertices.size()));
  return {a / n, b / n};
}

ReebPolygon reeb_polygon(const GoodCone& c) {
  const LatticePolygon& p = c.polygon();  // throws NotGorenstein
  ReebPolygon out;
  const auto& verts = p.vertices();
  int n = int(verts.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& u = verts[size_t(i)];
    const Vec2& v = verts[size_t((i + 1) % n)];
    // interior-left edge (u -> v): (v-u) x ((x,y)/3 - u) > 0, cleared of the /3
    Int dx = v[0] - u[0], dy = v[1] - u[1];
    out.inequalities.push_back({-dy, dx, 3 * (dy * u[0] - dx * u[1])});
  }
  for (const Vec2& v : verts)
    out.vertices.push_back({Rat(3 * v[0]), Rat(3 * v[1])});
  return out;
}

Rat volume(const GoodCone& c, const ReebVector& xi) {
  return volume_unnormalized(c, xi.coords());
}

Rat volume_unnormalized(const GoodCone& c, const QVec3& xi_height_basis) {
  if (!c.is_gorenstein())
    fail(Err::NotGorenstein, "volume expects a Gorenstein cone (Reeb coordinates)");
  RationalCone dual = dual_cone(c.base());
  QVec3 x;
  // xi lives in the height-1 basis; move it back to the cone's own coordinates
  const IntMatrix& u = c.gorenstein().basis_change;
  IntMatrix uinv = u.inverse_unimodular();
  const QVec3& normalized = xi_height_basis;
  for (int r = 0; r < 3; ++r) {
    Rat acc(0);
    for (int k = 0; k < 3; ++k) acc += Rat(uinv.at(r, k)) * normalized[size_t(k)];
    x[size_t(r)] = acc;
  }

  std::vector<Vec3> cyc = dual.rays_cyclic();
  std::vector<QVec3> cap;
  for (const Vec3& d : cyc) {
    Rat pair = dot(d, x);
    if (pair <= 0) fail(Err::ReebOutsidePolygon, "Reeb vector is not interior to the cone");
    cap.push_back({Rat(d[0]) / pair, Rat(d[1]) / pair, Rat(d[2]) / pair});
  }
  Rat total(0);
  for (size_t j = 1; j + 1 < cap.size(); ++j) {
    const QVec3 &a = cap[0], &b = cap[j], &cc = cap[j + 1];
    Rat det = a[0] * (b[1] * cc[2] - b[2] * cc[1]) - a[1] * (b[0] * cc[2] - b[2] * cc[0]) +
              a[2] * (b[0] * cc[1] - b[1] * cc[0]);
    total += abs(det);
  }
  return total;
}

MinimizeResult minimize_volume(const GoodCone& c, const MinimizeOptions& opt) {
  ReebPolygon poly = reeb_polygon(c);
  auto [a, b] = poly.barycenter();

  const Rat h(Int(1), Int("1000000000000000000"));  // 1e-18 finite-difference step
  auto f = [&](const Rat& x, const Rat& y) {
    if (!poly.contains(x, y)) fail(Err::ReebOutsidePolygon, "iterate left the Reeb polygon");
    return volume(c, ReebVector{x, y, true});
  };

  MinimizeResult res;
  Rat tol2 = opt.tol * opt.tol;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    Rat g1 = (f(a + h, b) - f(a - h, b)) / (2 * h);
    Rat g2 = (f(a, b + h) - f(a, b - h)) / (2 * h);
    Rat gn2 = g1 * g1 + g2 * g2;
    res.gradient_norm = bf_sqrt(big(gn2));
    if (gn2 <= tol2) break;

    Rat fc = f(a, b);
    Rat h11 = (f(a + h, b) - 2 * fc + f(a - h, b)) / (h * h);
    Rat h22 = (f(a, b + h) - 2 * fc + f(a, b - h)) / (h * h);
    Rat h12 = (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4 * h * h);
    Rat det = h11 * h22 - h12 * h12;
    if (det == 0) fail(Err::NonConvergence, "singular Hessian in Newton step");
    Rat sa = -(h22 * g1 - h12 * g2) / det;
    Rat sb = -(-h12 * g1 + h11 * g2) / det;

    // backtracking: step must stay interior and not increase the objective
    Rat lam(1);
    bool moved = false;
    for (int back = 0; back < 60; ++back) {
      Rat na = a + lam * sa, nb = b + lam * sb;
      if (poly.contains(na, nb) && f(na, nb) <= fc) {
        a = round_to_den(na, kDenCap);
        b = round_to_den(nb, kDenCap);
        if (!poly.contains(a, b)) { a = na; b = nb; }  // keep unrounded if rounding left the polygon
        moved = true;
        break;
      }
      lam /= 2;
    }
    if (!moved) fail(Err::NonConvergence, "backtracking failed to find a descent step");
  }
  if (it == opt.max_iterations)
    fail(Err::NonConvergence, "iteration cap reached before the gradient tolerance");
  res.xi_star = ReebVector{a, b, false};
  res.value = f(a, b);
  res.iterations = it;
  return res;
}

std::vector<DirichletApproximant> dirichlet_approximants(const GoodCone& c,
                                                         const ReebVector& xi,
                                                         int count) {
  if (count <= 0) fail(Err::UsageError, "approximant count must be positive");
  ReebPolygon poly = reeb_polygon(c);
  std::vector<DirichletApproximant> out;

  if (xi.exact) {
    // degenerate rational target: itself once, then no extension exists
    DirichletApproximant d;
    d.a = xi.a;
    d.b = xi.b;
    d.c = lcm(Int(xi.a.get_den()), Int(xi.b.get_den()));
    d.error = big(0);
    d.bound = big(1) / bf_sqrt(big(Rat(d.c * d.c * d.c)));
    if (!poly.contains(d.a, d.b))
      fail(Err::ReebOutsidePolygon, "target is not interior to the Reeb polygon");
    out.push_back(d);
    if (count > 1)
      fail(Err::TargetRational,
           "rational Reeb target admits only the single exact approximant");
    return out;
  }

  // the target is a high-precision rational iterate standing in for an
  // irrational minimizer; search denominators in increasing order
  const Int target_den = lcm(Int(xi.a.get_den()), Int(xi.b.get_den()));
  Int last_c = 0;
  const long kMaxDenominator = 50'000'000;
  for (long q = 1; q <= kMaxDenominator && int(out.size()) < count; ++q) {
    Rat qa = xi.a * q, qb = xi.b * q;
    Int pa = round_nearest(qa), pb = round_nearest(qb);
    Rat ra(pa, Int(q)), rb(pb, Int(q));
    ra.canonicalize();
    rb.canonicalize();
    Int cden = lcm(Int(ra.get_den()), Int(rb.get_den()));
    if (cden <= last_c) continue;
    if (cden * 8 > target_den)
      fail(Err::PrecisionExhausted, "approximant denominators approach the target precision");
    Rat e1 = abs(ra - xi.a), e2 = abs(rb - xi.b);
    Rat err = e1 > e2 ? e1 : e2;
    // err <= c^{-3/2}  <=>  err^2 * c^3 <= 1, exactly
    Rat lhs = err * err * Rat(cden * cden * cden);
    if (lhs > 1) continue;
    if (!poly.contains(ra, rb)) continue;
    DirichletApproximant d;
    d.a = ra;
    d.b = rb;
    d.c = cden;
    d.error = big(err);
    d.bound = big(1) / bf_sqrt(big(Rat(cden * cden * cden)));
    out.push_back(d);
    last_c = cden;
  }
  if (int(out.size()) < count)
    fail(Err::PrecisionExhausted, "denominator search exhausted before finding enough approximants");
  return out;
}

}  // namespace accy
