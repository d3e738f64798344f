#include "accy/sasaki.hpp"

#include "accy/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace accy {

namespace {

int real_dim(const CVec& x) { return int(x.size()) * 2; }

RVec to_real(const CVec& z) {
  RVec v(size_t(real_dim(z)));
  for (size_t k = 0; k < z.size(); ++k) {
    v[2 * k] = z[k].real();
    v[2 * k + 1] = z[k].imag();
  }
  return v;
}

CVec to_complex(const RVec& v) {
  CVec z(v.size() / 2);
  for (size_t k = 0; k < z.size(); ++k) z[k] = {v[2 * k], v[2 * k + 1]};
  return z;
}

double rdot(const RVec& a, const RVec& b) {
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double rnorm(const RVec& a) { return std::sqrt(rdot(a, a)); }

// complex-structure action in real coordinates: (re, im) -> (-im, re)
RVec apply_j(const RVec& v) {
  RVec out(v.size());
  for (size_t k = 0; k + 1 < v.size(); k += 2) {
    out[k] = -v[k + 1];
    out[k + 1] = v[k];
  }
  return out;
}

RVec axpy(double a, const RVec& x, const RVec& y) {  // a*x + y
  RVec out(y);
  for (size_t k = 0; k < x.size(); ++k) out[k] += a * x[k];
  return out;
}

// xi(x) = i x ; xi~(x) = (i w_k x_k)
RVec reeb_at(const CVec& x) {
  CVec z(x.size());
  for (size_t k = 0; k < x.size(); ++k) z[k] = std::complex<double>(0, 1) * x[k];
  return to_real(z);
}

RVec reeb_deformed_at(const CVec& x, const std::vector<double>& w) {
  CVec z(x.size());
  for (size_t k = 0; k < x.size(); ++k) z[k] = std::complex<double>(0, w[k]) * x[k];
  return to_real(z);
}

}  // namespace

double ReebDeformation::lambda1() const {
  return *std::min_element(weights.begin(), weights.end());
}
double ReebDeformation::lambda2() const {
  return *std::max_element(weights.begin(), weights.end());
}

RMat link_frame(const CVec& x) {
  int d = real_dim(x);
  RVec xr = to_real(x);
  RVec xi = reeb_at(x);
  RMat frame;
  frame.push_back(xi);  // |xi| = |x| = 1 on the link
  // Gram-Schmidt the ambient coordinate frame against {x (normal), xi, ...}
  std::vector<RVec> obstacles{xr, xi};
  for (int k = 0; k < d && int(frame.size()) < d - 1; ++k) {
    RVec e(size_t(d), 0.0);
    e[size_t(k)] = 1.0;
    for (const RVec& o : obstacles) e = axpy(-rdot(e, o) / rdot(o, o), o, e);
    double n = rnorm(e);
    if (n < 1e-9) continue;
    for (double& v : e) v /= n;
    frame.push_back(e);
    obstacles.push_back(e);
  }
  if (int(frame.size()) != d - 1)
    fail(Err::DegenerateCone, "link frame construction failed");
  return frame;
}

SasakiSample typeI_deform(const FlatToricCone& cone, const ReebDeformation& d, const CVec& x) {
  if (int(x.size()) != cone.n) fail(Err::UsageError, "point dimension mismatch");
  double norm = 0;
  for (const auto& z : x) norm += std::norm(z);
  if (std::abs(norm - 1.0) > 1e-12) fail(Err::UsageError, "link point must be unit");

  SasakiSample s;
  s.x = x;
  s.frame = link_frame(x);
  int m = int(s.frame.size());

  RVec xi = reeb_at(x);
  RVec xit = reeb_deformed_at(x, d.weights);
  double pairing = rdot(xi, xit);  // eta(xi~) = sum w_k |x_k|^2
  if (pairing <= 0)
    fail(Err::NonPositivePairing, "eta(xi~) <= 0 at the sample point");
  s.eta_pairing = pairing;

  auto eta = [&](const RVec& v) { return rdot(xi, v); };
  auto eta_t = [&](const RVec& v) { return eta(v) / pairing; };
  auto phi = [&](const RVec& v) { return apply_j(axpy(-eta(v), xi, v)); };
  auto phi_t = [&](const RVec& v) { return phi(axpy(-eta_t(v), xit, v)); };
  auto g_t = [&](const RVec& u, const RVec& v) {
    RVec uu = axpy(-eta_t(u), xit, u);
    RVec vv = axpy(-eta_t(v), xit, v);
    return rdot(uu, vv) / pairing + eta_t(u) * eta_t(v);
  };

  s.eta_t.resize(size_t(m));
  s.xi_t.resize(size_t(m));
  s.phi_t.assign(size_t(m), RVec(size_t(m), 0.0));
  s.g_t.assign(size_t(m), RVec(size_t(m), 0.0));
  for (int i = 0; i < m; ++i) {
    s.eta_t[size_t(i)] = eta_t(s.frame[size_t(i)]);
    s.xi_t[size_t(i)] = rdot(s.frame[size_t(i)], xit);  // frame is g_L-orthonormal
    RVec pv = phi_t(s.frame[size_t(i)]);
    for (int j = 0; j < m; ++j) {
      s.phi_t[size_t(j)][size_t(i)] = rdot(s.frame[size_t(j)], pv);  // column i
      s.g_t[size_t(i)][size_t(j)] = g_t(s.frame[size_t(i)], s.frame[size_t(j)]);
    }
  }
  return s;
}

double SasakiResiduals::max() const {
  return std::max({eta_of_xi, phi_of_xi, phi_square, metric_phi, metric_xi});
}

SasakiResiduals verify_sasaki_identities(const SasakiSample& s) {
  int m = int(s.frame.size());
  SasakiResiduals r{};

  auto mat_vec = [&](const RMat& a, const RVec& v) {
    RVec out(size_t(m), 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out[size_t(i)] += a[size_t(i)][size_t(j)] * v[size_t(j)];
    return out;
  };

  // eta~(xi~) = 1
  double ex = 0;
  for (int i = 0; i < m; ++i) ex += s.eta_t[size_t(i)] * s.xi_t[size_t(i)];
  r.eta_of_xi = std::abs(ex - 1.0);

  // Phi~(xi~) = 0
  RVec px = mat_vec(s.phi_t, s.xi_t);
  r.phi_of_xi = rnorm(px);

  // Phi~^2 = -Id + xi~ (x) eta~  (as an operator on the frame)
  double worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double p2 = 0;
      for (int k = 0; k < m; ++k) p2 += s.phi_t[size_t(i)][size_t(k)] * s.phi_t[size_t(k)][size_t(j)];
      double want = -(i == j ? 1.0 : 0.0) + s.xi_t[size_t(i)] * s.eta_t[size_t(j)];
      worst = std::max(worst, std::abs(p2 - want));
    }
  r.phi_square = worst;

  // g~(Phi X, Phi Y) = g~(X, Y) - eta~(X) eta~(Y)
  worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double lhs = 0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          lhs += s.phi_t[size_t(a)][size_t(i)] * s.g_t[size_t(a)][size_t(b)] *
                 s.phi_t[size_t(b)][size_t(j)];
      double rhs = s.g_t[size_t(i)][size_t(j)] - s.eta_t[size_t(i)] * s.eta_t[size_t(j)];
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  r.metric_phi = worst;

  // g~(xi~, X) = eta~(X)
  worst = 0;
  for (int i = 0; i < m; ++i) {
    double lhs = 0;
    for (int a = 0; a < m; ++a) lhs += s.g_t[size_t(i)][size_t(a)] * s.xi_t[size_t(a)];
    worst = std::max(worst, std::abs(lhs - s.eta_t[size_t(i)]));
  }
  r.metric_xi = worst;
  return r;
}

namespace {

// Dormand-Prince 5(4) adaptive step on y' = f(y)
RVec rk45(const std::function<RVec(const RVec&)>& f, RVec y, double t_end, double rtol) {
  static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600, 0,          7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  (void)c;
  double t = 0;
  double dir = t_end >= 0 ? 1.0 : -1.0;
  double h = dir * std::max(1e-4, std::abs(t_end) / 100);
  int steps = 0;
  while (dir * (t_end - t) > 1e-15) {
    if (++steps > 1'000'000) fail(Err::IntegratorFailure, "step cap exceeded");
    if (dir * (t + h - t_end) > 0) h = t_end - t;
    std::vector<RVec> k(7);
    for (int s = 0; s < 7; ++s) {
      RVec ys = y;
      for (int j = 0; j < s; ++j)
        if (a[s][j] != 0) ys = axpy(h * a[s][j], k[size_t(j)], ys);
      k[size_t(s)] = f(ys);
    }
    RVec y5 = y, y4 = y;
    for (int s = 0; s < 7; ++s) {
      if (b5[s] != 0) y5 = axpy(h * b5[s], k[size_t(s)], y5);
      if (b4[s] != 0) y4 = axpy(h * b4[s], k[size_t(s)], y4);
    }
    double err = 0, scale = 0;
    for (size_t i = 0; i < y.size(); ++i) {
      err += (y5[i] - y4[i]) * (y5[i] - y4[i]);
      scale += y5[i] * y5[i];
    }
    err = std::sqrt(err);
    double tol = rtol * std::max(1.0, std::sqrt(scale));
    if (err <= tol) {
      t += h;
      y = y5;
    }
    double factor = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-14) fail(Err::IntegratorFailure, "step underflow");
  }
  return y;
}

}  // namespace

CVec flow_map(const FlatToricCone& cone, const ReebDeformation& d, double r, const CVec& x,
              double* rk_disagreement) {
  if (r <= 0) fail(Err::UsageError, "flow_map needs r > 0");
  CVec closed(x.size());
  for (size_t k = 0; k < x.size(); ++k) closed[k] = std::pow(r, d.weights[k]) * x[k];

  if (rk_disagreement) {
    // -J xi~ acts as z_k' = w_k z_k; integrate the real system to t = log r
    auto f = [&](const RVec& y) {
      CVec z = to_complex(y);
      for (size_t k = 0; k < z.size(); ++k) z[k] *= d.weights[k];
      return to_real(z);
    };
    RVec y = rk45(f, to_real(x), std::log(r), 1e-10);
    CVec zi = to_complex(y);
    double worst = 0, scale = 0;
    for (size_t k = 0; k < x.size(); ++k) {
      worst = std::max(worst, std::abs(zi[k] - closed[k]));
      scale = std::max(scale, std::abs(closed[k]));
    }
    *rk_disagreement = worst / std::max(1.0, scale);
    if (*rk_disagreement > 1e-8)
      fail(Err::IntegratorFailure, "closed form and integrator disagree");
  }
  (void)cone;
  return closed;
}

RadiusBoundsReport radius_bounds_check(const FlatToricCone& cone, const ReebDeformation& d_in,
                                       long num_samples, std::uint64_t seed, double epsilon) {
  ReebDeformation d = d_in;
  if (epsilon > 0) {
    // normalized symmetric perturbation: the largest delta for which the
    // Theorem-B.3 C0 estimate with exponent eps holds (1/(1-delta) = 1+eps)
    double delta = epsilon / (1.0 + epsilon);
    d.weights.assign(size_t(cone.n), 1.0);
    d.weights[0] = 1.0 + delta;
    d.weights[1] = 1.0 - delta;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  RadiusBoundsReport rep;
  double l1 = d.lambda1(), l2 = d.lambda2();

  auto sample_point = [&]() {
    CVec x(size_t(cone.n));
    double norm = 0;
    for (auto& z : x) {
      z = {gauss(rng), gauss(rng)};
      norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto& z : x) z /= norm;
    return x;
  };

  auto check = [&](double r, const CVec& x) {
    CVec img = flow_map(cone, d, r, x);
    double rad = 0;
    for (const auto& z : img) rad += std::norm(z);
    rad = std::sqrt(rad);
    double lo = std::min(std::pow(r, l1), std::pow(r, l2));
    double hi = std::max(std::pow(r, l1), std::pow(r, l2));
    rep.max_violation = std::max({rep.max_violation, lo - rad, rad - hi});
    if (epsilon > 0 && r >= 1.0) {
      // r~'(p) = s at p = Psi(s, x); the C0 bound reads s within [rad^{1-eps}, rad^{1+eps}]
      double lo2 = std::pow(rad, 1.0 - epsilon), hi2 = std::pow(rad, 1.0 + epsilon);
      rep.max_c0_violation = std::max({rep.max_c0_violation, lo2 - r, r - hi2});
    }
    ++rep.samples;
  };

  // bound-saturating axis points first
  for (int k = 0; k < cone.n; ++k) {
    CVec axis(size_t(cone.n), {0, 0});
    axis[size_t(k)] = {1, 0};
    for (double r : {1e-3, 1e-2, 0.5, 1.0, 4.0, 100.0, 1e3}) check(r, axis);
  }
  double rlo = epsilon > 0 ? 1.0 : 1e-3;
  for (long s = 0; s < num_samples; ++s) {
    double u = unif(rng);
    double r = rlo * std::pow(1e3 / rlo, u);  // log-uniform
    check(r, sample_point());
  }
  return rep;
}

double linearized_flow_check(const RMat& x_linear, long num_samples, std::uint64_t seed) {
  size_t n = x_linear.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> tdist(0.0, 1.0);

  // matrix exponential by scaling-and-squaring Taylor; matrices are tiny
  auto expm = [&](double t) {
    RMat m(n, RVec(n, 0.0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    double norm = 0;
    for (const auto& row : x_linear)
      for (double v : row) norm = std::max(norm, std::abs(v));
    int s = 0;
    double scale = std::abs(t) * norm;
    while (scale > 0.5) { scale /= 2; ++s; }
    double ts = t / std::pow(2.0, s);
    RMat term = m, sum = m;
    for (int k = 1; k <= 24; ++k) {
      RMat nt(n, RVec(n, 0.0));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          double acc = 0;
          for (size_t l = 0; l < n; ++l) acc += term[i][l] * x_linear[l][j];
          nt[i][j] = acc * ts / k;
        }
      term = nt;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
    }
    for (int q = 0; q < s; ++q) {
      RMat sq(n, RVec(n, 0.0));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          double acc = 0;
          for (size_t l = 0; l < n; ++l) acc += sum[i][l] * sum[l][j];
          sq[i][j] = acc;
        }
      sum = sq;
    }
    return sum;
  };

  auto apply = [&](const RMat& m, const RVec& v) {
    RVec out(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) out[i] += m[i][j] * v[j];
    return out;
  };

  const double h = 1e-5;
  double worst = 0;
  for (long s = 0; s < std::max(num_samples, 1L); ++s) {
    RVec w(n);
    for (double& v : w) v = gauss(rng);
    double t = tdist(rng);
    RVec plus = apply(expm(t + h), w);
    RVec minus = apply(expm(t - h), w);
    RVec dt(n);
    for (size_t i = 0; i < n; ++i) dt[i] = (plus[i] - minus[i]) / (2 * h);
    // grad X = the matrix itself (flat connection, linear field)
    RVec rhs = apply(x_linear, apply(expm(t), w));
    double res = 0;
    for (size_t i = 0; i < n; ++i) res = std::max(res, std::abs(dt[i] - rhs[i]));
    worst = std::max(worst, res);
  }
  return worst;
}

double c1_weighted_bound_constant(const FlatToricCone& cone, double epsilon, long num_samples,
                                  std::uint64_t seed) {
  ReebDeformation d;
  d.weights.assign(size_t(cone.n), 1.0);
  d.weights[0] = 1.0 + epsilon;
  d.weights[1] = 1.0 - epsilon;

  int n2 = cone.n * 2;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // ambient weighted map Psi(z)_k = |z|^{w_k - 1} z_k
  auto psi = [&](const RVec& v) {
    CVec z = to_complex(v);
    double r = 0;
    for (const auto& zz : z) r += std::norm(zz);
    r = std::sqrt(r);
    for (size_t k = 0; k < z.size(); ++k) z[k] *= std::pow(r, d.weights[k] - 1.0);
    return to_real(z);
  };

  // inverse: solve sum |p_k|^2 s^{-2 w_k} = 1 for s, then x_k = p_k s^{-w_k}
  auto psi_inv = [&](const RVec& pv, double* s_out) {
    CVec p = to_complex(pv);
    double lo = 1e-9, hi = 1e9;
    auto val = [&](double s) {
      double acc = 0;
      for (size_t k = 0; k < p.size(); ++k) acc += std::norm(p[k]) * std::pow(s, -2 * d.weights[k]);
      return acc - 1.0;
    };
    for (int it = 0; it < 200; ++it) {
      double mid = std::sqrt(lo * hi);
      if (val(mid) > 0) lo = mid; else hi = mid;
    }
    double s = std::sqrt(lo * hi);
    if (s_out) *s_out = s;
    CVec x(p.size());
    for (size_t k = 0; k < p.size(); ++k) x[k] = p[k] * std::pow(s, -d.weights[k]);
    return to_real(x);  // unit link point (up to solver tolerance)
  };

  // deformed cone metric at q = s * x evaluated on ambient vectors
  auto g_tilde = [&](const RVec& q, const RVec& u, const RVec& v) {
    double s = rnorm(q);
    RVec x(q);
    for (double& c : x) c /= s;
    CVec xc = to_complex(x);
    SasakiSample sample = typeI_deform(cone, d, xc);
    auto decompose = [&](const RVec& vec, double* radial, RVec* link) {
      *radial = rdot(vec, x);
      RVec tang = axpy(-*radial, x, vec);
      for (double& c : tang) c /= s;
      *link = tang;
    };
    double au, av;
    RVec yu, yv;
    decompose(u, &au, &yu);
    decompose(v, &av, &yv);
    // expand link vectors in the frame and contract with g~
    int m = int(sample.frame.size());
    RVec cu(size_t(m), 0.0), cv(size_t(m), 0.0);
    for (int i = 0; i < m; ++i) {
      cu[size_t(i)] = rdot(sample.frame[size_t(i)], yu);
      cv[size_t(i)] = rdot(sample.frame[size_t(i)], yv);
    }
    double acc = au * av;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        acc += s * s * cu[size_t(i)] * sample.g_t[size_t(i)][size_t(j)] * cv[size_t(j)];
    return acc;
  };

  // T(p) = (Psi^{-1})^* g~ : T_ij = g~(DInv e_i, DInv e_j) at Psi^{-1}(p)
  auto metric_at = [&](const RVec& p) {
    double s;
    RVec q = psi_inv(p, &s);
    for (double& c : q) c *= s;  // ambient preimage point
    // Jacobian of Psi at q by central differences, then invert
    double hq = 1e-6 * std::max(1.0, rnorm(q));
    std::vector<RVec> jac(size_t(n2));
    for (int k = 0; k < n2; ++k) {
      RVec qp = q, qm = q;
      qp[size_t(k)] += hq;
      qm[size_t(k)] -= hq;
      RVec fp = psi(qp), fm = psi(qm);
      RVec col(size_t(n2));
      for (int i = 0; i < n2; ++i) col[size_t(i)] = (fp[size_t(i)] - fm[size_t(i)]) / (2 * hq);
      jac[size_t(k)] = col;  // column k: dPsi/dq_k
    }
    // invert the Jacobian (Gauss), to map ambient e_i back to T_q
    std::vector<RVec> a(size_t(n2), RVec(size_t(n2), 0.0));
    for (int i = 0; i < n2; ++i)
      for (int k = 0; k < n2; ++k) a[size_t(i)][size_t(k)] = jac[size_t(k)][size_t(i)];
    std::vector<RVec> inv(size_t(n2), RVec(size_t(n2), 0.0));
    for (int i = 0; i < n2; ++i) inv[size_t(i)][size_t(i)] = 1.0;
    for (int col = 0; col < n2; ++col) {
      int piv = col;
      for (int r = col; r < n2; ++r)
        if (std::abs(a[size_t(r)][size_t(col)]) > std::abs(a[size_t(piv)][size_t(col)])) piv = r;
      std::swap(a[size_t(col)], a[size_t(piv)]);
      std::swap(inv[size_t(col)], inv[size_t(piv)]);
      double ip = 1.0 / a[size_t(col)][size_t(col)];
      for (int cc = 0; cc < n2; ++cc) { a[size_t(col)][size_t(cc)] *= ip; inv[size_t(col)][size_t(cc)] *= ip; }
      for (int r = 0; r < n2; ++r) {
        if (r == col) continue;
        double f = a[size_t(r)][size_t(col)];
        if (f == 0) continue;
        for (int cc = 0; cc < n2; ++cc) {
          a[size_t(r)][size_t(cc)] -= f * a[size_t(col)][size_t(cc)];
          inv[size_t(r)][size_t(cc)] -= f * inv[size_t(col)][size_t(cc)];
        }
      }
    }
    // rows of inv: (DPsi)^{-1} e_i expressed at q
    RMat t(size_t(n2), RVec(size_t(n2), 0.0));
    std::vector<RVec> pre(size_t(n2));
    for (int i = 0; i < n2; ++i) {
      RVec v(size_t(n2));
      for (int k = 0; k < n2; ++k) v[size_t(k)] = inv[size_t(k)][size_t(i)];
      pre[size_t(i)] = v;
    }
    for (int i = 0; i < n2; ++i)
      for (int j = i; j < n2; ++j) {
        double val = g_tilde(q, pre[size_t(i)], pre[size_t(j)]);
        t[size_t(i)][size_t(j)] = t[size_t(j)][size_t(i)] = val;
      }
    return t;
  };

  double worst_constant = 0;
  for (long sidx = 0; sidx < num_samples; ++sidx) {
    double u = unif(rng);
    double r = std::pow(1e3, u);  // [1, 1e3]
    CVec x(size_t(cone.n));
    double norm = 0;
    for (auto& z : x) {
      z = {gauss(rng), gauss(rng)};
      norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto& z : x) z /= norm;
    RVec p = to_real(x);
    for (double& c : p) c *= r;

    double hp = 1e-4 * r;
    double frob = 0;
    for (int k = 0; k < n2; ++k) {
      RVec pp = p, pm = p;
      pp[size_t(k)] += hp;
      pm[size_t(k)] -= hp;
      RMat tp = metric_at(pp), tm = metric_at(pm);
      for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) {
          double dd = (tp[size_t(i)][size_t(j)] - tm[size_t(i)][size_t(j)]) / (2 * hp);
          frob += dd * dd;
        }
    }
    frob = std::sqrt(frob);
    double constant = r * frob / (epsilon * std::pow(r, epsilon));
    worst_constant = std::max(worst_constant, constant);
  }
  return worst_constant;
}

}  // namespace accy
