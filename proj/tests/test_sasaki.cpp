#include "accy/sasaki.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace accy;

namespace {

CVec random_link_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec x(size_t(n));
  double norm = 0;
  for (auto& z : x) {
    z = {gauss(rng), gauss(rng)};
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  for (auto& z : x) z /= norm;
  return x;
}

}  // namespace

TEST_CASE("identity deformation reproduces the round Sasaki structure") {
  FlatToricCone cone{2};
  ReebDeformation d{{1.0, 1.0}};
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    CVec x = random_link_point(2, rng);
    SasakiSample s = typeI_deform(cone, d, x);
    CHECK(std::abs(s.eta_pairing - 1.0) < 1e-14);
    CHECK(verify_sasaki_identities(s).max() <= 1e-14);
    // eta~ = eta: the pairing of the frame with xi is the first coordinate
    CHECK(std::abs(s.eta_t[0] - 1.0) < 1e-14);
    for (size_t k = 1; k < s.eta_t.size(); ++k) CHECK(std::abs(s.eta_t[k]) < 1e-14);
  }
}

TEST_CASE("weights (2,1) at the first axis point: eta(xi~) = 2") {
  FlatToricCone cone{2};
  ReebDeformation d{{2.0, 1.0}};
  CVec x{{1.0, 0.0}, {0.0, 0.0}};
  SasakiSample s = typeI_deform(cone, d, x);
  CHECK(std::abs(s.eta_pairing - 2.0) < 1e-15);
  // eta~ = eta / 2 on the frame
  CHECK(std::abs(s.eta_t[0] - 0.5) < 1e-15);
}

TEST_CASE("Takahashi identities hold at 100 random points, S3 and S5") {
  std::mt19937_64 rng(7);
  {
    FlatToricCone cone{2};
    ReebDeformation d{{2.0, 1.0}};
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      SasakiSample s = typeI_deform(cone, d, random_link_point(2, rng));
      worst = std::max(worst, verify_sasaki_identities(s).max());
    }
    CHECK(worst <= 1e-10);
  }
  {
    FlatToricCone cone{3};
    ReebDeformation d{{3.0, 1.0, 1.0}};
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      SasakiSample s = typeI_deform(cone, d, random_link_point(3, rng));
      worst = std::max(worst, verify_sasaki_identities(s).max());
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("deformed tensors cross-checked against direct formula evaluation") {
  // independent evaluation of Eqs. (B.1)-(B.3) at a specific point
  FlatToricCone cone{2};
  ReebDeformation d{{2.0, 1.0}};
  double s2 = 1.0 / std::sqrt(2.0);
  CVec x{{s2, 0.0}, {s2, 0.0}};
  SasakiSample s = typeI_deform(cone, d, x);
  // eta(xi~) = 2|x1|^2 + |x2|^2 = 1.5
  CHECK(std::abs(s.eta_pairing - 1.5) < 1e-15);
  CHECK(verify_sasaki_identities(s).max() <= 1e-12);
  // g~(xi~, xi~) = 1 via eta~(xi~) = 1
  double gxx = 0;
  for (size_t i = 0; i < s.xi_t.size(); ++i)
    for (size_t j = 0; j < s.xi_t.size(); ++j)
      gxx += s.xi_t[i] * s.g_t[i][j] * s.xi_t[j];
  CHECK(std::abs(gxx - 1.0) < 1e-12);
}

TEST_CASE("non-positive pairing raises for a general torus field") {
  FlatToricCone cone{2};
  ReebDeformation d{{-1.0, 2.0}};  // not a positive deformation
  CVec x{{1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(typeI_deform(cone, d, x), Error);
}

TEST_CASE("flow map closed forms and integrator agreement") {
  FlatToricCone cone{2};
  ReebDeformation d{{2.0, 1.0}};

  // identity weights: Psi(r, x) = r x
  ReebDeformation id{{1.0, 1.0}};
  CVec x{{0.6, 0.0}, {0.8, 0.0}};
  double dis = 0;
  CVec y = flow_map(cone, id, 3.0, x, &dis);
  CHECK(std::abs(y[0].real() - 1.8) < 1e-12);
  CHECK(std::abs(y[1].real() - 2.4) < 1e-12);
  CHECK(dis <= 1e-8);

  // axis points saturate the radius bounds
  CVec e1{{1.0, 0.0}, {0.0, 0.0}};
  CVec img = flow_map(cone, d, 4.0, e1, &dis);
  CHECK(std::abs(std::abs(img[0]) - 16.0) < 1e-10);  // r^2
  CHECK(dis <= 1e-8);
  CVec e2{{0.0, 0.0}, {1.0, 0.0}};
  img = flow_map(cone, d, 4.0, e2, &dis);
  CHECK(std::abs(std::abs(img[1]) - 4.0) < 1e-10);  // r^1
}

TEST_CASE("radius bounds: identity exact, (2,1) within 1e-9 over 10^4 samples") {
  FlatToricCone cone{2};
  RadiusBoundsReport id = radius_bounds_check(cone, ReebDeformation{{1.0, 1.0}}, 100, 11);
  CHECK(id.max_violation <= 1e-12);

  RadiusBoundsReport r = radius_bounds_check(cone, ReebDeformation{{2.0, 1.0}}, 10000, 12);
  CHECK(r.max_violation <= 1e-9);
  CHECK(r.samples >= 10000);
}

TEST_CASE("Theorem-B.3 C0 bound for the normalized small perturbation") {
  FlatToricCone cone{2};
  for (double eps : {0.01, 0.05}) {
    RadiusBoundsReport r =
        radius_bounds_check(cone, ReebDeformation{{1.0, 1.0}}, 2000, 13, eps);
    CHECK(r.max_violation <= 1e-9);
    CHECK(r.max_c0_violation <= 1e-9);
  }
}

TEST_CASE("linearized flow identity at k = 0") {
  // X = 0: flow is the identity, residual 0
  RMat zero{{0, 0}, {0, 0}};
  CHECK(linearized_flow_check(zero, 10, 3) <= 1e-15);

  // X = Euler field: Phi^t_* w = e^t w
  RMat euler{{1, 0}, {0, 1}};
  CHECK(linearized_flow_check(euler, 100, 4) <= 1e-6);

  // rotation field
  RMat rot{{0, -1}, {1, 0}};
  CHECK(linearized_flow_check(rot, 100, 5) <= 1e-6);

  // a generic linear field (shear + rotation mix)
  RMat mix{{0.3, -1.1, 0.0}, {0.9, 0.1, 0.4}, {0.0, -0.2, -0.5}};
  CHECK(linearized_flow_check(mix, 100, 6) <= 1e-6);
}

TEST_CASE("flow map preserves the deformed Reeb field (finite differences)") {
  FlatToricCone cone{2};
  ReebDeformation d{{2.0, 1.0}};
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    CVec x = random_link_point(2, rng);
    double r = 0.5 + 3.0 * std::generate_canonical<double, 53>(rng);
    // xi~ at p = (i w_k p_k); push forward through Psi by finite differences
    const double h = 1e-6;
    CVec p = x;
    for (auto& z : p) z *= r;  // ambient point with radius r
    auto psi_ambient = [&](const CVec& z) {
      double rad = 0;
      for (const auto& zz : z) rad += std::norm(zz);
      rad = std::sqrt(rad);
      CVec out(z.size());
      for (size_t k = 0; k < z.size(); ++k)
        out[k] = std::pow(rad, d.weights[k] - 1.0) * z[k];
      return out;
    };
    CVec xi_p(p.size());
    for (size_t k = 0; k < p.size(); ++k)
      xi_p[k] = std::complex<double>(0, d.weights[k]) * p[k];
    CVec plus(p.size()), minus(p.size());
    for (size_t k = 0; k < p.size(); ++k) {
      plus[k] = p[k] + h * xi_p[k];
      minus[k] = p[k] - h * xi_p[k];
    }
    CVec fp = psi_ambient(plus), fm = psi_ambient(minus);
    CVec img = psi_ambient(p);
    double worst = 0;
    for (size_t k = 0; k < p.size(); ++k) {
      std::complex<double> push = (fp[k] - fm[k]) / (2 * h);
      std::complex<double> expect = std::complex<double>(0, d.weights[k]) * img[k];
      worst = std::max(worst, std::abs(push - expect));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("C1 spot check of the weighted derivative bound") {
  FlatToricCone cone{2};
  double constant = c1_weighted_bound_constant(cone, 0.05, 40, 17);
  CHECK(constant <= 2.0);
  double constant2 = c1_weighted_bound_constant(cone, 0.02, 40, 18);
  CHECK(constant2 <= 2.0);
}
