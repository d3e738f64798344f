#pragma once

// Numerical checks of the Type-I Sasaki deformation formulas on the flat
// model C^n \ {0}: the new Sasaki tensors, the weighted flow map and its
// radius bounds, and the k = 0 linearized-flow identity. All double
// precision; the closed forms are exact up to rounding.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace accy {

using CVec = std::vector<std::complex<double>>;
using RVec = std::vector<double>;
using RMat = std::vector<std::vector<double>>;

struct FlatToricCone {
  int n = 2;  // complex dimension, >= 2
};

struct ReebDeformation {
  std::vector<double> weights;  // xi~ = sum w_i d/dtheta_i, all positive
  double lambda1() const;       // min weight = min_L g(xi, xi~)
  double lambda2() const;       // max weight
};

// real frame of T_x(link): first vector xi(x), completed by Gram-Schmidt over
// the ambient coordinate frame (deterministic)
RMat link_frame(const CVec& x);

struct SasakiSample {
  CVec x;         // unit vector in C^n
  RMat frame;     // rows: orthonormal basis of T_x L (2n-1 vectors in R^2n)
  RVec eta_t;     // eta~ on the frame
  RMat phi_t;     // Phi~ in frame coordinates
  RMat g_t;       // g~_L in frame coordinates
  RVec xi_t;      // xi~ in frame coordinates
  double eta_pairing = 0;  // eta(xi~) at x
};

SasakiSample typeI_deform(const FlatToricCone& cone, const ReebDeformation& d, const CVec& x);

struct SasakiResiduals {
  double eta_of_xi;        // |eta~(xi~) - 1|
  double phi_of_xi;        // |Phi~(xi~)|
  double phi_square;       // |Phi~^2 + Id - eta~ (x) xi~|
  double metric_phi;       // |g~(Phi X, Phi Y) - g~(X,Y) + eta~(X)eta~(Y)|
  double metric_xi;        // |g~(xi~, X) - eta~(X)|
  double max() const;
};

SasakiResiduals verify_sasaki_identities(const SasakiSample& s);

// closed-form flow of -J xi~: z_i -> r^{w_i} x_i; also cross-checked against
// adaptive Runge-Kutta integration (IntegratorFailure on divergence)
CVec flow_map(const FlatToricCone& cone, const ReebDeformation& d, double r, const CVec& x,
              double* rk_disagreement = nullptr);

struct RadiusBoundsReport {
  double max_violation = 0;   // of min{r^l1, r^l2} <= |Psi| <= max{r^l1, r^l2}
  double max_c0_violation = 0;  // of r^{1-eps} <= r~' <= r^{1+eps} when eps > 0
  long samples = 0;
};

// samples (r, x) with r in [1e-3, 1e3]; when epsilon > 0 the weights are the
// normalized perturbation (1+d, 1-d, ..), d = eps/(1+eps), and the Theorem-B.3
// C0 bound is checked on r in [1, 1e3]
RadiusBoundsReport radius_bounds_check(const FlatToricCone& cone, const ReebDeformation& d,
                                       long num_samples, std::uint64_t seed,
                                       double epsilon = 0.0);

// max residual of d/dt (Phi^t_* w) = (grad X)(Phi^t_* w) for a linear field X
// (flat connection; second-order central differences in t, step 1e-5)
double linearized_flow_check(const RMat& x_linear, long num_samples, std::uint64_t seed);

// C1 spot check: r * |grad((Psi^{-1})^* g~)|  <=  constant * eps * r^eps
// on sampled radii in [1, 1e3]; returns the smallest admissible constant
double c1_weighted_bound_constant(const FlatToricCone& cone, double epsilon, long num_samples,
                                  std::uint64_t seed);

}  // namespace accy
