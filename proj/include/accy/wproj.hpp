#pragma once

// Equivariant weighted families t, z_1..z_N and their weighted projective
// closures: divisor at infinity, fiber-divisor comparison, smoothness at
// lifted chart points, base change t = s^mu.

#include "accy/groebner.hpp"
#include "accy/poly.hpp"

#include <optional>

namespace accy {

// Ideal in Q(i)[t, z_1..z_N], weighted-homogeneous for wt(t) = mu,
// wt(z_n) = mu_n with gcd(mu_1..mu_N) = 1. Variable 0 is always t.
struct WeightedFamily {
  std::vector<std::string> names;   // t z1 .. zN
  Int mu;                           // weight of t
  std::vector<Int> z_weights;       // weights of z_1..z_N
  std::vector<Poly> generators;
  std::vector<std::string> warnings;  // e.g. inhomogeneous input decomposed

  int nvars() const { return int(names.size()); }
  std::vector<Int> weight_vector() const {  // (mu, mu_1..mu_N)
    std::vector<Int> w{mu};
    for (const Int& x : z_weights) w.push_back(x);
    return w;
  }
};

struct ParseIdealOptions {
  bool allow_decomposition = true;  // split inhomogeneous generators with a warning
};

// File format: `vars: t z1 z2 ...`, `weights: mu m1 m2 ...`, `gen: <expr>` per
// generator; `#` comments.
WeightedFamily parse_ideal(const std::string& text, const ParseIdealOptions& opt = {});
WeightedFamily load_ideal_file(const std::string& path, const ParseIdealOptions& opt = {});

struct ChartData {
  int n = 0;                     // the zeta_n != 0 chart (1-based over z's)
  Int group_order;               // mu_n
  std::vector<Int> action;       // diagonal exponents on (tau, zeta_1..^n..zeta_N, w)
  std::vector<std::string> lifted_names;  // coordinates of the uniformizing C^{N+1}
};

// Closure in P(mu, mu_1..mu_N, 1). Homogeneous coordinates tau, zeta_1..N, w;
// weighted-homogeneous generators carry no w (Eq-(2.2) form f_i + tau g_i).
struct WProjClosure {
  WeightedFamily family;               // the affine family it closes
  std::vector<std::string> names;      // tau zeta1..zetaN w
  std::vector<Int> weights;            // (mu, mu_1..mu_N, 1)
  std::vector<Poly> generators;        // in the closure ring (N+2 variables)
  std::vector<ChartData> charts;       // one per zeta_n
};

WProjClosure wproj_closure(const WeightedFamily& f);

// dehomogenize at w = 1 (and rename) back to the affine family generators
std::vector<Poly> dehomogenize(const WProjClosure& cl);

struct FiberDivisorResult {
  std::vector<Poly> d0_ideal;       // ideal of D_0 in zeta variables
  std::vector<Poly> dt_ideal;       // ideal of D_t in zeta variables
  bool equal = false;               // saturated ideals coincide on every chart
  std::vector<std::string> chart_notes;
};

FiberDivisorResult fiber_divisor_at_infinity(const WProjClosure& cl, const Rat& t_value,
                                             const Caps& caps = {});

struct SmoothPointReport {
  int chart = 0;                     // 0 = affine (w != 0) chart, else zeta_n chart
  std::vector<GRat> point;           // lifted coordinates
  bool smooth = false;
  int jacobian_rank = 0;
  int expected_rank = 0;             // ambient dim - variety dim
  Int stabilizer_order;
};

struct SmoothAtInfinityOptions {
  // user-supplied lifted points per chart (chart index -> points); when empty
  // for a chart the tool extracts rational divisor points itself
  std::vector<std::pair<int, std::vector<GRat>>> points;
};

std::vector<SmoothPointReport> smooth_at_infinity(const WProjClosure& cl, const Rat& t_value,
                                                  const SmoothAtInfinityOptions& opt = {},
                                                  const Caps& caps = {});

// t = s^mu; wt(s) = 1; homogeneity re-verified
WeightedFamily base_change(const WeightedFamily& f);

}  // namespace accy
