#pragma once

// Exact number types shared by every module: arbitrary-precision integers and
// rationals (GMP), Gaussian rationals for the complex-algebra paths, and a
// high-precision float for the Reeb optimizer output.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace accy {

using Int = mpz_class;
using Rat = mpq_class;
using BigFloat = mpf_class;  // working precision set by bigfloat_bits()

// 256 bits ~ 77 decimal digits; comfortably above the 50-digit requirement.
inline constexpr int kBigFloatBits = 256;

inline BigFloat big(const Rat& q) { return BigFloat(q, kBigFloatBits); }
inline BigFloat big(long v) { return BigFloat(v, kBigFloatBits); }
inline BigFloat big(double v) { return BigFloat(v, kBigFloatBits); }

enum class Err {
  ParseError,
  DegenerateCone,
  NotStronglyConvex,
  NotGood,
  NotGorenstein,
  UnboundedComputation,
  DegreeCapExceeded,
  ReebOutsidePolygon,
  NonConvergence,
  TargetRational,
  PrecisionExhausted,
  SizeCapExceeded,
  NoDeformation,
  EmptyApproximants,
  NonCoprimeWeights,
  MixedWeightGenerator,
  ResourceCapExceeded,
  NonZeroDimensionalDivisor,
  LPFailure,
  NotAGroup,
  JetOverflow,
  InfiniteOrder,
  NotHyperplanePreserving,
  NotEquivariant,
  NonPositivePairing,
  IntegratorFailure,
  UsageError,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline const char* err_name(Err c) {
  switch (c) {
    case Err::ParseError: return "ParseError";
    case Err::DegenerateCone: return "DegenerateCone";
    case Err::NotStronglyConvex: return "NotStronglyConvex";
    case Err::NotGood: return "NotGood";
    case Err::NotGorenstein: return "NotGorenstein";
    case Err::UnboundedComputation: return "UnboundedComputation";
    case Err::DegreeCapExceeded: return "DegreeCapExceeded";
    case Err::ReebOutsidePolygon: return "ReebOutsidePolygon";
    case Err::NonConvergence: return "NonConvergence";
    case Err::TargetRational: return "TargetRational";
    case Err::PrecisionExhausted: return "PrecisionExhausted";
    case Err::SizeCapExceeded: return "SizeCapExceeded";
    case Err::NoDeformation: return "NoDeformation";
    case Err::EmptyApproximants: return "EmptyApproximants";
    case Err::NonCoprimeWeights: return "NonCoprimeWeights";
    case Err::MixedWeightGenerator: return "MixedWeightGenerator";
    case Err::ResourceCapExceeded: return "ResourceCapExceeded";
    case Err::NonZeroDimensionalDivisor: return "NonZeroDimensionalDivisor";
    case Err::LPFailure: return "LPFailure";
    case Err::NotAGroup: return "NotAGroup";
    case Err::JetOverflow: return "JetOverflow";
    case Err::InfiniteOrder: return "InfiniteOrder";
    case Err::NotHyperplanePreserving: return "NotHyperplanePreserving";
    case Err::NotEquivariant: return "NotEquivariant";
    case Err::NonPositivePairing: return "NonPositivePairing";
    case Err::IntegratorFailure: return "IntegratorFailure";
    case Err::UsageError: return "UsageError";
  }
  return "Error";
}

[[noreturn]] inline void fail(Err c, const std::string& what) {
  throw Error(c, std::string(err_name(c)) + ": " + what);
}

// ---------------------------------------------------------------------------
// small vector helpers

using Vec3 = std::array<Int, 3>;
using Vec2 = std::array<Int, 2>;
using QVec3 = std::array<Rat, 3>;

inline Int dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Rat dot(const Vec3& a, const QVec3& b) {
  return Rat(a[0]) * b[0] + Rat(a[1]) * b[1] + Rat(a[2]) * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 neg(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline bool is_zero(const Vec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// divide out the gcd of the entries; (0,0,0) stays put
template <typename V>
inline V primitive(V v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

// nearest integer to p/q, half rounded toward -infinity (deterministic ties)
inline Int round_nearest(const Rat& x) {
  Int num = x.get_num(), den = x.get_den();  // den > 0 canonical
  Int two_num = 2 * num + den;               // floor((2n+d)/(2d)) = round(n/d)
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), Int(2 * den).get_mpz_t());
  return q;
}

// round x to the nearest multiple of 1/den
inline Rat round_to_den(const Rat& x, const Int& den) {
  Rat scaled = x * Rat(den);
  Rat r(round_nearest(scaled), den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// fixed-point decimal with `digits` fractional digits (deterministic output)
std::string bigfloat_str(const BigFloat& x, int digits = 50);

// ---------------------------------------------------------------------------
// Gaussian rationals Q(i): the coefficient field of the polynomial engine.

struct GRat {
  Rat re, im;

  GRat() : re(0), im(0) {}
  GRat(long r) : re(r), im(0) {}
  GRat(const Rat& r) : re(r), im(0) {}
  GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GRat conj() const { return {re, -im}; }
  Rat norm2() const { return re * re + im * im; }

  GRat operator-() const { return {-re, -im}; }
  GRat& operator+=(const GRat& o) { re += o.re; im += o.im; return *this; }
  GRat& operator-=(const GRat& o) { re -= o.re; im -= o.im; return *this; }

  friend GRat operator+(GRat a, const GRat& b) { return a += b; }
  friend GRat operator-(GRat a, const GRat& b) { return a -= b; }
  friend GRat operator*(const GRat& a, const GRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GRat operator/(const GRat& a, const GRat& b) {
    Rat n = b.norm2();
    if (n == 0) throw std::domain_error("GRat division by zero");
    GRat c = a * b.conj();
    return {c.re / n, c.im / n};
  }
  GRat& operator*=(const GRat& o) { return *this = *this * o; }
  GRat& operator/=(const GRat& o) { return *this = *this / o; }

  friend bool operator==(const GRat& a, const GRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

  double abs_double() const;
  std::string str() const;
};

inline GRat grat_i() { return GRat(Rat(0), Rat(1)); }

}  // namespace accy
