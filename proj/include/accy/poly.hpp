#pragma once

// Exact multivariate polynomials over the Gaussian rationals, with the text
// parser shared by the ideal/germ file formats.

#include "accy/numeric.hpp"

#include <map>
#include <string>
#include <vector>

namespace accy {

using Expo = std::vector<int>;

inline int total_degree(const Expo& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

class Poly {
 public:
  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const GRat& c);
  static Poly variable(int nvars, int index, int exp = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  const std::map<Expo, GRat>& terms() const { return terms_; }

  void add_term(const Expo& e, const GRat& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GRat& c) const;
  Poly pow(int k) const;

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  int degree() const;  // total degree, -1 for zero
  Int weighted_degree(const Expo& e, const std::vector<Int>& w) const;
  // true when every term has the same weighted degree; that degree via out
  bool is_weighted_homogeneous(const std::vector<Int>& w, Int* out = nullptr) const;
  // split into weighted-homogeneous pieces, ascending weight
  std::vector<std::pair<Int, Poly>> weighted_components(const std::vector<Int>& w) const;

  Poly derivative(int var) const;
  GRat eval(const std::vector<GRat>& point) const;
  // substitute each variable by the given polynomial (all in the target ring)
  Poly substitute(const std::vector<Poly>& images) const;
  // rename/permute variables into a ring with new_nvars: var i -> var map[i]
  Poly remap(int new_nvars, const std::vector<int>& map) const;
  // multiply exponent of variable `var` by factor (e.g. t -> s^mu)
  Poly stretch_exponent(int var, int factor) const;
  // set variable to a constant, result in the same ring
  Poly fix_variable(int var, const GRat& value) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Expo, GRat> terms_;
};

// Parses +,-,*,^, parentheses, integer and p/q literals, variable names, and
// the imaginary unit `i` (reserved; not usable as a variable name).
Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names);

}  // namespace accy
