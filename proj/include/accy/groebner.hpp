#pragma once

// Buchberger engine: grevlex / weighted-grevlex / lex orders, full normal
// forms, sugar-strategy pair selection, reduced (canonical) bases.

#include "accy/poly.hpp"

namespace accy {

struct MonomialOrder {
  enum Kind { Lex, GrevLex, WeightedGrevLex } kind = GrevLex;
  std::vector<Int> weights;  // for WeightedGrevLex

  static MonomialOrder lex() { return {Lex, {}}; }
  static MonomialOrder grevlex() { return {GrevLex, {}}; }
  static MonomialOrder weighted(std::vector<Int> w) { return {WeightedGrevLex, std::move(w)}; }

  // strict "a < b" in the order
  bool less(const Expo& a, const Expo& b) const;
};

MonomialOrder order_by_name(const std::string& name);

struct Caps {
  size_t max_terms = 2'000'000;      // total term budget across a Buchberger run
  size_t max_basis = 4'000;          // basis size cap
};

const std::pair<const Expo, GRat>* leading_term(const Poly& p, const MonomialOrder& ord);

// exponent divisibility a | b
bool expo_divides(const Expo& a, const Expo& b);
Expo expo_lcm(const Expo& a, const Expo& b);

// full normal form of p modulo basis (every term reduced)
Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& ord);

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord);

// reduced Groebner basis, monic, sorted by leading monomial; canonical for the
// order regardless of generator input order
std::vector<Poly> groebner(std::vector<Poly> gens, const MonomialOrder& ord, const Caps& caps = {});

// every S-polynomial of the basis reduces to zero?
bool is_confluent(const std::vector<Poly>& basis, const MonomialOrder& ord);

bool ideal_contains(const Poly& p, const std::vector<Poly>& gb, const MonomialOrder& ord);
bool same_ideal(const std::vector<Poly>& gb1, const std::vector<Poly>& gb2, const MonomialOrder& ord);

// Krull dimension of the quotient ring via maximal independent variable sets
// of the leading-term ideal
int ideal_dimension(const std::vector<Poly>& gb, const MonomialOrder& ord);

// number of standard monomials of the given total degree (quotient Hilbert
// function value when the ideal's leading terms are taken from gb)
long standard_monomials(const std::vector<Poly>& gb, const MonomialOrder& ord, int degree);

}  // namespace accy
