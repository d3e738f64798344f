#include "accy/groebner.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace accy {

bool MonomialOrder::less(const Expo& a, const Expo& b) const {
  switch (kind) {
    case Lex:
      return a < b;  // vector lexicographic, variable 0 dominant
    case GrevLex: {
      int da = total_degree(a), db = total_degree(b);
      if (da != db) return da < db;
      // reverse lexicographic tie-break: larger last-nonzero difference loses
      for (size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k]) return a[k] > b[k];
      }
      return false;
    }
    case WeightedGrevLex: {
      Int da = 0, db = 0;
      for (size_t k = 0; k < a.size(); ++k) {
        da += Int(a[k]) * weights[k];
        db += Int(b[k]) * weights[k];
      }
      if (da != db) return da < db;
      int ta = total_degree(a), tb = total_degree(b);
      if (ta != tb) return ta < tb;
      for (size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k]) return a[k] > b[k];
      }
      return false;
    }
  }
  return false;
}

MonomialOrder order_by_name(const std::string& name) {
  if (name == "lex") return MonomialOrder::lex();
  if (name == "grevlex") return MonomialOrder::grevlex();
  fail(Err::UsageError, "unknown monomial order '" + name + "' (expected lex|grevlex)");
}

const std::pair<const Expo, GRat>* leading_term(const Poly& p, const MonomialOrder& ord) {
  const std::pair<const Expo, GRat>* best = nullptr;
  for (const auto& t : p.terms())
    if (!best || ord.less(best->first, t.first)) best = &t;
  return best;
}

bool expo_divides(const Expo& a, const Expo& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
  return r;
}

namespace {

Expo expo_sub(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

Poly term_times(const Poly& p, const Expo& e, const GRat& c) {
  Poly r(p.nvars());
  for (const auto& [pe, pc] : p.terms()) {
    Expo ne(pe.size());
    for (size_t k = 0; k < pe.size(); ++k) ne[k] = pe[k] + e[k];
    r.add_term(ne, pc * c);
  }
  return r;
}

}  // namespace

Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const MonomialOrder& ord) {
  Poly rem(p.nvars());
  Poly cur = p;
  std::vector<const std::pair<const Expo, GRat>*> lts;
  lts.reserve(basis.size());
  for (const Poly& g : basis) lts.push_back(leading_term(g, ord));
  while (!cur.is_zero()) {
    const auto* lt = leading_term(cur, ord);
    bool reduced = false;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (!lts[k]) continue;
      if (expo_divides(lts[k]->first, lt->first)) {
        GRat c = lt->second / lts[k]->second;
        cur = cur - term_times(basis[k], expo_sub(lt->first, lts[k]->first), c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.add_term(lt->first, lt->second);
      Poly next(cur.nvars());
      for (const auto& [e, c] : cur.terms())
        if (e != lt->first) next.add_term(e, c);
      cur = next;
    }
  }
  return rem;
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  const auto* lf = leading_term(f, ord);
  const auto* lg = leading_term(g, ord);
  Expo l = expo_lcm(lf->first, lg->first);
  Poly a = term_times(f, expo_sub(l, lf->first), GRat(1) / lf->second);
  Poly b = term_times(g, expo_sub(l, lg->first), GRat(1) / lg->second);
  return a - b;
}

std::vector<Poly> groebner(std::vector<Poly> gens, const MonomialOrder& ord, const Caps& caps) {
  std::vector<Poly> g;
  for (Poly& p : gens)
    if (!p.is_zero()) g.push_back(std::move(p));
  if (g.empty()) return {};
  // deterministic starting order
  std::sort(g.begin(), g.end(), [&](const Poly& a, const Poly& b) {
    const auto* la = leading_term(a, ord);
    const auto* lb = leading_term(b, ord);
    if (la->first != lb->first) return ord.less(la->first, lb->first);
    return a.terms() < b.terms();
  });

  struct Pair {
    int sugar;
    Expo l;
    size_t i, j;
    bool operator<(const Pair& o) const {
      if (sugar != o.sugar) return sugar < o.sugar;
      if (l != o.l) return l < o.l;
      return std::tie(i, j) < std::tie(o.i, o.j);
    }
  };
  std::set<Pair> pairs;
  auto sugar_of = [&](const Poly& p) { return p.degree(); };
  std::vector<int> sugars;
  for (const Poly& p : g) sugars.push_back(sugar_of(p));

  auto add_pairs = [&](size_t j) {
    const auto* lj = leading_term(g[j], ord);
    for (size_t i = 0; i < j; ++i) {
      const auto* li = leading_term(g[i], ord);
      // product criterion: coprime leading monomials reduce to zero
      bool coprime = true;
      for (size_t k = 0; k < li->first.size(); ++k)
        if (li->first[k] > 0 && lj->first[k] > 0) { coprime = false; break; }
      if (coprime) continue;
      Expo l = expo_lcm(li->first, lj->first);
      int sg = std::max(sugars[i] + total_degree(expo_sub(l, li->first)),
                        sugars[j] + total_degree(expo_sub(l, lj->first)));
      pairs.insert({sg, l, i, j});
    }
  };
  for (size_t j = 0; j < g.size(); ++j) add_pairs(j);

  size_t term_budget = caps.max_terms;
  while (!pairs.empty()) {
    Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    Poly s = s_polynomial(g[pr.i], g[pr.j], ord);
    Poly r = normal_form(s, g, ord);
    if (r.is_zero()) continue;
    if (r.num_terms() > term_budget) fail(Err::ResourceCapExceeded, "term budget exhausted");
    term_budget -= r.num_terms();
    g.push_back(r);
    sugars.push_back(std::max(pr.sugar, r.degree()));
    if (g.size() > caps.max_basis) fail(Err::ResourceCapExceeded, "basis size cap exceeded");
    add_pairs(g.size() - 1);
  }

  // minimalize: drop elements whose leading term is divisible by another's
  std::vector<Poly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    const auto* li = leading_term(g[i], ord);
    bool redundant = false;
    for (size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const auto* lj = leading_term(g[j], ord);
      if (expo_divides(lj->first, li->first) &&
          (lj->first != li->first || j < i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // interreduce and normalize to monic
  std::vector<Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = normal_form(minimal[i], others, ord);
    if (r.is_zero()) continue;
    const auto* lr = leading_term(r, ord);
    reduced.push_back(r * (GRat(1) / lr->second));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return ord.less(leading_term(a, ord)->first, leading_term(b, ord)->first);
  });
  return reduced;
}

bool is_confluent(const std::vector<Poly>& basis, const MonomialOrder& ord) {
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j], ord), basis, ord).is_zero())
        return false;
  return true;
}

bool ideal_contains(const Poly& p, const std::vector<Poly>& gb, const MonomialOrder& ord) {
  return normal_form(p, gb, ord).is_zero();
}

bool same_ideal(const std::vector<Poly>& gb1, const std::vector<Poly>& gb2,
                const MonomialOrder& ord) {
  for (const Poly& p : gb1)
    if (!ideal_contains(p, gb2, ord)) return false;
  for (const Poly& p : gb2)
    if (!ideal_contains(p, gb1, ord)) return false;
  return true;
}

int ideal_dimension(const std::vector<Poly>& gb, const MonomialOrder& ord) {
  if (gb.empty()) fail(Err::UsageError, "ideal_dimension: empty basis (zero ideal)");
  int n = gb[0].nvars();
  for (const Poly& p : gb)
    if (p.degree() == 0) return -1;  // unit ideal
  std::vector<Expo> lts;
  for (const Poly& p : gb) lts.push_back(leading_term(p, ord)->first);
  int best = -1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    // S = variables in mask; independent iff no leading monomial supported in S
    bool indep = true;
    for (const Expo& e : lts) {
      bool inside = true;
      for (int k = 0; k < n; ++k)
        if (e[size_t(k)] > 0 && !(mask & (1 << k))) { inside = false; break; }
      if (inside) { indep = false; break; }
    }
    if (indep) best = std::max(best, __builtin_popcount(unsigned(mask)));
  }
  return best;
}

long standard_monomials(const std::vector<Poly>& gb, const MonomialOrder& ord, int degree) {
  if (gb.empty()) fail(Err::UsageError, "standard_monomials: empty basis");
  int n = gb[0].nvars();
  std::vector<Expo> lts;
  for (const Poly& p : gb) lts.push_back(leading_term(p, ord)->first);
  long count = 0;
  Expo e(size_t(n), 0);
  // enumerate all exponent vectors of the given total degree
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == n - 1) {
      e[size_t(var)] = remaining;
      bool standard = true;
      for (const Expo& l : lts)
        if (expo_divides(l, e)) { standard = false; break; }
      if (standard) ++count;
      return;
    }
    for (int d = 0; d <= remaining; ++d) {
      e[size_t(var)] = d;
      rec(var + 1, remaining - d);
    }
  };
  rec(0, degree);
  return count;
}

}  // namespace accy
