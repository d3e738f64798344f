#include "accy/linearize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace accy {

GMat gmat_identity(int n) {
  GMat m(size_t(n), std::vector<GRat>(size_t(n), GRat(0)));
  for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = GRat(1);
  return m;
}

GMat gmat_mul(const GMat& a, const GMat& b) {
  size_t n = a.size(), p = b[0].size(), k = b.size();
  GMat r(n, std::vector<GRat>(p, GRat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < p; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

GMat gmat_pow(const GMat& a, long k) {
  GMat r = gmat_identity(int(a.size()));
  GMat base = a;
  while (k > 0) {
    if (k & 1) r = gmat_mul(r, base);
    base = gmat_mul(base, base);
    k >>= 1;
  }
  return r;
}

bool gmat_equal(const GMat& a, const GMat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

GMat gmat_inverse(const GMat& a) {
  int n = int(a.size());
  GMat m = a;
  GMat inv = gmat_identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[size_t(r)][size_t(col)].is_zero()) { piv = r; break; }
    if (piv < 0) fail(Err::UsageError, "matrix is singular");
    std::swap(m[size_t(col)], m[size_t(piv)]);
    std::swap(inv[size_t(col)], inv[size_t(piv)]);
    GRat ip = GRat(1) / m[size_t(col)][size_t(col)];
    for (int c = 0; c < n; ++c) { m[size_t(col)][size_t(c)] *= ip; inv[size_t(col)][size_t(c)] *= ip; }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      GRat f = m[size_t(r)][size_t(col)];
      if (f.is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        m[size_t(r)][size_t(c)] -= f * m[size_t(col)][size_t(c)];
        inv[size_t(r)][size_t(c)] -= f * inv[size_t(col)][size_t(c)];
      }
    }
  }
  return inv;
}

void CyclicRep::validate() const {
  int n = dim();
  if (n < 2) fail(Err::UsageError, "representation dimension must be >= 2");
  for (int j = 0; j < n - 1; ++j)
    if (!a[size_t(n - 1)][size_t(j)].is_zero())
      fail(Err::NotHyperplanePreserving, "last row must be (0,...,0,d)");
  if (a[size_t(n - 1)][size_t(n - 1)].is_zero())
    fail(Err::NotHyperplanePreserving, "d must be nonzero");
  if (order <= 0) fail(Err::UsageError, "claimed order must be positive");
  if (!gmat_equal(gmat_pow(a, order), gmat_identity(n)))
    fail(Err::InfiniteOrder, "A^m != Id for the claimed order m");
}

namespace {

GRat parse_gaussian(const std::string& tok) {
  // forms: a | b*i | i | -i | a+b*i | a-b*i  with a,b integers or p/q
  std::string s;
  for (char c : tok)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(Err::ParseError, "empty matrix entry");
  auto parse_rat = [](const std::string& t) -> Rat {
    if (t.empty() || t == "+") return Rat(1);
    if (t == "-") return Rat(-1);
    try {
      Rat q(t);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      fail(Err::ParseError, "bad rational '" + t + "'");
    }
  };
  // split at the last +/- that is not the leading sign
  size_t split = std::string::npos;
  for (size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '*') split = k;
  bool has_i = s.find('i') != std::string::npos;
  if (!has_i) return GRat(parse_rat(s));
  std::string re_part, im_part;
  if (split == std::string::npos) {
    re_part = "0";
    im_part = s;
  } else {
    re_part = s.substr(0, split);
    im_part = s.substr(split);
  }
  // strip the i (and optional '*')
  size_t ipos = im_part.find('i');
  if (ipos == std::string::npos) fail(Err::ParseError, "bad complex entry '" + tok + "'");
  std::string coeff = im_part.substr(0, ipos);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  return GRat(parse_rat(re_part), parse_rat(coeff));
}

}  // namespace

CyclicRep parse_matrix(const std::string& text) {
  CyclicRep rep;
  std::istringstream in(text);
  std::string line;
  long claimed = 0;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.rfind("order:", 0) == 0) {
      claimed = std::stol(line.substr(6));
      continue;
    }
    std::vector<GRat> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(parse_gaussian(cell));
    if (!row.empty()) rep.a.push_back(std::move(row));
  }
  if (rep.a.empty()) fail(Err::ParseError, "no matrix rows");
  for (const auto& row : rep.a)
    if (row.size() != rep.a.size()) fail(Err::ParseError, "matrix is not square");
  if (claimed > 0) {
    rep.order = claimed;
  } else {
    // detect the order (cap 1000)
    GMat p = rep.a;
    GMat id = gmat_identity(rep.dim());
    long m = 1;
    for (; m <= 1000; ++m) {
      if (gmat_equal(p, id)) break;
      p = gmat_mul(p, rep.a);
    }
    if (m > 1000) fail(Err::InfiniteOrder, "no order <= 1000 detected");
    rep.order = m;
  }
  rep.validate();
  return rep;
}

CyclicRep load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open matrix file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

GMat averaged_hermitian_form(const GMat& b, long order) {
  int n = int(b.size());
  GMat h(size_t(n), std::vector<GRat>(size_t(n), GRat(0)));
  GMat p = gmat_identity(n);
  for (long k = 0; k < order; ++k) {
    // h += p^* p
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        GRat acc(0);
        for (int l = 0; l < n; ++l) acc += p[size_t(l)][size_t(i)].conj() * p[size_t(l)][size_t(j)];
        h[size_t(i)][size_t(j)] += acc;
      }
    p = gmat_mul(p, b);
  }
  GRat inv_m = GRat(1) / GRat(Rat(Int(order)));
  for (auto& row : h)
    for (auto& v : row) v *= inv_m;
  return h;
}

GMat ldl_gram_schmidt(const GMat& h) {
  // H = L D L^* with L unit lower triangular; return T = (L^*)^{-1}, so that
  // T^* H T = D (diagonal, positive rational)
  int n = int(h.size());
  GMat l = gmat_identity(n);
  std::vector<GRat> d(size_t(n), GRat(0));
  for (int j = 0; j < n; ++j) {
    GRat dj = h[size_t(j)][size_t(j)];
    for (int k = 0; k < j; ++k)
      dj -= l[size_t(j)][size_t(k)] * l[size_t(j)][size_t(k)].conj() * d[size_t(k)];
    if (dj.is_zero()) fail(Err::UsageError, "averaged form is degenerate");
    d[size_t(j)] = dj;
    for (int i = j + 1; i < n; ++i) {
      GRat acc = h[size_t(i)][size_t(j)];
      for (int k = 0; k < j; ++k)
        acc -= l[size_t(i)][size_t(k)] * l[size_t(j)][size_t(k)].conj() * d[size_t(k)];
      l[size_t(i)][size_t(j)] = acc / dj;
    }
  }
  // T = (L^*)^{-1}
  GMat lstar(size_t(n), std::vector<GRat>(size_t(n), GRat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lstar[size_t(i)][size_t(j)] = l[size_t(j)][size_t(i)].conj();
  return gmat_inverse(lstar);
}

BlockDiagResult block_diagonalize(const CyclicRep& rep) {
  rep.validate();
  int n = rep.dim();
  int m = n - 1;
  GMat b(size_t(m), std::vector<GRat>(size_t(m)));
  std::vector<GRat> c(size_t(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) b[size_t(i)][size_t(j)] = rep.a[size_t(i)][size_t(j)];
    c[size_t(i)] = rep.a[size_t(i)][size_t(n - 1)];
  }
  GRat d = rep.d();

  BlockDiagResult out;
  bool diagonal = true;
  for (int i = 0; i < m && diagonal; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && !b[size_t(i)][size_t(j)].is_zero()) { diagonal = false; break; }

  GMat t = gmat_identity(m);
  GMat bt = b;
  std::vector<GRat> ct = c;
  if (!diagonal) {
    // mirror the proof: make the block preserve a diagonal form first
    long border = 1;
    {
      GMat p = b;
      GMat id = gmat_identity(m);
      while (border <= rep.order && !gmat_equal(p, id)) { p = gmat_mul(p, b); ++border; }
    }
    GMat h = averaged_hermitian_form(b, border);
    t = ldl_gram_schmidt(h);
    GMat tinv = gmat_inverse(t);
    bt = gmat_mul(tinv, gmat_mul(b, t));
    ct.assign(size_t(m), GRat(0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) ct[size_t(i)] += tinv[size_t(i)][size_t(j)] * c[size_t(j)];
    out.used_gram_schmidt = true;
  }

  // solve (B~ - d Id) r = c~ exactly; no solution <=> infinite order
  std::vector<GRat> r(size_t(m), GRat(0));
  {
    GMat sys = bt;
    for (int i = 0; i < m; ++i) sys[size_t(i)][size_t(i)] -= d;
    std::vector<GRat> rhs = ct;
    // gaussian elimination with consistency check
    std::vector<int> pivot_col(size_t(m), -1);
    int rank = 0;
    for (int col = 0; col < m && rank < m; ++col) {
      int piv = -1;
      for (int rr = rank; rr < m; ++rr)
        if (!sys[size_t(rr)][size_t(col)].is_zero()) { piv = rr; break; }
      if (piv < 0) continue;
      std::swap(sys[size_t(rank)], sys[size_t(piv)]);
      std::swap(rhs[size_t(rank)], rhs[size_t(piv)]);
      GRat ip = GRat(1) / sys[size_t(rank)][size_t(col)];
      for (int cc = 0; cc < m; ++cc) sys[size_t(rank)][size_t(cc)] *= ip;
      rhs[size_t(rank)] *= ip;
      for (int rr = 0; rr < m; ++rr) {
        if (rr == rank) continue;
        GRat f = sys[size_t(rr)][size_t(col)];
        if (f.is_zero()) continue;
        for (int cc = 0; cc < m; ++cc) sys[size_t(rr)][size_t(cc)] -= f * sys[size_t(rank)][size_t(cc)];
        rhs[size_t(rr)] -= f * rhs[size_t(rank)];
      }
      pivot_col[size_t(rank)] = col;
      ++rank;
    }
    for (int rr = rank; rr < m; ++rr)
      if (!rhs[size_t(rr)].is_zero())
        fail(Err::InfiniteOrder,
             "(lambda_i - d) r_i = c_i is unsolvable: c_i != 0 on a d-eigenline");
    for (int rr = 0; rr < rank; ++rr) r[size_t(pivot_col[size_t(rr)])] = rhs[size_t(rr)];
  }

  // R = [[Id, r],[0,1]] composed with the block conjugation [[T^{-1},0],[0,1]]
  GMat r2 = gmat_identity(n);
  for (int i = 0; i < m; ++i) r2[size_t(i)][size_t(n - 1)] = r[size_t(i)];
  GMat r1 = gmat_identity(n);
  if (!diagonal) {
    GMat tinv = gmat_inverse(t);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) r1[size_t(i)][size_t(j)] = tinv[size_t(i)][size_t(j)];
  }
  out.r = gmat_mul(r2, r1);
  out.normal_form = gmat_mul(out.r, gmat_mul(rep.a, gmat_inverse(out.r)));
  {
    GMat p = bt;
    GMat id = gmat_identity(m);
    long k = 1;
    while (k <= rep.order && !gmat_equal(p, id)) { p = gmat_mul(p, bt); ++k; }
    out.block_order = k;
  }
  return out;
}

GrowthReport finite_order_obstruction(const CyclicRep& rep, int kmax) {
  int n = rep.dim();
  int m = n - 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && !rep.a[size_t(i)][size_t(j)].is_zero())
        fail(Err::UsageError, "finite_order_obstruction expects the diagonal normal form");
  GRat d = rep.a[size_t(n - 1)][size_t(n - 1)];
  GrowthReport out;
  std::vector<int> offending;
  for (int i = 0; i < m; ++i) {
    const GRat& lam = rep.a[size_t(i)][size_t(i)];
    const GRat& ci = rep.a[size_t(i)][size_t(n - 1)];
    if (lam == d && !ci.is_zero()) offending.push_back(i);
  }
  GMat p = rep.a;
  std::vector<std::vector<double>> mags(offending.size());
  for (int k = 1; k <= kmax; ++k) {
    for (size_t oi = 0; oi < offending.size(); ++oi)
      mags[oi].push_back(p[size_t(offending[oi])][size_t(n - 1)].abs_double());
    p = gmat_mul(p, rep.a);
  }
  for (size_t oi = 0; oi < offending.size(); ++oi) {
    GrowthReport::Entry e;
    e.index = offending[oi];
    e.magnitudes = mags[oi];
    const GRat& ci = rep.a[size_t(offending[oi])][size_t(n - 1)];
    Rat n2 = ci.norm2();
    // |c| exact when norm2 is a perfect rational square
    Int sn, sd;
    bool exact = mpz_perfect_square_p(n2.get_num().get_mpz_t()) &&
                 mpz_perfect_square_p(n2.get_den().get_mpz_t());
    if (exact) {
      mpz_sqrt(sn.get_mpz_t(), n2.get_num().get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), n2.get_den().get_mpz_t());
      e.slope = Rat(sn, sd).get_d();
      e.slope_exact = true;
    } else {
      e.slope = ci.abs_double();
      e.slope_exact = false;
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

// --- jets --------------------------------------------------------------------

void PolyGerm::validate() const {
  if (int(components.size()) != n) fail(Err::UsageError, "germ component count mismatch");
  for (const Poly& p : components) {
    Expo zero(size_t(n), 0);
    auto it = p.terms().find(zero);
    if (it != p.terms().end() && !it->second.is_zero())
      fail(Err::UsageError, "germ must fix the origin");
  }
  // linear part invertible
  GMat l = linear_part();
  gmat_inverse(l);  // throws if singular
  // preserves z_n = 0: every term of the last component contains z_n
  const Poly& last = components[size_t(n - 1)];
  for (const auto& [e, c] : last.terms())
    if (e[size_t(n - 1)] == 0)
      fail(Err::NotHyperplanePreserving, "germ does not preserve z_n = 0 to jet order");
}

GMat PolyGerm::linear_part() const {
  GMat l(size_t(n), std::vector<GRat>(size_t(n), GRat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expo e(size_t(n), 0);
      e[size_t(j)] = 1;
      auto it = components[size_t(i)].terms().find(e);
      if (it != components[size_t(i)].terms().end()) l[size_t(i)][size_t(j)] = it->second;
    }
  return l;
}

PolyGerm PolyGerm::truncated(int order) const {
  PolyGerm out = *this;
  out.jet_order = order;
  for (Poly& p : out.components) {
    Poly q(n);
    for (const auto& [e, c] : p.terms())
      if (total_degree(e) <= order) q.add_term(e, c);
    p = q;
  }
  return out;
}

PolyGerm germ_from_matrix(const GMat& m, int jet_order) {
  PolyGerm g;
  g.n = int(m.size());
  g.jet_order = jet_order;
  for (int i = 0; i < g.n; ++i) {
    Poly p(g.n);
    for (int j = 0; j < g.n; ++j) {
      if (m[size_t(i)][size_t(j)].is_zero()) continue;
      Expo e(size_t(g.n), 0);
      e[size_t(j)] = 1;
      p.add_term(e, m[size_t(i)][size_t(j)]);
    }
    g.components.push_back(p);
  }
  return g;
}

PolyGerm compose(const PolyGerm& f, const PolyGerm& g) {
  if (f.n != g.n) fail(Err::UsageError, "germ dimension mismatch");
  PolyGerm out;
  out.n = f.n;
  out.jet_order = std::min(f.jet_order, g.jet_order);
  for (const Poly& comp : f.components)
    out.components.push_back(comp.substitute(g.components));
  return out.truncated(out.jet_order);
}

bool germ_equal(const PolyGerm& a, const PolyGerm& b) {
  if (a.n != b.n || a.components.size() != b.components.size()) return false;
  for (size_t i = 0; i < a.components.size(); ++i)
    if (!(a.components[i] == b.components[i])) return false;
  return true;
}

AverageJetResult average_jet(const std::vector<PolyGerm>& group, int jet_order) {
  if (group.empty()) fail(Err::NotAGroup, "empty germ list");
  if (jet_order > 16) fail(Err::JetOverflow, "jet order cap exceeded");
  int n = group[0].n;
  // closure under composition to jet order
  for (const PolyGerm& g1 : group)
    for (const PolyGerm& g2 : group) {
      PolyGerm c = compose(g1, g2).truncated(jet_order);
      bool found = false;
      for (const PolyGerm& g : group)
        if (germ_equal(c, g.truncated(jet_order))) { found = true; break; }
      if (!found) fail(Err::NotAGroup, "germ list is not closed under composition");
    }

  PolyGerm sigma;
  sigma.n = n;
  sigma.jet_order = jet_order;
  sigma.components.assign(size_t(n), Poly(n));
  GRat inv_m = GRat(1) / GRat(Rat(Int(group.size())));
  for (const PolyGerm& g : group) {
    GMat dg_inv = gmat_inverse(g.linear_part());
    // (d gamma)^{-1} o gamma, summed componentwise
    for (int i = 0; i < n; ++i) {
      Poly acc(n);
      for (int j = 0; j < n; ++j) {
        if (dg_inv[size_t(i)][size_t(j)].is_zero()) continue;
        acc = acc + g.components[size_t(j)] * dg_inv[size_t(i)][size_t(j)];
      }
      sigma.components[size_t(i)] = sigma.components[size_t(i)] + acc * inv_m;
    }
  }
  sigma = sigma.truncated(jet_order);

  AverageJetResult res;
  res.sigma = sigma;
  // d sigma = Id
  GMat ds = sigma.linear_part();
  if (!gmat_equal(ds, gmat_identity(n)))
    fail(Err::NotAGroup, "averaging did not produce identity linear part");
  // equivariance: sigma o gamma = (d gamma) o sigma for every element
  res.equivariant = true;
  for (const PolyGerm& g : group) {
    PolyGerm lhs = compose(sigma, g);
    PolyGerm rhs = compose(germ_from_matrix(g.linear_part(), jet_order), sigma);
    if (!germ_equal(lhs.truncated(jet_order), rhs.truncated(jet_order))) res.equivariant = false;
  }
  return res;
}

CocycleResult abt_cocycle_check(const PolyGerm& f, const CyclicRep& ga, const CyclicRep& gb) {
  int n = f.n;
  if (ga.dim() != n || gb.dim() != n) fail(Err::UsageError, "dimension mismatch");
  f.validate();

  // equivariance first: F(gB z) = gA F(z) to the jet order
  PolyGerm gbg = germ_from_matrix(gb.a, f.jet_order);
  PolyGerm gag = germ_from_matrix(ga.a, f.jet_order);
  if (!germ_equal(compose(f, gbg).truncated(f.jet_order),
                  compose(gag, f).truncated(f.jet_order)))
    fail(Err::NotEquivariant, "F o gB != gA o F to the jet order");

  // D.9 on the hyperplane z_n = 0
  CocycleResult out;
  double worst = 0;
  for (int j = 0; j < n; ++j) {
    Poly lhs(n);
    for (int i = 0; i < n - 1; ++i) {
      const GRat& aji = ga.a[size_t(j)][size_t(i)];
      if (aji.is_zero()) continue;
      lhs = lhs + f.components[size_t(i)].derivative(n - 1) * aji;
    }
    Poly rhs(n);
    if (j < n - 1) {
      Poly dj = f.components[size_t(j)].derivative(n - 1);
      rhs = dj.substitute(gbg.components) * gb.a[size_t(n - 1)][size_t(n - 1)];
    }
    Poly defect = (lhs - rhs).fix_variable(n - 1, GRat(0));
    for (const auto& [e, c] : defect.terms()) worst = std::max(worst, c.abs_double());
  }
  out.residual = worst;
  out.identity_holds = (worst == 0);
  return out;
}

}  // namespace accy
