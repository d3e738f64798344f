#include "accy/wproj.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace accy {

WeightedFamily parse_ideal(const std::string& text, const ParseIdealOptions& opt) {
  WeightedFamily f;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> gen_exprs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.rfind("vars:", 0) == 0) {
      std::istringstream ls(line.substr(5));
      std::string v;
      while (ls >> v) f.names.push_back(v);
      continue;
    }
    if (line.rfind("weights:", 0) == 0) {
      std::istringstream ls(line.substr(8));
      std::string v;
      std::vector<Int> ws;
      while (ls >> v) {
        try { ws.emplace_back(v); }
        catch (const std::invalid_argument&) {
          fail(Err::ParseError, "line " + std::to_string(lineno) + ": bad weight");
        }
      }
      if (ws.empty()) fail(Err::ParseError, "empty weights line");
      f.mu = ws[0];
      f.z_weights.assign(ws.begin() + 1, ws.end());
      continue;
    }
    if (line.rfind("gen:", 0) == 0) {
      gen_exprs.push_back(line.substr(4));
      continue;
    }
    fail(Err::ParseError, "line " + std::to_string(lineno) + ": unrecognized line");
  }
  if (f.names.size() < 2) fail(Err::ParseError, "need a vars: line with t and at least one z");
  if (f.names[0] != "t") fail(Err::ParseError, "first variable must be t");
  if (f.z_weights.size() + 1 != f.names.size())
    fail(Err::ParseError, "weights count must match variable count");
  if (f.mu <= 0) fail(Err::ParseError, "mu must be positive");
  Int g = 0;
  for (const Int& w : f.z_weights) {
    if (w <= 0) fail(Err::ParseError, "weights must be positive");
    g = gcd(g, w);
  }
  if (g != 1) fail(Err::NonCoprimeWeights, "z-weights must be coprime");

  std::vector<Int> wvec = f.weight_vector();
  for (const std::string& expr : gen_exprs) {
    Poly p = parse_poly(expr, f.names);
    if (p.is_zero()) continue;
    Int deg;
    if (p.is_weighted_homogeneous(wvec, &deg)) {
      f.generators.push_back(p);
    } else if (opt.allow_decomposition) {
      auto pieces = p.weighted_components(wvec);
      std::ostringstream os;
      os << "generator '" << expr << "' is not weighted-homogeneous; decomposed into "
         << pieces.size() << " homogeneous pieces";
      f.warnings.push_back(os.str());
      for (auto& [w, piece] : pieces) f.generators.push_back(piece);
    } else {
      fail(Err::MixedWeightGenerator, "generator is not weighted-homogeneous: " + expr);
    }
  }
  return f;
}

WeightedFamily load_ideal_file(const std::string& path, const ParseIdealOptions& opt) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open ideal file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ideal(ss.str(), opt);
}

WProjClosure wproj_closure(const WeightedFamily& f) {
  WProjClosure cl;
  cl.family = f;
  int nz = int(f.z_weights.size());
  cl.names.push_back("tau");
  for (int k = 1; k <= nz; ++k) cl.names.push_back("zeta" + std::to_string(k));
  cl.names.push_back("w");
  cl.weights.push_back(f.mu);
  for (const Int& w : f.z_weights) cl.weights.push_back(w);
  cl.weights.push_back(1);

  // each generator is weighted-homogeneous, so the substitution t = tau/w^mu,
  // z_n = zeta_n/w^{mu_n} clears to the same exponents with no w left over
  int nv = nz + 2;
  std::vector<int> map(size_t(nz + 1));
  for (int k = 0; k <= nz; ++k) map[size_t(k)] = k;  // t->tau, z_n->zeta_n; w is last
  for (const Poly& g : f.generators) cl.generators.push_back(g.remap(nv, map));

  for (int n = 1; n <= nz; ++n) {
    ChartData ch;
    ch.n = n;
    ch.group_order = f.z_weights[size_t(n - 1)];
    ch.action.push_back(f.mu % ch.group_order);
    for (int k = 1; k <= nz; ++k) {
      if (k == n) continue;
      ch.action.push_back(f.z_weights[size_t(k - 1)] % ch.group_order);
    }
    ch.action.push_back(Int(1) % ch.group_order);
    ch.lifted_names.push_back("tau~");
    for (int k = 1; k <= nz; ++k)
      if (k != n) ch.lifted_names.push_back("zeta" + std::to_string(k) + "~");
    ch.lifted_names.push_back("w~");
    cl.charts.push_back(std::move(ch));
  }
  return cl;
}

std::vector<Poly> dehomogenize(const WProjClosure& cl) {
  int nz = int(cl.family.z_weights.size());
  int nv = nz + 2;
  std::vector<Poly> out;
  std::vector<int> map(size_t(nv));
  for (int k = 0; k <= nz; ++k) map[size_t(k)] = k;
  map[size_t(nv - 1)] = 0;  // dead slot; w is eliminated first
  for (const Poly& g : cl.generators) {
    Poly fixed = g.fix_variable(nv - 1, GRat(1));
    out.push_back(fixed.remap(nz + 1, map));
  }
  return out;
}

namespace {

// generators of the fiber over t = t_value, as polynomials in z_1..z_N only
std::vector<Poly> fiber_ideal(const WeightedFamily& f, const Rat& t_value) {
  int nz = int(f.z_weights.size());
  std::vector<Poly> out;
  std::vector<int> map(size_t(nz + 1), 0);
  for (int k = 1; k <= nz; ++k) map[size_t(k)] = k - 1;
  for (const Poly& g : f.generators) {
    Poly fixed = g.fix_variable(0, GRat(t_value));
    Poly q = fixed.remap(nz, map);
    if (!q.is_zero()) out.push_back(q);
  }
  return out;
}

// weighted homogenization of p (in z-variables) into the zeta-ring with the
// extra variable w appended: each term is padded by w^(top - weight)
Poly homogenize_with_w(const Poly& p, const std::vector<Int>& zw) {
  int nz = p.nvars();
  Poly out(nz + 1);
  Int top = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Int wd = 0;
    for (int k = 0; k < nz; ++k) wd += Int(e[size_t(k)]) * zw[size_t(k)];
    if (first || wd > top) top = wd;
    first = false;
  }
  for (const auto& [e, c] : p.terms()) {
    Int wd = 0;
    for (int k = 0; k < nz; ++k) wd += Int(e[size_t(k)]) * zw[size_t(k)];
    Expo ne(e.begin(), e.end());
    Int pad = top - wd;
    ne.push_back(int(pad.get_si()));
    out.add_term(ne, c);
  }
  return out;
}

}  // namespace

FiberDivisorResult fiber_divisor_at_infinity(const WProjClosure& cl, const Rat& t_value,
                                             const Caps& caps) {
  FiberDivisorResult res;
  const WeightedFamily& f = cl.family;
  int nz = int(f.z_weights.size());

  // D_0 is cut out by the t-free parts f_i(zeta) of the closure equations
  for (const Poly& g : f.generators) {
    Poly f_part = g.fix_variable(0, GRat(0));
    std::vector<int> map(size_t(nz + 1), 0);
    for (int k = 1; k <= nz; ++k) map[size_t(k)] = k - 1;
    Poly q = f_part.remap(nz, map);
    if (!q.is_zero()) res.d0_ideal.push_back(q);
  }

  // D_t: weighted-homogenize a weighted-degree-compatible Groebner basis of
  // the affine fiber ideal (this saturates by w), then set w = 0
  std::vector<Poly> fiber = fiber_ideal(f, t_value);
  MonomialOrder word = MonomialOrder::weighted(f.z_weights);
  std::vector<Poly> fiber_gb = groebner(fiber, word, caps);
  for (const Poly& g : fiber_gb) {
    Poly h = homogenize_with_w(g, f.z_weights);   // in zeta...w ring
    Poly at_infinity = h.fix_variable(nz, GRat(0));  // w = 0
    std::vector<int> map(size_t(nz + 1), 0);
    for (int k = 0; k < nz; ++k) map[size_t(k)] = k;
    Poly q = at_infinity.remap(nz, map);
    if (!q.is_zero()) res.dt_ideal.push_back(q);
  }

  // chart-wise comparison: dehomogenize both at zeta_n = 1 (this saturates by
  // zeta_n) and compare reduced bases
  res.equal = true;
  MonomialOrder ord = MonomialOrder::grevlex();
  for (int n = 0; n < nz; ++n) {
    auto chartify = [&](const std::vector<Poly>& ideal) {
      std::vector<Poly> out;
      std::vector<int> map(size_t(nz), 0);
      int slot = 0;
      for (int k = 0; k < nz; ++k) map[size_t(k)] = (k == n) ? 0 : slot++;
      // remap after fixing zeta_n = 1: the fixed variable's slot is unused
      for (const Poly& p : ideal) {
        Poly fixed = p.fix_variable(n, GRat(1));
        // move remaining variables into nz-1 slots
        std::vector<int> m2(size_t(nz), 0);
        int s = 0;
        for (int k = 0; k < nz; ++k) m2[size_t(k)] = (k == n) ? 0 : s++;
        Poly q = fixed.remap(std::max(nz - 1, 1), m2);
        if (!q.is_zero()) out.push_back(q);
      }
      return out;
    };
    std::vector<Poly> g0 = groebner(chartify(res.d0_ideal), ord, caps);
    std::vector<Poly> gt = groebner(chartify(res.dt_ideal), ord, caps);
    bool eq = (g0.size() == gt.size());
    if (eq)
      for (size_t k = 0; k < g0.size(); ++k)
        if (!(g0[k] == gt[k])) { eq = false; break; }
    std::ostringstream os;
    os << "chart zeta" << (n + 1) << ": " << (eq ? "D_t = D_0" : "D_t != D_0");
    res.chart_notes.push_back(os.str());
    if (!eq) res.equal = false;
  }
  return res;
}

std::vector<SmoothPointReport> smooth_at_infinity(const WProjClosure& cl, const Rat& t_value,
                                                  const SmoothAtInfinityOptions& opt,
                                                  const Caps& caps) {
  const WeightedFamily& f = cl.family;
  int nz = int(f.z_weights.size());
  MonomialOrder ord = MonomialOrder::grevlex();
  std::vector<SmoothPointReport> out;

  // chart 0 = the original affine chart (t, z): fiber equation t = t_value
  // chart n >= 1 = the zeta_n != 0 uniformizing chart with coordinates
  // (tau~, zeta~_{k != n}, w~) and fiber equation tau~ = t_value * w~^mu

  auto analyze_point = [&](int chart, const std::vector<GRat>& pt) {
    SmoothPointReport rep;
    rep.chart = chart;
    rep.point = pt;
    std::vector<Poly> eqs;
    int ambient;
    if (chart == 0) {
      ambient = nz + 1;  // (t, z_1..z_N)
      eqs = f.generators;
      Poly t_eq = Poly::variable(nz + 1, 0) - Poly::constant(nz + 1, GRat(t_value));
      eqs.push_back(t_eq);
      rep.stabilizer_order = 1;
    } else {
      ambient = nz + 1;  // (tau~, zeta~_{k != n}, w~)
      // substitute zeta_chart = 1 into the closure generators
      std::vector<int> map(size_t(nz + 2), 0);
      int slot = 0;
      map[0] = slot++;  // tau
      for (int k = 1; k <= nz; ++k)
        map[size_t(k)] = (k == chart) ? 0 : slot++;
      map[size_t(nz + 1)] = slot;  // w is the last lifted coordinate
      for (const Poly& g : cl.generators) {
        Poly fixed = g.fix_variable(chart, GRat(1));
        Poly q = fixed.remap(nz + 1, map);
        if (!q.is_zero()) eqs.push_back(q);
      }
      // fiber equation tau~ = t * w~^mu
      Poly fiber_eq = Poly::variable(nz + 1, 0) -
                      Poly::variable(nz + 1, nz, int(f.mu.get_si())) * GRat(t_value);
      eqs.push_back(fiber_eq);
      // stabilizer of the lifted point inside Z_{mu_n}
      const ChartData& ch = cl.charts[size_t(chart - 1)];
      long m = ch.group_order.get_si();
      long count = 0;
      for (long k = 0; k < m; ++k) {
        bool fixes = true;
        for (size_t j = 0; j < pt.size(); ++j) {
          if (pt[j].is_zero()) continue;
          if ((k * ch.action[j].get_si()) % m != 0) { fixes = false; break; }
        }
        if (fixes) ++count;
      }
      rep.stabilizer_order = count;
    }
    // expected rank = ambient - dim(variety at the chart level)
    std::vector<Poly> gb = groebner(eqs, ord, caps);
    int dim = ideal_dimension(gb, ord);
    rep.expected_rank = ambient - dim;
    // Jacobian rank at the point, exact over Q(i)
    std::vector<std::vector<GRat>> jac;
    for (const Poly& e : eqs) {
      std::vector<GRat> row;
      for (int v = 0; v < ambient; ++v) row.push_back(e.derivative(v).eval(pt));
      jac.push_back(std::move(row));
    }
    // verify the point is on the variety
    for (const Poly& e : eqs)
      if (!e.eval(pt).is_zero())
        fail(Err::UsageError, "supplied point does not lie on the chart variety");
    // rank by Gaussian elimination over Q(i)
    int rank = 0;
    size_t rows = jac.size();
    for (int col = 0; col < ambient && rank < int(rows); ++col) {
      int piv = -1;
      for (int r = rank; r < int(rows); ++r)
        if (!jac[size_t(r)][size_t(col)].is_zero()) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(jac[size_t(rank)], jac[size_t(piv)]);
      GRat inv = GRat(1) / jac[size_t(rank)][size_t(col)];
      for (int cc = 0; cc < ambient; ++cc) jac[size_t(rank)][size_t(cc)] *= inv;
      for (int r = 0; r < int(rows); ++r) {
        if (r == rank) continue;
        GRat fct = jac[size_t(r)][size_t(col)];
        if (fct.is_zero()) continue;
        for (int cc = 0; cc < ambient; ++cc)
          jac[size_t(r)][size_t(cc)] -= fct * jac[size_t(rank)][size_t(cc)];
      }
      ++rank;
    }
    rep.jacobian_rank = rank;
    rep.smooth = (rank == rep.expected_rank);
    out.push_back(std::move(rep));
  };

  if (!opt.points.empty()) {
    for (const auto& [chart, pt] : opt.points) analyze_point(chart, pt);
    return out;
  }

  // extract rational divisor points per chart from D_0's chart ideal
  bool found_any = false;
  for (int n = 1; n <= nz; ++n) {
    // divisor ideal in the lifted chart: closure gens at zeta_n = 1, tau~ = 0,
    // w~ = 0 leaves polynomials in the remaining zeta~ variables
    std::vector<Poly> dd;
    std::vector<int> map(size_t(nz + 2), 0);
    int slot = 0;
    for (int k = 1; k <= nz; ++k)
      if (k != n) map[size_t(k)] = slot++;
    int reduced_vars = std::max(nz - 1, 1);
    for (const Poly& g : cl.generators) {
      Poly fixed = g.fix_variable(n, GRat(1)).fix_variable(0, GRat(0));
      std::vector<int> m2(size_t(nz + 2), 0);
      int s = 0;
      m2[0] = 0;
      for (int k = 1; k <= nz; ++k) m2[size_t(k)] = (k == n) ? 0 : s++;
      m2[size_t(nz + 1)] = 0;
      Poly q = fixed.remap(reduced_vars, m2);
      if (!q.is_zero()) dd.push_back(q);
    }
    if (dd.empty()) continue;
    std::vector<Poly> gb = groebner(dd, ord, caps);
    if (gb.size() == 1 && gb[0].degree() == 0) continue;  // empty divisor in this chart
    int dim = ideal_dimension(gb, ord);
    if (dim > 0)
      fail(Err::NonZeroDimensionalDivisor,
           "divisor at infinity is not finite in chart zeta" + std::to_string(n) +
               "; supply explicit points");
    // rational univariate root extraction: handles the desk-scale cases where
    // the chart ideal is triangular in one variable
    if (reduced_vars == 1 && gb.size() == 1) {
      const Poly& u = gb[0];
      // rational roots p/q with p | constant, q | leading (rational coefficients)
      std::vector<GRat> roots;
      int deg = u.degree();
      GRat lead, constant;
      for (const auto& [e, coeff] : u.terms()) {
        if (e[0] == deg) lead = coeff;
        if (e[0] == 0) constant = coeff;
      }
      if (!lead.is_real() || !constant.is_real()) continue;
      if (constant.is_zero()) roots.push_back(GRat(0));
      Int pnum = constant.re.get_num() * constant.re.get_den();
      Int qnum = lead.re.get_num() * lead.re.get_den();
      std::vector<Int> ps, qs;
      for (Int d = 1; d * d <= abs(pnum) || d == 1; ++d) {
        if (pnum != 0 && abs(pnum) % d == 0) { ps.push_back(d); ps.push_back(abs(pnum) / d); }
        if (d * d > abs(pnum)) break;
      }
      for (Int d = 1; d * d <= abs(qnum) || d == 1; ++d) {
        if (qnum != 0 && abs(qnum) % d == 0) { qs.push_back(d); qs.push_back(abs(qnum) / d); }
        if (d * d > abs(qnum)) break;
      }
      std::set<Rat> tried;
      for (const Int& pp : ps)
        for (const Int& qq : qs)
          for (int sign : {1, -1}) {
            if (qq == 0) continue;
            Rat cand(sign * pp, qq);
            cand.canonicalize();
            if (!tried.insert(cand).second) continue;
            if (u.eval({GRat(cand)}).is_zero()) roots.push_back(GRat(cand));
          }
      for (const GRat& r : roots) {
        // lift to the chart: tau~ = 0, the single zeta~ = root, w~ = 0
        std::vector<GRat> pt(size_t(nz + 1), GRat(0));
        pt[1] = r;
        analyze_point(n, pt);
        found_any = true;
      }
    }
  }
  if (!found_any)
    fail(Err::NonZeroDimensionalDivisor,
         "no rational divisor points extracted; supply explicit points");
  return out;
}

WeightedFamily base_change(const WeightedFamily& f) {
  WeightedFamily out = f;
  out.names[0] = "s";
  long mu = f.mu.get_si();
  out.generators.clear();
  for (const Poly& g : f.generators) out.generators.push_back(g.stretch_exponent(0, int(mu)));
  out.mu = 1;  // wt(s) = 1
  std::vector<Int> wvec = out.weight_vector();
  for (const Poly& g : out.generators) {
    if (!g.is_weighted_homogeneous(wvec))
      fail(Err::MixedWeightGenerator, "base change broke weighted homogeneity");
  }
  return out;
}

}  // namespace accy
