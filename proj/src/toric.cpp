#include "accy/toric.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace accy {

GoodnessReport check_good(const RationalCone& c) {
  GoodnessReport rep;
  // proper faces of a 3-dimensional pointed cone: the extreme rays (their
  // generators are primitive by construction, so they always saturate) and the
  // 2-dimensional facets
  for (const Vec3& r : c.rays()) {
    FaceReport f;
    f.face_rays = {r};
    f.invariant_factors = {Int(1)};
    f.saturated = true;  // primitive generator spans Z^3 ∩ (its line)
    rep.faces.push_back(std::move(f));
  }
  for (const Vec3& n : c.facets()) {
    FaceReport f;
    for (const Vec3& r : c.rays())
      if (dot(n, r) == 0) f.face_rays.push_back(r);
    f.invariant_factors = invariant_factors(IntMatrix::from_rows(f.face_rays));
    // the face has dimension 2; saturation = both Smith factors equal 1
    f.saturated = f.invariant_factors.size() == 2 &&
                  f.invariant_factors[0] == 1 && f.invariant_factors[1] == 1;
    if (!f.saturated) rep.good = false;
    rep.faces.push_back(std::move(f));
  }
  return rep;
}

GorensteinReport check_gorenstein_height_one(const RationalCone& c) {
  GorensteinReport rep;
  // seek integral w with <w, r> = 1 for every ray r
  const auto& rays = c.rays();
  IntMatrix m = IntMatrix::from_rows(rays);
  // solve the rational least system via elimination on the first 3 independent rows
  // (rank is 3 for a full-dimensional cone)
  std::array<Rat, 3> w{Rat(0), Rat(0), Rat(0)};
  {
    // gaussian elimination over Q on [m | 1]
    int n = int(rays.size());
    std::vector<std::array<Rat, 4>> rows;
    for (int i = 0; i < n; ++i)
      rows.push_back({Rat(rays[size_t(i)][0]), Rat(rays[size_t(i)][1]),
                      Rat(rays[size_t(i)][2]), Rat(1)});
    int rank = 0;
    for (int col = 0; col < 3 && rank < n; ++col) {
      int p = -1;
      for (int i = rank; i < n; ++i)
        if (rows[size_t(i)][size_t(col)] != 0) { p = i; break; }
      if (p < 0) continue;
      std::swap(rows[size_t(rank)], rows[size_t(p)]);
      Rat piv = rows[size_t(rank)][size_t(col)];
      for (int k = 0; k < 4; ++k) rows[size_t(rank)][size_t(k)] /= piv;
      for (int i = 0; i < n; ++i) {
        if (i == rank) continue;
        Rat f = rows[size_t(i)][size_t(col)];
        if (f == 0) continue;
        for (int k = 0; k < 4; ++k) rows[size_t(i)][size_t(k)] -= f * rows[size_t(rank)][size_t(k)];
      }
      ++rank;
    }
    // consistency: all remaining rows zero
    for (int i = rank; i < n; ++i)
      if (rows[size_t(i)][3] != 0) {
        rep.explanation = "no supporting functional pairs to 1 with every ray";
        return rep;
      }
    // read off w (rank is 3 since the cone is full-dimensional)
    for (int i = 0; i < rank; ++i) {
      int lead = -1;
      for (int k = 0; k < 3; ++k)
        if (rows[size_t(i)][size_t(k)] != 0) { lead = k; break; }
      if (lead >= 0) w[size_t(lead)] = rows[size_t(i)][3];
    }
  }
  Vec3 wi;
  for (int k = 0; k < 3; ++k) {
    if (w[size_t(k)].get_den() != 1) {
      // report the uniform height against the primitive multiple when there is one
      Vec3 wp;
      Int den = 1;
      for (int j = 0; j < 3; ++j) den = lcm(den, w[size_t(j)].get_den());
      for (int j = 0; j < 3; ++j)
        wp[size_t(j)] = Int(w[size_t(j)].get_num() * (den / w[size_t(j)].get_den()));
      wp = primitive(wp);
      Int h = dot(wp, c.rays()[0]);
      bool uniform = true;
      for (const Vec3& r : c.rays())
        if (dot(wp, r) != h) uniform = false;
      std::ostringstream os;
      os << "supporting functional is not integral";
      if (uniform) os << "; rays sit at uniform height " << h.get_str() << " (not 1)";
      rep.explanation = os.str();
      return rep;
    }
    wi[size_t(k)] = w[size_t(k)].get_num();
  }
  for (const Vec3& r : c.rays())
    if (dot(wi, r) != 1) {
      rep.explanation = "integral functional does not pair to 1 with every ray";
      return rep;
    }

  rep.gorenstein = true;
  rep.basis_change = (wi == Vec3{1, 0, 0}) ? IntMatrix::identity(3)
                                           : complete_to_unimodular(wi);
  std::vector<Vec2> pts;
  for (const Vec3& r : c.rays()) {
    Vec2 p;
    for (int row = 1; row < 3; ++row) {
      Int v = 0;
      for (int k = 0; k < 3; ++k) v += rep.basis_change.at(row, k) * r[size_t(k)];
      p[size_t(row - 1)] = v;
    }
    pts.push_back(p);
  }
  rep.polygon = LatticePolygon(pts);
  return rep;
}

GoodCone::GoodCone(std::vector<Vec3> rays, std::string label)
    : label_(std::move(label)),
      base_(rays) {
  for (Vec3 r : rays) {
    if (is_zero(r)) continue;
    Vec3 p = primitive(r);
    if (std::find(input_rays_.begin(), input_rays_.end(), p) == input_rays_.end())
      input_rays_.push_back(p);
  }
  goodness_ = check_good(base_);
  if (!goodness_.good) {
    std::ostringstream os;
    os << "cone '" << label_ << "' fails the face-sublattice saturation check";
    fail(Err::NotGood, os.str());
  }
  gorenstein_ = check_gorenstein_height_one(base_);
}

const LatticePolygon& GoodCone::polygon() const {
  if (!gorenstein_.gorenstein)
    fail(Err::NotGorenstein, "cone '" + label_ + "' is not Gorenstein of height 1");
  return *gorenstein_.polygon;
}

GoodCone parse_cone(const std::string& text) {
  std::istringstream in(text);
  std::string line, name;
  std::vector<Vec3> rays;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.rfind("name:", 0) == 0) {
      name = line.substr(5);
      size_t c = name.find_first_not_of(" \t");
      name = (c == std::string::npos) ? "" : name.substr(c);
      continue;
    }
    if (line.rfind("ray:", 0) == 0) {
      std::istringstream ls(line.substr(4));
      std::string sx, sy, sz, extra;
      if (!(ls >> sx >> sy >> sz) || (ls >> extra))
        fail(Err::ParseError, "line " + std::to_string(lineno) + ": expected 'ray: i j k'");
      try {
        rays.push_back({Int(sx), Int(sy), Int(sz)});
      } catch (const std::invalid_argument&) {
        fail(Err::ParseError, "line " + std::to_string(lineno) + ": bad integer");
      }
      continue;
    }
    fail(Err::ParseError, "line " + std::to_string(lineno) + ": unrecognized line '" + line + "'");
  }
  if (rays.empty()) fail(Err::ParseError, "no rays in cone file");
  return GoodCone(std::move(rays), std::move(name));
}

std::string serialize_cone(const GoodCone& c) {
  std::ostringstream os;
  if (!c.label().empty()) os << "name: " << c.label() << "\n";
  for (const Vec3& r : c.input_rays())
    os << "ray: " << r[0].get_str() << " " << r[1].get_str() << " " << r[2].get_str() << "\n";
  return os.str();
}

GoodCone load_cone_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open cone file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cone(ss.str());
}

ToricIdealResult toric_ideal(const GoodCone& c, int max_degree, const Caps& caps) {
  if (!c.is_gorenstein())
    fail(Err::NotGorenstein, "toric_ideal expects a Gorenstein cone");
  ToricIdealResult out;
  out.max_degree = max_degree;
  RationalCone dual = dual_cone(c.base());
  out.hilbert_basis = hilbert_basis(dual);
  int n = int(out.hilbert_basis.size());
  out.ambient_dimension = n;
  for (int k = 1; k <= n; ++k) out.variable_names.push_back("x" + std::to_string(k));

  // monoid counting: distinct lattice-point sums of degree-d multisets
  auto monoid_count = [&](int d) -> long {
    std::map<Vec3, bool> seen;
    std::function<void(int, int, Vec3)> rec = [&](int pos, int lo, Vec3 acc) {
      if (pos == d) { seen[acc] = true; return; }
      for (int k = lo; k < n; ++k) {
        Vec3 nxt{acc[0] + out.hilbert_basis[size_t(k)][0],
                 acc[1] + out.hilbert_basis[size_t(k)][1],
                 acc[2] + out.hilbert_basis[size_t(k)][2]};
        rec(pos + 1, k, nxt);
      }
    };
    rec(0, 0, Vec3{0, 0, 0});
    return long(seen.size());
  };

  // binomial generators degree by degree: in each degree d, fibers of the
  // multiset-sum map give dim I_d independent binomials; minimality against
  // lower-degree generators is checked by normal-form reduction
  std::vector<Poly> gens;
  MonomialOrder ord = MonomialOrder::grevlex();
  for (int d = 2; d <= max_degree; ++d) {
    std::map<Vec3, std::vector<Expo>> fibers;
    std::vector<int> stack;
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == d) {
        Vec3 acc{0, 0, 0};
        Expo e(size_t(n), 0);
        for (int k : stack) {
          acc = {acc[0] + out.hilbert_basis[size_t(k)][0],
                 acc[1] + out.hilbert_basis[size_t(k)][1],
                 acc[2] + out.hilbert_basis[size_t(k)][2]};
          e[size_t(k)] += 1;
        }
        fibers[acc].push_back(e);
        return;
      }
      for (int k = lo; k < n; ++k) {
        stack.push_back(k);
        rec(pos + 1, k);
        stack.pop_back();
      }
    };
    rec(0, 0);
    std::vector<Poly> lower_gb = gens.empty() ? std::vector<Poly>{} : groebner(gens, ord, caps);
    for (auto& [sum, expos] : fibers) {
      if (expos.size() < 2) continue;
      std::sort(expos.begin(), expos.end());
      for (size_t k = 1; k < expos.size(); ++k) {
        Poly b(n);
        b.add_term(expos[0], GRat(1));
        b.add_term(expos[k], GRat(-1));
        if (b.is_zero()) continue;
        if (!lower_gb.empty() && normal_form(b, lower_gb, ord).is_zero()) continue;
        gens.push_back(b);
      }
    }
    if (d == 2) {
      // degree-2 part: the fiber binomials are linearly independent, so minimal
      // generator count in degree 2 equals their number (no lower generators)
      continue;
    }
    // higher degrees: re-minimalize against everything found so far
    // (fiber binomials may now be consequences of earlier degrees)
  }
  if (max_degree <= 2) {
    // the degree-2 fiber binomials are linearly independent and there are no
    // lower-degree elements, so they are already a minimal generating set
    out.generators = gens;
  } else {
    // drop any generator reducing to zero against the others
    std::vector<Poly> minimal;
    for (size_t i = 0; i < gens.size(); ++i) {
      std::vector<Poly> others;
      for (size_t j = 0; j < gens.size(); ++j)
        if (j != i) others.push_back(gens[j]);
      if (others.empty() || !normal_form(gens[i], groebner(others, ord, caps), ord).is_zero())
        minimal.push_back(gens[i]);
    }
    out.generators = minimal;
  }

  // saturation check at desk scale: Hilbert-function comparison of the ideal
  // generated so far against the monoid counting function
  std::vector<Poly> gb = out.generators.empty() ? std::vector<Poly>{}
                                                : groebner(out.generators, ord, caps);
  out.checked_degree = max_degree + 2;
  out.degree_sufficient = true;
  for (int d = 1; d <= out.checked_degree; ++d) {
    long monoid = monoid_count(d);
    long standard = gb.empty() ? [&] {
      // binomial ideal empty: all monomials are standard
      long c = 1;
      for (int k = 1; k <= d; ++k) c = c * (n + k - 1) / k;
      return c;
    }() : standard_monomials(gb, ord, d);
    if (standard != monoid) { out.degree_sufficient = false; break; }
  }
  return out;
}

}  // namespace accy
