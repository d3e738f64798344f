#include "accy/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace accy {

Poly Poly::constant(int nvars, const GRat& c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_[Expo(size_t(nvars), 0)] = c;
  return p;
}

Poly Poly::variable(int nvars, int index, int exp) {
  Poly p(nvars);
  Expo e(size_t(nvars), 0);
  e[size_t(index)] = exp;
  p.terms_[e] = GRat(1);
  return p;
}

void Poly::add_term(const Expo& e, const GRat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Expo e(size_t(nvars_));
      for (int k = 0; k < nvars_; ++k) e[size_t(k)] = e1[size_t(k)] + e2[size_t(k)];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly Poly::operator*(const GRat& c) const {
  Poly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, cc] : terms_) r.terms_[e] = cc * c;
  return r;
}

Poly Poly::pow(int k) const {
  Poly r = Poly::constant(nvars_, GRat(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

Int Poly::weighted_degree(const Expo& e, const std::vector<Int>& w) const {
  Int d = 0;
  for (size_t k = 0; k < e.size(); ++k) d += Int(e[k]) * w[k];
  return d;
}

bool Poly::is_weighted_homogeneous(const std::vector<Int>& w, Int* out) const {
  bool first = true;
  Int d = 0;
  for (const auto& [e, c] : terms_) {
    Int wd = weighted_degree(e, w);
    if (first) { d = wd; first = false; }
    else if (wd != d) return false;
  }
  if (out) *out = d;
  return true;
}

std::vector<std::pair<Int, Poly>> Poly::weighted_components(const std::vector<Int>& w) const {
  std::map<Int, Poly> pieces;
  for (const auto& [e, c] : terms_) {
    Int wd = weighted_degree(e, w);
    auto it = pieces.find(wd);
    if (it == pieces.end()) it = pieces.emplace(wd, Poly(nvars_)).first;
    it->second.add_term(e, c);
  }
  return {pieces.begin(), pieces.end()};
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    int k = e[size_t(var)];
    if (k == 0) continue;
    Expo d = e;
    d[size_t(var)] = k - 1;
    r.add_term(d, c * GRat(Rat(k)));
  }
  return r;
}

GRat Poly::eval(const std::vector<GRat>& point) const {
  GRat out(0);
  for (const auto& [e, c] : terms_) {
    GRat t = c;
    for (int k = 0; k < nvars_; ++k)
      for (int j = 0; j < e[size_t(k)]; ++j) t *= point[size_t(k)];
    out += t;
  }
  return out;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  int target = images.empty() ? 0 : images[0].nvars();
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Poly t = Poly::constant(target, c);
    for (int k = 0; k < nvars_; ++k)
      if (e[size_t(k)] > 0) t = t * images[size_t(k)].pow(e[size_t(k)]);
    out = out + t;
  }
  return out;
}

Poly Poly::remap(int new_nvars, const std::vector<int>& map) const {
  Poly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Expo ne(size_t(new_nvars), 0);
    for (int k = 0; k < nvars_; ++k) ne[size_t(map[size_t(k)])] += e[size_t(k)];
    out.add_term(ne, c);
  }
  return out;
}

Poly Poly::stretch_exponent(int var, int factor) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Expo ne = e;
    ne[size_t(var)] *= factor;
    out.add_term(ne, c);
  }
  return out;
}

Poly Poly::fix_variable(int var, const GRat& value) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    GRat cc = c;
    for (int j = 0; j < e[size_t(var)]; ++j) cc *= value;
    Expo ne = e;
    ne[size_t(var)] = 0;
    out.add_term(ne, cc);
  }
  return out;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print highest-degree-first for readability
  std::vector<const std::pair<const Expo, GRat>*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
    int da = total_degree(a->first), db = total_degree(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  for (auto* t : ts) {
    const auto& [e, c] = *t;
    std::string coeff = c.str();
    bool neg = false;
    if (c.is_real() && c.re < 0) { neg = true; coeff = (-c).str(); }
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool unit_coeff = (coeff == "1");
    std::vector<std::string> factors;
    for (int k = 0; k < nvars_; ++k) {
      if (e[size_t(k)] == 0) continue;
      std::string f = names[size_t(k)];
      if (e[size_t(k)] > 1) f += "^" + std::to_string(e[size_t(k)]);
      factors.push_back(f);
    }
    if (factors.empty()) {
      os << coeff;
    } else {
      if (!unit_coeff) os << coeff << "*";
      for (size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  const std::vector<std::string>& names;
  int nvars;

  explicit Parser(const std::string& text, const std::vector<std::string>& n)
      : s(text), names(n), nvars(int(n.size())) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) { ++pos; return true; }
    return false;
  }

  Poly parse_expr() {
    Poly r = parse_term();
    for (;;) {
      if (eat('+')) r = r + parse_term();
      else if (eat('-')) r = r - parse_term();
      else break;
    }
    return r;
  }

  Poly parse_term() {
    Poly r = parse_factor();
    for (;;) {
      if (eat('*')) r = r * parse_factor();
      else if (eat('/')) {
        Poly d = parse_factor();
        if (d.num_terms() != 1 || d.degree() != 0)
          fail(Err::ParseError, "division only by nonzero constants");
        r = r * (GRat(1) / d.terms().begin()->second);
      } else break;
    }
    return r;
  }

  Poly parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    if (eat('+')) return parse_factor();
    Poly base = parse_base();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail(Err::ParseError, "expected integer exponent after '^'");
      int e = std::stoi(s.substr(start, pos - start));
      return base.pow(e);
    }
    return base;
  }

  Poly parse_base() {
    skip_ws();
    if (pos >= s.size()) fail(Err::ParseError, "unexpected end of expression");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly r = parse_expr();
      if (!eat(')')) fail(Err::ParseError, "missing ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      Int num(s.substr(start, pos - start));
      return Poly::constant(nvars, GRat(Rat(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "i") return Poly::constant(nvars, grat_i());
      for (int k = 0; k < nvars; ++k)
        if (names[size_t(k)] == name) return Poly::variable(nvars, k);
      fail(Err::ParseError, "unknown variable '" + name + "'");
    }
    fail(Err::ParseError, std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names) {
  for (const auto& n : var_names)
    if (n == "i") fail(Err::ParseError, "'i' is reserved for the imaginary unit");
  Parser p(text, var_names);
  Poly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) fail(Err::ParseError, "trailing characters in expression");
  return r;
}

}  // namespace accy
