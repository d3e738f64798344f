#include "accy/lp.hpp"

namespace accy {

// Phase-1 simplex on: A(x+ - x-) - s = b, x+,x-,s >= 0, minimize sum of
// artificial variables. Feasible iff the optimum is zero.
LPResult lp_feasible(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
  size_t m = a.size();
  if (m == 0) return {true, {}};
  size_t n = a[0].size();
  // columns: x+ (n), x- (n), slack (m), artificial (m)
  size_t cols = 2 * n + 2 * m;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols + 1, Rat(0)));
  std::vector<size_t> basis(m);

  for (size_t i = 0; i < m; ++i) {
    Rat rhs = b[i];
    int sign = rhs < 0 ? -1 : 1;  // keep rhs nonnegative
    for (size_t j = 0; j < n; ++j) {
      t[i][j] = Rat(sign) * a[i][j];
      t[i][n + j] = Rat(-sign) * a[i][j];
    }
    t[i][2 * n + i] = Rat(-sign);  // slack: A x - s = b
    t[i][2 * n + m + i] = 1;       // artificial
    t[i][cols] = Rat(sign) * rhs;
    basis[i] = 2 * n + m + i;
  }

  // objective row: minimize sum of artificials; reduced costs start as the
  // negated column sums over rows (artificials basic)
  std::vector<Rat> z(cols + 1, Rat(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= cols; ++j) z[j] += t[i][j];

  auto pivot = [&](size_t pr, size_t pc) {
    Rat inv = 1 / t[pr][pc];
    for (size_t j = 0; j <= cols; ++j) t[pr][j] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == pr || t[i][pc] == 0) continue;
      Rat f = t[i][pc];
      for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[pr][j];
    }
    Rat f = z[pc];
    if (f != 0)
      for (size_t j = 0; j <= cols; ++j) z[j] -= f * t[pr][j];
    basis[pr] = pc;
  };

  for (;;) {
    // Bland: smallest index with positive reduced cost (maximizing -sum)
    size_t pc = cols;
    for (size_t j = 0; j < cols; ++j)
      if (z[j] > 0) { pc = j; break; }
    if (pc == cols) break;
    size_t pr = m;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][pc] <= 0) continue;
      if (pr == m) { pr = i; continue; }
      Rat cur = t[i][cols] / t[i][pc];
      Rat best = t[pr][cols] / t[pr][pc];
      if (cur < best || (cur == best && basis[i] < basis[pr])) pr = i;
    }
    if (pr == m) fail(Err::LPFailure, "phase-1 objective unbounded (cannot happen)");
    pivot(pr, pc);
  }

  LPResult res;
  res.feasible = (z[cols] == 0);
  if (res.feasible) {
    std::vector<Rat> xp(n, Rat(0)), xm(n, Rat(0));
    for (size_t i = 0; i < m; ++i) {
      if (basis[i] < n) xp[basis[i]] = t[i][cols];
      else if (basis[i] < 2 * n) xm[basis[i] - n] = t[i][cols];
    }
    res.witness.resize(n);
    for (size_t j = 0; j < n; ++j) res.witness[j] = xp[j] - xm[j];
  }
  return res;
}

}  // namespace accy
