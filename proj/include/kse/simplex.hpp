#pragma once

#include <vector>

#include "kse/errors.hpp"
#include "kse/numeric.hpp"
#include "kse/weights.hpp"

namespace kse {

struct LpResult {
  bool feasible = false;
  std::vector<Rat> x;
};

// Exact rational phase-1 simplex with Bland's rule (anti-cycling).
// Finds phi in Q^n with  r . phi >= 1 for r in ge_one  and
//                        r . phi >= 0 for r in ge_zero,
// or reports infeasibility. phi is free (split into phi+ - phi-).
inline LpResult lp_feasible_geq(const std::vector<std::vector<Coord>>& ge_one,
                                const std::vector<std::vector<Coord>>& ge_zero,
                                int n) {
  const int m1 = static_cast<int>(ge_one.size());
  const int m0 = static_cast<int>(ge_zero.size());
  const int m = m1 + m0;
  if (m == 0) return {true, std::vector<Rat>(n, 0)};

  // columns: [0,n) phi+, [n,2n) phi-, [2n,2n+m) surplus, [2n+m,2n+2m) artificial
  const int nv = 2 * n + 2 * m;
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(nv + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    const auto& row = (i < m1) ? ge_one[i] : ge_zero[i - m1];
    for (int j = 0; j < n; ++j) {
      T[i][j] = row[j];
      T[i][n + j] = -Rat(row[j]);
    }
    T[i][2 * n + i] = -1;
    T[i][2 * n + m + i] = 1;
    T[i][nv] = (i < m1) ? 1 : 0;
  }

  // reduced costs for minimizing the artificial sum
  std::vector<Rat> red(nv + 1, Rat(0));
  for (int j = 0; j <= nv; ++j) {
    Rat s = 0;
    for (int i = 0; i < m; ++i) s += T[i][j];
    red[j] = ((j >= 2 * n + m && j < nv) ? Rat(1) : Rat(0)) - s;
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * n + m + i;

  while (true) {
    int enter = -1;
    for (int j = 0; j < nv; ++j)
      if (red[j] < 0) { enter = j; break; }
    if (enter < 0) break;

    int leave = -1;
    Rat best = 0;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][nv] / T[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw InternalError("phase-1 objective unbounded");

    Rat piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (int j = 0; j <= nv; ++j) T[i][j] -= f * T[leave][j];
    }
    if (red[enter] != 0) {
      Rat f = red[enter];
      for (int j = 0; j <= nv; ++j) red[j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }

  Rat artificial_total = 0;
  std::vector<Rat> phi(n, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) phi[basis[i]] += T[i][nv];
    else if (basis[i] < 2 * n) phi[basis[i] - n] -= T[i][nv];
    else if (basis[i] >= 2 * n + m) artificial_total += T[i][nv];
  }
  if (artificial_total != 0) return {false, {}};
  return {true, phi};
}

// Clear a rational functional to integer coordinates (multiply by the lcm of
// denominators). Strict inequalities >= 1 survive scaling by a positive int.
inline std::vector<Coord> scale_to_integer(const std::vector<Rat>& x) {
  Int l = 1;
  for (const auto& v : x) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
  std::vector<Coord> out;
  out.reserve(x.size());
  for (const auto& v : x) {
    Int scaled = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
    if (scaled > std::numeric_limits<long long>::max() || scaled < std::numeric_limits<long long>::min())
      throw InternalError("certificate does not fit machine integers");
    out.push_back(scaled.convert_to<long long>());
  }
  return out;
}

}  // namespace kse
