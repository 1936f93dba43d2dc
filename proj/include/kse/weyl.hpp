#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kse/errors.hpp"
#include "kse/numeric.hpp"
#include "kse/weights.hpp"

namespace kse {

// The relevant symmetry group is the product of symmetric groups S_{d_v},
// acting on coordinates within each block.
struct SignedPerm {
  std::vector<std::vector<int>> perm;  // per block, slot i -> slot perm[i]
  int sign = 1;
};

inline Int weyl_order(const Blocks& b) {
  Int n = 1;
  for (int d : b.dims)
    for (int j = 2; j <= d; ++j) n *= j;
  return n;
}

inline int perm_parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return (inv % 2) ? -1 : 1;
}

// Enumerates the whole group as an odometer of per-block permutations in
// lexicographic order. f receives each SignedPerm once.
template <class F>
void for_each_weyl(const Blocks& b, std::uint64_t budget, F&& f) {
  if (weyl_order(b) > Int(budget))
    throw BudgetExceeded("group of order " + weyl_order(b).str() +
                         " exceeds budget " + std::to_string(budget));
  SignedPerm sp;
  sp.perm.resize(b.count());
  std::vector<int> parities(b.count(), 1);
  for (int v = 0; v < b.count(); ++v) {
    sp.perm[v].resize(b.dims[v]);
    for (int j = 0; j < b.dims[v]; ++j) sp.perm[v][j] = j;
  }
  while (true) {
    sp.sign = 1;
    for (int p : parities) sp.sign *= p;
    f(const_cast<const SignedPerm&>(sp));
    int v = b.count() - 1;
    while (v >= 0) {
      if (std::next_permutation(sp.perm[v].begin(), sp.perm[v].end())) {
        parities[v] = perm_parity(sp.perm[v]);
        break;
      }
      parities[v] = 1;  // back to identity
      --v;
    }
    if (v < 0) return;
  }
}

inline Weight apply_weyl(const SignedPerm& sp, const Weight& w, const Blocks& b) {
  Weight r(w.size());
  for (int v = 0; v < b.count(); ++v)
    for (int j = 0; j < b.dims[v]; ++j) r[b.at(v, sp.perm[v][j])] = w[b.at(v, j)];
  return r;
}

// Shifted straightening: nu ~ sign * lambda under the shifted action, or zero.
// sign == 0 encodes the degenerate case (nu + rho has a repeat in some block).
struct Straightened {
  int sign = 0;
  Weight lambda;
};

inline Straightened dot_straighten(const Weight& nu, const Blocks& b) {
  Straightened out;
  Weight x = add(nu, rho(b));
  int sign = 1;
  for (int v = 0; v < b.count(); ++v) {
    const int d = b.dims[v];
    // insertion sort descending, counting swaps
    for (int i = 1; i < d; ++i) {
      int j = i;
      while (j > 0 && x[b.at(v, j - 1)] < x[b.at(v, j)]) {
        std::swap(x[b.at(v, j - 1)], x[b.at(v, j)]);
        sign = -sign;
        --j;
      }
    }
    for (int j = 0; j + 1 < d; ++j)
      if (x[b.at(v, j)] == x[b.at(v, j + 1)]) return out;  // sign 0
  }
  out.sign = sign;
  out.lambda = sub(x, rho(b));
  return out;
}

}  // namespace kse
