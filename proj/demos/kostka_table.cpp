// Prints two small tables: the classical one-variable polynomials for
// partitions of 4 next to their charge-statistic values, then a multivariable
// table over the two-vertex cyclic bundle together with one truncated
// expansion window.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "kse/bundles.hpp"
#include "kse/euler.hpp"
#include "kse/tableaux.hpp"

using namespace kse;

int main() {
  std::printf("classical polynomials, partitions of 4 with at most 3 rows\n");
  auto cls = bundle_classical(3);
  std::vector<Partition> parts;
  for (const auto& p : partitions_of(4))
    if (p.size() <= 3) parts.push_back(p);
  for (const auto& lam : parts) {
    for (const auto& mu : parts) {
      Poly K = kostka_kostant(cls, pad_partition(lam, 3), pad_partition(mu, 3));
      if (K.terms.empty()) continue;
      Poly chg = kostka_charge(lam, mu);
      std::printf("  K[%s | %s] = %-14s charge oracle %s\n",
                  format_weight(pad_partition(lam, 3), cls.blocks).c_str(),
                  format_weight(pad_partition(mu, 3), cls.blocks).c_str(),
                  K.to_string(cls.varnames).c_str(),
                  (K == chg) ? "agrees" : "DISAGREES");
    }
  }

  std::printf("\ntwo-vertex cyclic bundle, rank 2, weights with entries in [0, 2]\n");
  auto fi = bundle_fi(2, 2);
  Weight mu = {0, 0, 1, 1};
  std::vector<Weight> lams = {{0, 0, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0},
                              {2, 0, 0, 0}, {0, 0, 2, 0}};
  for (const auto& lam : lams) {
    Poly K = kostka_kostant(fi, lam, mu);
    std::printf("  K[%s | %s] = %s\n", format_weight(lam, fi.blocks).c_str(),
                format_weight(mu, fi.blocks).c_str(),
                K.terms.empty() ? "0" : K.to_string(fi.varnames).c_str());
  }

  std::printf("\nexpansion window around mu = %s, levels 0..3\n",
              format_weight(mu, fi.blocks).c_str());
  const auto& phi = require_pointed(fi.gens);
  for (const auto& [lam, K] : euler_decompose(fi, mu, 3)) {
    std::printf("  level %lld  lambda = %-10s  %s\n", dot(phi, sub(lam, mu)),
                format_weight(lam, fi.blocks).c_str(), K.to_string(fi.varnames).c_str());
  }

  std::printf("\ncanonical weight of the rank 2 bundle at lambda = 2,0;1,0: %s\n",
              format_weight(canonical_weight(fi, {2, 0, 1, 0}), fi.blocks).c_str());
  return 0;
}
