#pragma once

#include <map>
#include <thread>
#include <vector>

#include "kse/budgets.hpp"
#include "kse/bundles.hpp"
#include "kse/errors.hpp"
#include "kse/poly.hpp"
#include "kse/weyl.hpp"

namespace kse {

// Alternating group sum: K = sum_w sign(w) * P(w(lambda+rho) - (mu+rho)).
// Euler characteristics over partial flag varieties equal those computed
// through the complete flag, so the full per-vertex symmetric groups are
// always used. threads > 1 shards the group elements; exact map-based
// accumulation makes the result independent of the sharding.
inline Poly kostka_kostant(const BundleSpec& spec, const Weight& lambda, const Weight& mu,
                           const Budgets& bud = {}, int threads = 1) {
  const Blocks& b = spec.blocks;
  if (static_cast<int>(lambda.size()) != b.total() || static_cast<int>(mu.size()) != b.total())
    throw ValidationError("weight has wrong length for this bundle");
  if (!is_dominant(lambda, b)) throw ValidationError("lambda must be dominant");
  if (!is_dominant(mu, b)) throw ValidationError("mu must be dominant");
  const auto& phi = require_pointed(spec.gens);

  if (spec.gens.gens_sum_zero && coord_sum(lambda) != coord_sum(mu))
    return Poly::zero(spec.gens.nvars);

  const Weight lr = add(lambda, rho(b));
  const Weight mr = add(mu, rho(b));

  if (threads <= 1) {
    Poly acc(spec.gens.nvars);
    for_each_weyl(b, bud.weyl, [&](const SignedPerm& w) {
      Weight beta = sub(apply_weyl(w, lr, b), mr);
      if (dot(phi, beta) < 0) return;
      Poly p = vector_partition(spec.gens, beta, bud);
      if (w.sign < 0) p.scale(-1);
      acc += p;
    });
    return acc;
  }

  std::vector<SignedPerm> elems;
  for_each_weyl(b, bud.weyl, [&](const SignedPerm& w) { elems.push_back(w); });
  std::vector<Poly> partial(threads, Poly(spec.gens.nvars));
  std::vector<std::exception_ptr> errs(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < elems.size(); i += threads) {
          Weight beta = sub(apply_weyl(elems[i], lr, b), mr);
          if (dot(phi, beta) < 0) continue;
          Poly p = vector_partition(spec.gens, beta, bud);
          if (elems[i].sign < 0) p.scale(-1);
          partial[t] += p;
        }
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  Poly acc(spec.gens.nvars);
  for (auto& p : partial) acc += p;
  return acc;
}

// Expand the graded symmetric algebra of the fiber against k_{-mu} and
// straighten every cone point. The result maps each dominant lambda with
// <phi, lambda - mu> <= cap to the full kostka_kostant(lambda, mu) value and
// holds no other keys. Requires a certificate that respects block order;
// otherwise contributions from outside the window could be missed.
inline std::map<Weight, Poly> euler_decompose(const BundleSpec& spec, const Weight& mu,
                                              Coord cap, const Budgets& bud = {}) {
  const Blocks& b = spec.blocks;
  if (static_cast<int>(mu.size()) != b.total())
    throw ValidationError("weight has wrong length for this bundle");
  if (!is_dominant(mu, b)) throw ValidationError("mu must be dominant");
  if (cap < 0) throw ValidationError("expansion bound must be >= 0");
  const auto& phi = require_pointed(spec.gens);
  if (!spec.gens.phi_respects_block_order)
    throw ValidationError(
        "truncated expansion needs a block-order-compatible certificate for this generator set");

  std::map<Weight, Poly> out;
  for (const auto& [beta, poly] : cone_expand(spec.gens, cap, bud)) {
    auto st = dot_straighten(add(mu, beta), b);
    if (st.sign == 0) continue;
    auto [it, fresh] = out.try_emplace(st.lambda, Poly(spec.gens.nvars));
    if (st.sign > 0) it->second += poly;
    else it->second -= poly;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero() || dot(phi, sub(it->first, mu)) > cap) it = out.erase(it);
    else ++it;
  }
  return out;
}

}  // namespace kse
