#pragma once

#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kse/budgets.hpp"
#include "kse/errors.hpp"
#include "kse/poly.hpp"
#include "kse/simplex.hpp"
#include "kse/weights.hpp"

namespace kse {

// One cone generator: a weight, graded by one formal variable.
struct GradedGenerator {
  Weight w;
  int var = 0;
};

namespace detail {
struct VecHash {
  std::size_t operator()(const std::vector<Coord>& v) const {
    return static_cast<std::size_t>(fnv1a(v.data(), v.size() * sizeof(Coord)));
  }
};
}  // namespace detail

// Bounded, thread-safe LRU memo for the partition recursion. Results are
// exact, so eviction only costs recomputation, never correctness.
class PartitionCache {
 public:
  explicit PartitionCache(std::size_t cap) : cap_(cap ? cap : 1) {}

  bool get(const std::vector<Coord>& key, Poly& out) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(key);
    if (it == index_.end()) return false;
    order_.splice(order_.begin(), order_, it->second);
    out = it->second->second;
    return true;
  }

  void put(const std::vector<Coord>& key, const Poly& value) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      it->second->second = value;
      return;
    }
    order_.emplace_front(key, value);
    index_[key] = order_.begin();
    if (index_.size() > cap_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return index_.size();
  }

 private:
  mutable std::mutex mu_;
  std::size_t cap_;
  std::list<std::pair<std::vector<Coord>, Poly>> order_;
  std::unordered_map<std::vector<Coord>, decltype(order_)::iterator, detail::VecHash> index_;
};

// Generators with an optional pointedness certificate phi (integer functional
// with <phi,g> >= 1 on every generator). Counting operations require phi;
// plain weight sums do not. The memo is shared across copies.
struct GeneratorSet {
  Blocks blocks;
  int nvars = 0;
  std::vector<GradedGenerator> gens;
  std::optional<std::vector<Coord>> phi;
  bool phi_respects_block_order = false;  // phi >= 0 on within-block e_j - e_k, j<k
  bool gens_sum_zero = true;
  std::shared_ptr<PartitionCache> cache;
};

inline std::vector<Weight> block_order_rows(const Blocks& b) {
  std::vector<Weight> rows;
  for (int v = 0; v < b.count(); ++v)
    for (int j = 0; j < b.dims[v]; ++j)
      for (int k = j + 1; k < b.dims[v]; ++k) {
        Weight w(b.total(), 0);
        w[b.at(v, j)] = 1;
        w[b.at(v, k)] = -1;
        rows.push_back(std::move(w));
      }
  return rows;
}

// Integer functional phi with <phi,g> >= 1 for all generators, preferring one
// that is also >= 0 on within-block order rows (so dominance truncations and
// phi-levels are compatible). Throws PointednessViolation when none exists;
// by LP duality that happens exactly when some nonnegative combination of the
// generators vanishes.
inline std::vector<Coord> certify_pointed(const Blocks& blocks,
                                          const std::vector<GradedGenerator>& gens,
                                          bool* respects_block_order = nullptr) {
  std::vector<std::vector<Coord>> ge_one;
  ge_one.reserve(gens.size());
  for (const auto& g : gens) ge_one.emplace_back(g.w.begin(), g.w.end());
  const int n = blocks.total();

  auto refined = lp_feasible_geq(ge_one, block_order_rows(blocks), n);
  const LpResult* chosen = nullptr;
  bool refined_ok = refined.feasible;
  LpResult plain;
  if (refined_ok) {
    chosen = &refined;
  } else {
    plain = lp_feasible_geq(ge_one, {}, n);
    if (!plain.feasible)
      throw PointednessViolation(
          "no positive functional exists: a nonnegative combination of the generators vanishes");
    chosen = &plain;
  }
  auto phi = scale_to_integer(chosen->x);
  for (const auto& g : gens)
    if (dot(phi, g.w) < 1) throw InternalError("certificate failed recheck");
  if (respects_block_order) *respects_block_order = refined_ok;
  return phi;
}

inline GeneratorSet make_generator_set(const Blocks& blocks, int nvars,
                                       std::vector<GradedGenerator> gens,
                                       std::size_t cache_entries = Budgets{}.cache_entries) {
  GeneratorSet gs;
  gs.blocks = blocks;
  gs.nvars = nvars;
  for (const auto& g : gens) {
    if (static_cast<int>(g.w.size()) != blocks.total())
      throw ValidationError("generator weight has wrong length");
    if (g.var < 0 || g.var >= nvars)
      throw ValidationError("generator grading variable out of range");
    if (coord_sum(g.w) != 0) gs.gens_sum_zero = false;
  }
  gs.gens = std::move(gens);
  try {
    bool refined = false;
    gs.phi = certify_pointed(blocks, gs.gens, &refined);
    gs.phi_respects_block_order = refined;
  } catch (const PointednessViolation&) {
    gs.phi.reset();
  }
  gs.cache = std::make_shared<PartitionCache>(cache_entries);
  return gs;
}

inline const std::vector<Coord>& require_pointed(const GeneratorSet& gs) {
  if (!gs.phi)
    throw PointednessViolation("generator set is not pointed; counting is undefined");
  return *gs.phi;
}

namespace detail {

struct PartitionWorker {
  const GeneratorSet& gs;
  const std::vector<Coord>& phi;

  Poly rec(std::size_t k, const Weight& beta) {
    if (dot(phi, beta) < 0) return Poly::zero(gs.nvars);
    if (gs.gens_sum_zero && coord_sum(beta) != 0) return Poly::zero(gs.nvars);
    if (k == 0)
      return is_zero(beta) ? Poly::constant(gs.nvars, 1) : Poly::zero(gs.nvars);

    std::vector<Coord> key(beta.begin(), beta.end());
    key.push_back(static_cast<Coord>(k));
    Poly memo;
    if (gs.cache->get(key, memo)) return memo;

    Poly acc(gs.nvars);
    const auto& g = gs.gens[k - 1];
    Weight resid = beta;
    int mult = 0;
    while (true) {
      Poly part = rec(k - 1, resid);
      if (!part.is_zero()) {
        part.shift_var(g.var, mult);
        acc += part;
      }
      resid = kse::sub(resid, g.w);
      ++mult;
      if (dot(phi, resid) < 0) break;  // levels strictly decrease, so this ends
    }
    gs.cache->put(key, acc);
    return acc;
  }
};

}  // namespace detail

// Graded count of ways to write beta as an N-combination of the generators;
// each use of generator g contributes one factor of its variable.
inline Poly vector_partition(const GeneratorSet& gs, const Weight& beta,
                             const Budgets& bud = {}) {
  const auto& phi = require_pointed(gs);
  if (static_cast<int>(beta.size()) != gs.blocks.total())
    throw ValidationError("weight has wrong length for this generator set");
  Coord lvl = dot(phi, beta);
  if (lvl > bud.partition_level)
    throw BudgetExceeded("phi-level " + std::to_string(lvl) + " exceeds partition budget " +
                         std::to_string(bud.partition_level));
  detail::PartitionWorker w{gs, phi};
  return w.rec(gs.gens.size(), beta);
}

// Reference implementation: direct enumeration over generator multiplicities,
// bounded by a cap on the number of parts. No memoization, no phi pruning.
inline Poly vector_partition_bruteforce(int nvars,
                                        const std::vector<GradedGenerator>& gens,
                                        const Weight& beta, int max_parts) {
  Poly acc(nvars);
  Exp counts(nvars, 0);
  std::vector<int> used(gens.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, Weight resid, int left) -> void {
    if (k == gens.size()) {
      if (is_zero(resid)) acc.add_term(counts, 1);
      return;
    }
    self(self, k + 1, resid, left);
    for (int m = 1; m <= left; ++m) {
      resid = kse::sub(resid, gens[k].w);
      counts[gens[k].var] += 1;
      used[k] += 1;
      self(self, k + 1, resid, left - m);
    }
    counts[gens[k].var] -= used[k];
    used[k] = 0;
  };
  rec(rec, 0, beta, max_parts);
  return acc;
}

// All cone points of phi-level <= cap with their partition polynomials, by
// iterated in-place product expansion (unbounded knapsack per generator).
// Sorted by (level, weight). Levels strictly increase along insertions, so
// the in-place forward sweep is exact.
inline std::vector<std::pair<Weight, Poly>> cone_expand(const GeneratorSet& gs, Coord cap,
                                                        const Budgets& bud = {}) {
  const auto& phi = require_pointed(gs);
  if (cap > bud.partition_level)
    throw BudgetExceeded("cone level cap exceeds partition budget");
  std::map<std::pair<Coord, Weight>, Poly> acc;
  acc[{0, zero_weight(gs.blocks)}] = Poly::constant(gs.nvars, 1);
  for (const auto& g : gs.gens) {
    Coord lg = dot(phi, g.w);
    for (auto it = acc.begin(); it != acc.end(); ++it) {
      Coord nl = it->first.first + lg;
      if (nl > cap) continue;
      if (acc.size() > bud.enumeration)
        throw BudgetExceeded("cone expansion exceeds enumeration budget");
      Weight nb = add(it->first.second, g.w);
      Poly contrib = it->second;
      contrib.shift_var(g.var, 1);
      auto [jt, fresh] = acc.try_emplace(std::make_pair(nl, std::move(nb)), Poly(gs.nvars));
      jt->second += contrib;
    }
  }
  std::vector<std::pair<Weight, Poly>> out;
  out.reserve(acc.size());
  for (auto& [key, p] : acc) out.emplace_back(key.second, std::move(p));
  return out;
}

}  // namespace kse
