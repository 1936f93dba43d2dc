#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "kse/bundles.hpp"
#include "kse/errors.hpp"
#include "kse/quiver_rep.hpp"

namespace kse {

// true when the underlying graph is the path 0 - 1 - ... - n-1, arrows in
// either direction
inline bool is_path_quiver(const Quiver& q) {
  if (q.nv < 1) return false;
  if (static_cast<int>(q.arrows.size()) != q.nv - 1) return false;
  std::vector<bool> seen(q.nv - 1, false);
  for (const auto& a : q.arrows) {
    int lo = std::min(a.tail, a.head), hi = std::max(a.tail, a.head);
    if (hi != lo + 1 || lo < 0 || hi >= q.nv) return false;
    if (seen[lo]) return false;
    seen[lo] = true;
  }
  return true;
}

// An interval [u, v] with a multiplicity; the building blocks of linear
// quiver representations.
struct IntervalMult {
  int u = 0, v = 0;
  int mult = 1;
};

inline QuiverRep rep_from_intervals(const Quiver& q, const std::vector<IntervalMult>& parts) {
  if (!is_path_quiver(q)) throw ValidationError("unsupported quiver: need a linear type A quiver");
  QuiverRep acc = zero_rep(q, std::vector<int>(q.nv, 0));
  for (const auto& im : parts) {
    if (im.mult < 1) throw ValidationError("multiplicities must be positive");
    QuiverRep piece = interval_rep(q, im.u, im.v);
    for (int m = 0; m < im.mult; ++m) acc = direct_sum(acc, piece);
  }
  return acc;
}

// Greedy directed partition of all interval modules: round after round,
// peel off every interval alpha such that no other remaining interval maps
// nontrivially into alpha and alpha has no extensions by anything left.
// Returns the rounds in peel order.
inline std::vector<std::vector<std::pair<int, int>>> directed_interval_partition(const Quiver& q) {
  if (!is_path_quiver(q)) throw ValidationError("unsupported quiver: need a linear type A quiver");
  QCtx ctx;
  std::vector<std::pair<int, int>> roots;
  for (int u = 0; u < q.nv; ++u)
    for (int v = u; v < q.nv; ++v) roots.emplace_back(u, v);
  std::vector<QuiverRep> reps;
  reps.reserve(roots.size());
  for (auto [u, v] : roots) reps.push_back(interval_rep(q, u, v));
  int n = static_cast<int>(roots.size());
  std::vector<std::vector<int>> hom(n, std::vector<int>(n));
  std::vector<std::vector<int>> ext(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      hom[i][j] = hom_dim(ctx, reps[i], reps[j]);
      ext[i][j] = static_cast<int>(hom[i][j] - euler_form(q, reps[i].dims, reps[j].dims));
    }
  std::vector<bool> alive(n, true);
  int remaining = n;
  std::vector<std::vector<std::pair<int, int>>> rounds;
  while (remaining > 0) {
    std::vector<int> pick;
    for (int a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      bool ok = true;
      for (int b = 0; b < n && ok; ++b) {
        if (!alive[b]) continue;
        if (b != a && hom[b][a] != 0) ok = false;
        if (ext[a][b] != 0) ok = false;
      }
      if (ok) pick.push_back(a);
    }
    if (pick.empty()) throw InternalError("directed partition stalled");
    std::vector<std::pair<int, int>> round;
    for (int a : pick) {
      round.push_back(roots[a]);
      alive[a] = false;
      --remaining;
    }
    rounds.push_back(std::move(round));
  }
  return rounds;
}

// Flag type of the stratified resolution attached to a linear quiver
// representation given as a multiset of intervals: the peel order of the
// directed partition fixes the order of steps, each class contributing the
// dimension vector of its present summands. Within a round the vertices are
// emitted in arrow order (tails strictly before heads), so the module maps
// along each surviving interval point at strictly later steps.
inline FlagType reineke_flagtype(const Quiver& q, const std::vector<IntervalMult>& parts) {
  if (!is_path_quiver(q)) throw ValidationError("unsupported quiver: need a linear type A quiver");
  std::vector<int> dims(q.nv, 0);
  auto rounds = directed_interval_partition(q);
  auto mult_of = [&](int u, int v) {
    int m = 0;
    for (const auto& im : parts) {
      int lo = std::min(im.u, im.v), hi = std::max(im.u, im.v);
      if (lo == u && hi == v) m += im.mult;
    }
    return m;
  };
  for (const auto& im : parts) {
    if (im.mult < 1) throw ValidationError("multiplicities must be positive");
    int lo = std::min(im.u, im.v), hi = std::max(im.u, im.v);
    if (lo < 0 || hi >= q.nv) throw ValidationError("interval out of range");
    for (int x = lo; x <= hi; ++x) dims[x] += im.mult;
  }
  FlagType ft;
  ft.dims = dims;
  for (const auto& round : rounds) {
    std::vector<int> D(q.nv, 0);
    for (auto [u, v] : round) {
      int m = mult_of(u, v);
      for (int x = u; x <= v; ++x) D[x] += m;
    }
    std::vector<int> indeg(q.nv, 0);
    for (const auto& a : q.arrows)
      if (D[a.tail] > 0 && D[a.head] > 0) ++indeg[a.head];
    std::vector<bool> done(q.nv, false);
    for (;;) {
      int pick = -1;
      for (int x = 0; x < q.nv; ++x)
        if (D[x] > 0 && !done[x] && indeg[x] == 0) { pick = x; break; }
      if (pick < 0) break;
      done[pick] = true;
      ft.steps.push_back({pick, D[pick]});
      for (const auto& a : q.arrows)
        if (a.tail == pick && D[a.head] > 0) --indeg[a.head];
    }
    for (int x = 0; x < q.nv; ++x)
      if (D[x] > 0 && !done[x]) throw InternalError("round vertices do not order along the arrows");
  }
  validate_flagtype(ft);
  return ft;
}

// Flag type read off the kernel filtration of a nilpotent cyclic quiver
// representation: jumps of the graded pieces, deepest level first, vertices
// descending within a level. Kernels are computed over the given field.
template <class Ctx>
FlagType schiffmann_flagtype_over(const Ctx& ctx, const QuiverRep& rep) {
  validate_rep(rep);
  int r = rep.q.nv;
  {
    Quiver want = cyclic_quiver(r);
    if (rep.q.arrows.size() != want.arrows.size())
      throw ValidationError("need a cyclic quiver representation");
    for (std::size_t a = 0; a < want.arrows.size(); ++a)
      if (rep.q.arrows[a].tail != want.arrows[a].tail || rep.q.arrows[a].head != want.arrows[a].head)
        throw ValidationError("need a cyclic quiver representation");
  }
  long long total = 0;
  for (int d : rep.dims) total += d;
  FlagType ft;
  ft.dims = rep.dims;
  if (total == 0) return ft;

  std::vector<Mat<Ctx>> comp(r);
  std::vector<Mat<Ctx>> arrow(r);
  for (int v = 0; v < r; ++v) {
    int w = (v + 1) % r;
    arrow[v] = mat_from_ints(ctx, rep.dims[w], rep.dims[v], rep.mats[v]);
    comp[v] = mat_identity(ctx, rep.dims[v]);
  }
  std::vector<std::vector<int>> jumps;  // jumps[t-1][v] = m^t_v
  std::vector<int> prev_null(r, 0);
  int nu = -1;
  for (int t = 1; t <= total; ++t) {
    std::vector<int> m(r, 0);
    bool all_zero = true;
    for (int v = 0; v < r; ++v) {
      comp[v] = mat_mul(ctx, arrow[(v + t - 1) % r], comp[v]);
      int nul = mat_nullity(ctx, comp[v]);
      m[v] = nul - prev_null[v];
      prev_null[v] = nul;
      if (!mat_is_zero(ctx, comp[v])) all_zero = false;
    }
    jumps.push_back(std::move(m));
    if (all_zero) { nu = t; break; }
  }
  if (nu < 0) throw ValidationError("representation is not nilpotent");
  for (int t = nu; t >= 1; --t)
    for (int v = r - 1; v >= 0; --v)
      if (jumps[t - 1][v] > 0) ft.steps.push_back({v, jumps[t - 1][v]});
  validate_flagtype(ft);
  return ft;
}

inline FlagType schiffmann_flagtype(const QuiverRep& rep) {
  return schiffmann_flagtype_over(QCtx{}, rep);
}

struct FinitenessReport {
  long long dim_bundle = 0;
  long long dim_orbit = 0;
  bool equal = false;
};

// Compares the dimension of the incidence bundle cut out by a flag type
// with the dimension of the orbit of the representation. Equality certifies
// that the collapsing map is generically finite (birational onto the orbit
// closure when the fiber over the dense orbit is a point).
template <class Ctx>
FinitenessReport generic_finiteness_over(const Ctx& ctx, const FlagType& ft, const QuiverRep& rep) {
  validate_rep(rep);
  validate_flagtype(ft);
  if (ft.dims != rep.dims)
    throw ValidationError("flag type and representation have different dimension vectors");
  auto rt = removal_times(ft);
  auto comps = flagtype_compositions(ft);
  long long base = 0;
  for (std::size_t v = 0; v < comps.size(); ++v) {
    const auto& c = comps[v];
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b)
        base += static_cast<long long>(c[a]) * c[b];
  }
  long long fiber = 0;
  for (const auto& ar : rep.q.arrows)
    for (int row = 0; row < rep.dims[ar.head]; ++row)
      for (int col = 0; col < rep.dims[ar.tail]; ++col)
        if (rt[ar.head][row] > rt[ar.tail][col]) ++fiber;
  long long d2 = 0;
  for (int d : rep.dims) d2 += static_cast<long long>(d) * d;
  FinitenessReport rep_out;
  rep_out.dim_bundle = base + fiber;
  rep_out.dim_orbit = d2 - hom_dim(ctx, rep, rep);
  rep_out.equal = rep_out.dim_bundle == rep_out.dim_orbit;
  return rep_out;
}

inline FinitenessReport generic_finiteness(const FlagType& ft, const QuiverRep& rep) {
  return generic_finiteness_over(QCtx{}, ft, rep);
}

}  // namespace kse
