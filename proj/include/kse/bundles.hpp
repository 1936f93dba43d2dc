#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kse/errors.hpp"
#include "kse/partition_fn.hpp"
#include "kse/weights.hpp"

namespace kse {

struct Arrow {
  int tail = 0;
  int head = 0;
  bool in_sub = false;  // member of the marked acyclic subquiver
};

struct Quiver {
  int nv = 0;
  std::vector<Arrow> arrows;
};

inline void validate_quiver(const Quiver& q) {
  if (q.nv <= 0) throw ValidationError("quiver needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const auto& a : q.arrows) {
    if (a.tail < 0 || a.tail >= q.nv || a.head < 0 || a.head >= q.nv)
      throw ValidationError("arrow endpoint out of range");
    if (!seen.insert({a.tail, a.head}).second)
      throw ValidationError("at most one arrow per ordered vertex pair");
  }
}

// true when the arrows with in_sub form an acyclic subquiver
inline bool sub_is_acyclic(const Quiver& q) {
  std::vector<std::vector<int>> adj(q.nv);
  for (const auto& a : q.arrows)
    if (a.in_sub) adj[a.tail].push_back(a.head);
  std::vector<int> state(q.nv, 0);
  auto dfs = [&](auto&& self, int v) -> bool {
    state[v] = 1;
    for (int w : adj[v]) {
      if (state[w] == 1) return false;
      if (state[w] == 0 && !self(self, w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < q.nv; ++v)
    if (state[v] == 0 && !dfs(dfs, v)) return false;
  return true;
}

// arrows i -> i+1 mod r; by default every arrow except the wrap-around is in
// the marked subquiver
inline Quiver cyclic_quiver(int r, int arrows_in_sub = -1) {
  if (r < 2) throw ValidationError("cyclic quiver needs r >= 2");
  if (arrows_in_sub < 0) arrows_in_sub = r - 1;
  Quiver q;
  q.nv = r;
  for (int i = 0; i < r; ++i)
    q.arrows.push_back({i, (i + 1) % r, i < arrows_in_sub});
  return q;
}

// path on n vertices; forward[i] directs edge i as i->i+1, else i+1->i
inline Quiver linear_quiver(int n, const std::vector<bool>& forward) {
  if (n < 1 || static_cast<int>(forward.size()) != n - 1)
    throw ValidationError("path quiver orientation has wrong length");
  Quiver q;
  q.nv = n;
  for (int i = 0; i + 1 < n; ++i) {
    if (forward[i]) q.arrows.push_back({i, i + 1, true});
    else q.arrows.push_back({i + 1, i, true});
  }
  return q;
}

// A filtration recipe: step k strips jump_k dimensions at one vertex from the
// surviving space, so earlier steps sit higher in the filtration.
struct FlagStep {
  int vertex = 0;
  int jump = 0;
};

struct FlagType {
  std::vector<int> dims;
  std::vector<FlagStep> steps;
};

inline void validate_flagtype(const FlagType& ft) {
  std::vector<int> sum(ft.dims.size(), 0);
  for (const auto& s : ft.steps) {
    if (s.vertex < 0 || s.vertex >= static_cast<int>(ft.dims.size()))
      throw ValidationError("flag step vertex out of range");
    if (s.jump < 1) throw ValidationError("flag step jump must be >= 1");
    sum[s.vertex] += s.jump;
  }
  for (std::size_t v = 0; v < ft.dims.size(); ++v)
    if (sum[v] != ft.dims[v])
      throw ValidationError("per-vertex jumps must sum to the dimension vector");
}

// removal_times[v][p] = 1-based index of the step that strips basis position
// p at vertex v. In the standard position the chunk stripped first occupies
// the last basis positions, so times decrease along the basis.
inline std::vector<std::vector<int>> removal_times(const FlagType& ft) {
  validate_flagtype(ft);
  std::vector<std::vector<int>> rt(ft.dims.size());
  std::vector<int> ptr(ft.dims.size());
  for (std::size_t v = 0; v < ft.dims.size(); ++v) {
    rt[v].assign(ft.dims[v], 0);
    ptr[v] = ft.dims[v];
  }
  for (std::size_t k = 0; k < ft.steps.size(); ++k) {
    const auto& s = ft.steps[k];
    for (int j = 0; j < s.jump; ++j) rt[s.vertex][--ptr[s.vertex]] = static_cast<int>(k) + 1;
  }
  return rt;
}

// per-vertex parabolic composition in basis order (reverse removal order)
inline std::vector<std::vector<int>> flagtype_compositions(const FlagType& ft) {
  std::vector<std::vector<int>> comp(ft.dims.size());
  for (std::size_t k = ft.steps.size(); k-- > 0;)
    comp[ft.steps[k].vertex].push_back(ft.steps[k].jump);
  return comp;
}

// Bundle data: one torus block per vertex, a parabolic composition at each
// vertex, and the graded fiber generator set.
struct BundleSpec {
  std::string family;
  Blocks blocks;
  std::vector<std::vector<int>> vertex_comps;
  GeneratorSet gens;
  std::vector<std::string> varnames;
};

namespace detail {

inline std::vector<std::vector<int>> borel_comps(const std::vector<int>& dims) {
  std::vector<std::vector<int>> c(dims.size());
  for (std::size_t v = 0; v < dims.size(); ++v) c[v].assign(dims[v], 1);
  return c;
}

inline std::vector<std::string> numbered_vars(int m) {
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

inline Weight pair_weight(const Blocks& b, int v1, int j1, int v2, int j2) {
  Weight w(b.total(), 0);
  w[b.at(v1, j1)] += 1;
  w[b.at(v2, j2)] -= 1;
  return w;
}

}  // namespace detail

// Cyclic family: summands i=0..r-2 contribute weakly-below pairs (j <= k)
// graded by q_{i+1}; the wrap summand r-1 contributes strict pairs (j < k)
// graded by q_r.
inline BundleSpec bundle_fi(int r, int N) {
  if (r < 2) throw ValidationError("cyclic bundle needs r >= 2");
  if (N < 1) throw ValidationError("rank must be >= 1");
  Blocks b(std::vector<int>(r, N));
  std::vector<GradedGenerator> gens;
  for (int i = 0; i + 1 < r; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = j; k < N; ++k)
        gens.push_back({detail::pair_weight(b, i, j, i + 1, k), i});
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k)
      gens.push_back({detail::pair_weight(b, r - 1, j, 0, k), r - 1});
  BundleSpec s;
  s.family = "fi";
  s.blocks = b;
  s.vertex_comps = detail::borel_comps(b.dims);
  s.gens = make_generator_set(b, r, std::move(gens));
  s.varnames = detail::numbered_vars(r);
  return s;
}

// Same but the wrap summand also uses j <= k. Not pointed for any (r,N):
// the diagonal weights telescope to zero around the cycle.
inline BundleSpec bundle_full(int r, int N) {
  if (r < 2) throw ValidationError("cyclic bundle needs r >= 2");
  if (N < 1) throw ValidationError("rank must be >= 1");
  Blocks b(std::vector<int>(r, N));
  std::vector<GradedGenerator> gens;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = j; k < N; ++k)
        gens.push_back({detail::pair_weight(b, i, j, (i + 1) % r, k), i});
  BundleSpec s;
  s.family = "full";
  s.blocks = b;
  s.vertex_comps = detail::borel_comps(b.dims);
  s.gens = make_generator_set(b, r, std::move(gens));
  s.varnames = detail::numbered_vars(r);
  return s;
}

// One vertex, strict pairs, a single grading variable.
inline BundleSpec bundle_classical(int N) {
  if (N < 1) throw ValidationError("rank must be >= 1");
  Blocks b({N});
  std::vector<GradedGenerator> gens;
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k)
      gens.push_back({detail::pair_weight(b, 0, j, 0, k), 0});
  BundleSpec s;
  s.family = "classical";
  s.blocks = b;
  s.vertex_comps = detail::borel_comps(b.dims);
  s.gens = make_generator_set(b, 1, std::move(gens));
  s.varnames = {"q"};
  return s;
}

// Arrows in the marked subquiver give weakly-below pairs, the others strict
// pairs; every vertex carries a complete flag of rank n. One variable per
// arrow, in arrow-id order.
inline BundleSpec bundle_from_diagram(const Quiver& q, int n) {
  validate_quiver(q);
  if (!sub_is_acyclic(q)) throw ValidationError("marked subquiver must be acyclic");
  if (n < 1) throw ValidationError("rank must be >= 1");
  Blocks b(std::vector<int>(q.nv, n));
  std::vector<GradedGenerator> gens;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& ar = q.arrows[a];
    for (int j = 0; j < n; ++j)
      for (int k = ar.in_sub ? j : j + 1; k < n; ++k)
        gens.push_back({detail::pair_weight(b, ar.tail, j, ar.head, k), static_cast<int>(a)});
  }
  BundleSpec s;
  s.family = "diagram";
  s.blocks = b;
  s.vertex_comps = detail::borel_comps(b.dims);
  s.gens = make_generator_set(b, static_cast<int>(q.arrows.size()), std::move(gens));
  s.varnames = detail::numbered_vars(static_cast<int>(q.arrows.size()));
  return s;
}

// Fiber extraction for an arbitrary flag type: the generator at (row, col)
// of arrow a survives the invariance condition exactly when the row's chunk
// at the tail is stripped later than the column's chunk at the head.
inline BundleSpec bundle_from_flagtype(const Quiver& q, const FlagType& ft) {
  validate_quiver(q);
  if (static_cast<int>(ft.dims.size()) != q.nv)
    throw ValidationError("flag type dimension vector does not match quiver");
  auto rt = removal_times(ft);
  Blocks b(ft.dims);
  std::vector<GradedGenerator> gens;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& ar = q.arrows[a];
    for (int row = 0; row < ft.dims[ar.tail]; ++row)
      for (int col = 0; col < ft.dims[ar.head]; ++col)
        if (rt[ar.tail][row] > rt[ar.head][col])
          gens.push_back({detail::pair_weight(b, ar.tail, row, ar.head, col), static_cast<int>(a)});
  }
  BundleSpec s;
  s.family = "flagtype";
  s.blocks = b;
  s.vertex_comps = flagtype_compositions(ft);
  s.gens = make_generator_set(b, static_cast<int>(q.arrows.size()), std::move(gens));
  s.varnames = detail::numbered_vars(static_cast<int>(q.arrows.size()));
  return s;
}

// The interleaved type: N rounds of single-dimension steps over the vertices
// in descending order. Its extracted bundle coincides with bundle_fi(r,N).
inline FlagType flagtype_D1(int r, int N) {
  if (r < 2 || N < 1) throw ValidationError("need r >= 2, N >= 1");
  FlagType ft;
  ft.dims.assign(r, N);
  for (int round = 0; round < N; ++round)
    for (int v = r - 1; v >= 0; --v) ft.steps.push_back({v, 1});
  return ft;
}

// Complete-flag type whose extracted bundle reproduces bundle_from_diagram:
// n rounds, each ordered so that for a marked arrow the head precedes the
// tail and for an unmarked arrow the tail precedes the head.
inline FlagType flagtype_from_diagram(const Quiver& q, int n) {
  validate_quiver(q);
  if (n < 1) throw ValidationError("rank must be >= 1");
  std::vector<std::vector<int>> adj(q.nv);
  std::vector<int> indeg(q.nv, 0);
  for (const auto& a : q.arrows) {
    int from = a.in_sub ? a.head : a.tail;
    int to = a.in_sub ? a.tail : a.head;
    adj[from].push_back(to);
    ++indeg[to];
  }
  // Kahn with smallest-vertex tie break, for determinism
  std::vector<int> order;
  std::set<int> ready;
  for (int v = 0; v < q.nv; ++v)
    if (indeg[v] == 0) ready.insert(v);
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (int w : adj[v])
      if (--indeg[w] == 0) ready.insert(w);
  }
  if (static_cast<int>(order.size()) != q.nv)
    throw ValidationError("no ordering satisfies the incidence constraints (cyclic conditions)");
  FlagType ft;
  ft.dims.assign(q.nv, n);
  for (int round = 0; round < n; ++round)
    for (int v : order) ft.steps.push_back({v, 1});
  return ft;
}

namespace detail {

// weights of the nilradical of the block parabolic: for each vertex, all
// eps_p - eps_q with p in an earlier block than q
inline Weight nilradical_sum(const Blocks& b, const std::vector<std::vector<int>>& comps) {
  Weight out(b.total(), 0);
  for (int v = 0; v < b.count(); ++v) {
    int start = 0;
    std::vector<std::pair<int, int>> spans;  // [begin, end) within the vertex
    for (int sz : comps[v]) {
      spans.emplace_back(start, start + sz);
      start += sz;
    }
    if (start != b.dims[v]) throw ValidationError("vertex composition does not sum to dimension");
    for (std::size_t bi = 0; bi < spans.size(); ++bi)
      for (std::size_t bj = bi + 1; bj < spans.size(); ++bj)
        for (int p = spans[bi].first; p < spans[bi].second; ++p)
          for (int qq = spans[bj].first; qq < spans[bj].second; ++qq) {
            out[b.at(v, p)] += 1;
            out[b.at(v, qq)] -= 1;
          }
  }
  return out;
}

}  // namespace detail

// -lambda + (sum of nilradical weights) - (sum of fiber weights); defined for
// every spec, pointed or not.
inline Weight canonical_weight(const BundleSpec& s, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != s.blocks.total())
    throw ValidationError("weight has wrong length for this bundle");
  Weight out = neg(lambda);
  add_in_place(out, detail::nilradical_sum(s.blocks, s.vertex_comps));
  for (const auto& g : s.gens.gens) out = sub(out, g.w);
  return out;
}

struct ShiftData {
  Weight fiber_sum;      // |Y|
  Weight nilradical_sum; // |n_P|
  Weight rho_p;          // per vertex: coordinate in block b of s blocks gets s-1-b
};

inline ShiftData panyushev_shift(const BundleSpec& s) {
  ShiftData d;
  d.fiber_sum = zero_weight(s.blocks);
  for (const auto& g : s.gens.gens) add_in_place(d.fiber_sum, g.w);
  d.nilradical_sum = detail::nilradical_sum(s.blocks, s.vertex_comps);
  d.rho_p = zero_weight(s.blocks);
  for (int v = 0; v < s.blocks.count(); ++v) {
    int nblocks = static_cast<int>(s.vertex_comps[v].size());
    int pos = 0;
    for (int bi = 0; bi < nblocks; ++bi)
      for (int j = 0; j < s.vertex_comps[v][bi]; ++j)
        d.rho_p[s.blocks.at(v, pos++)] = nblocks - 1 - bi;
  }
  return d;
}

// The telescoped shift for the cyclic family: sum_j (eps_{0,j} - eps_{r-1,j}).
inline Weight kappa_weight(int r, int N) {
  Blocks b(std::vector<int>(r, N));
  Weight w(b.total(), 0);
  for (int j = 0; j < N; ++j) {
    w[b.at(0, j)] += 1;
    w[b.at(r - 1, j)] -= 1;
  }
  return w;
}

}  // namespace kse
