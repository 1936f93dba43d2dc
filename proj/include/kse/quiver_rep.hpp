#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "kse/bundles.hpp"
#include "kse/errors.hpp"
#include "kse/field.hpp"

namespace kse {

// Representation of a quiver: one matrix per arrow, mapping the tail space
// into the head space. Entries are integers; linear algebra lifts them into
// a chosen coefficient field.
struct QuiverRep {
  Quiver q;
  std::vector<int> dims;                        // per vertex
  std::vector<std::vector<long long>> mats;     // per arrow, row-major, d_head x d_tail
};

inline void validate_rep(const QuiverRep& rep) {
  validate_quiver(rep.q);
  if (static_cast<int>(rep.dims.size()) != rep.q.nv)
    throw ValidationError("dimension vector length must match vertex count");
  for (int d : rep.dims)
    if (d < 0) throw ValidationError("dimensions must be nonnegative");
  if (rep.mats.size() != rep.q.arrows.size())
    throw ValidationError("need one matrix per arrow");
  for (std::size_t a = 0; a < rep.mats.size(); ++a) {
    const auto& ar = rep.q.arrows[a];
    std::size_t want = static_cast<std::size_t>(rep.dims[ar.head]) * rep.dims[ar.tail];
    if (rep.mats[a].size() != want)
      throw ValidationError("arrow matrix has wrong shape");
  }
}

inline QuiverRep zero_rep(const Quiver& q, std::vector<int> dims) {
  QuiverRep rep{q, std::move(dims), {}};
  rep.mats.resize(q.arrows.size());
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    rep.mats[a].assign(static_cast<std::size_t>(rep.dims[q.arrows[a].head]) * rep.dims[q.arrows[a].tail], 0);
  return rep;
}

// Interval module supported on vertices u..v of a linear quiver: every
// space is one-dimensional, every interior arrow acts by 1.
inline QuiverRep interval_rep(const Quiver& q, int u, int v) {
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= q.nv) throw ValidationError("interval out of range");
  std::vector<int> dims(q.nv, 0);
  for (int i = u; i <= v; ++i) dims[i] = 1;
  QuiverRep rep = zero_rep(q, dims);
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& ar = q.arrows[a];
    if (dims[ar.tail] == 1 && dims[ar.head] == 1) rep.mats[a] = {1};
  }
  return rep;
}

// Uniserial nilpotent module of length l for the cyclic quiver with r
// vertices: basis element t (1-based) sits at vertex (i + t - 1) mod r,
// the arrow out of that vertex sends element t to element t+1 (and kills
// element l).
inline QuiverRep cyclic_uniserial(int r, int i, int l) {
  if (r < 1) throw ValidationError("cyclic quiver needs at least one vertex");
  if (i < 0 || i >= r) throw ValidationError("socle vertex out of range");
  if (l < 1) throw ValidationError("length must be positive");
  Quiver q = cyclic_quiver(r);
  std::vector<int> dims(r, 0);
  std::vector<std::vector<int>> elems(r);  // chain indices living at each vertex, increasing
  for (int t = 1; t <= l; ++t) {
    int v = (i + t - 1) % r;
    dims[v] += 1;
    elems[v].push_back(t);
  }
  QuiverRep rep = zero_rep(q, dims);
  for (int v = 0; v < r; ++v) {
    int w = (v + 1) % r;
    auto& M = rep.mats[v];  // arrow v -> w, shape dims[w] x dims[v]
    for (int col = 0; col < dims[v]; ++col) {
      int t = elems[v][col];
      if (t == l) continue;  // top of the chain maps to zero
      int tt = t + 1;        // element t+1 lives at vertex w
      for (int row = 0; row < dims[w]; ++row)
        if (elems[w][row] == tt) M[static_cast<std::size_t>(row) * dims[v] + col] = 1;
    }
  }
  return rep;
}

inline QuiverRep direct_sum(const QuiverRep& A, const QuiverRep& B) {
  if (A.q.nv != B.q.nv || A.q.arrows.size() != B.q.arrows.size())
    throw ValidationError("direct sum needs representations of the same quiver");
  for (std::size_t a = 0; a < A.q.arrows.size(); ++a)
    if (A.q.arrows[a].tail != B.q.arrows[a].tail || A.q.arrows[a].head != B.q.arrows[a].head)
      throw ValidationError("direct sum needs representations of the same quiver");
  QuiverRep R;
  R.q = A.q;
  R.dims.resize(A.q.nv);
  for (int v = 0; v < A.q.nv; ++v) R.dims[v] = A.dims[v] + B.dims[v];
  R.mats.resize(A.q.arrows.size());
  for (std::size_t a = 0; a < A.q.arrows.size(); ++a) {
    int ht = A.q.arrows[a].head, tl = A.q.arrows[a].tail;
    int rh = R.dims[ht], rt = R.dims[tl];
    auto& M = R.mats[a];
    M.assign(static_cast<std::size_t>(rh) * rt, 0);
    for (int i = 0; i < A.dims[ht]; ++i)
      for (int j = 0; j < A.dims[tl]; ++j)
        M[static_cast<std::size_t>(i) * rt + j] = A.mats[a][static_cast<std::size_t>(i) * A.dims[tl] + j];
    for (int i = 0; i < B.dims[ht]; ++i)
      for (int j = 0; j < B.dims[tl]; ++j)
        M[static_cast<std::size_t>(A.dims[ht] + i) * rt + (A.dims[tl] + j)] =
            B.mats[a][static_cast<std::size_t>(i) * B.dims[tl] + j];
  }
  return R;
}

// dim Hom(M, N): nullity of the linear system  h_head * M_a = N_a * h_tail
// over all arrows, in the unknown vertex maps h_v (each e_v x d_v).
template <class Ctx>
int hom_dim(const Ctx& ctx, const QuiverRep& M, const QuiverRep& N) {
  validate_rep(M);
  validate_rep(N);
  if (M.q.nv != N.q.nv || M.q.arrows.size() != N.q.arrows.size())
    throw ValidationError("hom needs representations of the same quiver");
  int nv = M.q.nv;
  std::vector<int> voff(nv + 1, 0);
  for (int v = 0; v < nv; ++v) voff[v + 1] = voff[v] + N.dims[v] * M.dims[v];
  int ncols = voff[nv];
  int nrows = 0;
  for (std::size_t a = 0; a < M.q.arrows.size(); ++a)
    nrows += N.dims[M.q.arrows[a].head] * M.dims[M.q.arrows[a].tail];
  if (ncols == 0) return 0;
  Mat<Ctx> S(std::max(nrows, 1), ncols, ctx.zero());
  int row0 = 0;
  for (std::size_t a = 0; a < M.q.arrows.size(); ++a) {
    int tl = M.q.arrows[a].tail, ht = M.q.arrows[a].head;
    int dt = M.dims[tl], dh = M.dims[ht];
    int et = N.dims[tl], eh = N.dims[ht];
    // equation (i, j), i < eh, j < dt:
    //   sum_k h_ht[i][k] M_a[k][j] - sum_l N_a[i][l] h_tl[l][j] = 0
    for (int i = 0; i < eh; ++i)
      for (int j = 0; j < dt; ++j) {
        int row = row0 + i * dt + j;
        for (int k = 0; k < dh; ++k) {
          long long mv = M.mats[a][static_cast<std::size_t>(k) * dt + j];
          if (mv == 0) continue;
          int col = voff[ht] + i * dh + k;
          S.at(row, col) = ctx.add(S.at(row, col), ctx.from_int(mv));
        }
        for (int l = 0; l < et; ++l) {
          long long nvl = N.mats[a][static_cast<std::size_t>(i) * et + l];
          if (nvl == 0) continue;
          int col = voff[tl] + l * dt + j;
          S.at(row, col) = ctx.sub(S.at(row, col), ctx.from_int(nvl));
        }
      }
    row0 += eh * dt;
  }
  return mat_nullity(ctx, S);
}

inline long long euler_form(const Quiver& q, const std::vector<int>& d, const std::vector<int>& e) {
  if (static_cast<int>(d.size()) != q.nv || static_cast<int>(e.size()) != q.nv)
    throw ValidationError("dimension vector length must match vertex count");
  long long s = 0;
  for (int v = 0; v < q.nv; ++v) s += static_cast<long long>(d[v]) * e[v];
  for (const auto& a : q.arrows) s -= static_cast<long long>(d[a.tail]) * e[a.head];
  return s;
}

// dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>  (hereditary path algebra)
template <class Ctx>
int ext_dim(const Ctx& ctx, const QuiverRep& M, const QuiverRep& N) {
  long long h = hom_dim(ctx, M, N);
  return static_cast<int>(h - euler_form(M.q, M.dims, N.dims));
}

}  // namespace kse
