#pragma once

#include <vector>

#include "kse/errors.hpp"
#include "kse/field.hpp"
#include "kse/rng.hpp"

namespace kse {

template <class Ctx>
typename Ctx::E leading_minor(const Ctx& ctx, const Mat<Ctx>& M, int j) {
  if (j < 0 || j > M.r || j > M.c) throw ValidationError("minor size out of range");
  Mat<Ctx> sub(j, j, ctx.zero());
  for (int i = 0; i < j; ++i)
    for (int k = 0; k < j; ++k) sub.at(i, k) = M.at(i, k);
  return mat_det(ctx, sub);
}

template <class Ctx>
bool is_upper_triangular(const Ctx& ctx, const Mat<Ctx>& M) {
  for (int i = 0; i < M.r; ++i)
    for (int j = 0; j < i && j < M.c; ++j)
      if (!ctx.is_zero(M.at(i, j))) return false;
  return true;
}

template <class Ctx>
bool is_strictly_upper(const Ctx& ctx, const Mat<Ctx>& M) {
  for (int i = 0; i < M.r; ++i)
    for (int j = 0; j <= i && j < M.c; ++j)
      if (!ctx.is_zero(M.at(i, j))) return false;
  return true;
}

template <class Ctx>
bool is_lower_unipotent(const Ctx& ctx, const Mat<Ctx>& M) {
  if (M.r != M.c) return false;
  for (int i = 0; i < M.r; ++i) {
    if (!ctx.eq(M.at(i, i), ctx.one())) return false;
    for (int j = i + 1; j < M.c; ++j)
      if (!ctx.is_zero(M.at(i, j))) return false;
  }
  return true;
}

template <class Ctx>
void validate_shaped_tuple(const Ctx& ctx, const std::vector<Mat<Ctx>>& xs) {
  int r = static_cast<int>(xs.size());
  if (r < 1) throw ValidationError("need at least one matrix");
  int N = xs[0].r;
  for (const auto& m : xs)
    if (m.r != N || m.c != N) throw ValidationError("matrices must be square of equal size");
  for (int s = 0; s + 1 < r; ++s)
    if (!is_upper_triangular(ctx, xs[s]))
      throw ValidationError("all but the last matrix must be upper triangular");
  if (!is_strictly_upper(ctx, xs[r - 1]))
    throw ValidationError("the last matrix must be strictly upper triangular");
}

// Product of leading principal minors of the conjugated tuple: every minor
// of the upper-triangular slots, and only the proper minors of the strictly
// upper final slot (its determinant vanishes identically).
template <class Ctx>
typename Ctx::E splitting_minor(const Ctx& ctx, const std::vector<Mat<Ctx>>& gs,
                                const std::vector<Mat<Ctx>>& xs) {
  validate_shaped_tuple(ctx, xs);
  int r = static_cast<int>(xs.size());
  int N = xs[0].r;
  if (static_cast<int>(gs.size()) != r) throw ValidationError("need one group element per vertex");
  auto f = ctx.one();
  for (int s = 0; s < r; ++s) {
    Mat<Ctx> c = mat_mul(ctx, gs[s], mat_mul(ctx, xs[s], mat_inverse(ctx, gs[s])));
    int top = s + 1 < r ? N : N - 1;
    for (int j = 1; j <= top; ++j) f = ctx.mul(f, leading_minor(ctx, c, j));
  }
  return f;
}

// z_i = g_{i+1} x_i g_i^{-1}; cycle products of z are conjugate to cycle
// products of x
template <class Ctx>
std::vector<Mat<Ctx>> twist_tuple(const Ctx& ctx, const std::vector<Mat<Ctx>>& gs,
                                  const std::vector<Mat<Ctx>>& xs) {
  int r = static_cast<int>(xs.size());
  if (static_cast<int>(gs.size()) != r) throw ValidationError("need one group element per vertex");
  std::vector<Mat<Ctx>> zs;
  zs.reserve(r);
  for (int i = 0; i < r; ++i)
    zs.push_back(mat_mul(ctx, gs[(i + 1) % r], mat_mul(ctx, xs[i], mat_inverse(ctx, gs[i]))));
  return zs;
}

template <class Ctx>
Mat<Ctx> cycle_product_generic(const Ctx& ctx, const std::vector<Mat<Ctx>>& xs, int i) {
  int r = static_cast<int>(xs.size());
  int N = xs[0].r;
  Mat<Ctx> M = mat_identity(ctx, N);
  for (int k = 0; k < r; ++k) M = mat_mul(ctx, xs[(i + k) % r], M);
  return M;
}

// every cycle product has rank N-1 and N-th power zero
template <class Ctx>
bool tuple_regular_nilpotent(const Ctx& ctx, const std::vector<Mat<Ctx>>& xs) {
  int r = static_cast<int>(xs.size());
  int N = xs[0].r;
  for (int i = 0; i < r; ++i) {
    Mat<Ctx> f = cycle_product_generic(ctx, xs, i);
    if (mat_rank(ctx, f) != N - 1) return false;
    Mat<Ctx> pw = f;
    for (int k = 1; k < N; ++k) pw = mat_mul(ctx, pw, f);
    if (!mat_is_zero(ctx, pw)) return false;
  }
  return true;
}

// Wherever the minor product is nonzero, the twisted tuple must be regular
// nilpotent. Vacuously true when the minor vanishes.
template <class Ctx>
bool splitting_locus_check(const Ctx& ctx, const std::vector<Mat<Ctx>>& gs,
                           const std::vector<Mat<Ctx>>& xs) {
  auto f = splitting_minor(ctx, gs, xs);
  if (ctx.is_zero(f)) return true;
  return tuple_regular_nilpotent(ctx, twist_tuple(ctx, gs, xs));
}

// For lower-unipotent g and M whose top-left rr x (N-rr) block vanishes:
//   det((g M g^{-1})[0..rr, 0..rr)) =
//   det(M[0..rr) x [N-rr..N)) * det(g^{-1}[N-rr..N) x [0..rr))
template <class Ctx>
bool mk_identity_check(const Ctx& ctx, const Mat<Ctx>& g, const Mat<Ctx>& M, int rr) {
  if (M.r != M.c || g.r != g.c || g.r != M.r) throw ValidationError("need square matrices of equal size");
  int N = M.r;
  if (rr < 1 || rr > N) throw ValidationError("block size out of range");
  if (!is_lower_unipotent(ctx, g)) throw ValidationError("conjugator must be lower unipotent");
  for (int i = 0; i < rr; ++i)
    for (int j = 0; j < N - rr; ++j)
      if (!ctx.is_zero(M.at(i, j))) throw ValidationError("top-left block of the matrix must vanish");
  Mat<Ctx> ginv = mat_inverse(ctx, g);
  Mat<Ctx> conj = mat_mul(ctx, g, mat_mul(ctx, M, ginv));
  auto lhs = leading_minor(ctx, conj, rr);
  Mat<Ctx> a(rr, rr, ctx.zero());
  for (int i = 0; i < rr; ++i)
    for (int j = 0; j < rr; ++j) a.at(i, j) = M.at(i, N - rr + j);
  Mat<Ctx> b(rr, rr, ctx.zero());
  for (int i = 0; i < rr; ++i)
    for (int j = 0; j < rr; ++j) b.at(i, j) = ginv.at(N - rr + i, j);
  auto rhs = ctx.mul(mat_det(ctx, a), mat_det(ctx, b));
  return ctx.eq(lhs, rhs);
}

// samplers for randomized identity checks; entries are small integers
// lifted into the field
template <class Ctx>
typename Ctx::E sample_entry(const Ctx& ctx, Rng& rng, long long bound) {
  return ctx.from_int(rng.range(-bound, bound));
}

template <class Ctx>
typename Ctx::E sample_nonzero(const Ctx& ctx, Rng& rng, long long bound) {
  for (int tries = 0; tries < 10000; ++tries) {
    auto e = sample_entry(ctx, rng, bound);
    if (!ctx.is_zero(e)) return e;
  }
  throw InternalError("failed to sample a nonzero entry");
}

template <class Ctx>
Mat<Ctx> random_lower_unipotent(const Ctx& ctx, int N, Rng& rng, long long bound) {
  Mat<Ctx> m = mat_identity(ctx, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < i; ++j) m.at(i, j) = sample_entry(ctx, rng, bound);
  return m;
}

template <class Ctx>
Mat<Ctx> random_upper_invertible(const Ctx& ctx, int N, Rng& rng, long long bound) {
  Mat<Ctx> m(N, N, ctx.zero());
  for (int i = 0; i < N; ++i) {
    m.at(i, i) = sample_nonzero(ctx, rng, bound);
    for (int j = i + 1; j < N; ++j) m.at(i, j) = sample_entry(ctx, rng, bound);
  }
  return m;
}

template <class Ctx>
Mat<Ctx> random_strict_upper(const Ctx& ctx, int N, Rng& rng, long long bound) {
  Mat<Ctx> m(N, N, ctx.zero());
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) m.at(i, j) = sample_entry(ctx, rng, bound);
  return m;
}

template <class Ctx>
Mat<Ctx> random_zero_block(const Ctx& ctx, int N, int rr, Rng& rng, long long bound) {
  Mat<Ctx> m(N, N, ctx.zero());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!(i < rr && j < N - rr)) m.at(i, j) = sample_entry(ctx, rng, bound);
  return m;
}

}  // namespace kse
