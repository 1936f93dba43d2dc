#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kse/budgets.hpp"
#include "kse/errors.hpp"
#include "kse/field.hpp"
#include "kse/rng.hpp"

namespace kse {

// A point of the cyclic quiver variety: r square matrices over F_p, x[v]
// mapping the space at vertex v into the space at vertex v+1 (mod r).
struct CyclicPoint {
  int r = 0, N = 0;
  long long p = 2;
  std::vector<Mat<FpCtx>> xs;
};

inline void validate_point(const CyclicPoint& pt) {
  if (pt.r < 1 || pt.N < 1) throw ValidationError("point needs r >= 1 and N >= 1");
  if (static_cast<int>(pt.xs.size()) != pt.r) throw ValidationError("point needs one matrix per vertex");
  for (const auto& m : pt.xs)
    if (m.r != pt.N || m.c != pt.N) throw ValidationError("point matrices must be N x N");
}

// cyclic product around the quiver applying x_i first:
// f_i = x_{i+r-1} ... x_{i+1} x_i
inline Mat<FpCtx> cycle_product(const CyclicPoint& pt, int i) {
  FpCtx ctx(pt.p);
  Mat<FpCtx> M = mat_identity(ctx, pt.N);
  for (int k = 0; k < pt.r; ++k) M = mat_mul(ctx, pt.xs[(i + k) % pt.r], M);
  return M;
}

inline bool is_semisimple_regular(const CyclicPoint& pt) {
  validate_point(pt);
  FpCtx ctx(pt.p);
  auto f = charpoly(ctx, cycle_product(pt, 0));
  return fpoly_squarefree(ctx, f);
}

inline bool is_regular_nilpotent(const CyclicPoint& pt) {
  validate_point(pt);
  FpCtx ctx(pt.p);
  for (int i = 0; i < pt.r; ++i) {
    Mat<FpCtx> f = cycle_product(pt, i);
    if (mat_rank(ctx, f) != pt.N - 1) return false;
    Mat<FpCtx> pw = f;
    for (int k = 1; k < pt.N; ++k) pw = mat_mul(ctx, pw, f);
    if (!mat_is_zero(ctx, pw)) return false;
  }
  return true;
}

inline Mat<FpCtx> random_matrix(const FpCtx& ctx, int n, Rng& rng) {
  Mat<FpCtx> m(n, n, 0);
  for (auto& e : m.a) e = static_cast<long long>(rng.below(static_cast<uint64_t>(ctx.p)));
  return m;
}

inline Mat<FpCtx> random_invertible(const FpCtx& ctx, int n, Rng& rng) {
  for (int tries = 0; tries < 100000; ++tries) {
    Mat<FpCtx> m = random_matrix(ctx, n, rng);
    if (!ctx.is_zero(mat_det(ctx, m))) return m;
  }
  throw InternalError("failed to sample an invertible matrix");
}

inline CyclicPoint random_point(int r, int N, long long p, Rng& rng) {
  FpCtx ctx(p);
  CyclicPoint pt{r, N, p, {}};
  for (int v = 0; v < r; ++v) pt.xs.push_back(random_matrix(ctx, N, rng));
  return pt;
}

inline CyclicPoint random_semisimple_regular(int r, int N, long long p, Rng& rng) {
  for (int tries = 0; tries < 100000; ++tries) {
    CyclicPoint pt = random_point(r, N, p, rng);
    if (is_semisimple_regular(pt)) return pt;
  }
  throw InternalError("failed to sample a regular semisimple point");
}

// x_0 .. x_{r-2} invertible upper triangular, x_{r-1} strictly upper with a
// full superdiagonal; optionally conjugated vertexwise by random invertible
// matrices, which preserves every cycle product up to similarity.
inline CyclicPoint regular_nilpotent_point(int r, int N, long long p, Rng& rng, bool conjugate = true) {
  FpCtx ctx(p);
  CyclicPoint pt{r, N, p, {}};
  auto unit = [&]() { return 1 + static_cast<long long>(rng.below(static_cast<uint64_t>(p - 1))); };
  auto any = [&]() { return static_cast<long long>(rng.below(static_cast<uint64_t>(p))); };
  for (int v = 0; v + 1 < r; ++v) {
    Mat<FpCtx> m(N, N, 0);
    for (int i = 0; i < N; ++i) {
      m.at(i, i) = unit();
      for (int j = i + 1; j < N; ++j) m.at(i, j) = any();
    }
    pt.xs.push_back(std::move(m));
  }
  {
    Mat<FpCtx> m(N, N, 0);
    for (int i = 0; i + 1 < N; ++i) {
      m.at(i, i + 1) = unit();
      for (int j = i + 2; j < N; ++j) m.at(i, j) = any();
    }
    pt.xs.push_back(std::move(m));
  }
  if (conjugate) {
    std::vector<Mat<FpCtx>> g;
    for (int v = 0; v < r; ++v) g.push_back(random_invertible(ctx, N, rng));
    std::vector<Mat<FpCtx>> ginv;
    for (int v = 0; v < r; ++v) ginv.push_back(mat_inverse(ctx, g[v]));
    for (int v = 0; v < r; ++v)
      pt.xs[v] = mat_mul(ctx, g[(v + 1) % r], mat_mul(ctx, pt.xs[v], ginv[v]));
  }
  return pt;
}

namespace detail {

// subspaces as reduced row echelon bases over F_q
using Rows = std::vector<std::vector<long long>>;

inline void rref_rows(const FpCtx& ctx, Rows& rows) {
  int nr = static_cast<int>(rows.size());
  if (nr == 0) return;
  int nc = static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int piv = -1;
    for (int i = rank; i < nr; ++i)
      if (rows[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    long long innv = ctx.inv(rows[rank][col]);
    for (auto& e : rows[rank]) e = ctx.mul(e, innv);
    for (int i = 0; i < nr; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      long long f = rows[i][col];
      for (int j = 0; j < nc; ++j) rows[i][j] = ctx.sub(rows[i][j], ctx.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  rows.resize(rank);
}

inline bool reduce_in_span(const FpCtx& ctx, const Rows& rows, std::vector<long long> v) {
  for (const auto& row : rows) {
    int piv = -1;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) { piv = static_cast<int>(j); break; }
    if (piv < 0) continue;
    if (v[piv] == 0) continue;
    long long f = v[piv];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ctx.sub(v[j], ctx.mul(f, row[j]));
  }
  for (long long e : v)
    if (e != 0) return false;
  return true;
}

inline std::string rows_key(const Rows& rows) {
  std::string s;
  for (const auto& row : rows)
    for (long long e : row) s += static_cast<char>('0' + e);
  return s;
}

}  // namespace detail

// A complete flag of F_q^N: proper parts only, levels[k] is the reduced
// basis of the subspace of dimension k+1, for k = 0 .. N-2.
using CompleteFlag = std::vector<detail::Rows>;

inline std::vector<CompleteFlag> enumerate_complete_flags(long long q, int N, uint64_t budget) {
  FpCtx ctx(q);
  uint64_t work = 0;
  std::vector<CompleteFlag> done;
  std::vector<CompleteFlag> frontier{{}};
  for (int level = 0; level < N - 1; ++level) {
    std::vector<CompleteFlag> next;
    for (const auto& fl : frontier) {
      const detail::Rows* base = level == 0 ? nullptr : &fl.back();
      std::map<std::string, detail::Rows> exts;
      std::vector<long long> v(N, 0);
      // odometer over all q^N vectors
      while (true) {
        bool zero = true;
        for (long long e : v)
          if (e) { zero = false; break; }
        if (!zero) {
          bool inside = base != nullptr && detail::reduce_in_span(ctx, *base, v);
          if (!inside) {
            detail::Rows cand = base ? *base : detail::Rows{};
            cand.push_back(v);
            detail::rref_rows(ctx, cand);
            if (++work > budget) throw BudgetExceeded("flag enumeration budget exhausted");
            exts.emplace(detail::rows_key(cand), std::move(cand));
          }
        }
        int i = N - 1;
        while (i >= 0 && v[i] == q - 1) v[i--] = 0;
        if (i < 0) break;
        ++v[i];
      }
      for (auto& [key, rows] : exts) {
        CompleteFlag nf = fl;
        nf.push_back(std::move(rows));
        next.push_back(std::move(nf));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

enum class FlagKind { D0, D1 };

namespace detail {

inline std::vector<long long> apply_columnwise(const FpCtx& ctx, const Mat<FpCtx>& M,
                                               const std::vector<long long>& v) {
  std::vector<long long> w(M.r, 0);
  for (int i = 0; i < M.r; ++i) {
    long long s = 0;
    for (int j = 0; j < M.c; ++j) s = ctx.add(s, ctx.mul(M.at(i, j), v[j]));
    w[i] = s;
  }
  return w;
}

// x W_src^k inside W_dst^k for every proper level k
inline bool arrow_preserves(const FpCtx& ctx, const Mat<FpCtx>& x, const CompleteFlag& src,
                            const CompleteFlag& dst) {
  for (std::size_t k = 0; k < src.size(); ++k)
    for (const auto& u : src[k])
      if (!reduce_in_span(ctx, dst[k], apply_columnwise(ctx, x, u))) return false;
  return true;
}

// x W_src^k inside W_dst^{k-1} for k = 1 .. N, with W^0 = 0 and W^N = V
inline bool arrow_shifts_down(const FpCtx& ctx, const Mat<FpCtx>& x, const CompleteFlag& src,
                              const CompleteFlag& dst, int N) {
  static const Rows kZero{};
  for (int k = 1; k <= N; ++k) {
    const Rows* target = k == 1 ? &kZero : &dst[k - 2];
    if (k < N) {
      for (const auto& u : src[k - 1])
        if (!reduce_in_span(ctx, *target, apply_columnwise(ctx, x, u))) return false;
    } else {
      std::vector<long long> col(N);
      for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) col[i] = x.at(i, j);
        if (!reduce_in_span(ctx, *target, col)) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Number of tuples of complete flags, one per vertex, compatible with the
// point: every arrow must carry each flag level into the matching level at
// the next vertex; in the shifted kind the wrap arrow r-1 -> 0 must drop
// every level by one.
inline long long count_invariant_flags(const CyclicPoint& pt, FlagKind kind, const Budgets& bud = {}) {
  validate_point(pt);
  FpCtx ctx(pt.p);
  auto flags = enumerate_complete_flags(pt.p, pt.N, bud.enumeration);
  uint64_t visited = 0;
  long long count = 0;
  std::vector<const CompleteFlag*> chosen(pt.r, nullptr);
  auto wrap_ok = [&](const CompleteFlag& src, const CompleteFlag& dst) {
    const Mat<FpCtx>& x = pt.xs[pt.r - 1];
    if (kind == FlagKind::D0) return detail::arrow_preserves(ctx, x, src, dst);
    return detail::arrow_shifts_down(ctx, x, src, dst, pt.N);
  };
  std::function<void(int)> rec = [&](int v) {
    for (const auto& fl : flags) {
      if (++visited > bud.enumeration) throw BudgetExceeded("flag search budget exhausted");
      if (v > 0 && !detail::arrow_preserves(ctx, pt.xs[v - 1], *chosen[v - 1], fl)) continue;
      chosen[v] = &fl;
      if (v + 1 == pt.r) {
        if (wrap_ok(fl, *chosen[0])) ++count;
      } else {
        rec(v + 1);
      }
    }
  };
  rec(0);
  return count;
}

}  // namespace kse
