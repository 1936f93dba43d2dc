#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "kse/errors.hpp"
#include "kse/numeric.hpp"

namespace kse {

// Prime field with runtime modulus; elements normalized to [0, p).
struct FpCtx {
  long long p;
  using E = long long;

  explicit FpCtx(long long prime) : p(prime) {
    if (prime < 2) throw ValidationError("modulus must be a prime >= 2");
  }
  E zero() const { return 0; }
  E one() const { return 1; }
  E from_int(long long v) const {
    long long r = v % p;
    return r < 0 ? r + p : r;
  }
  bool is_zero(E a) const { return a == 0; }
  bool eq(E a, E b) const { return a == b; }
  E add(E a, E b) const { return (a + b) % p; }
  E sub(E a, E b) const { return (a - b + p) % p; }
  E neg(E a) const { return (p - a) % p; }
  E mul(E a, E b) const { return (a * b) % p; }
  E inv(E a) const {
    if (a == 0) throw ValidationError("division by zero");
    // extended euclid
    long long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw ValidationError("modulus is not prime");
    return t < 0 ? t + p : t;
  }
};

// Exact rationals.
struct QCtx {
  using E = Rat;
  E zero() const { return 0; }
  E one() const { return 1; }
  E from_int(long long v) const { return Rat(v); }
  bool is_zero(const E& a) const { return a == 0; }
  bool eq(const E& a, const E& b) const { return a == b; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E neg(const E& a) const { return -a; }
  E mul(const E& a, const E& b) const { return a * b; }
  E inv(const E& a) const {
    if (a == 0) throw ValidationError("division by zero");
    return Rat(1) / a;
  }
};

template <class Ctx>
struct Mat {
  using E = typename Ctx::E;
  int r = 0, c = 0;
  std::vector<E> a;

  Mat() = default;
  Mat(int rows, int cols, E fill) : r(rows), c(cols), a(rows * cols, fill) {}

  E& at(int i, int j) { return a[i * c + j]; }
  const E& at(int i, int j) const { return a[i * c + j]; }
};

template <class Ctx>
Mat<Ctx> mat_from_ints(const Ctx& ctx, int r, int c, const std::vector<long long>& rows) {
  if (static_cast<int>(rows.size()) != r * c) throw ValidationError("matrix literal has wrong size");
  Mat<Ctx> m(r, c, ctx.zero());
  for (int i = 0; i < r * c; ++i) m.a[i] = ctx.from_int(rows[i]);
  return m;
}

template <class Ctx>
Mat<Ctx> mat_identity(const Ctx& ctx, int n) {
  Mat<Ctx> m(n, n, ctx.zero());
  for (int i = 0; i < n; ++i) m.at(i, i) = ctx.one();
  return m;
}

template <class Ctx>
Mat<Ctx> mat_mul(const Ctx& ctx, const Mat<Ctx>& A, const Mat<Ctx>& B) {
  if (A.c != B.r) throw ValidationError("matrix shape mismatch");
  Mat<Ctx> R(A.r, B.c, ctx.zero());
  for (int i = 0; i < A.r; ++i)
    for (int k = 0; k < A.c; ++k) {
      if (ctx.is_zero(A.at(i, k))) continue;
      for (int j = 0; j < B.c; ++j)
        R.at(i, j) = ctx.add(R.at(i, j), ctx.mul(A.at(i, k), B.at(k, j)));
    }
  return R;
}

template <class Ctx>
bool mat_is_zero(const Ctx& ctx, const Mat<Ctx>& A) {
  for (const auto& v : A.a)
    if (!ctx.is_zero(v)) return false;
  return true;
}

template <class Ctx>
int mat_rank(const Ctx& ctx, Mat<Ctx> A) {
  int rank = 0;
  for (int col = 0; col < A.c && rank < A.r; ++col) {
    int piv = -1;
    for (int i = rank; i < A.r; ++i)
      if (!ctx.is_zero(A.at(i, col))) { piv = i; break; }
    if (piv < 0) continue;
    for (int j = 0; j < A.c; ++j) std::swap(A.at(piv, j), A.at(rank, j));
    auto innv = ctx.inv(A.at(rank, col));
    for (int i = rank + 1; i < A.r; ++i) {
      if (ctx.is_zero(A.at(i, col))) continue;
      auto f = ctx.mul(A.at(i, col), innv);
      for (int j = col; j < A.c; ++j)
        A.at(i, j) = ctx.sub(A.at(i, j), ctx.mul(f, A.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

template <class Ctx>
int mat_nullity(const Ctx& ctx, const Mat<Ctx>& A) {
  return A.c - mat_rank(ctx, A);
}

template <class Ctx>
typename Ctx::E mat_det(const Ctx& ctx, Mat<Ctx> A) {
  if (A.r != A.c) throw ValidationError("determinant needs a square matrix");
  auto det = ctx.one();
  for (int col = 0; col < A.c; ++col) {
    int piv = -1;
    for (int i = col; i < A.r; ++i)
      if (!ctx.is_zero(A.at(i, col))) { piv = i; break; }
    if (piv < 0) return ctx.zero();
    if (piv != col) {
      for (int j = 0; j < A.c; ++j) std::swap(A.at(piv, j), A.at(col, j));
      det = ctx.neg(det);
    }
    det = ctx.mul(det, A.at(col, col));
    auto innv = ctx.inv(A.at(col, col));
    for (int i = col + 1; i < A.r; ++i) {
      if (ctx.is_zero(A.at(i, col))) continue;
      auto f = ctx.mul(A.at(i, col), innv);
      for (int j = col; j < A.c; ++j)
        A.at(i, j) = ctx.sub(A.at(i, j), ctx.mul(f, A.at(col, j)));
    }
  }
  return det;
}

template <class Ctx>
Mat<Ctx> mat_inverse(const Ctx& ctx, Mat<Ctx> A) {
  if (A.r != A.c) throw ValidationError("inverse needs a square matrix");
  int n = A.r;
  Mat<Ctx> I = mat_identity(ctx, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!ctx.is_zero(A.at(i, col))) { piv = i; break; }
    if (piv < 0) throw ValidationError("matrix is singular");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(A.at(piv, j), A.at(col, j));
        std::swap(I.at(piv, j), I.at(col, j));
      }
    auto innv = ctx.inv(A.at(col, col));
    for (int j = 0; j < n; ++j) {
      A.at(col, j) = ctx.mul(A.at(col, j), innv);
      I.at(col, j) = ctx.mul(I.at(col, j), innv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || ctx.is_zero(A.at(i, col))) continue;
      auto f = A.at(i, col);
      for (int j = 0; j < n; ++j) {
        A.at(i, j) = ctx.sub(A.at(i, j), ctx.mul(f, A.at(col, j)));
        I.at(i, j) = ctx.sub(I.at(i, j), ctx.mul(f, I.at(col, j)));
      }
    }
  }
  return I;
}

// dense univariate polynomials over the field, ascending coefficients
template <class Ctx>
using FPoly = std::vector<typename Ctx::E>;

template <class Ctx>
void fpoly_trim(const Ctx& ctx, FPoly<Ctx>& f) {
  while (!f.empty() && ctx.is_zero(f.back())) f.pop_back();
}

template <class Ctx>
FPoly<Ctx> fpoly_derivative(const Ctx& ctx, const FPoly<Ctx>& f) {
  FPoly<Ctx> d;
  for (std::size_t k = 1; k < f.size(); ++k)
    d.push_back(ctx.mul(f[k], ctx.from_int(static_cast<long long>(k))));
  fpoly_trim(ctx, d);
  return d;
}

template <class Ctx>
FPoly<Ctx> fpoly_mod(const Ctx& ctx, FPoly<Ctx> a, const FPoly<Ctx>& b) {
  if (b.empty()) throw ValidationError("polynomial division by zero");
  while (a.size() >= b.size() && !a.empty()) {
    auto f = ctx.mul(a.back(), ctx.inv(b.back()));
    int shift = static_cast<int>(a.size() - b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ctx.sub(a[shift + i], ctx.mul(f, b[i]));
    fpoly_trim(ctx, a);
  }
  return a;
}

// monic gcd
template <class Ctx>
FPoly<Ctx> fpoly_gcd(const Ctx& ctx, FPoly<Ctx> a, FPoly<Ctx> b) {
  fpoly_trim(ctx, a);
  fpoly_trim(ctx, b);
  while (!b.empty()) {
    auto r = fpoly_mod(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && !ctx.eq(a.back(), ctx.one())) {
    auto innv = ctx.inv(a.back());
    for (auto& e : a) e = ctx.mul(e, innv);
  }
  return a;
}

// characteristic polynomial via similarity reduction to Hessenberg form and
// the leading-minor recurrence
template <class Ctx>
FPoly<Ctx> charpoly(const Ctx& ctx, Mat<Ctx> A) {
  if (A.r != A.c) throw ValidationError("characteristic polynomial needs a square matrix");
  const int n = A.r;
  for (int col = 0; col + 2 < n; ++col) {
    int piv = -1;
    for (int i = col + 1; i < n; ++i)
      if (!ctx.is_zero(A.at(i, col))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != col + 1) {
      for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col + 1, j));
      for (int i = 0; i < n; ++i) std::swap(A.at(i, piv), A.at(i, col + 1));
    }
    auto innv = ctx.inv(A.at(col + 1, col));
    for (int i = col + 2; i < n; ++i) {
      if (ctx.is_zero(A.at(i, col))) continue;
      auto f = ctx.mul(A.at(i, col), innv);
      // row op R_i -= f R_{col+1}, then column op C_{col+1} += f C_i
      for (int j = 0; j < n; ++j) A.at(i, j) = ctx.sub(A.at(i, j), ctx.mul(f, A.at(col + 1, j)));
      for (int i2 = 0; i2 < n; ++i2)
        A.at(i2, col + 1) = ctx.add(A.at(i2, col + 1), ctx.mul(f, A.at(i2, i)));
    }
  }
  // p_m = (x - A[m][m]) p_{m-1} - sum_i A[i][m] (prod subdiag) p_{i-1}
  std::vector<FPoly<Ctx>> p(n + 1);
  p[0] = {ctx.one()};
  for (int m = 1; m <= n; ++m) {
    FPoly<Ctx>& pm = p[m];
    pm.assign(m + 1, ctx.zero());
    const auto& prev = p[m - 1];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      pm[k + 1] = ctx.add(pm[k + 1], prev[k]);                                  // x * p_{m-1}
      pm[k] = ctx.sub(pm[k], ctx.mul(A.at(m - 1, m - 1), prev[k]));             // -a_mm p_{m-1}
    }
    auto prod = ctx.one();
    for (int i = m - 1; i >= 1; --i) {
      prod = ctx.mul(prod, A.at(i, i - 1));  // subdiagonal product from i to m-1
      auto coeff = ctx.mul(A.at(i - 1, m - 1), prod);
      if (ctx.is_zero(coeff)) continue;
      const auto& pi = p[i - 1];
      for (std::size_t k = 0; k < pi.size(); ++k)
        pm[k] = ctx.sub(pm[k], ctx.mul(coeff, pi[k]));
    }
  }
  return p[n];
}

// squarefree <=> gcd(f, f') is a nonzero constant; in characteristic p the
// derivative may vanish identically, in which case f is a p-th power and
// certainly not squarefree (degree >= 1)
template <class Ctx>
bool fpoly_squarefree(const Ctx& ctx, const FPoly<Ctx>& f) {
  auto d = fpoly_derivative(ctx, f);
  if (d.empty()) return f.size() <= 1;
  auto g = fpoly_gcd(ctx, f, d);
  return g.size() == 1;
}

}  // namespace kse
