#include <catch2/catch_amalgamated.hpp>

#include "kse/field.hpp"

using namespace kse;

TEST_CASE("prime field arithmetic") {
  FpCtx f5(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.sub(1, 3) == 3);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.neg(2) == 3);
  CHECK(f5.from_int(-7) == 3);
  for (long long a = 1; a < 5; ++a) CHECK(f5.mul(a, f5.inv(a)) == 1);
  CHECK_THROWS_AS(f5.inv(0), ValidationError);
  CHECK_THROWS_AS(FpCtx(1), ValidationError);
}

TEST_CASE("rank and determinant") {
  QCtx q;
  auto A = mat_from_ints(q, 2, 2, {1, 2, 2, 4});
  CHECK(mat_rank(q, A) == 1);
  CHECK(mat_nullity(q, A) == 1);
  CHECK(mat_det(q, A) == 0);

  auto B = mat_from_ints(q, 2, 2, {1, 2, 3, 4});
  CHECK(mat_det(q, B) == Rat(-2));
  CHECK(mat_rank(q, B) == 2);

  FpCtx f5(5);
  auto Bp = mat_from_ints(f5, 2, 2, {1, 2, 3, 4});
  CHECK(mat_det(f5, Bp) == 3);

  FpCtx f2(2);
  auto C = mat_from_ints(f2, 2, 3, {1, 2, 4, 0, 1, 1});
  CHECK(mat_rank(f2, C) == 2);
  CHECK(mat_nullity(f2, C) == 1);

  auto Z = mat_from_ints(q, 0, 0, {});
  CHECK(mat_rank(q, Z) == 0);
  CHECK(mat_is_zero(q, Z));
}

TEST_CASE("matrix inverse") {
  QCtx q;
  auto B = mat_from_ints(q, 3, 3, {2, 1, 0, 1, 1, 1, 0, 1, 3});
  auto Binv = mat_inverse(q, B);
  auto P = mat_mul(q, B, Binv);
  CHECK(mat_is_zero(q, [&] {
    auto D = P;
    auto I = mat_identity(q, 3);
    for (int i = 0; i < 9; ++i) D.a[i] = q.sub(D.a[i], I.a[i]);
    return D;
  }()));
  auto S = mat_from_ints(q, 2, 2, {1, 2, 2, 4});
  CHECK_THROWS_AS(mat_inverse(q, S), ValidationError);
}

TEST_CASE("characteristic polynomials") {
  QCtx q;
  auto A = mat_from_ints(q, 2, 2, {2, 1, 1, 2});
  auto pa = charpoly(q, A);
  REQUIRE(pa.size() == 3);
  CHECK(pa[0] == Rat(3));
  CHECK(pa[1] == Rat(-4));
  CHECK(pa[2] == Rat(1));

  // permutation matrix with a forced pivot swap: x^3 - 1
  auto P = mat_from_ints(q, 3, 3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
  auto pp = charpoly(q, P);
  REQUIRE(pp.size() == 4);
  CHECK(pp[0] == Rat(-1));
  CHECK(pp[1] == Rat(0));
  CHECK(pp[2] == Rat(0));
  CHECK(pp[3] == Rat(1));

  auto T = mat_from_ints(q, 3, 3, {1, 5, 7, 0, 2, 9, 0, 0, 3});
  auto pt = charpoly(q, T);
  REQUIRE(pt.size() == 4);
  CHECK(pt[0] == Rat(-6));
  CHECK(pt[1] == Rat(11));
  CHECK(pt[2] == Rat(-6));
  CHECK(pt[3] == Rat(1));

  FpCtx f2(2);
  auto F = mat_from_ints(f2, 2, 2, {1, 1, 1, 0});
  auto pf = charpoly(f2, F);
  REQUIRE(pf.size() == 3);
  CHECK(pf[0] == 1);
  CHECK(pf[1] == 1);
  CHECK(pf[2] == 1);
}

TEST_CASE("gcd and squarefree detection") {
  QCtx q;
  // (x-1)^2 (x+2) = x^3 - 3x + 2
  FPoly<QCtx> f{Rat(2), Rat(-3), Rat(0), Rat(1)};
  auto d = fpoly_derivative(q, f);
  auto g = fpoly_gcd(q, f, d);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == Rat(-1));
  CHECK(g[1] == Rat(1));
  CHECK_FALSE(fpoly_squarefree(q, f));

  FPoly<QCtx> h{Rat(-1), Rat(0), Rat(1)};
  CHECK(fpoly_squarefree(q, h));

  FpCtx f2(2);
  FPoly<FpCtx> x2{0, 0, 1};  // derivative vanishes mod 2
  CHECK_FALSE(fpoly_squarefree(f2, x2));
  FPoly<FpCtx> irr{1, 1, 1};
  CHECK(fpoly_squarefree(f2, irr));
}
