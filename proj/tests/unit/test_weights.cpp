#include <catch2/catch_amalgamated.hpp>

#include "kse/weights.hpp"
#include "kse/weyl.hpp"

using namespace kse;

TEST_CASE("block offsets and totals") {
  Blocks b({2, 3});
  CHECK(b.count() == 2);
  CHECK(b.total() == 5);
  CHECK(b.off(0) == 0);
  CHECK(b.off(1) == 2);
  CHECK(b.at(1, 2) == 4);
  CHECK_THROWS_AS(Blocks({2, 0}), ValidationError);
}

TEST_CASE("rho staircase per block") {
  Blocks b({2, 2});
  CHECK(rho(b) == Weight{1, 0, 1, 0});
  Blocks c({3});
  CHECK(rho(c) == Weight{2, 1, 0});
}

TEST_CASE("dominance is per block") {
  Blocks b({2, 2});
  CHECK(is_dominant({1, 0, 0, 0}, b));
  CHECK(is_dominant({1, 1, -2, -2}, b));
  CHECK_FALSE(is_dominant({0, 1, 0, 0}, b));
  CHECK_FALSE(is_dominant({1, 0, 0, 1}, b));
}

TEST_CASE("weight text roundtrip") {
  Blocks b({2, 2});
  Weight w{1, 0, 0, -1};
  CHECK(format_weight(w, b) == "1,0;0,-1");
  CHECK(parse_weight("1,0;0,-1", b) == w);
  CHECK(parse_weight(" 1 , 0 ; 0 , -1 ", b) == w);
  CHECK_THROWS_AS(parse_weight("1,0,0;0", b), ValidationError);
  CHECK_THROWS_AS(parse_weight("1,0", b), ValidationError);
  CHECK_THROWS_AS(parse_weight("1,x;0,0", b), ValidationError);
  CHECK_THROWS_AS(parse_weight("1,,0;0,0", b), ValidationError);
}

TEST_CASE("weight arithmetic") {
  Weight a{1, 2, 3}, b{0, -2, 5};
  CHECK(add(a, b) == Weight{1, 0, 8});
  CHECK(sub(a, b) == Weight{1, 4, -2});
  CHECK(neg(a) == Weight{-1, -2, -3});
  CHECK(coord_sum(a) == 6);
  CHECK(dot({1, 0, -1}, a) == -2);
  CHECK(is_zero(sub(a, a)));
}

TEST_CASE("group order and enumeration signs") {
  Blocks b({2, 2});
  CHECK(weyl_order(b) == 4);
  int count = 0, signsum = 0, plus = 0;
  for_each_weyl(b, 100, [&](const SignedPerm& sp) {
    ++count;
    signsum += sp.sign;
    if (sp.sign == 1) ++plus;
  });
  CHECK(count == 4);
  CHECK(signsum == 0);
  CHECK(plus == 2);

  Blocks c({3});
  CHECK(weyl_order(c) == 6);
  CHECK_THROWS_AS(for_each_weyl(c, 5, [](const SignedPerm&) {}), BudgetExceeded);
}

TEST_CASE("permutation action moves slots") {
  Blocks b({2});
  Weight w{5, 7};
  for_each_weyl(b, 10, [&](const SignedPerm& sp) {
    if (sp.perm[0] == std::vector<int>{1, 0}) {
      CHECK(apply_weyl(sp, w, b) == Weight{7, 5});
      CHECK(sp.sign == -1);
    } else {
      CHECK(apply_weyl(sp, w, b) == w);
      CHECK(sp.sign == 1);
    }
  });
}

TEST_CASE("shifted straightening") {
  Blocks b({2});
  // (-1,2) + (1,0) = (0,2) -> sorted (2,0), one swap; lambda = (2,0)-(1,0)
  auto s = dot_straighten({-1, 2}, b);
  CHECK(s.sign == -1);
  CHECK(s.lambda == Weight{1, 0});
  CHECK(coord_sum(s.lambda) == coord_sum({-1, 2}));

  // repeat in the shifted vector kills the term
  auto z = dot_straighten({0, 1}, b);
  CHECK(z.sign == 0);

  // already dominant: identity, sign +1
  auto d = dot_straighten({3, 1}, b);
  CHECK(d.sign == 1);
  CHECK(d.lambda == Weight{3, 1});

  Blocks two({2, 2});
  auto m = dot_straighten({-1, 2, 3, 1}, two);
  CHECK(m.sign == -1);
  CHECK(m.lambda == (Weight{1, 0, 3, 1}));
}
