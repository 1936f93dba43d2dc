#include <catch2/catch_amalgamated.hpp>

#include "kse/euler.hpp"
#include "kse/tableaux.hpp"

using namespace kse;

TEST_CASE("partition enumeration") {
  auto p4 = partitions_of(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4.front() == Partition{4});
  CHECK(p4.back() == Partition{1, 1, 1, 1});
  CHECK(partitions_of(0).size() == 1);
}

TEST_CASE("tableau enumeration") {
  auto a = ssyt_enumerate({2}, {1, 1});
  REQUIRE(a.size() == 1);
  CHECK(a[0].rows[0] == std::vector<int>{1, 2});

  CHECK(ssyt_enumerate({1, 1}, {2, 0}).empty());

  auto c = ssyt_enumerate({2, 1}, {1, 1, 1});
  REQUIRE(c.size() == 2);

  CHECK_THROWS_AS(ssyt_enumerate({2, 1}, {1, 1}), ValidationError);
  CHECK_THROWS_AS(ssyt_enumerate({1, 2}, {1, 1, 1}), ValidationError);
}

TEST_CASE("reading word runs bottom to top") {
  Tableau t;
  t.shape = {2, 1};
  t.rows = {{1, 2}, {3}};
  CHECK(reading_word(t) == std::vector<int>{3, 1, 2});
}

TEST_CASE("charge anchors") {
  CHECK(charge_word({1, 2}) == 1);
  CHECK(charge_word({3, 1, 2}) == 2);
  CHECK(charge_word({2, 1, 3}) == 1);
  CHECK(charge_word({1, 2, 3}) == 3);
  CHECK(charge_word({2, 1, 1, 3}) == 1);
  CHECK(charge_word({3, 1, 1, 2}) == 2);
  CHECK(charge_word({2, 2, 1, 1}) == 0);
  CHECK(charge_word({2, 1, 1, 2}) == 1);
  CHECK(charge_word({1}) == 0);
}

TEST_CASE("charge polynomial classics") {
  CHECK(kostka_charge({2}, {1, 1}) == Poly::monomial({1}, 1));
  CHECK(kostka_charge({2, 1}, {1, 1, 1}) == Poly::monomial({1}, 1) + Poly::monomial({2}, 1));
  CHECK(kostka_charge({3}, {1, 1, 1}) == Poly::monomial({3}, 1));
  CHECK(kostka_charge({3, 1}, {2, 1, 1}) == Poly::monomial({1}, 1) + Poly::monomial({2}, 1));
  CHECK(kostka_charge({3, 1}, {2, 2}) == Poly::monomial({1}, 1));
  CHECK(kostka_charge({3, 2}, {3, 2}) == Poly::constant(1, 1));
  CHECK(kostka_charge({2, 2, 1}, {2, 2, 1}) == Poly::constant(1, 1));
}

TEST_CASE("counts agree with the polynomial at one") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& lam : partitions_of(n))
      for (const auto& mu : partitions_of(n))
        CHECK(kostka_number(lam, mu) == kostka_charge(lam, mu).eval_all_ones());
}

TEST_CASE("padding") {
  CHECK(pad_partition({2, 1}, 4) == Weight{2, 1, 0, 0});
  CHECK_THROWS_AS(pad_partition({1, 1, 1}, 2), ValidationError);
}

TEST_CASE("group sum engine equals the charge oracle") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& lam : partitions_of(n)) {
      for (const auto& mu : partitions_of(n)) {
        int N = static_cast<int>(std::max(lam.size(), mu.size()));
        auto spec = bundle_classical(N);
        Poly engine = kostka_kostant(spec, pad_partition(lam, N), pad_partition(mu, N));
        Poly oracle = kostka_charge(lam, mu);
        INFO("n=" << n << " lambda size " << lam.size() << " mu size " << mu.size());
        CHECK(engine == oracle);
      }
    }
  }
}
