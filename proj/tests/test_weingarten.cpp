#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncfree/mobius.hpp"
#include "ncfree/weingarten.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace ncfree;

TEST_CASE("category assignment") {
  CHECK(category(QuantumGroup::OPLUS) == Family::NC2);
  CHECK(category(QuantumGroup::SPLUS) == Family::NC);
  CHECK(category(QuantumGroup::HPLUS) == Family::NCH);
  CHECK(category(QuantumGroup::BPLUS) == Family::NCB);
  CHECK(group_from_string("S+") == QuantumGroup::SPLUS);
  CHECK(group_name(QuantumGroup::BPLUS) == "b+");
}

TEST_CASE("gram examples") {
  for (long n : {4L, 7L}) {
    auto g = gram(QuantumGroup::SPLUS, 2, n);
    REQUIRE(g.order.size() == 2);
    // lex order on RGS puts 1_2 ("00") before 0_2 ("01")
    CHECK(g.order[0] == SetPartition::top(2));
    CHECK(g.order[1] == SetPartition::bottom(2));
    CHECK(g.entries.at(0, 0) == n);
    CHECK(g.entries.at(0, 1) == n);
    CHECK(g.entries.at(1, 0) == n);
    CHECK(g.entries.at(1, 1) == n * n);
  }
  // diagonal entries are n^{|pi|}
  auto g = gram(QuantumGroup::SPLUS, 4, 5);
  for (size_t i = 0; i < g.order.size(); ++i)
    CHECK(g.entries.at((int)i, (int)i) == int_pow(5, (unsigned long)g.order[i].block_count()));
  auto go = gram(QuantumGroup::OPLUS, 2, 6);
  REQUIRE(go.order.size() == 1);
  CHECK(go.entries.at(0, 0) == 6);
  // serial assembly agrees
  auto gs = gram(QuantumGroup::SPLUS, 4, 5, false);
  CHECK(gs.entries == g.entries);
}

TEST_CASE("weingarten closed forms and exact inverse property") {
  for (long n : {4L, 5L, 9L}) {
    auto w = weingarten(QuantumGroup::SPLUS, 2, n);
    Rat d(1, n * (n - 1));
    d.canonicalize();
    CHECK(w->entries.at(1, 1) == d);
    CHECK(w->entries.at(0, 1) == -d);
    CHECK(w->entries.at(1, 0) == -d);
    CHECK(w->entries.at(0, 0) == Rat(1, n - 1));
    auto wo = weingarten(QuantumGroup::OPLUS, 2, n);
    CHECK(wo->entries.at(0, 0) == Rat(1, n));
  }
  for (QuantumGroup g : {QuantumGroup::OPLUS, QuantumGroup::SPLUS, QuantumGroup::HPLUS,
                         QuantumGroup::BPLUS}) {
    for (int m = 1; m <= 6; ++m) {
      if (enumerate_family(category(g), m).empty()) continue;
      for (long n : {4L, 5L}) {
        auto gm = gram(g, m, n);
        auto w = weingarten(g, m, n);
        auto prod = rat_mul(w->entries, to_rational(gm.entries));
        auto prod2 = rat_mul(to_rational(gm.entries), w->entries);
        for (int i = 0; i < prod.rows; ++i)
          for (int j = 0; j < prod.cols; ++j) {
            CHECK(prod.at(i, j) == Rat(i == j ? 1 : 0));
            CHECK(prod2.at(i, j) == Rat(i == j ? 1 : 0));
          }
      }
    }
  }
}

TEST_CASE("singular Gram matrices are reported") {
  CHECK_THROWS_AS(weingarten(QuantumGroup::SPLUS, 2, 1), SingularGram);
  CHECK_THROWS_AS(weingarten(QuantumGroup::SPLUS, 3, 1), SingularGram);
  // n = 4 is fine
  CHECK_NOTHROW(weingarten(QuantumGroup::SPLUS, 3, 4));
}

TEST_CASE("haar integrals") {
  for (long n : {4L, 6L}) {
    CHECK(haar_integral(QuantumGroup::SPLUS, n, {1}, {1}) == Rat(1, n));
    CHECK(haar_integral(QuantumGroup::SPLUS, n, {1, 1}, {1, 1}) == Rat(1, n));
    CHECK(haar_integral(QuantumGroup::OPLUS, n, {1}, {1}) == 0);
    CHECK(haar_integral(QuantumGroup::OPLUS, n, {1, 1}, {2, 2}) == Rat(1, n));
    CHECK(haar_integral(QuantumGroup::OPLUS, n, {1, 2}, {1, 2}) == 0);
  }
  CHECK_THROWS(haar_integral(QuantumGroup::SPLUS, 4, {5}, {1}));
  CHECK_THROWS(haar_integral(QuantumGroup::SPLUS, 4, {1, 2}, {1}));
}

TEST_CASE("asymptotic table") {
  auto t = asymptotic_table(QuantumGroup::SPLUS, 2, {5, 10});
  const int d = 2;
  // rows are (pi, sigma) with order [1_2, 0_2]
  // n^2 W(0_2,1_2) - mu(0_2,1_2) = -n/(n-1) + 1 = -1/(n-1)
  CHECK(t.error[(size_t)1 * d + 0][0] == Rat(-1, 4));
  CHECK(t.error[(size_t)1 * d + 0][1] == Rat(-1, 9));
  // pi = sigma = 1_2: n W(1_2,1_2) - 1 = 1/(n-1)
  CHECK(t.error[(size_t)0 * d + 0][0] == Rat(1, 4));
}

TEST_CASE("disk cache stores and revalidates") {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "ncfree-cache-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  setenv("NC_CACHE_DIR", dir.c_str(), 1);
  auto w = weingarten(QuantumGroup::BPLUS, 4, 8);
  bool file_seen = false;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    file_seen = true;
    // corrupt the cached table; a fresh load must reject and recompute
    std::ofstream out(e.path());
    out << "{\"{{1},{2},{3},{4}}\": {}}";
  }
  CHECK(file_seen);
  unsetenv("NC_CACHE_DIR");
  CHECK(w->entries.rows == (int)enumerate_family(Family::NCB, 4).size());
}
