#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncfree/mobius.hpp"
#include "ncfree/transforms.hpp"

#include <random>

using namespace ncfree;

TEST_CASE("base values") {
  auto p = SetPartition::parse("{{1,4,5},{2,3},{6}}");
  CHECK(mobius(p, p) == 1);
  CHECK(mobius(SetPartition::bottom(2), SetPartition::top(2)) == -1);
  CHECK(mobius(SetPartition::bottom(3), SetPartition::top(3)) == 2);
  CHECK(mobius(SetPartition::top(3), SetPartition::bottom(3)) == 0);  // not <=
  for (int k = 1; k <= 8; ++k) {
    Int expect = catalan(k - 1);
    if (k % 2 == 0) expect = -expect;
    CHECK(mobius(SetPartition::bottom(k), SetPartition::top(k)) == expect);
  }
  CHECK_THROWS(mobius(SetPartition::parse("{{1,3},{2,4}}"), SetPartition::top(4)));
}

TEST_CASE("delta relations on NC(n), n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    auto nc = enumerate_family(Family::NC, n);
    for (const auto& sigma : nc)
      for (const auto& pi : nc) {
        if (!sigma.leq(pi)) continue;
        Int s1 = 0, s2 = 0;
        for (const auto& tau : nc) {
          if (sigma.leq(tau) && tau.leq(pi)) {
            s1 += mobius(sigma, tau);
            s2 += mobius(tau, pi);
          }
        }
        Int expect = (sigma == pi) ? 1 : 0;
        CHECK(s1 == expect);
        CHECK(s2 == expect);
      }
  }
}

TEST_CASE("multiplicativity over the NC_h factorization, k <= 4") {
  for (int k = 1; k <= 4; ++k) {
    auto ncs = enumerate_family(Family::NC, k);
    std::vector<std::tuple<SetPartition, SetPartition, SetPartition>> taus;
    for (const auto& a : ncs)
      for (const auto& b : ncs)
        if (a.leq(b)) taus.push_back({fatten(a).join(fatten(b)), a, b});
    for (const auto& [sigma, s1, s2] : taus)
      for (const auto& [pi, p1, p2] : taus) {
        if (!pi.leq(sigma)) continue;
        CHECK(mobius(pi, sigma) == mobius(s1, p1) * mobius(p2, s2));
      }
  }
}

TEST_CASE("mobius is preserved by hat, k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    auto nc = enumerate_family(Family::NC, k);
    for (const auto& rho : nc)
      for (const auto& tau : nc)
        if (rho.leq(tau)) CHECK(mobius(hat(rho), hat(tau)) == mobius(rho, tau));
  }
}

TEST_CASE("mobius_inversion_check") {
  for (int n = 1; n <= 4; ++n) {
    auto nc = enumerate_family(Family::NC, n);
    std::map<SetPartition, Rat> f, g;
    for (const auto& p : nc) {
      f[p] = (p == SetPartition::bottom(n)) ? 1 : 0;
      g[p] = 1;
    }
    CHECK(mobius_inversion_check(f, g, n));

    // the delta relation restated: summing mu(0_n, .) over [0, pi] hits the
    // indicator of the bottom
    std::map<SetPartition, Rat> f2, g2;
    for (const auto& p : nc) {
      f2[p] = Rat(mobius(SetPartition::bottom(n), p));
      g2[p] = (p == SetPartition::bottom(n)) ? 1 : 0;
    }
    CHECK(mobius_inversion_check(f2, g2, n));

    // broken pair must fail
    if (nc.size() > 1) {
      auto bad = g;
      bad[nc[1]] += 1;
      CHECK_FALSE(mobius_inversion_check(f, bad, n));
    }
  }
  // random rational f with g built from the first sum
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + (int)(rng() % 5);
    auto nc = enumerate_family(Family::NC, n);
    std::map<SetPartition, Rat> f, g;
    for (const auto& p : nc) {
      Rat v((long)(rng() % 41) - 20, 1 + (long)(rng() % 7));
      v.canonicalize();
      f[p] = v;
    }
    for (const auto& pi : nc) {
      Rat s = 0;
      for (const auto& sigma : nc)
        if (sigma.leq(pi)) s += f[sigma];
      g[pi] = s;
    }
    CHECK(mobius_inversion_check(f, g, n));
  }
}
