#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncfree/partition.hpp"
#include "ncfree/transforms.hpp"

#include <map>
#include <set>

using namespace ncfree;

namespace {

SetPartition P(const char* s) { return SetPartition::parse(s); }

// oracle: the largest sigma in NC(k) with wreath(pi, sigma) noncrossing,
// by scanning all of NC(k); also asserts the maximum is unique
SetPartition kreweras_oracle(const SetPartition& pi) {
  SetPartition best;
  bool found = false;
  for (const auto& s : enumerate_family(Family::NC, pi.size())) {
    if (!wreath(pi, s).is_noncrossing()) continue;
    if (!found || best.leq(s)) {
      best = s;
      found = true;
    }
  }
  // maximality: every compatible sigma lies below best
  for (const auto& s : enumerate_family(Family::NC, pi.size()))
    if (wreath(pi, s).is_noncrossing()) REQUIRE(s.leq(best));
  return best;
}

SetPartition shift_left_oracle(const SetPartition& pi) {
  const int k = pi.size();
  std::vector<std::vector<int>> blocks;
  std::vector<bool> done(k + 1, false);
  for (int s = 1; s <= k; ++s) {
    if (done[s]) continue;
    std::vector<int> blk;
    for (int t = s; t <= k; ++t)
      if (pi.same_block(s % k + 1, t % k + 1)) {  // (s+1) ~ (t+1) mod k
        blk.push_back(t);
        done[t] = true;
      }
    blocks.push_back(blk);
  }
  return SetPartition::from_blocks(k, blocks);
}

}  // namespace

TEST_CASE("fatten") {
  CHECK(fatten(P("{{1,4,5},{2,3},{6}}")) == P("{{1,10},{2,7},{3,6},{4,5},{8,9},{11,12}}"));
  for (int k = 1; k <= 5; ++k) {
    auto f0 = fatten(SetPartition::bottom(k));
    std::vector<std::vector<int>> pairs;
    for (int i = 1; i <= k; ++i) pairs.push_back({2 * i - 1, 2 * i});
    CHECK(f0 == SetPartition::from_blocks(2 * k, pairs));
    CHECK(f0 == hat(SetPartition::bottom(k)));
  }
  CHECK(fatten(SetPartition::top(2)) == P("{{1,4},{2,3}}"));
  CHECK_THROWS(fatten(P("{{1,3},{2,4}}")));
}

TEST_CASE("fatten is a bijection NC(k) -> NC2(2k) with inverse_fatten") {
  for (int k = 1; k <= 7; ++k) {
    auto ncs = enumerate_family(Family::NC, k);
    auto pairings = enumerate_family(Family::NC2, 2 * k);
    std::set<SetPartition> image;
    for (const auto& p : ncs) {
      auto f = fatten(p);
      CHECK(is_member(Family::NC2, f));
      image.insert(f);
      CHECK(inverse_fatten(f) == p);
    }
    CHECK(image.size() == ncs.size());
    CHECK(image.size() == pairings.size());
  }
  CHECK(inverse_fatten(P("{{1,2},{3,4},{5,6}}")) == SetPartition::bottom(3));
  CHECK(inverse_fatten(P("{{1,4},{2,3}}")) == SetPartition::top(2));
  CHECK_THROWS(inverse_fatten(P("{{1,2,3,4}}")));
}

TEST_CASE("hat") {
  CHECK(hat(SetPartition::top(3)) == SetPartition::top(6));
  CHECK(hat(SetPartition::bottom(2)) == P("{{1,2},{3,4}}"));
  CHECK(hat(P("{{1,4,5},{2,3},{6}}")) == P("{{1,2,7,8,9,10},{3,4,5,6},{11,12}}"));
  // hat(pi) = fatten(pi) v hat(0_k)
  for (int k = 1; k <= 6; ++k)
    for (const auto& p : enumerate_family(Family::NC, k))
      CHECK(hat(p) == fatten(p).join(hat(SetPartition::bottom(k))));
}

TEST_CASE("shifts") {
  CHECK(shift_left(SetPartition::top(5)) == SetPartition::top(5));
  // from the defining relation: 1 ~ 3 since 2 ~ (4 mod 3) = 1 in the input
  CHECK(shift_left(P("{{1,2},{3}}")) == P("{{1,3},{2}}"));
  for (int k = 1; k <= 6; ++k)
    for (const auto& p : enumerate_family(Family::ALL, k)) {
      CHECK(shift_left(p) == shift_left_oracle(p));
      CHECK(shift_left(shift_right(p)) == p);
      CHECK(shift_right(shift_left(p)) == p);
    }
}

TEST_CASE("wreath") {
  CHECK(wreath(SetPartition::bottom(3), SetPartition::bottom(3)) == SetPartition::bottom(6));
  CHECK(wreath(SetPartition::top(2), SetPartition::bottom(2)) == P("{{1,3},{2},{4}}"));
  CHECK(wreath(P("{{1,2},{3}}"), P("{{1},{2,3}}")) == P("{{1,3},{2},{4,6},{5}}"));
  CHECK_THROWS(wreath(SetPartition::top(2), SetPartition::top(3)));
}

TEST_CASE("kreweras") {
  CHECK(kreweras(P("{{1,5},{2,3,4},{6,8},{7}}")) == P("{{1,4},{2},{3},{5,8},{6,7}}"));
  for (int k = 1; k <= 6; ++k) {
    CHECK(kreweras(SetPartition::bottom(k)) == SetPartition::top(k));
    for (const auto& p : enumerate_family(Family::NC, k)) {
      auto kp = kreweras(p);
      CHECK(kp == kreweras_oracle(p));
      CHECK(wreath(p, kp).is_noncrossing());
      CHECK(kreweras_inverse(kp) == p);
      // K(K(pi)) is the left shift
      CHECK(kreweras(kp) == shift_left(p));
    }
  }
  // |pi| + |K(pi)| = k + 1 for k <= 7
  for (int k = 1; k <= 7; ++k)
    for (const auto& p : enumerate_family(Family::NC, k))
      CHECK(p.block_count() + kreweras(p).block_count() == k + 1);
  CHECK_THROWS(kreweras(P("{{1,3},{2,4}}")));
}

TEST_CASE("fatfacts lemma") {
  // (1) fatten(K(pi)) = shift_left(fatten(pi)), k <= 6
  for (int k = 1; k <= 6; ++k)
    for (const auto& p : enumerate_family(Family::NC, k))
      CHECK(fatten(kreweras(p)) == shift_left(fatten(p)));
  // (2) for sigma <= pi: fatten(sigma) v fatten(pi) in NCH(2k) and its
  // complement is wreath(sigma, K(pi)), k <= 5
  for (int k = 1; k <= 5; ++k) {
    auto ncs = enumerate_family(Family::NC, k);
    for (const auto& sigma : ncs)
      for (const auto& pi : ncs) {
        if (!sigma.leq(pi)) continue;
        auto j = fatten(sigma).join(fatten(pi));
        CHECK(is_member(Family::NCH, j));
        CHECK(kreweras(j) == wreath(sigma, kreweras(pi)));
      }
  }
}

TEST_CASE("nch_decompose") {
  CHECK(nch_decompose(hat(SetPartition::top(2))) ==
        std::pair(SetPartition::bottom(2), SetPartition::top(2)));
  for (int k = 1; k <= 5; ++k) {
    for (const auto& s : enumerate_family(Family::NC, k)) {
      auto [a, b] = nch_decompose(fatten(s));
      CHECK(a == s);
      CHECK(b == s);
    }
    // roundtrip + uniqueness: decomposition is a bijection onto {pi1 <= pi2}
    std::set<std::pair<SetPartition, SetPartition>> seen;
    for (const auto& tau : enumerate_family(Family::NCH, 2 * k)) {
      auto [p1, p2] = nch_decompose(tau);
      CHECK(p1.leq(p2));
      CHECK(fatten(p1).join(fatten(p2)) == tau);
      seen.insert({p1, p2});
    }
    size_t pairs = 0;
    auto ncs = enumerate_family(Family::NC, k);
    for (const auto& a : ncs)
      for (const auto& b : ncs)
        if (a.leq(b)) ++pairs;
    CHECK(seen.size() == pairs);
    CHECK(seen.size() == enumerate_family(Family::NCH, 2 * k).size());
  }
  CHECK_THROWS(nch_decompose(P("{{1,2,3},{4}}")));
}

TEST_CASE("h+parts order criterion, k <= 4") {
  for (int k = 1; k <= 4; ++k) {
    auto ncs = enumerate_family(Family::NC, k);
    std::vector<std::tuple<SetPartition, SetPartition, SetPartition>> taus;
    for (const auto& a : ncs)
      for (const auto& b : ncs)
        if (a.leq(b)) taus.push_back({fatten(a).join(fatten(b)), a, b});
    for (const auto& [tau, s1, s2] : taus)
      for (const auto& [pi, p1, p2] : taus) {
        bool lhs = pi.leq(tau);
        bool rhs = s1.leq(p1) && p1.leq(p2) && p2.leq(s2);
        CHECK(lhs == rhs);
      }
  }
}
