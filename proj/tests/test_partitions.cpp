#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"

#include <random>

using namespace ncfree;

namespace {

SetPartition P(const char* s) { return SetPartition::parse(s); }

// oracle: transitive-closure join by fixpoint over the pair relation
SetPartition join_oracle(const SetPartition& a, const SetPartition& b) {
  const int k = a.size();
  std::vector<int> lab(k);
  for (int i = 0; i < k; ++i) lab[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 1; s <= k; ++s)
      for (int t = 1; t <= k; ++t) {
        if (a.same_block(s, t) || b.same_block(s, t)) {
          int ls = lab[s - 1], lt = lab[t - 1];
          if (ls != lt) {
            for (int& v : lab)
              if (v == lt) v = ls;
            changed = true;
          }
        }
      }
  }
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = (std::uint8_t)lab[i];
  return SetPartition::from_rgs(rgs);
}

// oracle: definition-based crossing test (two blocks interleave)
bool crossing_oracle(const SetPartition& p) {
  const int k = p.size();
  for (int s1 = 1; s1 <= k; ++s1)
    for (int t1 = s1 + 1; t1 <= k; ++t1)
      for (int s2 = t1 + 1; s2 <= k; ++s2)
        for (int t2 = s2 + 1; t2 <= k; ++t2)
          if (p.same_block(s1, s2) && p.same_block(t1, t2) && !p.same_block(s1, t1)) return true;
  return false;
}

}  // namespace

TEST_CASE("canonical form and parsing") {
  auto p = SetPartition::from_blocks(6, {{2, 3}, {6}, {5, 1, 4}});
  CHECK(p.to_string() == "{{1,4,5},{2,3},{6}}");
  CHECK(SetPartition::parse("{{1,4,5},{2,3},{6}}") == p);
  CHECK(p.block_count() == 3);
  CHECK(p.rgs() == std::vector<std::uint8_t>{0, 1, 1, 0, 0, 2});
  CHECK(SetPartition::parse("{}").size() == 0);
  CHECK_THROWS(SetPartition::from_blocks(3, {{1, 2}}));        // not covering
  CHECK_THROWS(SetPartition::from_blocks(3, {{1, 2}, {2, 3}}));  // overlap
}

TEST_CASE("enumeration counts match Catalan/Bell/Motzkin") {
  for (int k = 1; k <= 10; ++k)
    CHECK(Int((long)enumerate_family(Family::NC, k).size()) == catalan(k));
  for (int k = 1; k <= 8; ++k)
    CHECK(Int((long)enumerate_family(Family::ALL, k).size()) == bell(k));
  for (int k = 1; k <= 5; ++k) {
    CHECK(Int((long)enumerate_family(Family::NC2, 2 * k).size()) == catalan(k));
    CHECK(enumerate_family(Family::NC2, 2 * k - 1).empty());
  }
  // NC(4) excludes exactly the crossing pairing
  auto nc4 = enumerate_family(Family::NC, 4);
  auto all4 = enumerate_family(Family::ALL, 4);
  CHECK(nc4.size() == 14);
  CHECK(all4.size() == 15);
  for (const auto& p : all4) {
    bool in_nc = std::find(nc4.begin(), nc4.end(), p) != nc4.end();
    CHECK(in_nc == (p != P("{{1,3},{2,4}}")));
  }
}

TEST_CASE("family enumeration agrees with membership filter, in lex order") {
  for (Family f : {Family::NC, Family::NC2, Family::NCH, Family::NCB}) {
    for (int k = 0; k <= 8; ++k) {
      auto direct = enumerate_family(f, k);
      std::vector<SetPartition> filtered;
      for (const auto& p : enumerate_family(Family::ALL, k))
        if (is_member(f, p)) filtered.push_back(p);
      CHECK(direct == filtered);  // ALL enumeration is lex by construction
    }
  }
}

TEST_CASE("join") {
  CHECK(P("{{1,2},{3,4}}").join(P("{{2,3},{1},{4}}")) == P("{{1,2,3,4}}"));
  CHECK(P("{{1,3},{2},{4}}").join(P("{{2,4},{1},{3}}")) == P("{{1,3},{2,4}}"));
  auto pi = P("{{1,4,5},{2,3},{6}}");
  CHECK(pi.join(SetPartition::bottom(6)) == pi);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 1 + (int)(rng() % 6);
    auto all = enumerate_family(Family::ALL, k);
    auto a = all[rng() % all.size()], b = all[rng() % all.size()];
    CHECK(a.join(b) == join_oracle(a, b));
  }
}

TEST_CASE("meet") {
  auto pi = P("{{1,2,3},{4}}");
  CHECK(pi.meet(P("{{1,2},{3,4}}")) == P("{{1,2},{3},{4}}"));
  CHECK(pi.meet(SetPartition::top(4)) == pi);
  CHECK(pi.meet(pi) == pi);
}

TEST_CASE("is_leq") {
  CHECK(SetPartition::bottom(5).leq(P("{{1,3,5},{2,4}}")));
  CHECK(P("{{1,2},{3}}").leq(P("{{1,2,3}}")));
  CHECK_FALSE(P("{{1,3},{2}}").leq(P("{{1,2},{3}}")));
  CHECK_THROWS(P("{{1,2}}").leq(P("{{1,2,3}}")));
}

TEST_CASE("lattice laws on P(k), k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    auto all = enumerate_family(Family::ALL, k);
    for (const auto& a : all)
      for (const auto& b : all) {
        CHECK(a.join(b) == b.join(a));
        CHECK(a.meet(b) == b.meet(a));
        CHECK(a.join(a.meet(b)) == a);
        CHECK(a.meet(a.join(b)) == a);
        CHECK(a.leq(b) == (a.join(b) == b));
      }
    // associativity on a random third element to keep the loop cubic-free
    std::mt19937_64 rng(k);
    for (int t = 0; t < 50; ++t) {
      auto a = all[rng() % all.size()], b = all[rng() % all.size()], c = all[rng() % all.size()];
      CHECK(a.join(b).join(c) == a.join(b.join(c)));
      CHECK(a.meet(b).meet(c) == a.meet(b.meet(c)));
    }
  }
}

TEST_CASE("kernel") {
  CHECK(SetPartition::kernel({5, 5, 2}) == P("{{1,2},{3}}"));
  CHECK(SetPartition::kernel({1, 2, 3}) == SetPartition::bottom(3));
  CHECK(SetPartition::kernel({7, 3, 7, 3}) == P("{{1,3},{2,4}}"));
  // invariant under relabeling
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    int k = 1 + (int)(rng() % 8);
    std::vector<long> lab(k), relab(k);
    std::vector<long> map(10);
    for (auto& v : map) v = (long)(rng() % 1000000);
    for (int i = 0; i < k; ++i) {
      lab[i] = (long)(rng() % 4);
      relab[i] = map[lab[i]];
    }
    CHECK(SetPartition::kernel(std::span<const long>(lab)) ==
          SetPartition::kernel(std::span<const long>(relab)));
  }
  // pi <= ker i iff labels constant on blocks of pi
  auto ker = SetPartition::kernel({4, 9, 4, 4});
  CHECK(P("{{1,3},{2},{4}}").leq(ker));
  CHECK_FALSE(P("{{1,2},{3},{4}}").leq(ker));
}

TEST_CASE("is_noncrossing") {
  CHECK_FALSE(P("{{1,3},{2,4}}").is_noncrossing());
  CHECK(SetPartition::top(6).is_noncrossing());
  CHECK(P("{{1,4,5},{2,3},{6}}").is_noncrossing());
  // agreement with both independent routes on all of P(k), k <= 7
  for (int k = 0; k <= 7; ++k)
    for (const auto& p : enumerate_family(Family::ALL, k)) {
      CHECK(p.is_noncrossing() == is_noncrossing_recursive(p));
      if (k <= 6) CHECK(p.is_noncrossing() == !crossing_oracle(p));
    }
}

TEST_CASE("restrict") {
  auto pi = P("{{1,8,9,10},{2,7},{3,4,5},{6}}");
  CHECK(pi.restrict_to({3, 4, 5}) == SetPartition::top(3));
  std::vector<int> full{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(pi.restrict_to(full) == pi);
  CHECK(P("{{1,2},{3,4}}").restrict_to({2, 3}) == SetPartition::bottom(2));
  CHECK_THROWS(pi.restrict_to({0, 1}));
  CHECK_THROWS(pi.restrict_to({11}));
}
