#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncfree/infdiv.hpp"
#include "ncfree/suites.hpp"

using namespace ncfree;

namespace {

Rat kappa_at(const DistributionSpec& s, int k) { return s.kappa_basis(Word(k, 0)).at(0, 0); }

}  // namespace

TEST_CASE("convolution_power scales cumulants") {
  auto semi = semicircular_spec(4);
  auto quarter = convolution_power(semi, Rat(1, 4));
  CHECK(kappa_at(quarter, 2) == Rat(1, 4));
  CHECK(kappa_at(quarter, 1) == 0);
  auto fp = free_poisson_spec(4);
  auto fifth = convolution_power(fp, Rat(1, 5));
  for (int k = 1; k <= 4; ++k) CHECK(kappa_at(fifth, k) == Rat(1, 5));
  CHECK(convolution_power(fp, 1) == fp);
  // composition
  auto ab = convolution_power(convolution_power(fp, Rat(2, 3)), Rat(3, 4));
  CHECK(ab == convolution_power(fp, Rat(1, 2)));
  CHECK_THROWS(convolution_power(fp, Rat(-1)));
}

TEST_CASE("integer convolution powers match sums of free copies") {
  for (int m : {2, 3}) {
    auto base = free_poisson_spec(4);
    auto scaled = convolution_power(base, m);  // kappa -> m kappa
    MomentOracle scaled_moments(scaled);
    auto copies = free_product_copies(base, m);
    MomentOracle copy_moments(copies);
    for (int k = 1; k <= 4; ++k) {
      // moment of (y_1 + ... + y_m)^k via multilinear expansion
      Rat acc = 0;
      std::vector<int> assign(k, 0);
      while (true) {
        std::vector<GenLetter> args(k);
        for (int t = 0; t < k; ++t) args[t] = GenLetter{assign[t] + 1, BElem::identity(1)};
        acc += copy_moments.moment(args).at(0, 0);
        int z = k - 1;
        while (z >= 0 && ++assign[z] == m) assign[z--] = 0;
        if (z < 0) break;
      }
      std::vector<GenLetter> one(k, GenLetter{1, BElem::identity(1)});
      CHECK(acc == scaled_moments.moment(one).at(0, 0));
    }
  }
}

TEST_CASE("divisibility equivalence report") {
  {
    auto rep = verify_divisibility_equivalence(semicircular_spec(4), 2);
    CHECK(rep.all_pass);
    CHECK(rep.header.find("positivity") != std::string::npos);
    // decomposed copies carry kappa_2 = 1/2
    auto half = convolution_power(semicircular_spec(4), Rat(1, 2));
    CHECK(kappa_at(half, 2) == Rat(1, 2));
  }
  {
    auto rep = verify_divisibility_equivalence(free_poisson_spec(3), 3);
    CHECK(rep.all_pass);
    for (const auto& item : rep.items) CHECK(item.pass);
  }
  {
    DistributionSpec zero(1, 1, 3);
    CHECK(verify_divisibility_equivalence(zero, 4).all_pass);
  }
  {
    // d = 2 base with compliant insertions
    DistributionSpec base(2, 1, 3);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        BElem v(2);
        v.at(0, b) = Rat(1 + a);
        v.at(1, b) = Rat(1, 2 + a);
        base.set_kappa({1, 1}, {0, a * 2 + b}, v);
      }
    auto rep = verify_divisibility_equivalence(base, 2);
    CHECK(rep.all_pass);
  }
}
