#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncfree/linalg.hpp"

#include <random>

using namespace ncfree;

namespace {

IntMat random_int_mat(int n, std::mt19937_64& rng, int span = 9) {
  IntMat m(n, n);
  for (auto& v : m.a) v = (long)(rng() % (2 * span + 1)) - span;
  return m;
}

bool is_identity(const RatMat& m) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != Rat(i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("fraction-free inverse, small closed forms") {
  // [[n^2, n], [n, n]] has inverse [[1/(n(n-1)), -1/(n(n-1))], [-1/(n(n-1)), 1/(n-1)]]
  for (long n : {4, 5, 9}) {
    IntMat g(2, 2);
    g.at(0, 0) = n * n;
    g.at(0, 1) = g.at(1, 0) = g.at(1, 1) = n;
    auto w = invert_fraction_free(g);
    Rat d(1, n * (n - 1));
    d.canonicalize();
    CHECK(w.at(0, 0) == d);
    CHECK(w.at(0, 1) == -d);
    CHECK(w.at(1, 0) == -d);
    CHECK(w.at(1, 1) == Rat(1, n - 1));
    CHECK(is_identity(rat_mul(w, to_rational(g))));
  }
  IntMat sing(2, 2);
  sing.at(0, 0) = sing.at(0, 1) = sing.at(1, 0) = sing.at(1, 1) = 1;
  CHECK_THROWS_AS(invert_fraction_free(sing), SingularMatrix);
  CHECK(bareiss_determinant(sing) == 0);
}

TEST_CASE("bareiss determinant vs cofactor expansion") {
  std::mt19937_64 rng(5);
  auto cofactor_det = [](auto&& self, const IntMat& m) -> Int {
    if (m.rows == 1) return m.a[0];
    Int acc = 0;
    for (int c = 0; c < m.cols; ++c) {
      IntMat sub(m.rows - 1, m.cols - 1);
      for (int i = 1; i < m.rows; ++i)
        for (int j = 0, jj = 0; j < m.cols; ++j)
          if (j != c) sub.at(i - 1, jj++) = m.at(i, j);
      Int t = m.at(0, c) * self(self, sub);
      acc += (c % 2 == 0) ? t : -t;
    }
    return acc;
  };
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + (int)(rng() % 5);
    auto m = random_int_mat(n, rng);
    CHECK(bareiss_determinant(m) == cofactor_det(cofactor_det, m));
  }
}

TEST_CASE("modular inverse matches exact inverse") {
  std::mt19937_64 rng(17);
  auto ps = modular::primes(3);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + (int)(rng() % 20);
    auto m = random_int_mat(n, rng);
    if (bareiss_determinant(m) == 0) continue;
    auto w = invert_fraction_free(m);
    for (auto p : ps) {
      std::vector<std::uint32_t> a(m.a.size());
      for (size_t i = 0; i < m.a.size(); ++i) a[i] = (std::uint32_t)mpz_fdiv_ui(m.a[i].get_mpz_t(), p);
      std::vector<std::uint32_t> inv_serial, inv_par;
      bool ok_serial = modular::inverse_mod(a, n, p, inv_serial, false);
      bool ok_par = modular::inverse_mod(a, n, p, inv_par, true);
      REQUIRE(ok_serial);
      REQUIRE(ok_par);
      CHECK(inv_serial == inv_par);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Rat& q = w.at(i, j);
          std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
          std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
          CHECK((std::uint64_t)inv_serial[(size_t)i * n + j] * den % p == num % p);
        }
    }
  }
}

TEST_CASE("matmul_mod serial == parallel and correct") {
  std::mt19937_64 rng(29);
  auto ps = modular::primes(2);
  for (auto p : ps) {
    int m = 7, n = 11, q = 5;
    std::vector<std::uint32_t> a((size_t)m * n), b((size_t)n * q);
    for (auto& v : a) v = (std::uint32_t)(rng() % p);
    for (auto& v : b) v = (std::uint32_t)(rng() % p);
    std::vector<std::uint32_t> c1, c2;
    modular::matmul_mod(a, b, c1, m, n, q, p, false);
    modular::matmul_mod(a, b, c2, m, n, q, p, true);
    CHECK(c1 == c2);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < q; ++j) {
        std::uint64_t acc = 0;
        for (int k = 0; k < n; ++k) acc = (acc + (std::uint64_t)a[i * n + k] * b[k * q + j]) % p;
        CHECK(acc == c1[i * q + j]);
      }
  }
}

TEST_CASE("rational reconstruction roundtrip") {
  std::mt19937_64 rng(31);
  Int M = 1;
  for (auto p : modular::primes(6)) M *= p;
  for (int t = 0; t < 200; ++t) {
    Int num = Int((long)(rng() % 2000001)) - 1000000;
    Int den = Int((long)(rng() % 1000000)) + 1;
    Rat q(num, den);
    q.canonicalize();
    // residue of q mod M
    Int dinv;
    REQUIRE(mpz_invert(dinv.get_mpz_t(), Int(q.get_den()).get_mpz_t(), M.get_mpz_t()) != 0);
    Int r = (q.get_num() % M) * dinv % M;
    if (r < 0) r += M;
    auto rec = modular::rational_reconstruct(r, M);
    REQUIRE(rec.has_value());
    CHECK(*rec == q);
  }
}

TEST_CASE("certified modular inverse equals fraction-free inverse") {
  std::mt19937_64 rng(37);
  for (int n : {24, 120}) {  // below and above the modular-path threshold
    IntMat m = random_int_mat(n, rng, 20);
    for (int i = 0; i < n; ++i) m.at(i, i) += 100;  // keep it nonsingular
    auto w_ff = invert_fraction_free(m);
    auto w_mod = invert_exact(m);
    CHECK(w_ff == w_mod);
    CHECK(verify_inverse_certified(m, w_mod));
    auto broken = w_mod;
    broken.at(0, 0) += 1;
    CHECK_FALSE(verify_inverse_certified(m, broken));
  }
  IntMat sing(130, 130);  // rank 1, exercises the modular singular path
  for (int i = 0; i < 130; ++i)
    for (int j = 0; j < 130; ++j) sing.at(i, j) = (i + 1);
  CHECK_THROWS_AS(invert_exact(sing), SingularMatrix);
}

TEST_CASE("solve_consistent") {
  // unique solution
  RatMat a(3, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  a.at(1, 0) = 1;
  a.at(1, 1) = -1;
  a.at(2, 0) = 2;
  a.at(2, 1) = 0;
  auto r = solve_consistent(a, {Rat(3), Rat(1), Rat(4)});
  REQUIRE(r.consistent);
  CHECK(r.unique);
  CHECK(r.solution == std::vector<Rat>{Rat(2), Rat(1)});
  // inconsistent
  auto bad = solve_consistent(a, {Rat(3), Rat(1), Rat(5)});
  CHECK_FALSE(bad.consistent);
  CHECK(bad.witness_row >= 0);
  // underdetermined but consistent
  RatMat b(1, 2);
  b.at(0, 0) = 1;
  b.at(0, 1) = 1;
  auto r2 = solve_consistent(b, {Rat(7)});
  CHECK(r2.consistent);
  CHECK_FALSE(r2.unique);
  Rat lhs = r2.solution[0] + r2.solution[1];
  CHECK(lhs == Rat(7));
}

TEST_CASE("rank") {
  RatMat m(3, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(0, 2) = 3;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  m.at(1, 2) = 6;
  m.at(2, 0) = 0;
  m.at(2, 1) = 1;
  m.at(2, 2) = 1;
  CHECK(rank_exact(m) == 2);
}
