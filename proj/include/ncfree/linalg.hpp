#pragma once

// Exact dense linear algebra over Z and Q.
//
// Two routes to an exact inverse:
//   - invert_fraction_free: one-step Bareiss/Jordan elimination over Z,
//     divisions checked exact.  Serial reference, used for small matrices
//     and as the oracle for the fast route.
//   - invert_exact: multi-prime modular inversion + CRT + rational
//     reconstruction.  The result is certified by an exact scaled-integer
//     product check (residues of W*G - I compared against a computed entry
//     bound), so the output is proven, not probabilistic.
//
// The modular kernels have serial and OpenMP variants; bench_kernels
// compares them.

#include "ncfree/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ncfree {

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  T& at(int r, int c) { return a[(size_t)r * cols + c]; }
  const T& at(int r, int c) const { return a[(size_t)r * cols + c]; }
  bool operator==(const Mat&) const = default;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

IntMat identity_int(int n);
RatMat to_rational(const IntMat& m);
RatMat rat_mul(const RatMat& x, const RatMat& y);
RatMat rat_mul_serial(const RatMat& x, const RatMat& y);

// fraction-free Gauss-Jordan; throws SingularMatrix
RatMat invert_fraction_free(const IntMat& m);
Int bareiss_determinant(IntMat m);

// modular + CRT + reconstruction, certified exact before returning
RatMat invert_exact(const IntMat& m, bool parallel = true);

// exact proof that w == m^{-1} (scaled-integer modular product with bound)
bool verify_inverse_certified(const IntMat& m, const RatMat& w, bool parallel = true);

// Gaussian elimination over Q.  For solve_consistent the system is A x = b;
// when inconsistent, witness_row is a row index of A whose equation fails
// for every x.
struct LinearSolveResult {
  bool consistent = false;
  bool unique = false;
  std::vector<Rat> solution;  // one solution (free variables set to 0)
  int witness_row = -1;
};
LinearSolveResult solve_consistent(const RatMat& A, const std::vector<Rat>& b);
int rank_exact(const RatMat& A);

namespace modular {

// primes just above 1e6 (products of ~20-bit values accumulate in uint64
// across a full elimination without intermediate reduction)
std::vector<std::uint32_t> primes(int count);

// inverse of an n x n matrix mod p; entries of `a` must be < p.
// Returns false if singular mod p.
bool inverse_mod(const std::vector<std::uint32_t>& a, int n, std::uint32_t p,
                 std::vector<std::uint32_t>& out, bool parallel);

// c = a (m x n) * b (n x q) mod p
void matmul_mod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                std::vector<std::uint32_t>& c, int m, int n, int q, std::uint32_t p,
                bool parallel);

// Wang rational reconstruction of r mod m; empty if none in range
std::optional<Rat> rational_reconstruct(const Int& r, const Int& m);

}  // namespace modular

}  // namespace ncfree
