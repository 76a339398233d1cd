#include "ncfree/linalg.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>

namespace ncfree {

IntMat identity_int(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat to_rational(const IntMat& m) {
  RatMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

static RatMat rat_mul_impl(const RatMat& x, const RatMat& y, bool parallel) {
  if (x.cols != y.rows) throw std::invalid_argument("rat_mul: shape mismatch");
  RatMat c(x.rows, y.cols);
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (int i = 0; i < x.rows; ++i) {
    Rat acc, t;
    for (int j = 0; j < y.cols; ++j) {
      acc = 0;
      for (int k = 0; k < x.cols; ++k) {
        t = x.at(i, k) * y.at(k, j);
        acc += t;
      }
      c.at(i, j) = acc;
    }
  }
  return c;
}

RatMat rat_mul(const RatMat& x, const RatMat& y) { return rat_mul_impl(x, y, true); }
RatMat rat_mul_serial(const RatMat& x, const RatMat& y) { return rat_mul_impl(x, y, false); }

// ---------------------------------------------------------------------------
// fraction-free elimination

namespace {

Int exact_quotient(const Int& num, const Int& den) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0) throw std::logic_error("fraction-free elimination: inexact division");
  return q;
}

}  // namespace

RatMat invert_fraction_free(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("invert: not square");
  const int n = m.rows;
  if (n == 0) return RatMat(0, 0);
  // augmented [A | I], one-step Bareiss-Jordan
  IntMat w(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
    w.at(i, n + i) = 1;
  }
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && w.at(piv, k) == 0) ++piv;
    if (piv == n) throw SingularMatrix("singular matrix");
    if (piv != k) {
      for (int j = 0; j < 2 * n; ++j) std::swap(w.at(piv, j), w.at(k, j));
      sign = -sign;
    }
    const Int p = w.at(k, k);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const Int f = w.at(i, k);
      for (int j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        w.at(i, j) = exact_quotient(p * w.at(i, j) - f * w.at(k, j), prev);
      }
      w.at(i, k) = 0;
    }
    prev = p;
  }
  // left block is now det(A)*I up to the permutation sign
  Int det = prev * sign;
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat q(w.at(i, n + j) * sign, det);
      q.canonicalize();
      inv.at(i, j) = q;
    }
  return inv;
}

Int bareiss_determinant(IntMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant: not square");
  const int n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = k;
    while (piv < n && m.at(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = exact_quotient(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), prev);
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return m.at(n - 1, n - 1) * sign;
}

// ---------------------------------------------------------------------------
// modular kernels

namespace modular {

std::vector<std::uint32_t> primes(int count) {
  std::vector<std::uint32_t> out;
  mpz_class p = 1000000;
  while ((int)out.size() < count) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    out.push_back((std::uint32_t)p.get_ui());
  }
  return out;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // extended Euclid
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return (std::uint32_t)(t < 0 ? t + p : t);
}

// rows hold values < 2^51: one product of two 20-bit values per step,
// at most ~2^11 steps, so no reduction is needed inside the update loop
inline void row_update(std::uint64_t* __restrict__ dst, const std::uint32_t* __restrict__ piv,
                       std::uint64_t f, int w) {
  for (int j = 0; j < w; ++j) dst[j] += f * (std::uint64_t)piv[j];
}

}  // namespace

bool inverse_mod(const std::vector<std::uint32_t>& a, int n, std::uint32_t p,
                 std::vector<std::uint32_t>& out, bool parallel) {
  const int w = 2 * n;
  std::vector<std::uint64_t> m((size_t)n * w, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[(size_t)i * w + j] = a[(size_t)i * n + j] % p;
    m[(size_t)i * w + n + i] = 1;
  }
  std::vector<std::uint32_t> piv_row(w);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m[(size_t)i * w + k] % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    if (piv != k)
      for (int j = 0; j < w; ++j) std::swap(m[(size_t)piv * w + j], m[(size_t)k * w + j]);
    const std::uint64_t pk = inv_mod((std::uint32_t)(m[(size_t)k * w + k] % p), p);
    for (int j = 0; j < w; ++j) {
      std::uint64_t v = (m[(size_t)k * w + j] % p) * pk % p;
      m[(size_t)k * w + j] = v;
      piv_row[j] = (std::uint32_t)v;
    }
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      std::uint64_t f = m[(size_t)i * w + k] % p;
      if (f == 0) continue;
      f = p - f;
      row_update(&m[(size_t)i * w], piv_row.data(), f, w);
      m[(size_t)i * w + k] = 0;
    }
  }
  out.resize((size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[(size_t)i * n + j] = (std::uint32_t)(m[(size_t)i * w + n + j] % p);
  return true;
}

void matmul_mod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                std::vector<std::uint32_t>& c, int m, int n, int q, std::uint32_t p,
                bool parallel) {
  c.assign((size_t)m * q, 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < m; ++i) {
    std::vector<std::uint64_t> acc(q, 0);
    const std::uint32_t* arow = &a[(size_t)i * n];
    for (int k = 0; k < n; ++k) {
      const std::uint64_t v = arow[k];
      if (v == 0) continue;
      const std::uint32_t* brow = &b[(size_t)k * q];
      for (int j = 0; j < q; ++j) acc[j] += v * (std::uint64_t)brow[j];
    }
    for (int j = 0; j < q; ++j) c[(size_t)i * q + j] = (std::uint32_t)(acc[j] % p);
  }
}

std::optional<Rat> rational_reconstruct(const Int& r, const Int& m) {
  // Wang: find p/q with |p|, q <= sqrt(m/2), p == q*r (mod m)
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
  Int r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0) return std::nullopt;
  Int num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return std::nullopt;
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rat out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace modular

// ---------------------------------------------------------------------------
// certified modular inverse

namespace {

std::vector<std::uint32_t> reduce_int_mat(const IntMat& m, std::uint32_t p) {
  std::vector<std::uint32_t> out(m.a.size());
  for (size_t i = 0; i < m.a.size(); ++i) {
    long v = mpz_fdiv_ui(m.a[i].get_mpz_t(), p);
    out[i] = (std::uint32_t)v;
  }
  return out;
}

}  // namespace

bool verify_inverse_certified(const IntMat& m, const RatMat& w, bool parallel) {
  if (m.rows != m.cols || w.rows != m.rows || w.cols != m.cols) return false;
  const int n = m.rows;
  if (n == 0) return true;
  // scale each row of w to integers: u_i = d_i * w_i
  IntMat u(n, n);
  std::vector<Int> scale(n);
  for (int i = 0; i < n; ++i) {
    Int d = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), w.at(i, j).get_den().get_mpz_t());
    scale[i] = d;
    for (int j = 0; j < n; ++j) u.at(i, j) = Int(w.at(i, j).get_num() * (d / w.at(i, j).get_den()));
  }
  // bound on |(U*M)_{ij}|: n * max|U| * max|M|
  size_t bits = 1;
  for (const auto& v : u.a) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  size_t mbits = 1;
  for (const auto& v : m.a) mbits = std::max(mbits, mpz_sizeinbase(v.get_mpz_t(), 2));
  for (const auto& v : scale) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  const size_t bound_bits = bits + mbits + 64 - __builtin_clzll((std::uint64_t)n) + 2;
  const int nprimes = (int)(bound_bits / 19 + 2);
  auto ps = modular::primes(nprimes);
  // U*M == diag(scale) must hold modulo every prime; the bound makes it exact
  for (std::uint32_t p : ps) {
    auto up = reduce_int_mat(u, p);
    auto mp = reduce_int_mat(m, p);
    std::vector<std::uint32_t> prod;
    modular::matmul_mod(up, mp, prod, n, n, n, p, parallel);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t di = mpz_fdiv_ui(scale[i].get_mpz_t(), p);
      for (int j = 0; j < n; ++j) {
        std::uint64_t expect = (i == j) ? di : 0;
        if (prod[(size_t)i * n + j] != expect) return false;
      }
    }
  }
  return true;
}

RatMat invert_exact(const IntMat& m, bool parallel) {
  if (m.rows != m.cols) throw std::invalid_argument("invert: not square");
  const int n = m.rows;
  if (n == 0) return RatMat(0, 0);
  if (n <= 96) return invert_fraction_free(m);

  auto ps = modular::primes(512);
  size_t next_prime = 0;
  std::vector<std::uint32_t> used_primes;
  std::vector<std::vector<std::uint32_t>> residues;  // per prime, n*n
  int consecutive_failures = 0;

  auto add_primes = [&](int count) {
    std::vector<std::uint32_t> batch;
    while ((int)batch.size() < count) {
      if (next_prime >= ps.size()) throw SingularMatrix("prime pool exhausted");
      batch.push_back(ps[next_prime++]);
    }
    std::vector<std::vector<std::uint32_t>> res(batch.size());
    std::vector<int> ok(batch.size(), 0);
    // parallelise across primes; the per-prime elimination stays serial
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (size_t bi = 0; bi < batch.size(); ++bi) {
      auto ap = reduce_int_mat(m, batch[bi]);
      ok[bi] = modular::inverse_mod(ap, n, batch[bi], res[bi], false) ? 1 : 0;
    }
    for (size_t bi = 0; bi < batch.size(); ++bi) {
      if (!ok[bi]) {
        if (++consecutive_failures >= 12) throw SingularMatrix("singular matrix");
        continue;
      }
      consecutive_failures = 0;
      used_primes.push_back(batch[bi]);
      residues.push_back(std::move(res[bi]));
    }
  };

  add_primes(n > 800 ? 8 : 4);
  while (true) {
    // CRT combine + rational reconstruction of every entry
    const size_t np = used_primes.size();
    std::vector<Int> partial(np);  // partial[t] = product of the first t primes
    std::vector<std::uint32_t> partial_inv(np);
    Int M = 1;
    for (size_t t = 0; t < np; ++t) {
      partial[t] = M;
      partial_inv[t] = modular::inv_mod(
          (std::uint32_t)mpz_fdiv_ui(M.get_mpz_t(), used_primes[t]), used_primes[t]);
      M *= used_primes[t];
    }
    RatMat w(n, n);
    std::vector<char> row_ok(n, 1);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Int r = 0;
        for (size_t t = 0; t < np; ++t) {
          const std::uint32_t p = used_primes[t];
          const std::uint64_t rt = residues[t][(size_t)i * n + j];
          const std::uint64_t rmod = mpz_fdiv_ui(r.get_mpz_t(), p);
          const std::uint64_t diff = (rt + p - rmod) % p;
          r += partial[t] * Int((unsigned long)(diff * partial_inv[t] % p));
        }
        auto q = modular::rational_reconstruct(r, M);
        if (!q) {
          row_ok[i] = 0;
          break;
        }
        w.at(i, j) = *q;
      }
    }
    const bool all_ok = std::all_of(row_ok.begin(), row_ok.end(), [](char c) { return c != 0; });
    if (all_ok && verify_inverse_certified(m, w, parallel)) return w;
    add_primes(std::max<int>(4, (int)used_primes.size()));
  }
}

// ---------------------------------------------------------------------------
// rational elimination (consistency systems, rank)

LinearSolveResult solve_consistent(const RatMat& A, const std::vector<Rat>& b) {
  if ((int)b.size() != A.rows) throw std::invalid_argument("solve: shape mismatch");
  const int rows = A.rows, cols = A.cols;
  RatMat w(rows, cols + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) w.at(i, j) = A.at(i, j);
    w.at(i, cols) = b[i];
  }
  std::vector<int> row_origin(rows);
  for (int i = 0; i < rows; ++i) row_origin[i] = i;
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (w.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j <= cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
      std::swap(row_origin[piv], row_origin[r]);
    }
    const Rat inv = 1 / w.at(r, c);
    for (int j = c; j <= cols; ++j) w.at(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || w.at(i, c) == 0) continue;
      const Rat f = w.at(i, c);
      for (int j = c; j <= cols; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }
  LinearSolveResult res;
  for (int i = r; i < rows; ++i)
    if (w.at(i, cols) != 0) {
      res.consistent = false;
      res.witness_row = row_origin[i];
      return res;
    }
  res.consistent = true;
  res.unique = (r == cols);
  res.solution.assign(cols, Rat(0));
  for (int i = 0; i < r; ++i) res.solution[pivot_col_of_row[i]] = w.at(i, cols);
  return res;
}

int rank_exact(const RatMat& A) {
  RatMat w = A;
  int r = 0;
  for (int c = 0; c < w.cols && r < w.rows; ++c) {
    int piv = -1;
    for (int i = r; i < w.rows; ++i)
      if (w.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
    const Rat inv = 1 / w.at(r, c);
    for (int j = c; j < w.cols; ++j) w.at(r, j) *= inv;
    for (int i = r + 1; i < w.rows; ++i) {
      if (w.at(i, c) == 0) continue;
      const Rat f = w.at(i, c);
      for (int j = c; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace ncfree
