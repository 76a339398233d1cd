#pragma once

// Exact Gram and Weingarten matrices for the four free quantum groups, the
// Haar-state integral of products of coordinate generators, and the
// large-n comparison against the Mobius function.
//
// Matrices are indexed by the canonical (lexicographic RGS) enumeration of
// the category D(k).  Weingarten matrices are memoized per (group, k, n);
// when the environment variable NC_CACHE_DIR is set they are also cached on
// disk (and re-certified on load).

#include "ncfree/linalg.hpp"
#include "ncfree/partition.hpp"

#include <memory>
#include <span>
#include <vector>

namespace ncfree {

enum class QuantumGroup { OPLUS, SPLUS, HPLUS, BPLUS };

Family category(QuantumGroup g);
std::string group_name(QuantumGroup g);            // "o+", "s+", "h+", "b+"
QuantumGroup group_from_string(std::string_view s);

struct SingularGram : SingularMatrix {
  using SingularMatrix::SingularMatrix;
};

struct GramMatrix {
  QuantumGroup group;
  int k = 0;
  long n = 0;
  std::vector<SetPartition> order;  // canonical enumeration of D(k)
  IntMat entries;                   // entries[pi][sigma] = n^{|pi v sigma|}
};

struct WeingartenMatrix {
  QuantumGroup group;
  int k = 0;
  long n = 0;
  std::vector<SetPartition> order;
  RatMat entries;  // exact inverse of the Gram matrix
};

GramMatrix gram(QuantumGroup g, int k, long n, bool parallel = true);

// exact inverse; throws SingularGram when the Gram matrix is singular
// (possible for n < 4; the asymptotic regime assumes n >= 4)
std::shared_ptr<const WeingartenMatrix> weingarten(QuantumGroup g, int k, long n);

// Haar-state integral of u_{i1 j1} ... u_{ik jk}; indices are 1-based and
// must lie in 1..n.  Empty categories (odd k for o+) give 0.
Rat haar_integral(QuantumGroup g, long n, std::span<const int> i, std::span<const int> j);
Rat haar_integral(QuantumGroup g, long n, std::initializer_list<int> i,
                  std::initializer_list<int> j);

// rows (pi, sigma), value per n: exact n^{|pi|} W(pi,sigma) - mu(pi,sigma)
struct AsymptoticTable {
  QuantumGroup group;
  int k = 0;
  std::vector<long> n_list;
  std::vector<SetPartition> order;
  std::vector<std::vector<Rat>> error;  // [pair index][n index], pair = pi*|D|+sigma
};
AsymptoticTable asymptotic_table(QuantumGroup g, int k, const std::vector<long>& n_list);

}  // namespace ncfree
