#pragma once

// Operator-valued probability over the matrix base algebra B = M_d(Q):
// truncated joint cumulant/moment data for a finite generator set, the
// nested functionals rho^(pi), and the moment<->cumulant transforms.
//
// Multilinear data is stored on basis insertion words (matrix units of B,
// row-major indices 0..d^2-1) and extended B-multilinearly; the left slot
// b_0 is always applied externally.  Queries beyond the truncation order K
// throw TruncationError, never return silent zeros.

#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"

#include <functional>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

namespace ncfree {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class BElem {
 public:
  BElem() = default;
  explicit BElem(int d) : d_(d), e_((size_t)d * d) {}
  static BElem zero(int d) { return BElem(d); }
  static BElem identity(int d);
  static BElem unit(int d, int row, int col);  // matrix unit E_{row,col}
  static BElem scalar(int d, const Rat& v);    // v * identity

  int dim() const { return d_; }
  Rat& at(int r, int c) { return e_[(size_t)r * d_ + c]; }
  const Rat& at(int r, int c) const { return e_[(size_t)r * d_ + c]; }
  bool is_zero() const;
  Rat normalized_trace() const;  // tr/d

  BElem& operator+=(const BElem& o);
  BElem& operator-=(const BElem& o);
  friend BElem operator+(BElem a, const BElem& b) { return a += b; }
  friend BElem operator-(BElem a, const BElem& b) { return a -= b; }
  friend BElem operator*(const BElem& a, const BElem& b);
  friend BElem operator*(const Rat& c, BElem a);
  bool operator==(const BElem&) const = default;

 private:
  int d_ = 0;
  std::vector<Rat> e_;
};

// x_r with a right B-insertion
struct GenLetter {
  int r = 1;
  BElem b;
};

// packed basis word: letter = (r-1)*d^2 + m
using Word = std::vector<std::uint32_t>;
struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (auto v : w) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

class DistributionSpec {
 public:
  DistributionSpec() = default;
  DistributionSpec(int d, int s, int K, std::vector<int> involution = {});

  int dim() const { return d_; }
  int generators() const { return s_; }
  int order() const { return K_; }
  const std::vector<int>& involution() const { return involution_; }

  std::uint32_t pack(int r, int m) const;
  void set_kappa(const std::vector<int>& r_word, const std::vector<int>& m_word, BElem v);
  void set_kappa_word(const Word& w, BElem v);
  BElem kappa_basis(const Word& w) const;                  // zero default
  BElem kappa(std::span<const GenLetter> args) const;      // multilinear
  const std::unordered_map<Word, BElem, WordHash>& entries() const { return table_; }

  bool operator==(const DistributionSpec& o) const;

 private:
  int d_ = 1, s_ = 1, K_ = 0;
  std::vector<int> involution_;
  std::unordered_map<Word, BElem, WordHash> table_;  // nonzero values only
};

// same storage, holding E[x_{r1} b1 ... x_{rk} bk]
class MomentSpec {
 public:
  MomentSpec() = default;
  MomentSpec(int d, int s, int K, std::vector<int> involution = {});

  int dim() const { return d_; }
  int generators() const { return s_; }
  int order() const { return K_; }
  const std::vector<int>& involution() const { return involution_; }

  std::uint32_t pack(int r, int m) const;
  void set_moment(const std::vector<int>& r_word, const std::vector<int>& m_word, BElem v);
  void set_moment_word(const Word& w, BElem v);
  BElem moment_basis(const Word& w) const;
  BElem moment(std::span<const GenLetter> args) const;
  const std::unordered_map<Word, BElem, WordHash>& entries() const { return table_; }

  bool operator==(const MomentSpec& o) const;

 private:
  int d_ = 1, s_ = 1, K_ = 0;
  std::vector<int> involution_;
  std::unordered_map<Word, BElem, WordHash> table_;
};

// lazy moments from a cumulant spec, memoized on basis words
class MomentOracle {
 public:
  explicit MomentOracle(const DistributionSpec& spec) : spec_(&spec) {}
  const BElem& moment_basis(const Word& w);
  BElem moment(std::span<const GenLetter> args);
  const DistributionSpec& spec() const { return *spec_; }

 private:
  const DistributionSpec* spec_;
  std::unordered_map<Word, BElem, WordHash> memo_;
};

enum class IntervalChoice { First, Last };

// family of multilinear functionals rho^(k), evaluated on tagged arguments
using BFunctional = std::function<BElem(std::span<const GenLetter>)>;

// recursive interval removal; pi must be noncrossing and of size args.size()
BElem nested_eval(const BFunctional& rho, const SetPartition& pi,
                  std::span<const GenLetter> args, int d,
                  IntervalChoice choice = IntervalChoice::First);

MomentSpec moments_from_cumulants(const DistributionSpec& spec);
DistributionSpec cumulants_from_moments(const MomentSpec& spec);

// true iff no mixed cumulant (word meeting two classes) is nonzero;
// klass[r-1] is the grouping class of generator r
bool freeness_check(const DistributionSpec& spec, const std::vector<int>& klass);

// free product: copies of `spec` on disjoint generator blocks
// (generators of copy c become (c-1)*s + r), cumulants supported on
// single-copy words
DistributionSpec free_product_copies(const DistributionSpec& spec, int copies);

}  // namespace ncfree
