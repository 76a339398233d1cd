#pragma once

// Families X_1,...,X_s in M_n(A) described by the joint distribution of
// their entries: R-cyclicity and uniform R-cyclicity, determining-series
// data, the conditional expectations onto M_n(B), D (diagonal) and B, and
// matrix-level cumulants.
//
// Entry generators are indexed by (i, j, r) with 0-based matrix indices and
// 1-based family index; the packed generator id is
//   gen(i, j, r) = (r-1)*n^2 + i*n + j + 1.
// The freeness deciders quantify over the spanning sets documented at each
// function; insertions are complete for d = 1 (scalar base algebra), which
// is what the verification suites use.

#include "ncfree/cumulants.hpp"
#include "ncfree/partition.hpp"

#include <optional>

namespace ncfree {

// element of M_n(B)
class BMat {
 public:
  BMat() = default;
  BMat(int n, int d) : n_(n), d_(d), e_((size_t)n * n, BElem(d)) {}
  static BMat identity(int n, int d);
  static BMat unit(int n, int d, int i, int j, const BElem& b);  // b * V_{ij}

  int size() const { return n_; }
  int dim() const { return d_; }
  BElem& at(int i, int j) { return e_[(size_t)i * n_ + j]; }
  const BElem& at(int i, int j) const { return e_[(size_t)i * n_ + j]; }
  bool is_zero() const;
  bool is_diagonal() const;

  BMat& operator+=(const BMat& o);
  BMat& operator-=(const BMat& o);
  friend BMat operator+(BMat a, const BMat& b) { return a += b; }
  friend BMat operator-(BMat a, const BMat& b) { return a -= b; }
  friend BMat operator*(const BMat& a, const BMat& b);
  bool operator==(const BMat&) const = default;

 private:
  int n_ = 0, d_ = 0;
  std::vector<BElem> e_;
};

struct MatrixFamilySpec {
  int n = 1;            // matrix size
  int s = 1;            // family size
  std::vector<int> involution;  // family-level, X_r^* = X_{sigma(r)}
  DistributionSpec entry_dist;  // generators gen(i,j,r), truncation K

  MatrixFamilySpec() = default;
  MatrixFamilySpec(int n, int s, int d, int K, std::vector<int> family_involution = {});

  int order() const { return entry_dist.order(); }
  int dim() const { return entry_dist.dim(); }
  int gen(int i, int j, int r) const;        // packed generator id
  std::tuple<int, int, int> ungen(int g) const;  // (i, j, r)
};

// entry cumulants equal the base cumulants on cyclic index patterns and
// vanish elsewhere; the (1,1) entry then has the base distribution
MatrixFamilySpec build_uniform_rcyclic(const DistributionSpec& base, int n);

// general determining data: kappa(index word, r word, m word) for cyclic
// patterns; everything off-cyclic is zero
using CyclicCumulantFn =
    std::function<BElem(std::span<const int> idx, std::span<const int> r_word,
                        std::span<const int> m_word)>;
MatrixFamilySpec build_rcyclic(const CyclicCumulantFn& fn, int n, int s, int d, int K,
                               std::vector<int> family_involution = {});

bool is_rcyclic(const MatrixFamilySpec& fam);
bool is_uniformly_rcyclic(const MatrixFamilySpec& fam);

// a word in M_n(A): family letters X_r and constant matrices over B
struct MatrixWordLetter {
  int r = 0;   // family index when > 0
  BMat coeff;  // constant letter when r == 0
  static MatrixWordLetter family(int r) { return {r, BMat()}; }
  static MatrixWordLetter constant(BMat c) { return {0, std::move(c)}; }
};
using MatrixWord = std::vector<MatrixWordLetter>;

// family letter with a right coefficient, X_r * C (arguments of the
// matrix-level cumulants)
struct MatLetter {
  int r = 1;
  BMat c;
};

// evaluation context: owns the lazy entry-moment cache
class FamilyModel {
 public:
  explicit FamilyModel(MatrixFamilySpec spec)
      : spec_(std::move(spec)), oracle_(spec_.entry_dist) {}

  const MatrixFamilySpec& spec() const { return spec_; }
  MomentOracle& oracle() { return oracle_; }

  BMat expect_mnb(const MatrixWord& w);
  BMat expect_d(const MatrixWord& w);
  BElem expect_b(const MatrixWord& w);

  // kappa_{E_D}/kappa_{E_B} via Mobius inversion over NC(k)
  BMat matrix_cumulant_d(std::span<const MatLetter> args);
  BElem matrix_cumulant_b(std::span<const MatLetter> args);

  // nested moment functionals at the matrix level
  BMat expect_d_nested(const SetPartition& pi, std::span<const MatLetter> args);
  BElem expect_b_nested(const SetPartition& pi, std::span<const MatLetter> args);

  // alternating centered-word freeness checks, decided up to order K.
  // Words run over centered family words (length summing to <= K)
  // alternating with centered M_n(B) basis letters; all matrix entries of
  // the expectation must vanish (this covers every boundary variant).
  bool freeness_from_mnb_over_d();
  bool freeness_from_mnb_over_b();
  // when the check fails, the offending word is kept for inspection
  const std::optional<MatrixWord>& last_witness() const { return witness_; }

 private:
  MatrixFamilySpec spec_;
  MomentOracle oracle_;
  std::optional<MatrixWord> witness_;
  bool alternating_words_vanish(bool over_b);
};

// entry distribution of the pairwise products (X_{r1} X_{r2}); r = 0 stands
// for the identity matrix.  The usable truncation halves (or stays at K when
// every pair contains an identity factor).
MatrixFamilySpec product_family(const MatrixFamilySpec& fam,
                                const std::vector<std::pair<int, int>>& pairs);

// d = 1 only: append the scalar linear combination sum_r coeffs[r] X_r
MatrixFamilySpec add_linear_combination(const MatrixFamilySpec& fam,
                                        const std::vector<Rat>& coeffs);
// append a constant diagonal matrix with the given B-valued diagonal
MatrixFamilySpec add_constant_diagonal(const MatrixFamilySpec& fam,
                                       const std::vector<BElem>& diag);

}  // namespace ncfree
