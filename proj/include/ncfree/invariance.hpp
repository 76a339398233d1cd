#pragma once

// Quantum invariance under conjugation: the T_pi span test, the Weingarten
// moment formula evaluated at finite n, the finite-n cumulant estimates,
// and the determining-series criterion for H+ invariance of R-cyclic
// families.
//
// phi is the normalized trace of the B-valued expectation; moment arrays
// store phi-moments of entry words either per index tuple or compressed by
// the kernel of the tuple (valid when the distribution depends only on the
// coincidence pattern, which holds for every model built here).

#include "ncfree/models.hpp"
#include "ncfree/weingarten.hpp"

#include <map>

namespace ncfree {

struct MomentArray {
  int s = 1;
  long n = 1;
  int k_max = 0;
  bool compressed = true;
  // compressed: (r-word, kernel pattern on 2k points) -> phi-moment
  std::map<std::pair<std::vector<int>, SetPartition>, Rat> by_pattern;
  // expanded: (r-word, index tuple of length 2k, 1-based) -> phi-moment
  std::map<std::pair<std::vector<int>, std::vector<int>>, Rat> by_tuple;

  Rat lookup_tuple(const std::vector<int>& r_word, const std::vector<int>& tuple) const;
  Rat lookup_pattern(const std::vector<int>& r_word, const SetPartition& pattern) const;
  MomentArray expanded() const;  // materialize by_tuple from by_pattern
};

// phi-moments of the entries of a family, compressed by kernel pattern
MomentArray family_moment_array(FamilyModel& model, int k_max);

struct InvarianceBlock {
  int k = 0;
  std::vector<int> r_word;
  bool consistent = false;
  bool dependent = false;  // T_pi linearly dependent; any solution reported
  std::map<SetPartition, Rat> coefficients;  // pi in D(2k) -> c_{pi,r}
  std::vector<int> witness;                  // a tuple whose equation fails
};

struct InvarianceCertificate {
  QuantumGroup group = QuantumGroup::SPLUS;
  long n = 1;
  int k_max = 0;
  bool consistent = false;
  std::vector<InvarianceBlock> blocks;
};

// coordinate at tuple i (row-major, first index most significant) is
// 1 if pi <= ker i, else 0; vector length n^m for pi on m points
std::vector<Int> tvector(const SetPartition& pi, long n);

// solves phi(x_i...) = sum_{pi in D(2k), pi <= ker i} c_{pi,r} exactly for
// every (k <= k_max, r-word); rows are kernel patterns with at most n blocks
InvarianceCertificate invariance_check(const MomentArray& moments, QuantumGroup g);

// sum_{i: pi <= ker i} f(ker i) = sum_{rho >= pi} n(n-1)...(n-|rho|+1) f(rho)
Rat pattern_sum(const std::function<Rat(const SetPartition&)>& f, const SetPartition& pi,
                long n);

// the blockwise-Weingarten double sum of the finite-n moment formula,
// phi-applied; j is a 1-based tuple of length 2k, tau in NC(k)
Rat moment_formula_rhs(const MomentArray& moments, const std::vector<int>& r_word,
                       const SetPartition& tau, const std::vector<int>& j, QuantumGroup g,
                       long n);

// direct phi(E^(tau)[entries at j]) through the model with the model's own
// scalar expectation (equals the coaction value only at tau = 1_k)
Rat phi_nested_moment(FamilyModel& model, const SetPartition& tau,
                      const std::vector<int>& r_word, const std::vector<int>& j);

// phi(E_n^(tau)[entries at j]) for the coaction expectation
// E_n = (id (x) integral) o alpha: every block of tau is Haar-averaged
// independently (its value is invariant, so outer averages fix it).  This
// evaluates the left side of the finite-n moment formula without the
// blockwise-Weingarten rearrangement.  d = 1 models only.
Rat phi_coaction_nested_moment(const MomentArray& moments, const std::vector<int>& r_word,
                               const SetPartition& tau, const std::vector<int>& j,
                               QuantumGroup g, long n);

// finite-n evaluation of the limit-cumulant expression, one value per n
std::vector<Rat> limit_cumulant_estimate(const MomentArray& moments,
                                         const std::vector<int>& r_word,
                                         const SetPartition& tau, const std::vector<int>& j,
                                         QuantumGroup g, const std::vector<long>& n_list);

// phi applied to kappa^(tau) of the entries at j, from the spec directly
Rat phi_nested_cumulant(FamilyModel& model, const SetPartition& tau,
                        const std::vector<int>& r_word, const std::vector<int>& j);

struct DetseriesResult {
  bool invariant = false;
  // failing block, when not invariant
  int k = 0;
  std::vector<int> r_word, m_word;
  // c_{sigma, r}[basis insertions]: per (k, r-word, m-word), sigma -> BElem
  std::map<std::tuple<std::vector<int>, std::vector<int>>, std::map<SetPartition, BElem>>
      coefficients;
};

// determining series invariant under quantum permutations: for every
// (k, r-word, insertion word) the cyclic cumulants lie in the span of the
// indicators [K(sigma) <= ker i]
DetseriesResult detseries_perm_invariance_check(const MatrixFamilySpec& fam);

bool hplus_invariance_of_rcyclic(const MatrixFamilySpec& fam);

}  // namespace ncfree
