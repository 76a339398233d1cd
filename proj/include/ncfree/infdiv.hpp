#pragma once

// Free infinite divisibility as cumulant arithmetic, and the structural
// identities tying an n-fold free decomposition to the uniformly R-cyclic
// matrix model built from the same base distribution.
//
// At the truncated formal level every distribution admits the cumulant
// scaling kappa -> t*kappa; the report below therefore verifies the
// structural identities, not positivity (stated in its header line).

#include "ncfree/cumulants.hpp"

namespace ncfree {

// every kappa^(k) multiplied by t; t = 1/n is the formal n-th free
// convolution root
DistributionSpec convolution_power(const DistributionSpec& spec, const Rat& t);

struct DivisibilityReport {
  struct Item {
    std::string identity;  // "entry11-distribution" | "cumulant-scaling" | "free-sum"
    int n = 0;
    int k = 0;
    bool pass = false;
  };
  std::string header;
  std::vector<Item> items;
  bool all_pass = true;
};

// (a) the (1,1)-entry tuple of the uniformly R-cyclic model has the base
//     distribution, (b) kappa_base = n^{1-k} kappa_{E_B}[X...], (c) the sum
//     of n free copies with cumulants kappa/n reproduces the base moments
DivisibilityReport verify_divisibility_equivalence(const DistributionSpec& base, int n);

}  // namespace ncfree
