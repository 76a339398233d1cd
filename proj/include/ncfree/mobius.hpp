#pragma once

// Mobius function on intervals of NC(n), by memoized delta-recursion, and a
// Mobius-inversion consistency check for function pairs on NC(n).

#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"

#include <map>

namespace ncfree {

// mu_n(sigma, pi); 0 when sigma is not <= pi.  Both arguments must be
// noncrossing and of equal size.
Int mobius(const SetPartition& sigma, const SetPartition& pi);

// true iff g(pi) = sum_{sigma <= pi} f(sigma) for all pi in NC(n) AND
// f(pi) = sum_{sigma <= pi} mu(sigma, pi) g(sigma) for all pi.
bool mobius_inversion_check(const std::map<SetPartition, Rat>& f,
                            const std::map<SetPartition, Rat>& g, int n);

}  // namespace ncfree
