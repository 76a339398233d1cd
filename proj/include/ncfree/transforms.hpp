#pragma once

// Operations relating NC(k) with NC_2(2k) and NC(2k): fattening and its
// inverse, the pair-doubling hat, cyclic shifts, the wreath interleaving,
// the Kreweras complement and the even-block factorization of NC_h(2k).

#include "ncfree/partition.hpp"

#include <utility>

namespace ncfree {

// NC(k) -> NC2(2k): each block (i1<...<is) contributes the pairings
// (2i1-1, 2is), (2i1, 2i2-1), ..., (2i(s-1), 2is-1).
SetPartition fatten(const SetPartition& pi);

// inverse of fatten: the unique tau with sigma v hat(0_k) = hat(tau)
SetPartition inverse_fatten(const SetPartition& sigma);

// P(k) -> P(2k): partition the pairs (1,2),(3,4),... according to pi
SetPartition hat(const SetPartition& pi);

// s ~ t in shift_left(pi) iff s+1 ~ t+1 in pi (indices mod k)
SetPartition shift_left(const SetPartition& pi);
SetPartition shift_right(const SetPartition& pi);

// odd points by pi, even points by sigma
SetPartition wreath(const SetPartition& pi, const SetPartition& sigma);

// largest sigma in NC(k) with wreath(pi, sigma) noncrossing
SetPartition kreweras(const SetPartition& pi);
// the unique x with kreweras(x) == rho
SetPartition kreweras_inverse(const SetPartition& rho);

// tau in NC_h(2k) -> the unique pi1 <= pi2 in NC(k) with
// fatten(pi1) v fatten(pi2) == tau
std::pair<SetPartition, SetPartition> nch_decompose(const SetPartition& tau);

}  // namespace ncfree
