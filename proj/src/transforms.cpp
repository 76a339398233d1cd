#include "ncfree/transforms.hpp"

#include <stdexcept>

namespace ncfree {

SetPartition fatten(const SetPartition& pi) {
  if (!pi.is_noncrossing()) throw std::invalid_argument("fatten: crossing input");
  const int k = pi.size();
  std::vector<std::vector<int>> pairs;
  for (const auto& blk : pi.blocks()) {
    const int s = (int)blk.size();
    pairs.push_back({2 * blk[0] - 1, 2 * blk[s - 1]});
    for (int t = 0; t + 1 < s; ++t) pairs.push_back({2 * blk[t], 2 * blk[t + 1] - 1});
  }
  return SetPartition::from_blocks(2 * k, pairs);
}

SetPartition hat(const SetPartition& pi) {
  const int k = pi.size();
  std::vector<std::uint8_t> rgs(2 * k);
  for (int i = 0; i < k; ++i) rgs[2 * i] = rgs[2 * i + 1] = pi.rgs()[i];
  return SetPartition::from_rgs(std::move(rgs));
}

SetPartition inverse_fatten(const SetPartition& sigma) {
  if (sigma.size() % 2 != 0 || !is_member(Family::NC2, sigma))
    throw std::invalid_argument("inverse_fatten: not a noncrossing pairing");
  const int k = sigma.size() / 2;
  SetPartition joined = sigma.join(hat(SetPartition::bottom(k)));
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) {
    if (joined.rgs()[2 * i] != joined.rgs()[2 * i + 1])
      throw std::invalid_argument("inverse_fatten: join is not a doubled partition");
    rgs[i] = joined.rgs()[2 * i];
  }
  return SetPartition::from_rgs(std::move(rgs));
}

SetPartition shift_left(const SetPartition& pi) {
  const int k = pi.size();
  if (k == 0) return pi;
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = pi.rgs()[(i + 1) % k];
  return SetPartition::from_rgs(std::move(rgs));
}

SetPartition shift_right(const SetPartition& pi) {
  const int k = pi.size();
  if (k == 0) return pi;
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = pi.rgs()[(i + k - 1) % k];
  return SetPartition::from_rgs(std::move(rgs));
}

SetPartition wreath(const SetPartition& pi, const SetPartition& sigma) {
  if (pi.size() != sigma.size()) throw std::invalid_argument("wreath: size mismatch");
  const int k = pi.size();
  std::vector<std::uint8_t> rgs(2 * k);
  const int shift = pi.block_count();  // keep odd/even labels disjoint
  for (int i = 0; i < k; ++i) {
    rgs[2 * i] = pi.rgs()[i];
    rgs[2 * i + 1] = static_cast<std::uint8_t>(sigma.rgs()[i] + shift);
  }
  return SetPartition::from_rgs(std::move(rgs));
}

SetPartition kreweras(const SetPartition& pi) {
  if (!pi.is_noncrossing()) throw std::invalid_argument("kreweras: crossing input");
  const int k = pi.size();
  if (k == 0) return pi;
  // i ~ j in K(pi), i < j, iff no block of pi meets both {i+1,...,j} and its
  // complement (blocks may nest over the interval).  The closure of this
  // relation is the complement; maximality is covered by the brute-force
  // oracle in the tests.
  std::vector<int> parent(k);
  for (int i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const std::vector<int> size = pi.block_sizes();
  std::vector<int> inside(pi.block_count());
  for (int i = 1; i <= k; ++i) {
    std::fill(inside.begin(), inside.end(), 0);
    for (int j = i + 1; j <= k; ++j) {
      ++inside[pi.label(j)];
      bool ok = true;
      for (int b = 0; b < pi.block_count() && ok; ++b)
        if (inside[b] != 0 && inside[b] != size[b]) ok = false;
      if (ok) parent[find(i - 1)] = find(j - 1);
    }
  }
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = static_cast<std::uint8_t>(find(i));
  return SetPartition::from_rgs(std::move(rgs));
}

SetPartition kreweras_inverse(const SetPartition& rho) {
  // K(K(pi)) = shift_left(pi), so K^{-1}(rho) = shift_right(K(rho))
  return shift_right(kreweras(rho));
}

std::pair<SetPartition, SetPartition> nch_decompose(const SetPartition& tau) {
  if (tau.size() % 2 != 0 || !is_member(Family::NCH, tau))
    throw std::invalid_argument("nch_decompose: input not in NC_h");
  const int k = tau.size() / 2;
  // K(tau) = pi1 wr K(pi2): odd positions give pi1, even give K(pi2)
  SetPartition c = kreweras(tau);
  std::vector<int> odds, evens;
  for (int i = 1; i <= k; ++i) {
    odds.push_back(2 * i - 1);
    evens.push_back(2 * i);
  }
  SetPartition pi1 = c.restrict_to(odds);
  SetPartition pi2 = kreweras_inverse(c.restrict_to(evens));
  if (!pi1.leq(pi2) || fatten(pi1).join(fatten(pi2)) != tau)
    throw std::invalid_argument("nch_decompose: factorization failed");
  return {pi1, pi2};
}

}  // namespace ncfree
