#pragma once

// Set partitions of {1,...,k} in canonical form, and the noncrossing
// families used by the free quantum groups.
//
// The canonical encoding is the restricted growth string (RGS): rgs[i] is the
// block label of point i+1, labels assigned in order of first appearance.
// Two equal partitions have identical RGS, and lexicographic order on RGS is
// the enumeration order of every public table (Gram/Weingarten indexing
// depends on it, so it is part of the contract).

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncfree {

class SetPartition {
 public:
  SetPartition() = default;  // the empty partition of the empty set

  static SetPartition from_rgs(std::vector<std::uint8_t> rgs);
  static SetPartition from_blocks(int k, const std::vector<std::vector<int>>& blocks);
  static SetPartition bottom(int k);  // 0_k
  static SetPartition top(int k);     // 1_k

  // ker i: positions share a block iff labels are equal
  template <typename T>
  static SetPartition kernel(std::span<const T> labels) {
    std::vector<std::uint8_t> rgs(labels.size());
    std::vector<T> seen;
    for (size_t i = 0; i < labels.size(); ++i) {
      size_t j = 0;
      while (j < seen.size() && !(seen[j] == labels[i])) ++j;
      if (j == seen.size()) seen.push_back(labels[i]);
      rgs[i] = static_cast<std::uint8_t>(j);
    }
    return from_rgs(std::move(rgs));
  }
  static SetPartition kernel(std::initializer_list<long> labels) {
    return kernel(std::span<const long>(labels.begin(), labels.size()));
  }

  int size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return nblocks_; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  std::uint8_t label(int s) const { return rgs_[s - 1]; }  // 1-based point
  bool same_block(int s, int t) const { return rgs_[s - 1] == rgs_[t - 1]; }
  std::vector<std::vector<int>> blocks() const;  // canonical: by min element
  std::vector<int> block_sizes() const;

  bool leq(const SetPartition& coarser) const;
  SetPartition join(const SetPartition& other) const;  // in P(k)
  SetPartition meet(const SetPartition& other) const;
  bool is_noncrossing() const;

  // induced partition of {1,...,|subset|}; subset given as 1-based points
  SetPartition restrict_to(std::span<const int> subset) const;
  SetPartition restrict_to(std::initializer_list<int> subset) const {
    return restrict_to(std::span<const int>(subset.begin(), subset.size()));
  }

  std::string to_string() const;                  // e.g. {{1,4,5},{2,3},{6}}
  static SetPartition parse(std::string_view s);  // inverse of to_string

  friend auto operator<=>(const SetPartition& a, const SetPartition& b) = default;

 private:
  std::vector<std::uint8_t> rgs_;
  int nblocks_ = 0;
};

struct SetPartitionHash {
  size_t operator()(const SetPartition& p) const {
    size_t h = 1469598103934665603ull;
    for (auto v : p.rgs()) h = (h ^ v) * 1099511628211ull;
    return h ^ (size_t)p.size();
  }
};

enum class Family { ALL, NC, NC2, NCH, NCB };

std::string family_name(Family f);
Family family_from_string(std::string_view s);

bool is_member(Family f, const SetPartition& p);

// All members on {1,...,k}, each exactly once, lexicographic in RGS.
// k == 0 yields the single empty partition.
std::vector<SetPartition> enumerate_family(Family f, int k);

// Noncrossing test by the recursive interval-removal characterization
// (kept as an independent route; the test suite cross-checks it against
// SetPartition::is_noncrossing).
bool is_noncrossing_recursive(const SetPartition& p);

}  // namespace ncfree
