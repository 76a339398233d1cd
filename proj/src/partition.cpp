#include "ncfree/partition.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace ncfree {

namespace {

constexpr int kMaxGround = 64;

void canonicalize_rgs(std::vector<std::uint8_t>& rgs, int& nblocks) {
  std::array<int, kMaxGround> relabel;
  relabel.fill(-1);
  int next = 0;
  for (auto& v : rgs) {
    if (relabel[v] < 0) relabel[v] = next++;
    v = static_cast<std::uint8_t>(relabel[v]);
  }
  nblocks = next;
}

}  // namespace

SetPartition SetPartition::from_rgs(std::vector<std::uint8_t> rgs) {
  if (rgs.size() > kMaxGround) throw std::invalid_argument("ground set too large");
  SetPartition p;
  p.rgs_ = std::move(rgs);
  canonicalize_rgs(p.rgs_, p.nblocks_);
  return p;
}

SetPartition SetPartition::from_blocks(int k, const std::vector<std::vector<int>>& blocks) {
  if (k < 0 || k > kMaxGround) throw std::invalid_argument("bad ground-set size");
  std::vector<int> owner(k, -1);
  int b = 0;
  for (const auto& blk : blocks) {
    if (blk.empty()) throw std::invalid_argument("empty block");
    for (int x : blk) {
      if (x < 1 || x > k) throw std::invalid_argument("block element out of range");
      if (owner[x - 1] != -1) throw std::invalid_argument("blocks not disjoint");
      owner[x - 1] = b;
    }
    ++b;
  }
  for (int i = 0; i < k; ++i)
    if (owner[i] < 0) throw std::invalid_argument("blocks do not cover ground set");
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = static_cast<std::uint8_t>(owner[i]);
  return from_rgs(std::move(rgs));
}

SetPartition SetPartition::bottom(int k) {
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = static_cast<std::uint8_t>(i);
  return from_rgs(std::move(rgs));
}

SetPartition SetPartition::top(int k) {
  return from_rgs(std::vector<std::uint8_t>(k, 0));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(nblocks_);
  for (int i = 0; i < size(); ++i) out[rgs_[i]].push_back(i + 1);
  return out;  // RGS labels are ordered by first appearance = min element
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sz(nblocks_, 0);
  for (auto v : rgs_) ++sz[v];
  return sz;
}

bool SetPartition::leq(const SetPartition& coarser) const {
  if (size() != coarser.size()) throw std::invalid_argument("size mismatch");
  // every block of *this must map into a single block of coarser
  std::array<int, kMaxGround> img;
  img.fill(-1);
  for (int i = 0; i < size(); ++i) {
    int b = rgs_[i];
    if (img[b] < 0)
      img[b] = coarser.rgs_[i];
    else if (img[b] != coarser.rgs_[i])
      return false;
  }
  return true;
}

SetPartition SetPartition::join(const SetPartition& other) const {
  if (size() != other.size()) throw std::invalid_argument("size mismatch");
  const int k = size();
  std::array<int, kMaxGround> parent;
  for (int i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  std::array<int, kMaxGround> first;
  first.fill(-1);
  for (int i = 0; i < k; ++i) {
    int b = rgs_[i];
    if (first[b] >= 0) unite(first[b], i);
    first[b] = i;
  }
  first.fill(-1);
  for (int i = 0; i < k; ++i) {
    int b = other.rgs_[i];
    if (first[b] >= 0) unite(first[b], i);
    first[b] = i;
  }
  std::vector<std::uint8_t> rgs(k);
  for (int i = 0; i < k; ++i) rgs[i] = static_cast<std::uint8_t>(find(i));
  return from_rgs(std::move(rgs));
}

SetPartition SetPartition::meet(const SetPartition& other) const {
  if (size() != other.size()) throw std::invalid_argument("size mismatch");
  const int k = size();
  std::vector<std::uint8_t> rgs(k);
  std::vector<std::pair<std::uint8_t, std::uint8_t>> seen;
  for (int i = 0; i < k; ++i) {
    std::pair<std::uint8_t, std::uint8_t> key{rgs_[i], other.rgs_[i]};
    size_t j = 0;
    while (j < seen.size() && seen[j] != key) ++j;
    if (j == seen.size()) seen.push_back(key);
    rgs[i] = static_cast<std::uint8_t>(j);
  }
  return from_rgs(std::move(rgs));
}

bool SetPartition::is_noncrossing() const {
  const int k = size();
  std::array<int, kMaxGround> last;
  for (int i = 0; i < k; ++i) last[rgs_[i]] = i;
  std::array<std::uint8_t, kMaxGround> stack;
  std::array<bool, kMaxGround> open{};
  int top = 0;
  for (int i = 0; i < k; ++i) {
    std::uint8_t b = rgs_[i];
    if (!open[b]) {
      open[b] = true;
      stack[top++] = b;
    } else if (stack[top - 1] != b) {
      return false;  // b resurfaces above a still-open later block
    }
    while (top > 0 && last[stack[top - 1]] == i) --top;
  }
  return true;
}

SetPartition SetPartition::restrict_to(std::span<const int> subset) const {
  std::vector<std::uint8_t> rgs;
  rgs.reserve(subset.size());
  int prev = 0;
  for (int x : subset) {
    if (x < 1 || x > size()) throw std::invalid_argument("subset out of range");
    if (x <= prev) throw std::invalid_argument("subset must be strictly increasing");
    prev = x;
    rgs.push_back(rgs_[x - 1]);
  }
  return from_rgs(std::move(rgs));
}

std::string SetPartition::to_string() const {
  std::string out = "{";
  bool firstb = true;
  for (const auto& blk : blocks()) {
    if (!firstb) out += ",";
    firstb = false;
    out += "{";
    for (size_t i = 0; i < blk.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(blk[i]);
    }
    out += "}";
  }
  out += "}";
  return out;
}

SetPartition SetPartition::parse(std::string_view s) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      throw std::invalid_argument("partition parse error in: " + std::string(s));
    ++pos;
  };
  std::vector<std::vector<int>> blocks;
  int k = 0;
  expect('{');
  skip_ws();
  while (pos < s.size() && s[pos] == '{') {
    ++pos;
    std::vector<int> blk;
    skip_ws();
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      int v = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        v = v * 10 + (s[pos++] - '0');
      blk.push_back(v);
      k = std::max(k, v);
      skip_ws();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        skip_ws();
      }
    }
    expect('}');
    if (blk.empty()) throw std::invalid_argument("empty block in: " + std::string(s));
    blocks.push_back(std::move(blk));
    skip_ws();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      skip_ws();
    }
  }
  expect('}');
  skip_ws();
  if (pos != s.size())
    throw std::invalid_argument("trailing characters in partition: " + std::string(s));
  return from_blocks(k, blocks);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::ALL: return "all";
    case Family::NC: return "nc";
    case Family::NC2: return "nc2";
    case Family::NCH: return "nch";
    case Family::NCB: return "ncb";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "all" || t == "p") return Family::ALL;
  if (t == "nc") return Family::NC;
  if (t == "nc2") return Family::NC2;
  if (t == "nch") return Family::NCH;
  if (t == "ncb") return Family::NCB;
  throw std::invalid_argument("unknown family: " + std::string(s));
}

bool is_member(Family f, const SetPartition& p) {
  switch (f) {
    case Family::ALL: return true;
    case Family::NC: return p.is_noncrossing();
    case Family::NC2: {
      for (int s : p.block_sizes())
        if (s != 2) return false;
      return p.is_noncrossing();
    }
    case Family::NCH: {
      for (int s : p.block_sizes())
        if (s % 2 != 0) return false;
      return p.is_noncrossing();
    }
    case Family::NCB: {
      for (int s : p.block_sizes())
        if (s > 2) return false;
      return p.is_noncrossing();
    }
  }
  return false;
}

namespace {

// Direct generators, all in lexicographic RGS order.
//
// ALL: plain restricted-growth recursion.
//
// Noncrossing families: scan points left to right keeping the stack of open
// blocks (labels increase up the stack).  Assigning point i to an open block
// closes every block above it; the per-family rules say which blocks may be
// extended or closed and which end states are complete.

void gen_all(int k, std::vector<std::uint8_t>& rgs, int maxb, std::vector<SetPartition>& out) {
  if ((int)rgs.size() == k) {
    out.push_back(SetPartition::from_rgs(rgs));
    return;
  }
  for (int b = 0; b <= maxb + 1 && b < kMaxGround; ++b) {
    rgs.push_back(static_cast<std::uint8_t>(b));
    gen_all(k, rgs, std::max(maxb, b), out);
    rgs.pop_back();
  }
}

struct NcGen {
  Family fam;
  int k = 0;
  std::vector<std::uint8_t> rgs;
  std::vector<int> stack;       // open block labels, increasing
  std::vector<int> block_size;  // by label
  std::vector<SetPartition>* out = nullptr;

  bool may_extend(int label) const {
    if (fam == Family::NC2 || fam == Family::NCB)
      return block_size[label] == 1;  // blocks of size <= 2
    return true;
  }
  // closing happens when a block is popped or at the very end
  bool may_close(int label) const {
    switch (fam) {
      case Family::NC2: return block_size[label] == 2;
      case Family::NCH: return block_size[label] % 2 == 0;
      default: return true;
    }
  }

  void step() {
    if ((int)rgs.size() == k) {
      for (int lb : stack)
        if (!may_close(lb)) return;
      out->push_back(SetPartition::from_rgs(rgs));
      return;
    }
    // extend an open block (everything above it on the stack gets closed),
    // trying smaller labels first keeps lexicographic order
    for (size_t d = 0; d < stack.size(); ++d) {
      int lb = stack[d];
      if (!may_extend(lb)) continue;
      bool ok = true;
      for (size_t a = d + 1; a < stack.size(); ++a)
        if (!may_close(stack[a])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<int> popped(stack.begin() + d + 1, stack.end());
      stack.resize(d + 1);
      rgs.push_back(static_cast<std::uint8_t>(lb));
      ++block_size[lb];
      step();
      --block_size[lb];
      rgs.pop_back();
      stack.insert(stack.end(), popped.begin(), popped.end());
    }
    // or open a new block
    int nb = (int)block_size.size();
    if (nb < kMaxGround) {
      stack.push_back(nb);
      block_size.push_back(1);
      rgs.push_back(static_cast<std::uint8_t>(nb));
      step();
      rgs.pop_back();
      block_size.pop_back();
      stack.pop_back();
    }
  }
};

}  // namespace

std::vector<SetPartition> enumerate_family(Family f, int k) {
  if (k < 0) throw std::invalid_argument("negative ground set");
  std::vector<SetPartition> out;
  if (k == 0) {
    out.push_back(SetPartition());
    return out;
  }
  if (f == Family::NC2 && k % 2 != 0) return out;
  if (f == Family::ALL) {
    std::vector<std::uint8_t> rgs;
    rgs.push_back(0);
    gen_all(k, rgs, 0, out);
    return out;
  }
  NcGen g;
  g.fam = f;
  g.k = k;
  g.out = &out;
  g.step();
  return out;
}

bool is_noncrossing_recursive(const SetPartition& p) {
  if (p.size() == 0) return true;
  auto blocks = p.blocks();
  // find an interval block, remove it, recurse
  for (const auto& blk : blocks) {
    if (blk.back() - blk.front() + 1 == (int)blk.size()) {
      if (blocks.size() == 1) return true;
      std::vector<int> rest;
      for (int x = 1; x <= p.size(); ++x)
        if (x < blk.front() || x > blk.back()) rest.push_back(x);
      return is_noncrossing_recursive(p.restrict_to(rest));
    }
  }
  return false;
}

}  // namespace ncfree
