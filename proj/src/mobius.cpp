#include "ncfree/mobius.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ncfree {

namespace {

struct PairHash {
  size_t operator()(const std::pair<SetPartition, SetPartition>& p) const {
    SetPartitionHash h;
    return h(p.first) * 0x9e3779b97f4a7c15ull + h(p.second);
  }
};

std::unordered_map<std::pair<SetPartition, SetPartition>, Int, PairHash> g_memo;
std::unordered_map<int, std::vector<SetPartition>> g_nc;
std::mutex g_mutex;

const std::vector<SetPartition>& nc_all(int n) {
  auto it = g_nc.find(n);
  if (it == g_nc.end()) it = g_nc.emplace(n, enumerate_family(Family::NC, n)).first;
  return it->second;
}

// mu(sigma, pi) = -sum_{sigma <= tau < pi} mu(sigma, tau), mu(sigma, sigma) = 1
Int mobius_locked(const SetPartition& sigma, const SetPartition& pi) {
  if (sigma == pi) return 1;
  auto key = std::make_pair(sigma, pi);
  if (auto it = g_memo.find(key); it != g_memo.end()) return it->second;
  Int acc = 0;
  for (const auto& tau : nc_all(pi.size()))
    if (tau != pi && sigma.leq(tau) && tau.leq(pi)) acc += mobius_locked(sigma, tau);
  Int val = -acc;
  g_memo.emplace(std::move(key), val);
  return val;
}

}  // namespace

Int mobius(const SetPartition& sigma, const SetPartition& pi) {
  if (sigma.size() != pi.size()) throw std::invalid_argument("mobius: size mismatch");
  if (!sigma.is_noncrossing() || !pi.is_noncrossing())
    throw std::invalid_argument("mobius: crossing input");
  if (!sigma.leq(pi)) return 0;
  std::lock_guard<std::mutex> lock(g_mutex);
  return mobius_locked(sigma, pi);
}

bool mobius_inversion_check(const std::map<SetPartition, Rat>& f,
                            const std::map<SetPartition, Rat>& g, int n) {
  const auto all = enumerate_family(Family::NC, n);
  for (const auto& p : all)
    if (!f.count(p) || !g.count(p))
      throw std::invalid_argument("mobius_inversion_check: map not total on NC(n)");
  for (const auto& pi : all) {
    Rat s1 = 0, s2 = 0;
    for (const auto& sigma : all) {
      if (!sigma.leq(pi)) continue;
      s1 += f.at(sigma);
      s2 += Rat(mobius(sigma, pi)) * g.at(sigma);
    }
    if (s1 != g.at(pi) || s2 != f.at(pi)) return false;
  }
  return true;
}

}  // namespace ncfree
