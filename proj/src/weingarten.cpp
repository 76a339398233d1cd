#include "ncfree/weingarten.hpp"

#include "ncfree/jsonio.hpp"
#include "ncfree/mobius.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace ncfree {

Family category(QuantumGroup g) {
  switch (g) {
    case QuantumGroup::OPLUS: return Family::NC2;
    case QuantumGroup::SPLUS: return Family::NC;
    case QuantumGroup::HPLUS: return Family::NCH;
    case QuantumGroup::BPLUS: return Family::NCB;
  }
  throw std::invalid_argument("bad group");
}

std::string group_name(QuantumGroup g) {
  switch (g) {
    case QuantumGroup::OPLUS: return "o+";
    case QuantumGroup::SPLUS: return "s+";
    case QuantumGroup::HPLUS: return "h+";
    case QuantumGroup::BPLUS: return "b+";
  }
  return "?";
}

QuantumGroup group_from_string(std::string_view s) {
  std::string t(s);
  for (auto& c : t) c = (char)std::tolower((unsigned char)c);
  if (t == "o+" || t == "oplus" || t == "o") return QuantumGroup::OPLUS;
  if (t == "s+" || t == "splus" || t == "s") return QuantumGroup::SPLUS;
  if (t == "h+" || t == "hplus" || t == "h") return QuantumGroup::HPLUS;
  if (t == "b+" || t == "bplus" || t == "b") return QuantumGroup::BPLUS;
  throw std::invalid_argument("unknown quantum group: " + std::string(s));
}

GramMatrix gram(QuantumGroup g, int k, long n, bool parallel) {
  if (k < 0) throw std::invalid_argument("gram: negative k");
  if (n < 1) throw std::invalid_argument("gram: n must be positive");
  GramMatrix gm;
  gm.group = g;
  gm.k = k;
  gm.n = n;
  gm.order = enumerate_family(category(g), k);
  const int d = (int)gm.order.size();
  gm.entries = IntMat(d, d);
  std::vector<Int> npow(k + 1);
  npow[0] = 1;
  for (int t = 1; t <= k; ++t) npow[t] = npow[t - 1] * n;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Int v = npow[gm.order[i].join(gm.order[j]).block_count()];
      gm.entries.at(i, j) = v;
      gm.entries.at(j, i) = v;
    }
  return gm;
}

namespace {

struct CacheKey {
  int group;
  int k;
  long n;
  auto operator<=>(const CacheKey&) const = default;
};

std::map<CacheKey, std::shared_ptr<const WeingartenMatrix>> g_cache;
std::mutex g_cache_mutex;

std::filesystem::path disk_cache_path(QuantumGroup g, int k, long n) {
  const char* dir = std::getenv("NC_CACHE_DIR");
  if (!dir || !*dir) return {};
  std::string name = "weingarten_";
  name += group_name(g)[0];
  name += "_k" + std::to_string(k) + "_n" + std::to_string(n) + ".json";
  return std::filesystem::path(dir) / name;
}

std::shared_ptr<const WeingartenMatrix> load_from_disk(QuantumGroup g, int k, long n,
                                                       const GramMatrix& gm) {
  auto path = disk_cache_path(g, k, n);
  if (path.empty() || !std::filesystem::exists(path)) return nullptr;
  std::ifstream in(path);
  if (!in) return nullptr;
  try {
    auto w = std::make_shared<WeingartenMatrix>();
    w->group = g;
    w->k = k;
    w->n = n;
    w->order = gm.order;
    w->entries = json_to_rat_mat(nlohmann::json::parse(in), gm.order);
    if (!verify_inverse_certified(gm.entries, w->entries)) return nullptr;
    return w;
  } catch (...) {
    return nullptr;
  }
}

void store_to_disk(const WeingartenMatrix& w) {
  auto path = disk_cache_path(w.group, w.k, w.n);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) return;
  out << rat_mat_to_json(w.entries, w.order).dump();
}

}  // namespace

std::shared_ptr<const WeingartenMatrix> weingarten(QuantumGroup g, int k, long n) {
  CacheKey key{(int)g, k, n};
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
  }
  GramMatrix gm = gram(g, k, n);
  std::shared_ptr<const WeingartenMatrix> w = load_from_disk(g, k, n, gm);
  if (!w) {
    auto fresh = std::make_shared<WeingartenMatrix>();
    fresh->group = g;
    fresh->k = k;
    fresh->n = n;
    fresh->order = gm.order;
    try {
      fresh->entries = invert_exact(gm.entries);
    } catch (const SingularMatrix&) {
      std::ostringstream msg;
      msg << "Gram matrix of " << group_name(g) << " is singular at k=" << k << ", n=" << n;
      throw SingularGram(msg.str());
    }
    store_to_disk(*fresh);
    w = fresh;
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.emplace(key, w);
  return w;
}

Rat haar_integral(QuantumGroup g, long n, std::span<const int> i, std::span<const int> j) {
  if (i.size() != j.size()) throw std::invalid_argument("haar_integral: index length mismatch");
  for (size_t t = 0; t < i.size(); ++t)
    if (i[t] < 1 || i[t] > n || j[t] < 1 || j[t] > n)
      throw std::invalid_argument("haar_integral: index out of range");
  const int k = (int)i.size();
  auto d = enumerate_family(category(g), k);
  if (d.empty()) return Rat(0);
  auto w = weingarten(g, k, n);
  SetPartition keri = SetPartition::kernel(i);
  SetPartition kerj = SetPartition::kernel(j);
  std::vector<int> rows, cols;
  for (int t = 0; t < (int)d.size(); ++t) {
    if (d[t].leq(keri)) rows.push_back(t);
    if (d[t].leq(kerj)) cols.push_back(t);
  }
  Rat acc = 0;
  for (int r : rows)
    for (int c : cols) acc += w->entries.at(r, c);
  return acc;
}

Rat haar_integral(QuantumGroup g, long n, std::initializer_list<int> i,
                  std::initializer_list<int> j) {
  return haar_integral(g, n, std::span<const int>(i.begin(), i.size()),
                       std::span<const int>(j.begin(), j.size()));
}

AsymptoticTable asymptotic_table(QuantumGroup g, int k, const std::vector<long>& n_list) {
  AsymptoticTable t;
  t.group = g;
  t.k = k;
  t.n_list = n_list;
  t.order = enumerate_family(category(g), k);
  const int d = (int)t.order.size();
  t.error.assign((size_t)d * d, {});
  for (long n : n_list) {
    auto w = weingarten(g, k, n);
    for (int a = 0; a < d; ++a) {
      Int np = int_pow(n, (unsigned long)t.order[a].block_count());
      for (int b = 0; b < d; ++b) {
        Rat err = Rat(np) * w->entries.at(a, b) - Rat(mobius(t.order[a], t.order[b]));
        t.error[(size_t)a * d + b].push_back(err);
      }
    }
  }
  return t;
}

}  // namespace ncfree
