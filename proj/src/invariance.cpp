#include "ncfree/invariance.hpp"

#include "ncfree/mobius.hpp"
#include "ncfree/transforms.hpp"

namespace ncfree {

namespace {

std::vector<int> pattern_representative(const SetPartition& p) {
  std::vector<int> tuple(p.size());
  for (int t = 1; t <= p.size(); ++t) tuple[t - 1] = p.label(t) + 1;
  return tuple;
}

std::vector<GenLetter> entry_letters(const MatrixFamilySpec& spec,
                                     const std::vector<int>& r_word,
                                     const std::vector<int>& tuple) {
  const int k = (int)r_word.size();
  std::vector<GenLetter> letters(k);
  for (int t = 0; t < k; ++t)
    letters[t] =
        GenLetter{spec.gen(tuple[2 * t] - 1, tuple[2 * t + 1] - 1, r_word[t]),
                  BElem::identity(spec.dim())};
  return letters;
}

void for_each_word(int s, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> w(k, 1);
  while (true) {
    f(w);
    int t = k - 1;
    while (t >= 0 && ++w[t] > s) w[t--] = 1;
    if (t < 0) return;
  }
}

}  // namespace

Rat MomentArray::lookup_pattern(const std::vector<int>& r_word,
                                const SetPartition& pattern) const {
  if (compressed) {
    auto it = by_pattern.find({r_word, pattern});
    return it == by_pattern.end() ? Rat(0) : it->second;
  }
  auto it = by_tuple.find({r_word, pattern_representative(pattern)});
  return it == by_tuple.end() ? Rat(0) : it->second;
}

Rat MomentArray::lookup_tuple(const std::vector<int>& r_word,
                              const std::vector<int>& tuple) const {
  if (!compressed) {
    auto it = by_tuple.find({r_word, tuple});
    return it == by_tuple.end() ? Rat(0) : it->second;
  }
  return lookup_pattern(r_word, SetPartition::kernel(std::span<const int>(tuple)));
}

MomentArray MomentArray::expanded() const {
  MomentArray out = *this;
  if (!compressed) return out;
  out.compressed = false;
  out.by_pattern.clear();
  for (const auto& [key, value] : by_pattern) {
    const auto& [r_word, pattern] = key;
    const int m = pattern.size();
    // all tuples with this kernel
    std::vector<int> tuple(m, 1);
    while (true) {
      if (SetPartition::kernel(std::span<const int>(tuple)) == pattern)
        out.by_tuple[{r_word, tuple}] = value;
      int t = m - 1;
      while (t >= 0 && ++tuple[t] > n) tuple[t--] = 1;
      if (t < 0) break;
    }
  }
  return out;
}

MomentArray family_moment_array(FamilyModel& model, int k_max) {
  MomentArray out;
  out.s = model.spec().s;
  out.n = model.spec().n;
  out.k_max = k_max;
  out.compressed = true;
  for (int k = 1; k <= k_max; ++k) {
    auto patterns = enumerate_family(Family::ALL, 2 * k);
    for_each_word(out.s, k, [&](const std::vector<int>& r_word) {
      for (const auto& p : patterns) {
        if (p.block_count() > out.n) continue;
        auto letters = entry_letters(model.spec(), r_word, pattern_representative(p));
        Rat phi = model.oracle().moment(letters).normalized_trace();
        out.by_pattern[{r_word, p}] = phi;
      }
    });
  }
  return out;
}

std::vector<Int> tvector(const SetPartition& pi, long n) {
  const int m = pi.size();
  size_t len = 1;
  for (int t = 0; t < m; ++t) len *= (size_t)n;
  std::vector<Int> out(len);
  std::vector<int> tuple(m, 1);
  size_t pos = 0;
  while (true) {
    bool fits = true;
    for (int b = 0; b < pi.block_count() && fits; ++b) {
      int ref = -1;
      for (int t = 1; t <= m; ++t) {
        if (pi.label(t) != b) continue;
        if (ref < 0)
          ref = tuple[t - 1];
        else if (tuple[t - 1] != ref)
          fits = false;
      }
    }
    out[pos++] = fits ? 1 : 0;
    int t = m - 1;
    while (t >= 0 && ++tuple[t] > n) tuple[t--] = 1;
    if (t < 0) break;
  }
  return out;
}

InvarianceCertificate invariance_check(const MomentArray& moments, QuantumGroup g) {
  InvarianceCertificate cert;
  cert.group = g;
  cert.n = moments.n;
  cert.k_max = moments.k_max;
  cert.consistent = true;

  // expanded input: moments must be constant on kernel classes
  const MomentArray* use = &moments;
  MomentArray compressed_store;
  if (!moments.compressed) {
    compressed_store.s = moments.s;
    compressed_store.n = moments.n;
    compressed_store.k_max = moments.k_max;
    for (const auto& [key, value] : moments.by_tuple) {
      const auto& [r_word, tuple] = key;
      SetPartition ker = SetPartition::kernel(std::span<const int>(tuple));
      auto it = compressed_store.by_pattern.find({r_word, ker});
      if (it == compressed_store.by_pattern.end()) {
        compressed_store.by_pattern[{r_word, ker}] = value;
      } else if (it->second != value) {
        InvarianceBlock block;
        block.k = (int)r_word.size();
        block.r_word = r_word;
        block.consistent = false;
        block.witness = tuple;
        cert.blocks.push_back(std::move(block));
        cert.consistent = false;
      }
    }
    if (!cert.consistent) return cert;
    use = &compressed_store;
  }

  for (int k = 1; k <= moments.k_max; ++k) {
    auto d2k = enumerate_family(category(g), 2 * k);
    auto patterns = enumerate_family(Family::ALL, 2 * k);
    std::vector<SetPartition> rows;
    for (const auto& p : patterns)
      if (p.block_count() <= moments.n) rows.push_back(p);
    for_each_word(moments.s, k, [&](const std::vector<int>& r_word) {
      RatMat a((int)rows.size(), (int)d2k.size());
      std::vector<Rat> b(rows.size());
      for (int i = 0; i < (int)rows.size(); ++i) {
        for (int c = 0; c < (int)d2k.size(); ++c)
          a.at(i, c) = d2k[c].leq(rows[i]) ? 1 : 0;
        b[i] = use->lookup_pattern(r_word, rows[i]);
      }
      auto sol = solve_consistent(a, b);
      InvarianceBlock block;
      block.k = k;
      block.r_word = r_word;
      block.consistent = sol.consistent;
      if (sol.consistent) {
        block.dependent = !sol.unique;
        for (int c = 0; c < (int)d2k.size(); ++c) block.coefficients[d2k[c]] = sol.solution[c];
      } else {
        block.witness = pattern_representative(rows[sol.witness_row]);
        cert.consistent = false;
      }
      cert.blocks.push_back(std::move(block));
    });
  }
  return cert;
}

Rat pattern_sum(const std::function<Rat(const SetPartition&)>& f, const SetPartition& pi,
                long n) {
  Rat acc = 0;
  for (const auto& rho : enumerate_family(Family::ALL, pi.size())) {
    if (!pi.leq(rho)) continue;
    if (rho.block_count() > n) continue;  // falling factorial vanishes anyway
    Rat fv = f(rho);
    if (fv == 0) continue;
    acc += Rat(falling_factorial(n, rho.block_count())) * fv;
  }
  return acc;
}

Rat moment_formula_rhs(const MomentArray& moments, const std::vector<int>& r_word,
                       const SetPartition& tau, const std::vector<int>& j, QuantumGroup g,
                       long n) {
  const int k = tau.size();
  if ((int)j.size() != 2 * k || (int)r_word.size() != k)
    throw std::invalid_argument("moment_formula_rhs: length mismatch");
  SetPartition tau_hat = hat(tau);
  SetPartition ker_j = SetPartition::kernel(std::span<const int>(j));
  auto d2k = enumerate_family(category(g), 2 * k);
  auto blocks = tau_hat.blocks();

  // per-block Weingarten tables and index maps
  std::vector<std::shared_ptr<const WeingartenMatrix>> wtabs;
  std::vector<std::map<SetPartition, int>> windex;
  for (const auto& blk : blocks) {
    auto w = weingarten(g, (int)blk.size(), n);
    std::map<SetPartition, int> idx;
    for (int t = 0; t < (int)w->order.size(); ++t) idx[w->order[t]] = t;
    wtabs.push_back(w);
    windex.push_back(std::move(idx));
  }

  std::vector<const SetPartition*> sigmas, pis;
  for (const auto& p : d2k) {
    if (p.leq(tau_hat)) {
      pis.push_back(&p);
      if (p.leq(ker_j)) sigmas.push_back(&p);
    }
  }
  Rat acc = 0;
  for (const auto* sigma : sigmas) {
    for (const auto* pi : pis) {
      Rat weight = 1;
      for (size_t v = 0; v < blocks.size() && weight != 0; ++v) {
        SetPartition pr = pi->restrict_to(blocks[v]);
        SetPartition sr = sigma->restrict_to(blocks[v]);
        auto ip = windex[v].find(pr);
        auto is = windex[v].find(sr);
        if (ip == windex[v].end() || is == windex[v].end())
          throw std::logic_error("restriction left the category");
        weight *= wtabs[v]->entries.at(ip->second, is->second);
      }
      if (weight == 0) continue;
      Rat inner = pattern_sum(
          [&](const SetPartition& rho) { return moments.lookup_pattern(r_word, rho); }, *pi, n);
      acc += weight * inner;
    }
  }
  return acc;
}

Rat phi_nested_moment(FamilyModel& model, const SetPartition& tau,
                      const std::vector<int>& r_word, const std::vector<int>& j) {
  auto letters = entry_letters(model.spec(), r_word, j);
  BFunctional rho = [&](std::span<const GenLetter> run) { return model.oracle().moment(run); };
  return nested_eval(rho, tau, letters, model.spec().dim()).normalized_trace();
}

Rat phi_coaction_nested_moment(const MomentArray& moments, const std::vector<int>& r_word,
                               const SetPartition& tau, const std::vector<int>& j,
                               QuantumGroup g, long n) {
  const int k = tau.size();
  if ((int)j.size() != 2 * k || (int)r_word.size() != k)
    throw std::invalid_argument("phi_coaction_nested_moment: length mismatch");
  // per block of tau: Haar weights for replacing that block's 2|V| indices
  auto blocks = tau.blocks();
  const int m = (int)blocks.size();
  std::vector<std::vector<int>> block_slots(m);  // flattened tuple slots per block
  for (int b = 0; b < m; ++b)
    for (int t : blocks[b]) {
      block_slots[b].push_back(2 * (t - 1));
      block_slots[b].push_back(2 * (t - 1) + 1);
    }
  // enumerate each block's replacement tuples with nonzero Haar weight
  std::vector<std::vector<std::pair<std::vector<int>, Rat>>> choices(m);
  for (int b = 0; b < m; ++b) {
    const int w = (int)block_slots[b].size();
    std::vector<int> jv(w);
    for (int t = 0; t < w; ++t) jv[t] = j[block_slots[b][t]];
    std::vector<int> iv(w, 1);
    while (true) {
      Rat weight = haar_integral(g, n, iv, jv);
      if (weight != 0) choices[b].push_back({iv, weight});
      int t = w - 1;
      while (t >= 0 && ++iv[t] > n) iv[t--] = 1;
      if (t < 0) break;
    }
  }
  // combine: product of block weights times phi of the reindexed word
  Rat acc = 0;
  for (int b = 0; b < m; ++b)
    if (choices[b].empty()) return acc;
  std::vector<size_t> pick(m, 0);
  std::vector<int> tuple(2 * k);
  while (true) {
    Rat weight = 1;
    for (int b = 0; b < m; ++b) {
      const auto& [iv, wv] = choices[b][pick[b]];
      weight *= wv;
      for (size_t t = 0; t < iv.size(); ++t) tuple[block_slots[b][t]] = iv[t];
    }
    acc += weight * moments.lookup_tuple(r_word, tuple);
    int b = m - 1;
    while (b >= 0 && ++pick[b] == choices[b].size()) pick[b--] = 0;
    if (b < 0) break;
  }
  return acc;
}

Rat phi_nested_cumulant(FamilyModel& model, const SetPartition& tau,
                        const std::vector<int>& r_word, const std::vector<int>& j) {
  // kappa^(tau) = sum_{rho <= tau} mu(rho, tau) E^(rho)
  auto letters = entry_letters(model.spec(), r_word, j);
  BFunctional rho_fn = [&](std::span<const GenLetter> run) { return model.oracle().moment(run); };
  BElem acc(model.spec().dim());
  for (const auto& rho : enumerate_family(Family::NC, tau.size())) {
    if (!rho.leq(tau)) continue;
    Int mu = mobius(rho, tau);
    if (mu == 0) continue;
    acc += Rat(mu) * nested_eval(rho_fn, rho, letters, model.spec().dim());
  }
  return acc.normalized_trace();
}

std::vector<Rat> limit_cumulant_estimate(const MomentArray& moments,
                                         const std::vector<int>& r_word,
                                         const SetPartition& tau, const std::vector<int>& j,
                                         QuantumGroup g, const std::vector<long>& n_list) {
  const int k = tau.size();
  if ((int)j.size() != 2 * k || (int)r_word.size() != k)
    throw std::invalid_argument("limit_cumulant_estimate: length mismatch");
  SetPartition tau_hat = hat(tau);
  SetPartition zero_hat = hat(SetPartition::bottom(k));
  SetPartition ker_j = SetPartition::kernel(std::span<const int>(j));
  auto d2k = enumerate_family(category(g), 2 * k);

  std::vector<std::pair<const SetPartition*, const SetPartition*>> terms;  // (pi, sigma)
  std::vector<Int> mus;
  for (const auto& sigma : d2k) {
    if (!sigma.leq(ker_j)) continue;
    if (sigma.join(zero_hat) != tau_hat) continue;
    for (const auto& pi : d2k) {
      if (!pi.leq(sigma)) continue;
      Int mu = mobius(pi, sigma);
      if (mu == 0) continue;
      terms.push_back({&pi, &sigma});
      mus.push_back(mu);
    }
  }
  std::vector<Rat> out;
  for (long n : n_list) {
    Rat acc = 0;
    for (size_t t = 0; t < terms.size(); ++t) {
      const SetPartition& pi = *terms[t].first;
      Rat inner = pattern_sum(
          [&](const SetPartition& rho) { return moments.lookup_pattern(r_word, rho); }, pi, n);
      if (inner == 0) continue;
      Rat scale(Int(1), int_pow(n, (unsigned long)pi.block_count()));
      scale.canonicalize();
      acc += Rat(mus[t]) * scale * inner;
    }
    out.push_back(acc);
  }
  return out;
}

DetseriesResult detseries_perm_invariance_check(const MatrixFamilySpec& fam) {
  if (!is_rcyclic(fam)) throw std::invalid_argument("detseries check requires an R-cyclic family");
  DetseriesResult res;
  res.invariant = true;
  const int n = fam.n;
  const int d = fam.dim();
  const int d2 = d * d;
  const int K = fam.order();
  for (int k = 1; k <= K && res.invariant; ++k) {
    auto ncs = enumerate_family(Family::NC, k);
    std::vector<SetPartition> complements;
    for (const auto& sigma : ncs) complements.push_back(kreweras(sigma));
    // index words i in [n]^k are the rows
    std::vector<std::vector<int>> tuples;
    {
      std::vector<int> t(k, 1);
      while (true) {
        tuples.push_back(t);
        int z = k - 1;
        while (z >= 0 && ++t[z] > n) t[z--] = 1;
        if (z < 0) break;
      }
    }
    RatMat a((int)tuples.size(), (int)ncs.size());
    for (int i = 0; i < (int)tuples.size(); ++i) {
      SetPartition ker = SetPartition::kernel(std::span<const int>(tuples[i]));
      for (int c = 0; c < (int)ncs.size(); ++c)
        a.at(i, c) = complements[c].leq(ker) ? 1 : 0;
    }
    for_each_word(fam.s, k, [&](const std::vector<int>& r_word) {
      if (!res.invariant) return;
      std::vector<int> m_word(k, 0);
      while (true) {
        // rhs: cyclic cumulant at each index word, one system per B-coordinate
        std::vector<BElem> rhs(tuples.size(), BElem(d));
        for (size_t i = 0; i < tuples.size(); ++i) {
          Word w(k);
          for (int t = 0; t < k; ++t) {
            int a_idx = tuples[i][(t + k - 1) % k] - 1;
            int b_idx = tuples[i][t] - 1;
            w[t] = (std::uint32_t)((fam.gen(a_idx, b_idx, r_word[t]) - 1) * d2 + m_word[t]);
          }
          rhs[i] = fam.entry_dist.kappa_basis(w);
        }
        std::map<SetPartition, BElem> coeff;
        for (const auto& sigma : ncs) coeff[sigma] = BElem(d);
        for (int br = 0; br < d && res.invariant; ++br)
          for (int bc = 0; bc < d && res.invariant; ++bc) {
            std::vector<Rat> b(tuples.size());
            for (size_t i = 0; i < tuples.size(); ++i) b[i] = rhs[i].at(br, bc);
            auto sol = solve_consistent(a, b);
            if (!sol.consistent) {
              res.invariant = false;
              res.k = k;
              res.r_word = r_word;
              res.m_word = m_word;
            } else {
              for (int c = 0; c < (int)ncs.size(); ++c) coeff[ncs[c]].at(br, bc) = sol.solution[c];
            }
          }
        if (res.invariant) res.coefficients[{r_word, m_word}] = std::move(coeff);
        int z = k - 1;
        while (z >= 0 && ++m_word[z] == d2) m_word[z--] = 0;
        if (z < 0) break;
      }
    });
  }
  return res;
}

bool hplus_invariance_of_rcyclic(const MatrixFamilySpec& fam) {
  if (!is_rcyclic(fam)) return false;
  return detseries_perm_invariance_check(fam).invariant;
}

}  // namespace ncfree
