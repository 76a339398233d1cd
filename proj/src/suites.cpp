#include "ncfree/suites.hpp"

#include "ncfree/mobius.hpp"
#include "ncfree/transforms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ncfree {

void SuiteReport::add(std::string name, bool pass, std::string detail) {
  all_pass &= pass;
  items.push_back({std::move(name), pass, std::move(detail)});
}

DistributionSpec semicircular_spec(int K) {
  DistributionSpec spec(1, 1, K);
  if (K >= 2) {
    BElem one(1);
    one.at(0, 0) = 1;
    spec.set_kappa({1, 1}, {0, 0}, one);
  }
  return spec;
}

DistributionSpec free_poisson_spec(int K) {
  DistributionSpec spec(1, 1, K);
  BElem one(1);
  one.at(0, 0) = 1;
  for (int k = 1; k <= K; ++k)
    spec.set_kappa(std::vector<int>(k, 1), std::vector<int>(k, 0), one);
  return spec;
}

MatrixFamilySpec symmetric_free_semicircular(int n, int K) {
  // x_ij = x_ji, (x_ij)_{i<=j} free (0,1)-semicircular: kappa_2 of two
  // entries is 1 exactly when they name the same variable
  MatrixFamilySpec fam(n, 1, 1, K);
  BElem one(1);
  one.at(0, 0) = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          bool same = (a == c && b == e) || (a == e && b == c);
          if (!same) continue;
          Word w{(std::uint32_t)(fam.gen(a, b, 1) - 1), (std::uint32_t)(fam.gen(c, e, 1) - 1)};
          fam.entry_dist.set_kappa_word(w, one);
        }
  return fam;
}

MatrixFamilySpec constant_matrix_family(int n, int K, const Rat& alpha) {
  // x_ij = alpha * 1: first cumulant alpha everywhere, higher ones vanish
  MatrixFamilySpec fam(n, 1, 1, K);
  if (alpha != 0) {
    BElem v(1);
    v.at(0, 0) = alpha;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        fam.entry_dist.set_kappa_word({(std::uint32_t)(fam.gen(i, j, 1) - 1)}, v);
  }
  return fam;
}

namespace {

BElem scalar1(const Rat& v) {
  BElem b(1);
  b.at(0, 0) = v;
  return b;
}

DistributionSpec pair_base_spec(int K) {
  // two self-adjoint generators with coupled second and third cumulants
  DistributionSpec spec(1, 2, K);
  spec.set_kappa({1, 1}, {0, 0}, scalar1(1));
  spec.set_kappa({2, 2}, {0, 0}, scalar1(1));
  spec.set_kappa({1, 2}, {0, 0}, scalar1(Rat(1, 2)));
  spec.set_kappa({2, 1}, {0, 0}, scalar1(Rat(1, 2)));
  if (K >= 3) spec.set_kappa({1, 2, 1}, {0, 0, 0}, scalar1(Rat(1, 3)));
  return spec;
}

}  // namespace

std::vector<SuiteFamily> equivalence_suite(int n, int K) {
  std::vector<SuiteFamily> out;
  out.push_back({"uniform-semicircular", build_uniform_rcyclic(semicircular_spec(K), n), true, true});
  out.push_back({"uniform-poisson", build_uniform_rcyclic(free_poisson_spec(K), n), true, true});
  out.push_back({"uniform-pair", build_uniform_rcyclic(pair_base_spec(K), n), true, true});
  // cyclic variance depending on the index word: R-cyclic, not uniform
  out.push_back({"index-variance",
                 build_rcyclic(
                     [](std::span<const int> idx, std::span<const int> rw,
                        std::span<const int>) {
                       if (idx.size() != 2 || rw[0] != 1 || rw[1] != 1) return BElem(1);
                       return scalar1(Rat(1, idx[0] + idx[1] + 2));
                     },
                     n, 1, 1, K),
                 true, n == 1});
  // diagonal matrix with index-dependent first cumulants
  out.push_back({"diagonal-field",
                 build_rcyclic(
                     [](std::span<const int> idx, std::span<const int> rw,
                        std::span<const int>) {
                       if (rw.size() == 1) return scalar1(Rat(idx[0] + 1));
                       if (idx.size() == 2 && idx[0] == idx[1] && rw[0] == 1 && rw[1] == 1)
                         return scalar1(1);
                       return BElem(1);
                     },
                     n, 1, 1, K),
                 true, n == 1});
  out.push_back({"symmetric-semicircular", symmetric_free_semicircular(n, K), n == 1, n == 1});
  out.push_back({"constant-matrix", constant_matrix_family(n, K, 1), n == 1, n == 1});
  {
    MatrixFamilySpec fam = build_uniform_rcyclic(semicircular_spec(K), n);
    if (n > 1) {  // break one cyclic pattern
      Word w{(std::uint32_t)(fam.gen(0, 0, 1) - 1), (std::uint32_t)(fam.gen(0, 1, 1) - 1)};
      fam.entry_dist.set_kappa_word(w, scalar1(1));
    }
    out.push_back({"perturbed-uniform", std::move(fam), n == 1, n == 1});
  }
  out.push_back({"zero", MatrixFamilySpec(n, 1, 1, K), true, true});
  {
    std::vector<BElem> diag;
    for (int i = 0; i < n; ++i) diag.push_back(scalar1(Rat(i + 1)));
    out.push_back({"semicircular-plus-diagonal",
                   add_constant_diagonal(build_uniform_rcyclic(semicircular_spec(K), n), diag),
                   true, n == 1});
  }
  out.push_back({"scaled-combination",
                 add_linear_combination(build_uniform_rcyclic(pair_base_spec(K), n),
                                        {Rat(2), Rat(-1)}),
                 true, true});
  return out;
}

std::vector<std::string> builtin_model_names() {
  return {"uniform-semicircular", "uniform-poisson", "uniform-pair", "symmetric-semicircular",
          "constant-matrix", "index-variance"};
}

MatrixFamilySpec builtin_model(const std::string& name, int n, int K) {
  if (name == "uniform-semicircular") return build_uniform_rcyclic(semicircular_spec(K), n);
  if (name == "uniform-poisson") return build_uniform_rcyclic(free_poisson_spec(K), n);
  if (name == "uniform-pair") return build_uniform_rcyclic(pair_base_spec(K), n);
  if (name == "symmetric-semicircular") return symmetric_free_semicircular(n, K);
  if (name == "constant-matrix") return constant_matrix_family(n, K, 1);
  if (name == "index-variance") {
    for (const auto& f : equivalence_suite(n, K))
      if (f.name == "index-variance") return f.fam;
  }
  throw std::invalid_argument("unknown model: " + name);
}

// ---------------------------------------------------------------------------
// suites

namespace {

SuiteReport suite_fatfacts(const SuiteParams& p) {
  const int kmax = p.k > 0 ? p.k : 6;
  SuiteReport rep;
  rep.suite = "fatfacts";
  {
    bool ok = true;
    for (int k = 1; k <= std::max(kmax, 10); ++k)
      ok &= Int((long)enumerate_family(Family::NC, k).size()) == catalan(k);
    rep.add("catalan-counts", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= std::min(kmax + 1, 7); ++k) {
      auto ncs = enumerate_family(Family::NC, k);
      std::set<SetPartition> image;
      for (const auto& q : ncs) {
        auto f = fatten(q);
        ok &= is_member(Family::NC2, f) && inverse_fatten(f) == q;
        image.insert(f);
      }
      ok &= image.size() == ncs.size();
      ok &= image.size() == enumerate_family(Family::NC2, 2 * k).size();
    }
    rep.add("fatten-bijection", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= kmax; ++k)
      for (const auto& q : enumerate_family(Family::NC, k))
        ok &= fatten(kreweras(q)) == shift_left(fatten(q));
    rep.add("fatfacts-1", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= kmax - 1; ++k) {
      auto ncs = enumerate_family(Family::NC, k);
      for (const auto& sigma : ncs)
        for (const auto& pi : ncs) {
          if (!sigma.leq(pi)) continue;
          auto j = fatten(sigma).join(fatten(pi));
          ok &= is_member(Family::NCH, j) && kreweras(j) == wreath(sigma, kreweras(pi));
        }
    }
    rep.add("fatfacts-2", ok);
  }
  return rep;
}

SuiteReport suite_mobius(const SuiteParams& p) {
  const int nmax = p.k > 0 ? p.k : 6;
  SuiteReport rep;
  rep.suite = "mobius";
  {
    bool ok = true;
    for (int n = 1; n <= nmax; ++n) {
      auto nc = enumerate_family(Family::NC, n);
      for (const auto& sigma : nc)
        for (const auto& pi : nc) {
          if (!sigma.leq(pi)) continue;
          Int s1 = 0, s2 = 0;
          for (const auto& tau : nc)
            if (sigma.leq(tau) && tau.leq(pi)) {
              s1 += mobius(sigma, tau);
              s2 += mobius(tau, pi);
            }
          Int expect = sigma == pi ? 1 : 0;
          ok &= s1 == expect && s2 == expect;
        }
    }
    rep.add("delta-relations", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= 8; ++k) {
      Int expect = catalan(k - 1);
      if (k % 2 == 0) expect = -expect;
      ok &= mobius(SetPartition::bottom(k), SetPartition::top(k)) == expect;
    }
    rep.add("mu-bottom-top", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= 4; ++k) {
      auto ncs = enumerate_family(Family::NC, k);
      std::vector<std::tuple<SetPartition, SetPartition, SetPartition>> taus;
      for (const auto& a : ncs)
        for (const auto& b : ncs)
          if (a.leq(b)) taus.push_back({fatten(a).join(fatten(b)), a, b});
      for (const auto& [sigma, s1, s2] : taus)
        for (const auto& [pi, p1, p2] : taus)
          if (pi.leq(sigma)) ok &= mobius(pi, sigma) == mobius(s1, p1) * mobius(p2, s2);
    }
    rep.add("h+parts-multiplicativity", ok);
  }
  return rep;
}

SuiteReport suite_weingarten(const SuiteParams& p) {
  const int mmax = p.k > 0 ? p.k : 8;
  std::vector<long> ns = p.n_list.empty() ? std::vector<long>{4, 5, 6, 7, 8, 9} : p.n_list;
  SuiteReport rep;
  rep.suite = "weingarten-asymptotics";
  const QuantumGroup groups[] = {QuantumGroup::OPLUS, QuantumGroup::SPLUS, QuantumGroup::HPLUS,
                                 QuantumGroup::BPLUS};
  for (QuantumGroup g : groups) {
    bool ok = true;
    for (int m = 1; m <= mmax; ++m) {
      if (enumerate_family(category(g), m).empty()) continue;
      for (long n : ns) {
        auto gm = gram(g, m, n);
        auto w = weingarten(g, m, n);
        // symmetry plus one certified product proves W G = G W = I
        bool sym = true;
        for (int i = 0; i < w->entries.rows && sym; ++i)
          for (int j = i + 1; j < w->entries.cols; ++j)
            if (w->entries.at(i, j) != w->entries.at(j, i)) {
              sym = false;
              break;
            }
        ok &= sym;
        if (gm.entries.rows <= 160) {
          auto prod = rat_mul(w->entries, to_rational(gm.entries));
          for (int i = 0; i < prod.rows; ++i)
            for (int j = 0; j < prod.cols; ++j)
              ok &= prod.at(i, j) == Rat(i == j ? 1 : 0);
        } else {
          ok &= verify_inverse_certified(gm.entries, w->entries);
        }
      }
    }
    rep.add("inverse-" + group_name(g), ok);
  }
  {
    std::vector<long> asymp = {4, 8, 16};
    bool ok = true;
    for (QuantumGroup g : groups) {
      for (int m = 1; m <= std::min(mmax, 6); ++m) {
        if (enumerate_family(category(g), m).empty()) continue;
        auto t = asymptotic_table(g, m, asymp);
        for (const auto& seq : t.error) {
          bool zero = seq[0] == 0 && seq[1] == 0 && seq[2] == 0;
          bool dec = abs(seq[0]) > abs(seq[1]) && abs(seq[1]) > abs(seq[2]);
          ok &= zero || dec;
        }
      }
    }
    rep.add("west-error-decreasing", ok);
  }
  {
    bool ok = true;
    for (long n = 4; n <= 7; ++n) {
      Rat row = 0;
      for (int j = 1; j <= n; ++j) row += haar_integral(QuantumGroup::SPLUS, n, {1}, {(int)j});
      ok &= row == 1;
    }
    rep.add("s+row-sum", ok);
  }
  {
    bool ok = true;
    for (long n = 4; n <= 7; ++n)
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
          Rat acc = 0;
          for (int m = 1; m <= n; ++m)
            acc += haar_integral(QuantumGroup::OPLUS, n, {i, m}, {j, m});
          ok &= acc == Rat(i == j ? 1 : 0);
        }
    rep.add("o+orthogonality", ok);
  }
  return rep;
}

SuiteReport suite_rcyclic_equivalence(const SuiteParams& p) {
  const int K = p.k > 0 ? p.k : 4;
  SuiteReport rep;
  rep.suite = "rcyclic-equivalence";
  std::vector<int> sizes = p.n > 0 ? std::vector<int>{(int)p.n} : std::vector<int>{2, 3};
  for (int n : sizes) {
    for (auto& sf : equivalence_suite(n, K)) {
      bool rc = is_rcyclic(sf.fam);
      FamilyModel model(sf.fam);
      bool fd = model.freeness_from_mnb_over_d();
      std::ostringstream detail;
      detail << "n=" << n << " rcyclic=" << rc << " free/D=" << fd;
      rep.add(sf.name + "-n" + std::to_string(n), rc == sf.rcyclic && fd == rc, detail.str());
    }
  }
  {
    // kappa_{E_D}[X b1 V_{i1i1},...,X b_k] = sum_{ik} kappa_E[cyclic] V_{ikik}
    bool ok = true;
    for (int n : sizes) {
      for (auto& sf : equivalence_suite(n, K)) {
        if (!sf.rcyclic) continue;
        FamilyModel model(sf.fam);
        const int kcap = 3;
        for (int k = 1; k <= kcap; ++k) {
          std::vector<int> rword(k, 1), iword(k - 1, 0);
          auto run_one = [&](const std::vector<int>& rw, const std::vector<int>& iw) {
            std::vector<MatLetter> args(k);
            for (int t = 0; t < k; ++t) {
              BMat c = t + 1 < k ? BMat::unit(n, 1, iw[t], iw[t], BElem::identity(1))
                                 : BMat::identity(n, 1);
              args[t] = MatLetter{rw[t], std::move(c)};
            }
            BMat lhs = model.matrix_cumulant_d(args);
            BMat rhs(n, 1);
            for (int ik = 0; ik < n; ++ik) {
              Word w(k);
              std::vector<int> full = iw;
              full.push_back(ik);
              for (int t = 0; t < k; ++t) {
                int a = full[(t + k - 1) % k];
                w[t] = (std::uint32_t)(sf.fam.gen(a, full[t], rw[t]) - 1);
              }
              rhs.at(ik, ik) += sf.fam.entry_dist.kappa_basis(w);
            }
            ok &= lhs == rhs;
          };
          // all index words, all r-words
          std::vector<int> iw(k - 1, 0);
          while (true) {
            std::vector<int> rw(k, 1);
            while (true) {
              run_one(rw, iw);
              int t = k - 1;
              while (t >= 0 && ++rw[t] > sf.fam.s) rw[t--] = 1;
              if (t < 0) break;
            }
            int t = k - 2;
            while (t >= 0 && ++iw[t] == n) iw[t--] = 0;
            if (t < 0 || k == 1) break;
          }
        }
      }
    }
    rep.add("cyclic-cumulants-lemma", ok);
  }
  {
    // kappa_{E_D} with diagonal units = n^{1-k} kappa_{E_B}: uniform members
    // satisfy it, at least one non-uniform R-cyclic member must fail
    bool ok = true;
    bool nonuniform_fails = false;
    for (int n : sizes) {
      for (auto& sf : equivalence_suite(n, K)) {
        if (!sf.rcyclic) continue;
        FamilyModel model(sf.fam);
        bool holds = true;
        for (int k = 1; k <= 3; ++k) {
          std::vector<int> iw(k - 1, 0);  // all-ones diagonal units
          std::vector<int> rw(k, 1);
          while (true) {
            std::vector<MatLetter> args(k);
            for (int t = 0; t < k; ++t) {
              BMat c = t + 1 < k ? BMat::unit(n, 1, iw[t], iw[t], BElem::identity(1))
                                 : BMat::identity(n, 1);
              args[t] = MatLetter{rw[t], std::move(c)};
            }
            BMat lhs = model.matrix_cumulant_d(args);
            BElem eb = model.matrix_cumulant_b([&] {
              std::vector<MatLetter> bargs(k);
              for (int t = 0; t < k; ++t) bargs[t] = MatLetter{rw[t], BMat::identity(n, 1)};
              return bargs;
            }());
            Rat scale(Int(1), int_pow(n, (unsigned long)(k - 1)));
            scale.canonicalize();
            BMat rhs(n, 1);
            for (int i = 0; i < n; ++i) rhs.at(i, i) = scale * eb;
            if (lhs != rhs) holds = false;
            int t = k - 1;
            while (t >= 0 && ++rw[t] > sf.fam.s) rw[t--] = 1;
            if (t < 0) break;
          }
        }
        if (sf.uniform)
          ok &= holds;
        else if (!holds)
          nonuniform_fails = true;
      }
    }
    rep.add("cumulant-factorization", ok && nonuniform_fails);
  }
  {
    // products, diagonal constants and bimodule combinations stay R-cyclic
    bool ok = true;
    for (int n : sizes) {
      MatrixFamilySpec fam = build_uniform_rcyclic(semicircular_spec(K), n);
      auto prod = product_family(fam, {{1, 1}});
      ok &= is_rcyclic(prod);
      auto with_id = product_family(fam, {{1, 0}});
      ok &= with_id.entry_dist.entries() == fam.entry_dist.entries();
      std::vector<BElem> diag;
      for (int i = 0; i < n; ++i) diag.push_back(scalar1(Rat(2 * i + 1)));
      ok &= is_rcyclic(add_constant_diagonal(fam, diag));
      ok &= is_rcyclic(add_linear_combination(fam, {Rat(3, 2)}));
    }
    {
      // n = 1: squaring the scalar semicircular gives moments 1, 2 of X^2
      MatrixFamilySpec fam = build_uniform_rcyclic(semicircular_spec(4), 1);
      auto prod = product_family(fam, {{1, 1}});
      MomentOracle o(prod.entry_dist);
      Word w1{0}, w2{0, 0};
      ok &= o.moment_basis(w1).at(0, 0) == 1;  // E[X^2] = m_2 = 1
      ok &= o.moment_basis(w2).at(0, 0) == 2;  // E[X^4] = m_4 = 2
    }
    rep.add("rcyclic-algebra-closure", ok);
  }
  return rep;
}

SuiteReport suite_uniform_equivalence(const SuiteParams& p) {
  const int K = p.k > 0 ? p.k : 4;
  SuiteReport rep;
  rep.suite = "uniform-equivalence";
  std::vector<int> sizes = p.n > 0 ? std::vector<int>{(int)p.n} : std::vector<int>{2, 3};
  for (int n : sizes) {
    for (auto& sf : equivalence_suite(n, K)) {
      bool uc = is_uniformly_rcyclic(sf.fam);
      FamilyModel model(sf.fam);
      bool fb = model.freeness_from_mnb_over_b();
      std::ostringstream detail;
      detail << "n=" << n << " uniform=" << uc << " free/B=" << fb;
      rep.add(sf.name + "-n" + std::to_string(n), uc == sf.uniform && fb == uc, detail.str());
    }
  }
  return rep;
}

// expected O+ coefficients: c_{fatten(pi), r} = phi(kappa^(pi)[x_11 ...])
std::map<SetPartition, Rat> oplus_predicted_coefficients(FamilyModel& model,
                                                         const std::vector<int>& r_word) {
  const int k = (int)r_word.size();
  const auto& fam = model.spec();
  std::map<SetPartition, Rat> out;
  BFunctional kappa_fn = [&](std::span<const GenLetter> run) {
    return fam.entry_dist.kappa(run);
  };
  for (const auto& pi : enumerate_family(Family::NC, k)) {
    std::vector<GenLetter> args(k);
    for (int t = 0; t < k; ++t)
      args[t] = GenLetter{fam.gen(0, 0, r_word[t]), BElem::identity(fam.dim())};
    Rat v = nested_eval(kappa_fn, pi, args, fam.dim()).normalized_trace();
    out[fatten(pi)] = v;
  }
  return out;
}

bool coefficients_reproduce_moments(const MomentArray& moments,
                                    const std::vector<int>& r_word,
                                    const std::map<SetPartition, Rat>& coeff) {
  const int k = (int)r_word.size();
  for (const auto& rho : enumerate_family(Family::ALL, 2 * k)) {
    if (rho.block_count() > moments.n) continue;
    Rat acc = 0;
    for (const auto& [pi, c] : coeff)
      if (pi.leq(rho)) acc += c;
    if (acc != moments.lookup_pattern(r_word, rho)) return false;
  }
  return true;
}

SuiteReport suite_oplus_invariance(const SuiteParams& p) {
  const int kmax = p.k > 0 ? p.k : 3;
  std::vector<long> ns = p.n_list.empty() ? std::vector<long>{4, 5} : p.n_list;
  SuiteReport rep;
  rep.suite = "oplus-invariance";
  for (const char* name : {"uniform-semicircular", "uniform-pair"}) {
    for (long n : ns) {
      MatrixFamilySpec fam = builtin_model(name, (int)n, std::max(kmax, 3));
      FamilyModel model(fam);
      MomentArray arr = family_moment_array(model, kmax);
      auto cert = invariance_check(arr, QuantumGroup::OPLUS);
      bool ok = cert.consistent;
      // predicted coefficients must reproduce every moment
      for (const auto& block : cert.blocks) {
        auto pred = oplus_predicted_coefficients(model, block.r_word);
        ok &= coefficients_reproduce_moments(arr, block.r_word, pred);
        if (block.consistent && !block.dependent) {
          for (const auto& [pi, c] : block.coefficients) ok &= pred.at(pi) == c;
        }
      }
      rep.add(std::string(name) + "-n" + std::to_string(n), ok);
    }
  }
  {
    // containments: an O+-invariant array is invariant for the smaller
    // categories' groups as well (more spanning vectors)
    bool ok = true;
    MatrixFamilySpec fam = builtin_model("uniform-semicircular", 4, 3);
    FamilyModel model(fam);
    MomentArray arr = family_moment_array(model, 2);
    for (QuantumGroup g : {QuantumGroup::OPLUS, QuantumGroup::BPLUS, QuantumGroup::HPLUS,
                           QuantumGroup::SPLUS})
      ok &= invariance_check(arr, g).consistent;
    // S+ certificate supported on pairings implies O+ consistency
    auto s_cert = invariance_check(arr, QuantumGroup::SPLUS);
    bool supported_on_nc2 = true;
    for (const auto& b : s_cert.blocks)
      for (const auto& [pi, c] : b.coefficients)
        if (c != 0 && !is_member(Family::NC2, pi)) supported_on_nc2 = false;
    if (supported_on_nc2) ok &= invariance_check(arr, QuantumGroup::OPLUS).consistent;
    rep.add("category-containments", ok);
  }
  {
    // constant matrix: consistent for b+ with c_{0_{2k}} the only weight
    bool ok = true;
    MatrixFamilySpec fam = constant_matrix_family(4, 3, 1);
    FamilyModel model(fam);
    MomentArray arr = family_moment_array(model, 2);
    auto cert = invariance_check(arr, QuantumGroup::BPLUS);
    ok &= cert.consistent;
    for (const auto& b : cert.blocks) {
      std::map<SetPartition, Rat> pred;
      pred[SetPartition::bottom(2 * b.k)] = 1;
      for (const auto& pi : enumerate_family(Family::NCB, 2 * b.k))
        if (!pred.count(pi)) pred[pi] = 0;
      ok &= coefficients_reproduce_moments(arr, b.r_word, pred);
    }
    rep.add("constant-matrix-b+", ok);
  }
  return rep;
}

SuiteReport suite_hplus_invariance(const SuiteParams& p) {
  const int kmax = p.k > 0 ? p.k : 3;
  const long n = p.n > 0 ? p.n : 4;
  SuiteReport rep;
  rep.suite = "hplus-invariance";
  {
    MatrixFamilySpec fam = builtin_model("uniform-semicircular", (int)n, std::max(kmax, 3));
    bool ok = hplus_invariance_of_rcyclic(fam);
    FamilyModel model(fam);
    MomentArray arr = family_moment_array(model, kmax);
    ok &= invariance_check(arr, QuantumGroup::HPLUS).consistent;
    rep.add("uniform-semicircular", ok);
  }
  {
    // generic index-dependent determining series is not S+-invariant
    MatrixFamilySpec fam = builtin_model("index-variance", (int)n, 4);
    bool rc = is_rcyclic(fam);
    auto det = detseries_perm_invariance_check(fam);
    rep.add("generic-detseries-rejected", rc && !det.invariant);
  }
  {
    MatrixFamilySpec fam = symmetric_free_semicircular((int)n, 4);
    rep.add("symmetric-not-applicable", !hplus_invariance_of_rcyclic(fam));
  }
  {
    MatrixFamilySpec fam((int)n, 1, 1, 4);
    rep.add("zero-family", hplus_invariance_of_rcyclic(fam));
  }
  {
    // H+-invariant model passes the S+ <= H+ containment: H+ consistency
    // follows from S+ consistency by category containment NC ⊃ NCh
    MatrixFamilySpec fam = builtin_model("uniform-semicircular", (int)n, 3);
    FamilyModel model(fam);
    MomentArray arr = family_moment_array(model, 2);
    bool ok = invariance_check(arr, QuantumGroup::HPLUS).consistent &&
              invariance_check(arr, QuantumGroup::SPLUS).consistent;
    rep.add("s+h+containment", ok);
  }
  return rep;
}

SuiteReport suite_splus_counterexample(const SuiteParams& p) {
  const long n = p.n > 0 ? p.n : 4;
  SuiteReport rep;
  rep.suite = "splus-counterexample";
  MatrixFamilySpec fam = symmetric_free_semicircular((int)n, 4);
  FamilyModel model(fam);
  MomentArray arr = family_moment_array(model, 2);
  {
    auto cert = invariance_check(arr, QuantumGroup::SPLUS);
    bool found = false;
    for (const auto& b : cert.blocks)
      if (b.k == 2 && !b.consistent) found = true;
    rep.add("k2-inconsistent", !cert.consistent && found);
  }
  {
    // phi(x_{i1i2} x_{i3i4}) = delta_pi + delta_sigma - delta_tau
    SetPartition pi = SetPartition::parse("{{1,3},{2,4}}");
    SetPartition sigma = SetPartition::parse("{{1,4},{2,3}}");
    SetPartition tau = SetPartition::top(4);
    bool ok = true;
    for (const auto& rho : enumerate_family(Family::ALL, 4)) {
      if (rho.block_count() > n) continue;
      Rat expect = Rat(pi.leq(rho) ? 1 : 0) + Rat(sigma.leq(rho) ? 1 : 0) -
                   Rat(tau.leq(rho) ? 1 : 0);
      ok &= arr.lookup_pattern({1, 1}, rho) == expect;
    }
    rep.add("moment-vector-decomposition", ok);
  }
  {
    // T_{crossing} outside span{T_nu : nu in NC(4)} in dimension n^4
    SetPartition crossing = SetPartition::parse("{{1,3},{2,4}}");
    auto ncs = enumerate_family(Family::NC, 4);
    auto target = tvector(crossing, n);
    RatMat a((int)target.size(), (int)ncs.size());
    for (int c = 0; c < (int)ncs.size(); ++c) {
      auto col = tvector(ncs[c], n);
      for (size_t r = 0; r < col.size(); ++r) a.at((int)r, c) = Rat(col[r]);
    }
    std::vector<Rat> b(target.size());
    for (size_t r = 0; r < target.size(); ++r) b[r] = Rat(target[r]);
    auto sol = solve_consistent(a, b);
    std::ostringstream detail;
    detail << "dimension " << target.size() << ", rank " << rank_exact(a);
    rep.add("crossing-outside-span", !sol.consistent, detail.str());
  }
  return rep;
}

SuiteReport suite_limit_convergence(const SuiteParams& p) {
  const int kmax = p.k > 0 ? p.k : 3;
  std::vector<long> ns = p.n_list.empty() ? std::vector<long>{4, 8, 16, 32} : p.n_list;
  SuiteReport rep;
  rep.suite = "limit-convergence";
  const long min_n = *std::min_element(ns.begin(), ns.end());

  MatrixFamilySpec fam = builtin_model("uniform-semicircular", 2 * kmax, kmax);
  FamilyModel model(fam);
  MomentArray arr = family_moment_array(model, kmax);

  bool all_ok = true;
  std::ostringstream detail;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<int> r_word(k, 1);
    for (const auto& tau : enumerate_family(Family::NC, k)) {
      for (const auto& jpat : enumerate_family(Family::ALL, 2 * k)) {
        if (jpat.block_count() > min_n) continue;
        std::vector<int> j(2 * k);
        for (int t = 1; t <= 2 * k; ++t) j[t - 1] = jpat.label(t) + 1;
        auto est = limit_cumulant_estimate(arr, r_word, tau, j, QuantumGroup::OPLUS, ns);
        Rat target = phi_nested_cumulant(model, tau, r_word, j);
        // C fitted at the smallest n, bound verified at the larger ones
        Rat c0 = abs(est[0] - target) * ns[0];
        for (size_t t = 1; t < ns.size(); ++t) {
          Rat err = abs(est[t] - target);
          Rat bound = c0 / ns[t];
          if (err > bound) all_ok = false;
        }
      }
    }
  }
  detail << "model=uniform-semicircular k<=" << kmax;
  rep.add("finite-n-cumulant-bound", all_ok, detail.str());
  {
    // tau = 0_1: E of a single entry is n-independent (kappa_1 = 0)
    std::vector<int> j{1, 1};
    auto est = limit_cumulant_estimate(arr, {1}, SetPartition::bottom(1), j,
                                       QuantumGroup::OPLUS, ns);
    bool ok = true;
    for (const auto& v : est) ok &= v == 0;
    rep.add("k1-exact", ok);
  }
  return rep;
}

SuiteReport suite_divisibility(const SuiteParams& p) {
  const int K = p.k > 0 ? p.k : 4;
  std::vector<long> ns = p.n_list.empty() ? std::vector<long>{2, 3, 4} : p.n_list;
  SuiteReport rep;
  rep.suite = "divisibility";
  for (const char* base_name : {"semicircular", "free-poisson"}) {
    DistributionSpec base = std::string(base_name) == "semicircular" ? semicircular_spec(K)
                                                                     : free_poisson_spec(K);
    for (long n : ns) {
      auto report = verify_divisibility_equivalence(base, (int)n);
      std::ostringstream detail;
      for (const auto& item : report.items)
        if (!item.pass) detail << item.identity << "@k=" << item.k << " ";
      rep.add(std::string(base_name) + "-n" + std::to_string(n), report.all_pass, detail.str());
    }
  }
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"fatfacts",         "mobius",
          "weingarten-asymptotics", "rcyclic-equivalence",
          "uniform-equivalence",    "oplus-invariance",
          "hplus-invariance",       "splus-counterexample",
          "limit-convergence",      "divisibility"};
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  if (name == "fatfacts") return suite_fatfacts(params);
  if (name == "mobius") return suite_mobius(params);
  if (name == "weingarten-asymptotics") return suite_weingarten(params);
  if (name == "rcyclic-equivalence") return suite_rcyclic_equivalence(params);
  if (name == "uniform-equivalence") return suite_uniform_equivalence(params);
  if (name == "oplus-invariance") return suite_oplus_invariance(params);
  if (name == "hplus-invariance") return suite_hplus_invariance(params);
  if (name == "splus-counterexample") return suite_splus_counterexample(params);
  if (name == "limit-convergence") return suite_limit_convergence(params);
  if (name == "divisibility") return suite_divisibility(params);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace ncfree
