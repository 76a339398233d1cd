#include "ncfree/infdiv.hpp"

#include "ncfree/models.hpp"

namespace ncfree {

DistributionSpec convolution_power(const DistributionSpec& spec, const Rat& t) {
  if (t <= 0) throw std::invalid_argument("convolution_power: t must be positive");
  DistributionSpec out(spec.dim(), spec.generators(), spec.order(), spec.involution());
  for (const auto& [w, v] : spec.entries()) out.set_kappa_word(w, t * v);
  return out;
}

namespace {

void for_each_basis_word(int letters, int K, const std::function<void(const Word&)>& f) {
  Word w;
  auto rec = [&](auto&& self) -> void {
    if (!w.empty()) f(w);
    if ((int)w.size() == K) return;
    for (int l = 0; l < letters; ++l) {
      w.push_back((std::uint32_t)l);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

DivisibilityReport verify_divisibility_equivalence(const DistributionSpec& base, int n) {
  if (n < 1) throw std::invalid_argument("verify_divisibility_equivalence: n >= 1");
  DivisibilityReport rep;
  rep.header =
      "structural identities of n-fold free divisibility at truncation order K; "
      "positivity (existence of a C*-realization) is not checked";
  const int d = base.dim();
  const int s = base.generators();
  const int K = base.order();
  const int d2 = d * d;

  MomentOracle base_moments(base);
  MatrixFamilySpec fam = build_uniform_rcyclic(base, n);
  FamilyModel model(fam);

  // (a) the (1,1) entries have the base distribution
  for (int k = 1; k <= K; ++k) {
    bool pass = true;
    for_each_basis_word(s * d2, k, [&](const Word& w) {
      if ((int)w.size() != k) return;
      std::vector<GenLetter> entry_args(k), base_args(k);
      for (int t = 0; t < k; ++t) {
        int r = (int)(w[t] / d2) + 1;
        int m = (int)(w[t] % d2);
        entry_args[t] = GenLetter{fam.gen(0, 0, r), BElem::unit(d, m / d, m % d)};
        base_args[t] = GenLetter{r, BElem::unit(d, m / d, m % d)};
      }
      if (model.oracle().moment(entry_args) != base_moments.moment(base_args)) pass = false;
    });
    rep.items.push_back({"entry11-distribution", n, k, pass});
    rep.all_pass &= pass;
  }

  // (b) kappa_base^(k) = n^{1-k} kappa_{E_B}^(k)[X_{r_1} b_1, ...]
  for (int k = 1; k <= K; ++k) {
    bool pass = true;
    for_each_basis_word(s * d2, k, [&](const Word& w) {
      if ((int)w.size() != k) return;
      std::vector<MatLetter> args(k);
      for (int t = 0; t < k; ++t) {
        int r = (int)(w[t] / d2) + 1;
        int m = (int)(w[t] % d2);
        BMat c(n, d);
        for (int i = 0; i < n; ++i) c.at(i, i) = BElem::unit(d, m / d, m % d);
        args[t] = MatLetter{r, std::move(c)};
      }
      BElem mb = model.matrix_cumulant_b(args);
      Rat scale(Int(1), int_pow(n, (unsigned long)(k - 1)));
      scale.canonicalize();
      if (base.kappa_basis(w) != scale * mb) pass = false;
    });
    rep.items.push_back({"cumulant-scaling", n, k, pass});
    rep.all_pass &= pass;
  }

  // (c) sum of n free copies with cumulants kappa/n has the base moments
  {
    Rat t(1, n);
    DistributionSpec copies = free_product_copies(convolution_power(base, t), n);
    MomentOracle copy_moments(copies);
    for (int k = 1; k <= K; ++k) {
      bool pass = true;
      for_each_basis_word(s * d2, k, [&](const Word& w) {
        if ((int)w.size() != k) return;
        // expand (y'_{r_1} b_1 ... ) multilinearly over copy assignments
        BElem acc(d);
        std::vector<int> assign(k, 0);
        while (true) {
          std::vector<GenLetter> args(k);
          for (int t2 = 0; t2 < k; ++t2) {
            int r = (int)(w[t2] / d2) + 1;
            int m = (int)(w[t2] % d2);
            args[t2] = GenLetter{assign[t2] * s + r, BElem::unit(d, m / d, m % d)};
          }
          acc += copy_moments.moment(args);
          int z = k - 1;
          while (z >= 0 && ++assign[z] == n) assign[z--] = 0;
          if (z < 0) break;
        }
        std::vector<GenLetter> base_args(k);
        for (int t2 = 0; t2 < k; ++t2) {
          int r = (int)(w[t2] / d2) + 1;
          int m = (int)(w[t2] % d2);
          base_args[t2] = GenLetter{r, BElem::unit(d, m / d, m % d)};
        }
        if (acc != base_moments.moment(base_args)) pass = false;
      });
      rep.items.push_back({"free-sum", n, k, pass});
      rep.all_pass &= pass;
    }
  }
  return rep;
}

}  // namespace ncfree
