#include "ncfree/models.hpp"

#include "ncfree/mobius.hpp"

#include <map>

namespace ncfree {

BMat BMat::identity(int n, int d) {
  BMat m(n, d);
  for (int i = 0; i < n; ++i) m.at(i, i) = BElem::identity(d);
  return m;
}

BMat BMat::unit(int n, int d, int i, int j, const BElem& b) {
  BMat m(n, d);
  m.at(i, j) = b;
  return m;
}

bool BMat::is_zero() const {
  for (const auto& e : e_)
    if (!e.is_zero()) return false;
  return true;
}

bool BMat::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

BMat& BMat::operator+=(const BMat& o) {
  if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("BMat: shape mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

BMat& BMat::operator-=(const BMat& o) {
  if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("BMat: shape mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

BMat operator*(const BMat& a, const BMat& b) {
  if (a.size() != b.size() || a.dim() != b.dim())
    throw std::invalid_argument("BMat: shape mismatch");
  const int n = a.size();
  BMat c(n, a.dim());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b.at(k, j).is_zero()) continue;
        c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return c;
}

// ---------------------------------------------------------------------------

MatrixFamilySpec::MatrixFamilySpec(int n_, int s_, int d, int K, std::vector<int> family_inv)
    : n(n_), s(s_) {
  if (n < 1 || s < 1) throw std::invalid_argument("MatrixFamilySpec: bad shape");
  if (family_inv.empty()) {
    family_inv.resize(s);
    for (int r = 1; r <= s; ++r) family_inv[r - 1] = r;
  }
  involution = family_inv;
  // entry involution: (i,j,r) -> (j,i,sigma(r))
  std::vector<int> entry_inv(n * n * s);
  for (int r = 1; r <= s; ++r)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int g = (r - 1) * n * n + i * n + j + 1;
        entry_inv[g - 1] = (involution[r - 1] - 1) * n * n + j * n + i + 1;
      }
  entry_dist = DistributionSpec(d, n * n * s, K, std::move(entry_inv));
}

int MatrixFamilySpec::gen(int i, int j, int r) const {
  if (i < 0 || i >= n || j < 0 || j >= n || r < 1 || r > s)
    throw std::invalid_argument("gen: index out of range");
  return (r - 1) * n * n + i * n + j + 1;
}

std::tuple<int, int, int> MatrixFamilySpec::ungen(int g) const {
  --g;
  int r = g / (n * n) + 1;
  int rem = g % (n * n);
  return {rem / n, rem % n, r};
}

MatrixFamilySpec build_uniform_rcyclic(const DistributionSpec& base, int n) {
  MatrixFamilySpec fam(n, base.generators(), base.dim(), base.order(), base.involution());
  const int d2 = base.dim() * base.dim();
  for (const auto& [w, v] : base.entries()) {
    const int k = (int)w.size();
    std::vector<int> idx(k, 0);
    while (true) {
      Word ew(k);
      for (int t = 0; t < k; ++t) {
        int r = (int)(w[t] / d2) + 1;
        int m = (int)(w[t] % d2);
        int a = idx[(t + k - 1) % k];  // i_{t-1}, cyclically
        int b = idx[t];
        ew[t] = (std::uint32_t)((fam.gen(a, b, r) - 1) * d2 + m);
      }
      fam.entry_dist.set_kappa_word(ew, v);
      int t = k - 1;
      while (t >= 0 && ++idx[t] == n) idx[t--] = 0;
      if (t < 0) break;
    }
  }
  return fam;
}

MatrixFamilySpec build_rcyclic(const CyclicCumulantFn& fn, int n, int s, int d, int K,
                               std::vector<int> family_involution) {
  MatrixFamilySpec fam(n, s, d, K, std::move(family_involution));
  const int d2 = d * d;
  for (int k = 1; k <= K; ++k) {
    std::vector<int> idx(k, 0), rw(k, 1), mw(k, 0);
    // iterate all (idx, r-word, m-word) triples
    auto advance = [&](std::vector<int>& v, int base0, int limit) {
      int t = k - 1;
      while (t >= 0) {
        if (++v[t] < limit + base0) return true;
        v[t--] = base0;
      }
      return false;
    };
    while (true) {
      BElem v = fn(idx, rw, mw);
      if (!v.is_zero()) {
        Word ew(k);
        for (int t = 0; t < k; ++t) {
          int a = idx[(t + k - 1) % k];
          ew[t] = (std::uint32_t)((fam.gen(a, idx[t], rw[t]) - 1) * d2 + mw[t]);
        }
        fam.entry_dist.set_kappa_word(ew, v);
      }
      if (advance(mw, 0, d2)) continue;
      if (advance(rw, 1, s)) continue;
      if (advance(idx, 0, n)) continue;
      break;
    }
  }
  return fam;
}

bool is_rcyclic(const MatrixFamilySpec& fam) {
  const int d2 = fam.dim() * fam.dim();
  for (const auto& [w, v] : fam.entry_dist.entries()) {
    const int k = (int)w.size();
    for (int t = 0; t < k; ++t) {
      auto [i1, j1, r1] = fam.ungen((int)(w[t] / d2) + 1);
      auto [i2, j2, r2] = fam.ungen((int)(w[(t + 1) % k] / d2) + 1);
      (void)r1;
      (void)r2;
      (void)i2;
      if (j1 != i2) return false;  // nonzero cumulant off the cyclic pattern
    }
  }
  return true;
}

bool is_uniformly_rcyclic(const MatrixFamilySpec& fam) {
  if (!is_rcyclic(fam)) return false;
  const int d2 = fam.dim() * fam.dim();
  const int n = fam.n;
  // (r-word, m-word) pairs seen among nonzero cyclic entries
  std::map<std::pair<std::vector<int>, std::vector<int>>, char> seen;
  for (const auto& [w, v] : fam.entry_dist.entries()) {
    std::vector<int> rw(w.size()), mw(w.size());
    for (size_t t = 0; t < w.size(); ++t) {
      auto [i, j, r] = fam.ungen((int)(w[t] / d2) + 1);
      (void)i;
      (void)j;
      rw[t] = r;
      mw[t] = (int)(w[t] % d2);
    }
    seen[{rw, mw}] = 1;
  }
  for (const auto& [key, _] : seen) {
    const auto& [rw, mw] = key;
    const int k = (int)rw.size();
    // reference value at the all-(1,1) tuple
    Word ref(k);
    for (int t = 0; t < k; ++t) ref[t] = (std::uint32_t)((fam.gen(0, 0, rw[t]) - 1) * d2 + mw[t]);
    BElem v0 = fam.entry_dist.kappa_basis(ref);
    std::vector<int> idx(k, 0);
    while (true) {
      Word ew(k);
      for (int t = 0; t < k; ++t) {
        int a = idx[(t + k - 1) % k];
        ew[t] = (std::uint32_t)((fam.gen(a, idx[t], rw[t]) - 1) * d2 + mw[t]);
      }
      if (fam.entry_dist.kappa_basis(ew) != v0) return false;
      int t = k - 1;
      while (t >= 0 && ++idx[t] == n) idx[t--] = 0;
      if (t < 0) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// expectations by path expansion over entry moments

BMat FamilyModel::expect_mnb(const MatrixWord& w) {
  const int n = spec_.n;
  const int d = spec_.dim();
  BMat out(n, d);
  std::vector<GenLetter> gens;
  BElem prefix = BElem::identity(d);
  // depth-first over index paths; constants merge into the previous
  // insertion (or the left prefix when no generator has appeared yet)
  auto walk = [&](auto&& self, int i0, int pos, int cur) -> void {
    if (pos == (int)w.size()) {
      BElem m = gens.empty() ? BElem::identity(d) : oracle_.moment(gens);
      out.at(i0, cur) += prefix * m;
      return;
    }
    const auto& letter = w[pos];
    if (letter.r > 0) {
      for (int j = 0; j < n; ++j) {
        gens.push_back(GenLetter{spec_.gen(cur, j, letter.r), BElem::identity(d)});
        self(self, i0, pos + 1, j);
        gens.pop_back();
      }
    } else {
      for (int j = 0; j < n; ++j) {
        const BElem& c = letter.coeff.at(cur, j);
        if (c.is_zero()) continue;
        if (gens.empty()) {
          BElem saved = prefix;
          prefix = prefix * c;
          self(self, i0, pos + 1, j);
          prefix = saved;
        } else {
          BElem saved = gens.back().b;
          gens.back().b = saved * c;
          self(self, i0, pos + 1, j);
          gens.back().b = saved;
        }
      }
    }
  };
  for (int i0 = 0; i0 < n; ++i0) walk(walk, i0, 0, i0);
  return out;
}

BMat FamilyModel::expect_d(const MatrixWord& w) {
  BMat full = expect_mnb(w);
  BMat out(spec_.n, spec_.dim());
  for (int i = 0; i < spec_.n; ++i) out.at(i, i) = full.at(i, i);
  return out;
}

BElem FamilyModel::expect_b(const MatrixWord& w) {
  BMat full = expect_mnb(w);
  BElem acc(spec_.dim());
  for (int i = 0; i < spec_.n; ++i) acc += full.at(i, i);
  return Rat(1, spec_.n) * acc;
}

namespace {

MatrixWord word_of(std::span<const MatLetter> args) {
  MatrixWord w;
  for (const auto& a : args) {
    w.push_back(MatrixWordLetter::family(a.r));
    w.push_back(MatrixWordLetter::constant(a.c));
  }
  return w;
}

}  // namespace

// nested E_D^{(pi)} at the matrix level: interval removal with values
// multiplying into the right coefficient (or pulled out on the left)
BMat FamilyModel::expect_d_nested(const SetPartition& pi, std::span<const MatLetter> args) {
  if (pi.size() != (int)args.size()) throw std::invalid_argument("nested: size mismatch");
  if (pi.block_count() == 1) return expect_d(word_of(args));
  auto blocks = pi.blocks();
  for (const auto& blk : blocks) {
    if (blk.back() - blk.front() + 1 != (int)blk.size()) continue;
    const int lo = blk.front() - 1, hi = blk.back();
    BMat inner = expect_d(word_of(args.subspan(lo, hi - lo)));
    std::vector<MatLetter> rest(args.begin(), args.begin() + lo);
    rest.insert(rest.end(), args.begin() + hi, args.end());
    std::vector<int> keep;
    for (int t = 1; t <= pi.size(); ++t)
      if (t < blk.front() || t > blk.back()) keep.push_back(t);
    SetPartition sub = pi.restrict_to(keep);
    if (lo == 0) return inner * expect_d_nested(sub, rest);
    rest[lo - 1].c = rest[lo - 1].c * inner;
    return expect_d_nested(sub, rest);
  }
  throw std::logic_error("noncrossing partition without interval block");
}

BElem FamilyModel::expect_b_nested(const SetPartition& pi, std::span<const MatLetter> args) {
  if (pi.size() != (int)args.size()) throw std::invalid_argument("nested: size mismatch");
  if (pi.block_count() == 1) return expect_b(word_of(args));
  auto blocks = pi.blocks();
  for (const auto& blk : blocks) {
    if (blk.back() - blk.front() + 1 != (int)blk.size()) continue;
    const int lo = blk.front() - 1, hi = blk.back();
    BElem inner = expect_b(word_of(args.subspan(lo, hi - lo)));
    std::vector<MatLetter> rest(args.begin(), args.begin() + lo);
    rest.insert(rest.end(), args.begin() + hi, args.end());
    std::vector<int> keep;
    for (int t = 1; t <= pi.size(); ++t)
      if (t < blk.front() || t > blk.back()) keep.push_back(t);
    SetPartition sub = pi.restrict_to(keep);
    BMat inner_mat(spec_.n, spec_.dim());
    for (int i = 0; i < spec_.n; ++i) inner_mat.at(i, i) = inner;
    if (lo == 0) {
      BElem rest_val = expect_b_nested(sub, rest);
      return inner * rest_val;
    }
    rest[lo - 1].c = rest[lo - 1].c * inner_mat;
    return expect_b_nested(sub, rest);
  }
  throw std::logic_error("noncrossing partition without interval block");
}

BMat FamilyModel::matrix_cumulant_d(std::span<const MatLetter> args) {
  const int k = (int)args.size();
  BMat acc(spec_.n, spec_.dim());
  for (const auto& sigma : enumerate_family(Family::NC, k)) {
    Int mu = mobius(sigma, SetPartition::top(k));
    if (mu == 0) continue;
    BMat term = expect_d_nested(sigma, args);
    for (int i = 0; i < spec_.n; ++i)
      for (int j = 0; j < spec_.n; ++j)
        if (!term.at(i, j).is_zero()) acc.at(i, j) += Rat(mu) * term.at(i, j);
  }
  return acc;
}

BElem FamilyModel::matrix_cumulant_b(std::span<const MatLetter> args) {
  const int k = (int)args.size();
  BElem acc(spec_.dim());
  for (const auto& sigma : enumerate_family(Family::NC, k)) {
    Int mu = mobius(sigma, SetPartition::top(k));
    if (mu == 0) continue;
    acc += Rat(mu) * expect_b_nested(sigma, args);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// alternating centered-word freeness

bool FamilyModel::alternating_words_vanish(bool over_b) {
  const int n = spec_.n;
  const int d = spec_.dim();
  const int K = spec_.order();
  const int s = spec_.s;
  witness_.reset();

  // centered M_n(B) basis letters: off-diagonal units always; diagonal
  // differences only over B (over D the diagonal lies in D itself)
  std::vector<BMat> bletters;
  for (int m = 0; m < d * d; ++m) {
    BElem em = BElem::unit(d, m / d, m % d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) bletters.push_back(BMat::unit(n, d, i, j, em));
    if (over_b)
      for (int i = 0; i + 1 < n; ++i)
        bletters.push_back(BMat::unit(n, d, i, i, em) - BMat::unit(n, d, i + 1, i + 1, em));
  }

  // family words of length 1..K with their centering constants
  std::vector<std::vector<int>> fwords;
  std::vector<BMat> fcenter;
  {
    std::vector<int> word;
    auto rec = [&](auto&& self) -> void {
      if (!word.empty()) {
        MatrixWord mw;
        for (int r : word) mw.push_back(MatrixWordLetter::family(r));
        if (over_b) {
          BElem eb = expect_b(mw);
          BMat c(n, d);
          for (int i = 0; i < n; ++i) c.at(i, i) = eb;
          fcenter.push_back(std::move(c));
        } else {
          fcenter.push_back(expect_d(mw));
        }
        fwords.push_back(word);
      }
      if ((int)word.size() == K) return;
      for (int r = 1; r <= s; ++r) {
        word.push_back(r);
        self(self);
        word.pop_back();
      }
    };
    rec(rec);
  }

  // slot sequence: Y_1 B_1 Y_2 ... Y_m; every matrix entry of the expanded
  // expectation must vanish (this subsumes words with boundary B letters)
  std::vector<int> yslots;  // indices into fwords
  std::vector<int> bslots;  // indices into bletters
  auto evaluate_zero = [&](void) -> bool {
    const int m = (int)yslots.size();
    BMat total(n, d);
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
      // term: subset picks the centering constant, complement the word
      MatrixWord w;
      int sign = 0;
      for (int t = 0; t < m; ++t) {
        if (mask & (1ull << t)) {
          w.push_back(MatrixWordLetter::constant(fcenter[yslots[t]]));
          ++sign;
        } else {
          for (int r : fwords[yslots[t]]) w.push_back(MatrixWordLetter::family(r));
        }
        if (t + 1 < m) w.push_back(MatrixWordLetter::constant(bletters[bslots[t]]));
      }
      BMat term = expect_mnb(w);
      if (sign % 2 == 0)
        total += term;
      else
        total -= term;
    }
    if (total.is_zero()) return true;
    MatrixWord w;
    for (int t = 0; t < m; ++t) {
      for (int r : fwords[yslots[t]]) w.push_back(MatrixWordLetter::family(r));
      if (t + 1 < m) w.push_back(MatrixWordLetter::constant(bletters[bslots[t]]));
    }
    witness_ = std::move(w);
    return false;
  };

  auto rec = [&](auto&& self, int budget) -> bool {
    if (!yslots.empty() && !evaluate_zero()) return false;
    if (budget == 0) return true;
    for (size_t f = 0; f < fwords.size(); ++f) {
      if ((int)fwords[f].size() > budget) continue;
      if (!yslots.empty()) {
        for (size_t b = 0; b < bletters.size(); ++b) {
          bslots.push_back((int)b);
          yslots.push_back((int)f);
          if (!self(self, budget - (int)fwords[f].size())) return false;
          yslots.pop_back();
          bslots.pop_back();
        }
      } else {
        yslots.push_back((int)f);
        if (!self(self, budget - (int)fwords[f].size())) return false;
        yslots.pop_back();
      }
    }
    return true;
  };
  return rec(rec, K);
}

bool FamilyModel::freeness_from_mnb_over_d() { return alternating_words_vanish(false); }
bool FamilyModel::freeness_from_mnb_over_b() { return alternating_words_vanish(true); }

// ---------------------------------------------------------------------------

MatrixFamilySpec product_family(const MatrixFamilySpec& fam,
                                const std::vector<std::pair<int, int>>& pairs) {
  const int n = fam.n;
  const int d = fam.dim();
  const int d2 = d * d;
  int maxlen = 0;
  for (auto [a, b] : pairs) {
    if (a < 0 || a > fam.s || b < 0 || b > fam.s) throw std::invalid_argument("bad pair");
    int len = (a > 0) + (b > 0);
    if (len == 0) throw std::invalid_argument("identity-identity pair");
    maxlen = std::max(maxlen, len);
  }
  const int Kp = fam.order() / maxlen;
  if (Kp < 1) throw TruncationError("product family: truncation exhausted");

  const int sp = (int)pairs.size();
  // involution on pairs: (a,b)* = (sigma(b), sigma(a)) when that pair exists
  std::vector<int> inv(sp);
  for (int p = 0; p < sp; ++p) {
    auto [a, b] = pairs[p];
    int sa = a > 0 ? fam.involution[a - 1] : 0;
    int sb = b > 0 ? fam.involution[b - 1] : 0;
    auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(sb, sa));
    inv[p] = it == pairs.end() ? p + 1 : (int)(it - pairs.begin()) + 1;
  }
  for (int p = 0; p < sp; ++p)
    if (inv[inv[p] - 1] != p + 1) {
      for (int& v : inv) v = 0;
      break;
    }
  if (!inv.empty() && inv[0] == 0) {
    for (int p = 0; p < sp; ++p) inv[p] = p + 1;
  }

  MatrixFamilySpec out(n, sp, d, Kp, inv);
  MomentSpec moments(d, n * n * sp, Kp, out.entry_dist.involution());
  MomentOracle oracle(fam.entry_dist);

  // all product-entry words of length <= Kp with basis insertions
  Word w;
  auto emit = [&](auto&& self) -> void {
    if (!w.empty()) {
      const int q = (int)w.size();
      // expand each product letter into base letters, summing over the
      // internal index
      std::vector<std::tuple<int, int, int, int>> letters(q);  // (i, j, p, m)
      for (int t = 0; t < q; ++t) {
        auto [i, j, p] = out.ungen((int)(w[t] / d2) + 1);
        letters[t] = {i, j, p, (int)(w[t] % d2)};
      }
      BElem acc(d);
      std::vector<int> internal(q, 0);
      while (true) {
        std::vector<GenLetter> base;
        bool ok = true;
        for (int t = 0; t < q && ok; ++t) {
          auto [i, j, p, m] = letters[t];
          auto [a, b] = pairs[p - 1];
          BElem ins = BElem::unit(d, m / d, m % d);
          if (a > 0 && b > 0) {
            int l = internal[t];
            base.push_back(GenLetter{fam.gen(i, l, a), BElem::identity(d)});
            base.push_back(GenLetter{fam.gen(l, j, b), ins});
          } else if (a > 0) {  // b is the identity matrix
            if (internal[t] != 0) {
              ok = false;
              break;
            }
            base.push_back(GenLetter{fam.gen(i, j, a), ins});
          } else {  // a identity
            if (internal[t] != 0) {
              ok = false;
              break;
            }
            base.push_back(GenLetter{fam.gen(i, j, b), ins});
          }
        }
        if (ok) acc += oracle.moment(base);
        int t = q - 1;
        while (t >= 0 && ++internal[t] == n) internal[t--] = 0;
        if (t < 0) break;
      }
      if (!acc.is_zero()) moments.set_moment_word(w, std::move(acc));
    }
    if ((int)w.size() == Kp) return;
    for (int l = 0; l < n * n * sp * d2; ++l) {
      w.push_back((std::uint32_t)l);
      self(self);
      w.pop_back();
    }
  };
  emit(emit);

  out.entry_dist = cumulants_from_moments(moments);
  return out;
}

MatrixFamilySpec add_linear_combination(const MatrixFamilySpec& fam,
                                        const std::vector<Rat>& coeffs) {
  if (fam.dim() != 1) throw std::invalid_argument("add_linear_combination: d = 1 only");
  if ((int)coeffs.size() != fam.s) throw std::invalid_argument("coefficient count mismatch");
  const int n = fam.n;
  std::vector<int> inv(fam.s + 1);
  for (int r = 1; r <= fam.s; ++r) inv[r - 1] = fam.involution[r - 1];
  inv[fam.s] = fam.s + 1;
  MatrixFamilySpec out(n, fam.s + 1, 1, fam.order(), inv);
  for (const auto& [w, v] : fam.entry_dist.entries()) out.entry_dist.set_kappa_word(w, v);
  // words containing the new letter expand multilinearly
  Word w;
  auto rec = [&](auto&& self, bool has_new) -> void {
    if (!w.empty() && has_new) {
      const int k = (int)w.size();
      Rat total = 0;
      std::vector<int> choice;
      std::vector<int> newpos;
      for (int t = 0; t < k; ++t) {
        auto [i, j, r] = out.ungen((int)w[t] + 1);
        (void)i;
        (void)j;
        if (r == fam.s + 1) newpos.push_back(t);
      }
      choice.assign(newpos.size(), 1);
      while (true) {
        Word base = w;
        Rat c = 1;
        for (size_t z = 0; z < newpos.size(); ++z) {
          auto [i, j, r] = out.ungen((int)w[newpos[z]] + 1);
          (void)r;
          base[newpos[z]] = (std::uint32_t)(fam.gen(i, j, choice[z]) - 1);
          c *= coeffs[choice[z] - 1];
        }
        if (c != 0) {
          BElem kv = fam.entry_dist.kappa_basis(base);
          if (!kv.is_zero()) total += c * kv.at(0, 0);
        }
        size_t z = newpos.size() - 1;
        while (true) {
          if (++choice[z] <= fam.s) break;
          choice[z] = 1;
          if (z == 0) goto done;
          --z;
        }
      }
    done:
      if (total != 0) {
        BElem val(1);
        val.at(0, 0) = total;
        out.entry_dist.set_kappa_word(w, val);
      }
    }
    if ((int)w.size() == fam.order()) return;
    for (int l = 0; l < n * n * (fam.s + 1); ++l) {
      auto [i, j, r] = out.ungen(l + 1);
      (void)i;
      (void)j;
      w.push_back((std::uint32_t)l);
      self(self, has_new || r == fam.s + 1);
      w.pop_back();
    }
  };
  rec(rec, false);
  return out;
}

MatrixFamilySpec add_constant_diagonal(const MatrixFamilySpec& fam,
                                       const std::vector<BElem>& diag) {
  if ((int)diag.size() != fam.n) throw std::invalid_argument("diagonal size mismatch");
  const int d = fam.dim();
  const int d2 = d * d;
  std::vector<int> inv(fam.s + 1);
  for (int r = 1; r <= fam.s; ++r) inv[r - 1] = fam.involution[r - 1];
  inv[fam.s] = fam.s + 1;  // a constant diagonal over commutative entries; kept self-adjoint
  MatrixFamilySpec out(fam.n, fam.s + 1, d, fam.order(), inv);
  for (const auto& [w, v] : fam.entry_dist.entries()) out.entry_dist.set_kappa_word(w, v);
  // kappa^(1)[c b] = E[c b] = diag_i * b; higher cumulants with a constant
  // entry vanish
  for (int i = 0; i < fam.n; ++i)
    for (int m = 0; m < d2; ++m) {
      BElem v = diag[i] * BElem::unit(d, m / d, m % d);
      if (v.is_zero()) continue;
      Word w{(std::uint32_t)((out.gen(i, i, fam.s + 1) - 1) * d2 + m)};
      out.entry_dist.set_kappa_word(w, v);
    }
  return out;
}

}  // namespace ncfree
