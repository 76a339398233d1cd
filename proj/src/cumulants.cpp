#include "ncfree/cumulants.hpp"

#include <algorithm>

namespace ncfree {

BElem BElem::identity(int d) {
  BElem b(d);
  for (int i = 0; i < d; ++i) b.at(i, i) = 1;
  return b;
}

BElem BElem::unit(int d, int row, int col) {
  BElem b(d);
  b.at(row, col) = 1;
  return b;
}

BElem BElem::scalar(int d, const Rat& v) {
  BElem b(d);
  for (int i = 0; i < d; ++i) b.at(i, i) = v;
  return b;
}

bool BElem::is_zero() const {
  for (const auto& v : e_)
    if (v != 0) return false;
  return true;
}

Rat BElem::normalized_trace() const {
  Rat t = 0;
  for (int i = 0; i < d_; ++i) t += at(i, i);
  t /= d_;
  return t;
}

BElem& BElem::operator+=(const BElem& o) {
  if (d_ != o.d_) throw std::invalid_argument("BElem: dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

BElem& BElem::operator-=(const BElem& o) {
  if (d_ != o.d_) throw std::invalid_argument("BElem: dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

BElem operator*(const BElem& a, const BElem& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("BElem: dimension mismatch");
  const int d = a.d_;
  BElem c(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const Rat& v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < d; ++j) c.at(i, j) += v * b.at(k, j);
    }
  return c;
}

BElem operator*(const Rat& c, BElem a) {
  for (int i = 0; i < a.d_; ++i)
    for (int j = 0; j < a.d_; ++j) a.at(i, j) *= c;
  return a;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> check_involution(std::vector<int> inv, int s) {
  if (inv.empty()) {
    inv.resize(s);
    for (int r = 1; r <= s; ++r) inv[r - 1] = r;
  }
  if ((int)inv.size() != s) throw std::invalid_argument("involution: wrong size");
  for (int r = 1; r <= s; ++r) {
    int t = inv[r - 1];
    if (t < 1 || t > s || inv[t - 1] != r) throw std::invalid_argument("involution: not an involution");
  }
  return inv;
}

// shared multilinear expansion over basis insertions
template <typename Table>
BElem multilinear_eval(const Table& basis_fn, std::span<const GenLetter> args, int d) {
  const int k = (int)args.size();
  BElem out(d);
  Word w(k);
  Rat coeff;
  // expand insertion t as sum over nonzero entries of args[t].b
  std::vector<std::pair<int, Rat>> expansions;  // flattened per position
  std::vector<int> offsets(k + 1, 0);
  for (int t = 0; t < k; ++t) {
    const BElem& b = args[t].b;
    if (b.dim() != d) throw std::invalid_argument("insertion dimension mismatch");
    for (int a = 0; a < d; ++a)
      for (int bb = 0; bb < d; ++bb)
        if (b.at(a, bb) != 0) expansions.push_back({a * d + bb, b.at(a, bb)});
    offsets[t + 1] = (int)expansions.size();
    if (offsets[t + 1] == offsets[t]) return out;  // zero insertion
  }
  std::vector<int> pick(k, 0);
  while (true) {
    coeff = 1;
    for (int t = 0; t < k; ++t) {
      const auto& [m, c] = expansions[offsets[t] + pick[t]];
      w[t] = (std::uint32_t)((args[t].r - 1) * d * d + m);
      coeff *= c;
    }
    BElem term = basis_fn(w);
    if (!term.is_zero()) out += coeff * term;
    int t = k - 1;
    while (t >= 0 && ++pick[t] == offsets[t + 1] - offsets[t]) pick[t--] = 0;
    if (t < 0) break;
  }
  return out;
}

}  // namespace

DistributionSpec::DistributionSpec(int d, int s, int K, std::vector<int> involution)
    : d_(d), s_(s), K_(K), involution_(check_involution(std::move(involution), s)) {
  if (d < 1 || s < 1 || K < 0) throw std::invalid_argument("bad spec shape");
}

std::uint32_t DistributionSpec::pack(int r, int m) const {
  if (r < 1 || r > s_ || m < 0 || m >= d_ * d_) throw std::invalid_argument("bad letter");
  return (std::uint32_t)((r - 1) * d_ * d_ + m);
}

void DistributionSpec::set_kappa(const std::vector<int>& r_word, const std::vector<int>& m_word,
                                 BElem v) {
  if (r_word.size() != m_word.size()) throw std::invalid_argument("word length mismatch");
  Word w(r_word.size());
  for (size_t t = 0; t < r_word.size(); ++t) w[t] = pack(r_word[t], m_word[t]);
  set_kappa_word(w, std::move(v));
}

void DistributionSpec::set_kappa_word(const Word& w, BElem v) {
  if ((int)w.size() > K_ || w.empty()) throw std::invalid_argument("bad word length");
  if (v.dim() != d_) throw std::invalid_argument("value dimension mismatch");
  if (v.is_zero())
    table_.erase(w);
  else
    table_[w] = std::move(v);
}

BElem DistributionSpec::kappa_basis(const Word& w) const {
  if ((int)w.size() > K_)
    throw TruncationError("cumulant query beyond truncation order K=" + std::to_string(K_));
  auto it = table_.find(w);
  return it == table_.end() ? BElem::zero(d_) : it->second;
}

BElem DistributionSpec::kappa(std::span<const GenLetter> args) const {
  if ((int)args.size() > K_)
    throw TruncationError("cumulant query beyond truncation order K=" + std::to_string(K_));
  return multilinear_eval([this](const Word& w) { return kappa_basis(w); }, args, d_);
}

bool DistributionSpec::operator==(const DistributionSpec& o) const {
  return d_ == o.d_ && s_ == o.s_ && K_ == o.K_ && involution_ == o.involution_ &&
         table_ == o.table_;
}

MomentSpec::MomentSpec(int d, int s, int K, std::vector<int> involution)
    : d_(d), s_(s), K_(K), involution_(check_involution(std::move(involution), s)) {
  if (d < 1 || s < 1 || K < 0) throw std::invalid_argument("bad spec shape");
}

std::uint32_t MomentSpec::pack(int r, int m) const {
  if (r < 1 || r > s_ || m < 0 || m >= d_ * d_) throw std::invalid_argument("bad letter");
  return (std::uint32_t)((r - 1) * d_ * d_ + m);
}

void MomentSpec::set_moment(const std::vector<int>& r_word, const std::vector<int>& m_word,
                            BElem v) {
  if (r_word.size() != m_word.size()) throw std::invalid_argument("word length mismatch");
  Word w(r_word.size());
  for (size_t t = 0; t < r_word.size(); ++t) w[t] = pack(r_word[t], m_word[t]);
  set_moment_word(w, std::move(v));
}

void MomentSpec::set_moment_word(const Word& w, BElem v) {
  if ((int)w.size() > K_ || w.empty()) throw std::invalid_argument("bad word length");
  if (v.dim() != d_) throw std::invalid_argument("value dimension mismatch");
  if (v.is_zero())
    table_.erase(w);
  else
    table_[w] = std::move(v);
}

BElem MomentSpec::moment_basis(const Word& w) const {
  if ((int)w.size() > K_)
    throw TruncationError("moment query beyond truncation order K=" + std::to_string(K_));
  if (w.empty()) return BElem::identity(d_);  // E[1] = 1
  auto it = table_.find(w);
  return it == table_.end() ? BElem::zero(d_) : it->second;
}

BElem MomentSpec::moment(std::span<const GenLetter> args) const {
  if ((int)args.size() > K_)
    throw TruncationError("moment query beyond truncation order K=" + std::to_string(K_));
  return multilinear_eval([this](const Word& w) { return moment_basis(w); }, args, d_);
}

bool MomentSpec::operator==(const MomentSpec& o) const {
  return d_ == o.d_ && s_ == o.s_ && K_ == o.K_ && involution_ == o.involution_ &&
         table_ == o.table_;
}

// ---------------------------------------------------------------------------
// moment recursion over the block of the first point:
//   E[w] = sum_{V = (1=v1<...<vm)} kappa^{(m)}[x_{v1} c_1, ..., x_{vm} c_m],
//   c_i = unit(m_{v_i}) * E[gap after v_i]   (gaps are contiguous subwords)

const BElem& MomentOracle::moment_basis(const Word& w) {
  if ((int)w.size() > spec_->order())
    throw TruncationError("moment query beyond truncation order K=" +
                          std::to_string(spec_->order()));
  if (auto it = memo_.find(w); it != memo_.end()) return it->second;
  if (w.empty()) return memo_.emplace(w, BElem::identity(spec_->dim())).first->second;
  const int d = spec_->dim();
  const int d2 = d * d;
  const int k = (int)w.size();
  BElem acc(d);
  const int gapcount = k - 1;
  // subsets of {2..k} joined with {1} as the block of 1
  for (std::uint64_t mask = 0; mask < (1ull << gapcount); ++mask) {
    std::vector<int> block{0};
    for (int t = 0; t < gapcount; ++t)
      if (mask & (1ull << t)) block.push_back(t + 1);
    std::vector<GenLetter> args(block.size());
    bool zero_gap = false;
    for (size_t i = 0; i < block.size(); ++i) {
      const int pos = block[i];
      const int r = (int)(w[pos] / d2) + 1;
      const int m = (int)(w[pos] % d2);
      const int gap_begin = pos + 1;
      const int gap_end = (i + 1 < block.size()) ? block[i + 1] : k;
      BElem ins = BElem::unit(d, m / d, m % d);
      if (gap_begin < gap_end) {
        Word sub(w.begin() + gap_begin, w.begin() + gap_end);
        const BElem& gap = moment_basis(sub);
        if (gap.is_zero()) {
          zero_gap = true;
          break;
        }
        ins = ins * gap;
      }
      args[i] = GenLetter{r, std::move(ins)};
    }
    if (zero_gap) continue;
    acc += spec_->kappa(args);
  }
  return memo_.emplace(w, std::move(acc)).first->second;
}

BElem MomentOracle::moment(std::span<const GenLetter> args) {
  return multilinear_eval([this](const Word& w) { return moment_basis(w); }, args,
                          spec_->dim());
}

// ---------------------------------------------------------------------------

BElem nested_eval(const BFunctional& rho, const SetPartition& pi,
                  std::span<const GenLetter> args, int d, IntervalChoice choice) {
  if (pi.size() != (int)args.size()) throw std::invalid_argument("nested_eval: size mismatch");
  if (!pi.is_noncrossing()) throw std::invalid_argument("nested_eval: crossing partition");
  if (args.empty()) return BElem::identity(d);
  if (pi.block_count() == 1) return rho(args);
  // locate an interval block
  auto blocks = pi.blocks();
  int chosen = -1;
  for (int b = 0; b < (int)blocks.size(); ++b) {
    const auto& blk = blocks[b];
    if (blk.back() - blk.front() + 1 == (int)blk.size()) {
      chosen = b;
      if (choice == IntervalChoice::First) break;
    }
  }
  const auto& blk = blocks[chosen];
  const int lo = blk.front() - 1, hi = blk.back();  // 0-based [lo, hi)
  BElem inner = rho(args.subspan(lo, hi - lo));
  std::vector<GenLetter> rest(args.begin(), args.begin() + lo);
  rest.insert(rest.end(), args.begin() + hi, args.end());
  std::vector<int> keep;
  for (int t = 1; t <= pi.size(); ++t)
    if (t < blk.front() || t > blk.back()) keep.push_back(t);
  SetPartition sub = pi.restrict_to(keep);
  if (lo == 0) return inner * nested_eval(rho, sub, rest, d, choice);
  rest[lo - 1].b = rest[lo - 1].b * inner;
  return nested_eval(rho, sub, rest, d, choice);
}

MomentSpec moments_from_cumulants(const DistributionSpec& spec) {
  MomentSpec out(spec.dim(), spec.generators(), spec.order(), spec.involution());
  MomentOracle oracle(spec);
  const int letters = spec.generators() * spec.dim() * spec.dim();
  Word w;
  // depth-first over all basis words of length <= K
  auto rec = [&](auto&& self) -> void {
    if (!w.empty()) {
      BElem v = oracle.moment_basis(w);
      if (!v.is_zero()) out.set_moment_word(w, std::move(v));
    }
    if ((int)w.size() == spec.order()) return;
    for (int l = 0; l < letters; ++l) {
      w.push_back((std::uint32_t)l);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
  return out;
}

namespace {

// kappa[w] = E[w] - sum over proper blocks of 1, mirroring the moment
// recursion; memoized per call
class CumulantOracle {
 public:
  explicit CumulantOracle(const MomentSpec& spec) : spec_(&spec) {}

  const BElem& kappa_basis(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    const int d = spec_->dim();
    const int d2 = d * d;
    const int k = (int)w.size();
    BElem acc = spec_->moment_basis(w);
    const int gapcount = k - 1;
    for (std::uint64_t mask = 0; mask + 1 < (1ull << gapcount); ++mask) {
      // mask of full gaps membership; skip the full block (all bits set)
      std::vector<int> block{0};
      for (int t = 0; t < gapcount; ++t)
        if (mask & (1ull << t)) block.push_back(t + 1);
      std::vector<GenLetter> args(block.size());
      bool zero_gap = false;
      for (size_t i = 0; i < block.size(); ++i) {
        const int pos = block[i];
        const int r = (int)(w[pos] / d2) + 1;
        const int m = (int)(w[pos] % d2);
        const int gap_begin = pos + 1;
        const int gap_end = (i + 1 < block.size()) ? block[i + 1] : k;
        BElem ins = BElem::unit(d, m / d, m % d);
        if (gap_begin < gap_end) {
          Word sub(w.begin() + gap_begin, w.begin() + gap_end);
          BElem gap = moment_of(sub);
          if (gap.is_zero()) {
            zero_gap = true;
            break;
          }
          ins = ins * gap;
        }
        args[i] = GenLetter{r, std::move(ins)};
      }
      if (zero_gap) continue;
      acc -= kappa_multilinear(args);
    }
    return memo_.emplace(w, std::move(acc)).first->second;
  }

 private:
  BElem moment_of(const Word& w) { return spec_->moment_basis(w); }
  BElem kappa_multilinear(std::span<const GenLetter> args) {
    return multilinear_eval([this](const Word& w) { return kappa_basis(w); }, args,
                            spec_->dim());
  }
  const MomentSpec* spec_;
  std::unordered_map<Word, BElem, WordHash> memo_;
};

}  // namespace

DistributionSpec cumulants_from_moments(const MomentSpec& spec) {
  DistributionSpec out(spec.dim(), spec.generators(), spec.order(), spec.involution());
  CumulantOracle oracle(spec);
  const int letters = spec.generators() * spec.dim() * spec.dim();
  Word w;
  auto rec = [&](auto&& self) -> void {
    if (!w.empty()) {
      BElem v = oracle.kappa_basis(w);
      if (!v.is_zero()) out.set_kappa_word(w, std::move(v));
    }
    if ((int)w.size() == spec.order()) return;
    for (int l = 0; l < letters; ++l) {
      w.push_back((std::uint32_t)l);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
  return out;
}

bool freeness_check(const DistributionSpec& spec, const std::vector<int>& klass) {
  if ((int)klass.size() != spec.generators())
    throw std::invalid_argument("freeness_check: class vector size mismatch");
  const int d2 = spec.dim() * spec.dim();
  for (const auto& [w, v] : spec.entries()) {
    int first = klass[w[0] / d2];
    for (auto letter : w)
      if (klass[letter / d2] != first) return false;  // nonzero mixed cumulant
  }
  return true;
}

DistributionSpec free_product_copies(const DistributionSpec& spec, int copies) {
  if (copies < 1) throw std::invalid_argument("free_product_copies: need copies >= 1");
  const int s = spec.generators();
  const int d2 = spec.dim() * spec.dim();
  std::vector<int> inv(s * copies);
  for (int c = 0; c < copies; ++c)
    for (int r = 1; r <= s; ++r) inv[c * s + r - 1] = c * s + spec.involution()[r - 1];
  DistributionSpec out(spec.dim(), s * copies, spec.order(), std::move(inv));
  for (const auto& [w, v] : spec.entries()) {
    for (int c = 0; c < copies; ++c) {
      Word shifted(w.size());
      for (size_t t = 0; t < w.size(); ++t) shifted[t] = w[t] + (std::uint32_t)(c * s * d2);
      out.set_kappa_word(shifted, v);
    }
  }
  return out;
}

}  // namespace ncfree
