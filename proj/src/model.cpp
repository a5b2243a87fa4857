#include "polyball/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyball {

namespace {
// Saturation value for dimension arithmetic; anything this large is
// rejected by check_dim anyway.
constexpr uint64_t kDimSat = UINT64_C(1) << 62;

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kDimSat / b) return kDimSat;
  return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  return (a > kDimSat - b) ? kDimSat : a + b;
}
}  // namespace

Truncation::Truncation(std::vector<int> d, std::vector<int> n)
    : degrees(std::move(d)), alphabet_sizes(std::move(n)) {
  if (degrees.empty() || degrees.size() != alphabet_sizes.size())
    throw std::invalid_argument("truncation shape mismatch");
  for (size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) throw std::invalid_argument("degrees must be >= 0");
    if (alphabet_sizes[i] < 1)
      throw std::invalid_argument("alphabet sizes must be >= 1");
  }
}

uint64_t Truncation::factor_dim(int i) const {
  const uint64_t n = static_cast<uint64_t>(alphabet_sizes[static_cast<size_t>(i)]);
  uint64_t pow = 1, total = 0;
  for (int m = 0; m <= degrees[static_cast<size_t>(i)]; ++m) {
    total = sat_add(total, pow);
    pow = sat_mul(pow, n);
  }
  return total;
}

uint64_t Truncation::total_dim() const {
  uint64_t total = 1;
  for (int i = 0; i < factors(); ++i) total = sat_mul(total, factor_dim(i));
  return total;
}

void Truncation::check_dim(uint64_t cap) const {
  if (total_dim() > cap)
    throw std::length_error("truncated Fock dimension exceeds cap");
}

BasisIndexer::BasisIndexer(Truncation trunc) : trunc_(std::move(trunc)) {
  const int k = trunc_.factors();
  pref_.resize(static_cast<size_t>(k));
  factor_dims_.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const uint64_t n = static_cast<uint64_t>(trunc_.alphabet_sizes[static_cast<size_t>(i)]);
    auto& p = pref_[static_cast<size_t>(i)];
    p.assign(static_cast<size_t>(trunc_.degrees[static_cast<size_t>(i)]) + 2, 0);
    uint64_t pow = 1;
    for (size_t len = 1; len < p.size(); ++len) {
      p[len] = sat_add(p[len - 1], pow);
      pow = sat_mul(pow, n);
    }
    factor_dims_[static_cast<size_t>(i)] = p.back();
  }
  strides_.assign(static_cast<size_t>(k), 1);
  for (int i = k - 2; i >= 0; --i)
    strides_[static_cast<size_t>(i)] =
        sat_mul(strides_[static_cast<size_t>(i) + 1], factor_dims_[static_cast<size_t>(i) + 1]);
  total_dim_ = sat_mul(strides_[0], factor_dims_[0]);
}

int BasisIndexer::word_length(int factor, uint64_t factor_index) const {
  const auto& p = pref_[static_cast<size_t>(factor)];
  auto it = std::upper_bound(p.begin(), p.end(), factor_index);
  return static_cast<int>(it - p.begin()) - 1;
}

uint64_t BasisIndexer::word_index(int factor, const Word& w) const {
  const uint64_t n = static_cast<uint64_t>(trunc_.alphabet_sizes[static_cast<size_t>(factor)]);
  uint64_t value = 0;
  for (int c : w.letters()) value = value * n + static_cast<uint64_t>(c - 1);
  return pref_[static_cast<size_t>(factor)][static_cast<size_t>(w.length())] + value;
}

Word BasisIndexer::word_at(int factor, uint64_t factor_index) const {
  const int len = word_length(factor, factor_index);
  const int n = trunc_.alphabet_sizes[static_cast<size_t>(factor)];
  uint64_t value =
      factor_index - pref_[static_cast<size_t>(factor)][static_cast<size_t>(len)];
  std::vector<int> letters(static_cast<size_t>(len));
  for (int j = len - 1; j >= 0; --j) {
    letters[static_cast<size_t>(j)] = static_cast<int>(value % static_cast<uint64_t>(n)) + 1;
    value /= static_cast<uint64_t>(n);
  }
  return Word(std::move(letters), n);
}

uint64_t BasisIndexer::index_of(const MultiWord& w) const {
  uint64_t idx = 0;
  for (int i = 0; i < trunc_.factors(); ++i)
    idx += word_index(i, w.part(i)) * strides_[static_cast<size_t>(i)];
  return idx;
}

MultiWord BasisIndexer::multiword_at(uint64_t index) const {
  std::vector<Word> parts;
  parts.reserve(static_cast<size_t>(trunc_.factors()));
  for (int i = 0; i < trunc_.factors(); ++i) {
    uint64_t fi = (index / strides_[static_cast<size_t>(i)]) % factor_dims_[static_cast<size_t>(i)];
    parts.push_back(word_at(i, fi));
  }
  return MultiWord(std::move(parts));
}

int BasisIndexer::slot_length(int factor, uint64_t flat_index) const {
  uint64_t fi = (flat_index / strides_[static_cast<size_t>(factor)]) %
                factor_dims_[static_cast<size_t>(factor)];
  return word_length(factor, fi);
}

uint64_t BasisIndexer::prepend_index(int factor, const Word& prefix,
                                     uint64_t factor_index) const {
  const uint64_t n = static_cast<uint64_t>(trunc_.alphabet_sizes[static_cast<size_t>(factor)]);
  const int len = word_length(factor, factor_index);
  const uint64_t value =
      factor_index - pref_[static_cast<size_t>(factor)][static_cast<size_t>(len)];
  uint64_t pv = 0;
  for (int c : prefix.letters()) pv = pv * n + static_cast<uint64_t>(c - 1);
  uint64_t npow = 1;
  for (int j = 0; j < len; ++j) npow *= n;
  return pref_[static_cast<size_t>(factor)][static_cast<size_t>(len + prefix.length())] +
         pv * npow + value;
}

std::vector<MultiWord> basis(const Truncation& trunc, uint64_t cap) {
  trunc.check_dim(cap);
  BasisIndexer ix(trunc);
  std::vector<MultiWord> out;
  out.reserve(ix.total_dim());
  for (uint64_t b = 0; b < ix.total_dim(); ++b) out.push_back(ix.multiword_at(b));
  return out;
}

static SparseCMat creation_matrix(const Truncation& trunc, int factor,
                                  int letter, bool left, uint64_t cap) {
  trunc.check_dim(cap);
  if (factor < 0 || factor >= trunc.factors())
    throw std::out_of_range("factor index out of range");
  const int n = trunc.alphabet_sizes[static_cast<size_t>(factor)];
  if (letter < 1 || letter > n) throw std::out_of_range("letter out of range");
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  const uint64_t fdim = ix.factor_dim(factor);
  const uint64_t stride = ix.stride(factor);
  const int d = trunc.degrees[static_cast<size_t>(factor)];

  // Per-factor target index for each source factor index; -1 when the
  // output degree exceeds the cutoff.
  std::vector<int64_t> tgt(fdim, -1);
  for (uint64_t fi = 0; fi < fdim; ++fi) {
    const int len = ix.word_length(factor, fi);
    if (len == d) continue;
    const uint64_t value = fi - ix.words_below(factor, len);
    uint64_t nv;
    if (left) {
      uint64_t npow = 1;
      for (int j = 0; j < len; ++j) npow *= static_cast<uint64_t>(n);
      nv = static_cast<uint64_t>(letter - 1) * npow + value;
    } else {
      nv = value * static_cast<uint64_t>(n) + static_cast<uint64_t>(letter - 1);
    }
    tgt[fi] = static_cast<int64_t>(ix.words_below(factor, len + 1) + nv);
  }

  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(dim);
  for (uint64_t b = 0; b < dim; ++b) {
    const uint64_t fi = (b / stride) % fdim;
    if (tgt[fi] < 0) continue;
    const uint64_t t = b + (static_cast<uint64_t>(tgt[fi]) - fi) * stride;
    trips.emplace_back(static_cast<int>(t), static_cast<int>(b), Complex(1.0, 0.0));
  }
  SparseCMat s(static_cast<int>(dim), static_cast<int>(dim));
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

SparseCMat left_creation(const Truncation& trunc, int factor, int letter,
                         uint64_t cap) {
  return creation_matrix(trunc, factor, letter, /*left=*/true, cap);
}

SparseCMat right_creation(const Truncation& trunc, int factor, int letter,
                          uint64_t cap) {
  return creation_matrix(trunc, factor, letter, /*left=*/false, cap);
}

Scaling Scaling::uniform(double r) {
  if (r < 0) throw std::invalid_argument("scaling must be >= 0");
  Scaling s;
  s.kind_ = Kind::kUniform;
  s.r_ = r;
  return s;
}

Scaling Scaling::per_factor(std::vector<double> r) {
  for (double v : r)
    if (v < 0) throw std::invalid_argument("scaling must be >= 0");
  Scaling s;
  s.kind_ = Kind::kPerFactor;
  s.per_factor_ = std::move(r);
  return s;
}

Scaling Scaling::per_letter(std::vector<std::vector<double>> r) {
  for (const auto& f : r)
    for (double v : f)
      if (v < 0) throw std::invalid_argument("scaling must be >= 0");
  Scaling s;
  s.kind_ = Kind::kPerLetter;
  s.per_letter_ = std::move(r);
  return s;
}

double Scaling::letter_weight(int factor, int letter) const {
  switch (kind_) {
    case Kind::kUniform:
      return r_;
    case Kind::kPerFactor:
      return per_factor_.at(static_cast<size_t>(factor));
    case Kind::kPerLetter:
      return per_letter_.at(static_cast<size_t>(factor)).at(static_cast<size_t>(letter - 1));
  }
  return r_;
}

double Scaling::word_weight(int factor, const Word& w) const {
  if (kind_ == Kind::kUniform) return std::pow(r_, w.length());
  if (kind_ == Kind::kPerFactor)
    return std::pow(per_factor_.at(static_cast<size_t>(factor)), w.length());
  double v = 1.0;
  for (int c : w.letters()) v *= letter_weight(factor, c);
  return v;
}

double Scaling::weight(const MultiWord& w) const {
  double v = 1.0;
  for (int i = 0; i < w.factors(); ++i) v *= word_weight(i, w.part(i));
  return v;
}

FreePolynomial::FreePolynomial(std::vector<int> alphabet_sizes, int coeff_dim)
    : alphabet_sizes_(std::move(alphabet_sizes)), coeff_dim_(coeff_dim) {
  if (alphabet_sizes_.empty())
    throw std::invalid_argument("need at least one factor");
  if (coeff_dim_ < 1) throw std::invalid_argument("coeff_dim must be >= 1");
}

FreePolynomial FreePolynomial::constant(std::vector<int> alphabet_sizes,
                                        const DenseCMat& a0) {
  FreePolynomial f(alphabet_sizes, static_cast<int>(a0.rows()));
  f.set_term(MultiWord::identity(alphabet_sizes), a0);
  return f;
}

FreePolynomial FreePolynomial::constant(std::vector<int> alphabet_sizes,
                                        Complex a0) {
  DenseCMat m(1, 1);
  m(0, 0) = a0;
  return constant(std::move(alphabet_sizes), m);
}

void FreePolynomial::set_term(const MultiWord& w, DenseCMat coeff) {
  if (w.alphabet_sizes() != alphabet_sizes_)
    throw std::invalid_argument("term alphabet mismatch");
  if (coeff.rows() != coeff_dim_ || coeff.cols() != coeff_dim_)
    throw std::invalid_argument("coefficient dimension mismatch");
  if (!coeff.allFinite())
    throw std::invalid_argument("coefficient has non-finite entries");
  if (coeff.isZero(0.0)) {
    terms_.erase(w);
  } else {
    terms_[w] = std::move(coeff);
  }
}

void FreePolynomial::add_term(const MultiWord& w, const DenseCMat& coeff) {
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    set_term(w, coeff);
  } else {
    set_term(w, it->second + coeff);
  }
}

void FreePolynomial::set_scalar_term(const MultiWord& w, Complex c) {
  DenseCMat m(1, 1);
  m(0, 0) = c;
  set_term(w, std::move(m));
}

DenseCMat FreePolynomial::coefficient(const MultiWord& w) const {
  auto it = terms_.find(w);
  if (it == terms_.end()) return DenseCMat::Zero(coeff_dim_, coeff_dim_);
  return it->second;
}

Complex FreePolynomial::scalar_coefficient(const MultiWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex(0) : it->second(0, 0);
}

int FreePolynomial::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.total_degree());
  return d;
}

int FreePolynomial::slot_degree(int factor) const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.part(factor).length());
  return d;
}

std::vector<std::vector<int>> FreePolynomial::multidegrees() const {
  std::vector<std::vector<int>> out;
  for (const auto& [w, c] : terms_) out.push_back(w.multidegree());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FreePolynomial FreePolynomial::restricted_to_multidegree(
    const std::vector<int>& p) const {
  FreePolynomial out(alphabet_sizes_, coeff_dim_);
  for (const auto& [w, c] : terms_)
    if (w.multidegree() == p) out.set_term(w, c);
  return out;
}

FreePolynomial FreePolynomial::restricted_to_total_degree(int q) const {
  FreePolynomial out(alphabet_sizes_, coeff_dim_);
  for (const auto& [w, c] : terms_)
    if (w.total_degree() == q) out.set_term(w, c);
  return out;
}

void FreePolynomial::scale(Complex factor) {
  if (factor == Complex(0)) {
    terms_.clear();
    return;
  }
  for (auto& [w, c] : terms_) c *= factor;
}

FreePolynomial FreePolynomial::scaled(Complex factor) const {
  FreePolynomial out = *this;
  out.scale(factor);
  return out;
}

Truncation truncation_for(const FreePolynomial& f, int headroom) {
  const int d = f.degree() + headroom;
  return Truncation(std::vector<int>(f.alphabet_sizes().size(), d),
                    f.alphabet_sizes());
}

SparseCMat assemble(const FreePolynomial& f, const Scaling& rho,
                    const Truncation& trunc, uint64_t cap) {
  if (f.alphabet_sizes() != trunc.alphabet_sizes)
    throw std::invalid_argument("alphabet mismatch");
  trunc.check_dim(cap);
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  const int k = trunc.factors();
  const int m = f.coeff_dim();

  std::vector<Eigen::Triplet<Complex>> trips;
  for (const auto& [alpha, coeff] : f.terms()) {
    double w = rho.weight(alpha);
    if (w == 0.0 && !alpha.is_identity()) continue;

    // Sources are the words that survive prepending alpha in every factor:
    // factor index below words_below(d_i - |alpha_i| + 1).
    std::vector<uint64_t> counts(static_cast<size_t>(k));
    bool fits = true;
    uint64_t tuple_count = 1;
    for (int i = 0; i < k && fits; ++i) {
      const int room = trunc.degrees[static_cast<size_t>(i)] - alpha.part(i).length();
      if (room < 0) {
        fits = false;
        break;
      }
      counts[static_cast<size_t>(i)] = ix.words_below(i, room + 1);
      tuple_count = sat_mul(tuple_count, counts[static_cast<size_t>(i)]);
    }
    if (!fits) continue;
    if (tuple_count > cap)
      throw std::length_error("assembly too large for cap");

    // Precompute per-factor target indices.
    std::vector<std::vector<uint64_t>> tgt(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      auto& t = tgt[static_cast<size_t>(i)];
      t.resize(counts[static_cast<size_t>(i)]);
      for (uint64_t s = 0; s < counts[static_cast<size_t>(i)]; ++s)
        t[s] = ix.prepend_index(i, alpha.part(i), s);
    }

    std::vector<uint64_t> src(static_cast<size_t>(k), 0);
    while (true) {
      uint64_t flat_src = 0, flat_tgt = 0;
      for (int i = 0; i < k; ++i) {
        flat_src += src[static_cast<size_t>(i)] * ix.stride(i);
        flat_tgt += tgt[static_cast<size_t>(i)][src[static_cast<size_t>(i)]] * ix.stride(i);
      }
      for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
          const Complex a = coeff(r, s);
          if (a == Complex(0)) continue;
          trips.emplace_back(
              static_cast<int>(static_cast<uint64_t>(r) * dim + flat_tgt),
              static_cast<int>(static_cast<uint64_t>(s) * dim + flat_src),
              w * a);
        }
      }
      int i = k - 1;
      while (i >= 0) {
        if (++src[static_cast<size_t>(i)] < counts[static_cast<size_t>(i)]) break;
        src[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }

  SparseCMat out(static_cast<int>(static_cast<uint64_t>(m) * dim),
                 static_cast<int>(static_cast<uint64_t>(m) * dim));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

KPluriharmonic::KPluriharmonic(std::vector<int> alphabet_sizes, int coeff_dim)
    : alphabet_sizes_(std::move(alphabet_sizes)), coeff_dim_(coeff_dim) {
  if (alphabet_sizes_.empty())
    throw std::invalid_argument("need at least one factor");
  if (coeff_dim_ < 1) throw std::invalid_argument("coeff_dim must be >= 1");
}

void KPluriharmonic::set_term(const MultiWord& alpha, const MultiWord& beta,
                              DenseCMat coeff) {
  if (alpha.alphabet_sizes() != alphabet_sizes_ ||
      beta.alphabet_sizes() != alphabet_sizes_)
    throw std::invalid_argument("term alphabet mismatch");
  for (int i = 0; i < alpha.factors(); ++i) {
    if (!alpha.part(i).is_identity() && !beta.part(i).is_identity())
      throw std::invalid_argument(
          "pluriharmonic term needs an identity in every factor");
  }
  if (coeff.rows() != coeff_dim_ || coeff.cols() != coeff_dim_)
    throw std::invalid_argument("coefficient dimension mismatch");
  if (!coeff.allFinite())
    throw std::invalid_argument("coefficient has non-finite entries");
  auto key = std::make_pair(alpha, beta);
  if (coeff.isZero(0.0)) {
    terms_.erase(key);
  } else {
    terms_[key] = std::move(coeff);
  }
}

DenseCMat KPluriharmonic::coefficient(const MultiWord& alpha,
                                      const MultiWord& beta) const {
  auto it = terms_.find(std::make_pair(alpha, beta));
  if (it == terms_.end()) return DenseCMat::Zero(coeff_dim_, coeff_dim_);
  return it->second;
}

int KPluriharmonic::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_)
    d = std::max(d, k.first.total_degree() + k.second.total_degree());
  return d;
}

SparseCMat assemble_pluriharmonic(const KPluriharmonic& f, const Scaling& rho,
                                  const Truncation& trunc, uint64_t cap) {
  if (f.alphabet_sizes() != trunc.alphabet_sizes)
    throw std::invalid_argument("alphabet mismatch");
  trunc.check_dim(cap);
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  const int k = trunc.factors();
  const int m = f.coeff_dim();

  std::vector<Eigen::Triplet<Complex>> trips;
  for (const auto& [key, coeff] : f.terms()) {
    const MultiWord& alpha = key.first;
    const MultiWord& beta = key.second;
    const double w = rho.weight(alpha) * rho.weight(beta);
    if (w == 0.0 && !(alpha.is_identity() && beta.is_identity())) continue;

    std::vector<uint64_t> counts(static_cast<size_t>(k));
    bool fits = true;
    uint64_t tuple_count = 1;
    for (int i = 0; i < k && fits; ++i) {
      const int room =
          trunc.degrees[static_cast<size_t>(i)] -
          std::max(alpha.part(i).length(), beta.part(i).length());
      if (room < 0) {
        fits = false;
        break;
      }
      counts[static_cast<size_t>(i)] = ix.words_below(i, room + 1);
      tuple_count = sat_mul(tuple_count, counts[static_cast<size_t>(i)]);
    }
    if (!fits) continue;
    if (tuple_count > cap)
      throw std::length_error("assembly too large for cap");

    std::vector<std::vector<uint64_t>> tgt(static_cast<size_t>(k)),
        src(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      tgt[static_cast<size_t>(i)].resize(counts[static_cast<size_t>(i)]);
      src[static_cast<size_t>(i)].resize(counts[static_cast<size_t>(i)]);
      for (uint64_t s = 0; s < counts[static_cast<size_t>(i)]; ++s) {
        tgt[static_cast<size_t>(i)][s] = ix.prepend_index(i, alpha.part(i), s);
        src[static_cast<size_t>(i)][s] = ix.prepend_index(i, beta.part(i), s);
      }
    }

    std::vector<uint64_t> delta(static_cast<size_t>(k), 0);
    while (true) {
      uint64_t flat_src = 0, flat_tgt = 0;
      for (int i = 0; i < k; ++i) {
        flat_src += src[static_cast<size_t>(i)][delta[static_cast<size_t>(i)]] * ix.stride(i);
        flat_tgt += tgt[static_cast<size_t>(i)][delta[static_cast<size_t>(i)]] * ix.stride(i);
      }
      for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
          const Complex a = coeff(r, s);
          if (a == Complex(0)) continue;
          trips.emplace_back(
              static_cast<int>(static_cast<uint64_t>(r) * dim + flat_tgt),
              static_cast<int>(static_cast<uint64_t>(s) * dim + flat_src),
              w * a);
        }
      }
      int i = k - 1;
      while (i >= 0) {
        if (++delta[static_cast<size_t>(i)] < counts[static_cast<size_t>(i)]) break;
        delta[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }

  SparseCMat out(static_cast<int>(static_cast<uint64_t>(m) * dim),
                 static_cast<int>(static_cast<uint64_t>(m) * dim));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

namespace {

// All (alpha_i, beta_i) factor pairs with one side the identity and the
// other of length <= max_len, identity pair included once.
std::vector<std::pair<Word, Word>> factor_pairs(int n, int max_len) {
  std::vector<std::pair<Word, Word>> out;
  const Word id = Word::identity(n);
  out.emplace_back(id, id);
  std::vector<Word> current = {id};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : current) {
      for (int c = 1; c <= n; ++c) {
        std::vector<int> letters = w.letters();
        letters.push_back(c);
        next.emplace_back(std::move(letters), n);
      }
    }
    for (const Word& w : next) {
      out.emplace_back(w, id);
      out.emplace_back(id, w);
    }
    current = std::move(next);
  }
  return out;
}

}  // namespace

KPluriharmonic extract_pluriharmonic(const DenseCMat& t,
                                     const Truncation& trunc, int coeff_dim,
                                     const std::vector<int>& max_degrees,
                                     double drop_tol) {
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  if (t.rows() != static_cast<Eigen::Index>(dim) * coeff_dim ||
      t.cols() != t.rows())
    throw std::invalid_argument("operator dimension mismatch");
  const int k = trunc.factors();
  if (static_cast<int>(max_degrees.size()) != k)
    throw std::invalid_argument("max_degrees size mismatch");

  std::vector<std::vector<std::pair<Word, Word>>> pairs(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int cap = std::min(max_degrees[static_cast<size_t>(i)],
                             trunc.degrees[static_cast<size_t>(i)]);
    pairs[static_cast<size_t>(i)] =
        factor_pairs(trunc.alphabet_sizes[static_cast<size_t>(i)], cap);
  }

  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  KPluriharmonic out(trunc.alphabet_sizes, coeff_dim);

  std::vector<size_t> sel(static_cast<size_t>(k), 0);
  while (true) {
    std::vector<Word> aw, bw;
    aw.reserve(static_cast<size_t>(k));
    bw.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      const auto& pr = pairs[static_cast<size_t>(i)][sel[static_cast<size_t>(i)]];
      aw.push_back(pr.first);
      bw.push_back(pr.second);
    }
    MultiWord alpha(aw), beta(bw);
    const uint64_t ia = ix.index_of(alpha), ib = ix.index_of(beta);
    DenseCMat block(coeff_dim, coeff_dim);
    for (int r = 0; r < coeff_dim; ++r)
      for (int s = 0; s < coeff_dim; ++s)
        block(r, s) = t(static_cast<Eigen::Index>(static_cast<uint64_t>(r) * dim + ia),
                        static_cast<Eigen::Index>(static_cast<uint64_t>(s) * dim + ib));
    if (block.cwiseAbs().maxCoeff() > drop_tol * scale)
      out.set_term(alpha, beta, std::move(block));

    int i = k - 1;
    while (i >= 0) {
      if (++sel[static_cast<size_t>(i)] < pairs[static_cast<size_t>(i)].size()) break;
      sel[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

double pluriharmonic_residual(const DenseCMat& t, const KPluriharmonic& f,
                              const Truncation& trunc,
                              const std::vector<int>& margins) {
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  const int m = f.coeff_dim();
  DenseCMat rebuilt =
      DenseCMat(assemble_pluriharmonic(f, Scaling::uniform(1.0), trunc));

  std::vector<bool> valid(dim, true);
  for (uint64_t b = 0; b < dim; ++b) {
    for (int i = 0; i < trunc.factors(); ++i) {
      if (ix.slot_length(i, b) >
          trunc.degrees[static_cast<size_t>(i)] - margins[static_cast<size_t>(i)]) {
        valid[b] = false;
        break;
      }
    }
  }
  double worst = 0.0;
  for (uint64_t br = 0; br < dim; ++br) {
    if (!valid[br]) continue;
    for (uint64_t bc = 0; bc < dim; ++bc) {
      if (!valid[bc]) continue;
      for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
          const auto ir = static_cast<Eigen::Index>(static_cast<uint64_t>(r) * dim + br);
          const auto ic = static_cast<Eigen::Index>(static_cast<uint64_t>(s) * dim + bc);
          worst = std::max(worst, std::abs(t(ir, ic) - rebuilt(ir, ic)));
        }
      }
    }
  }
  return worst;
}

bool is_multi_toeplitz(const DenseCMat& t, const Truncation& trunc,
                       int coeff_dim, double tol,
                       const std::vector<int>& margins) {
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  if (t.rows() != static_cast<Eigen::Index>(dim) * coeff_dim ||
      t.cols() != t.rows())
    throw std::invalid_argument("operator dimension mismatch");
  const int k = trunc.factors();

  for (int i = 0; i < k; ++i) {
    // Rows/cols must stay inside the trusted block after appending one
    // letter in factor i.
    std::vector<bool> ok(dim, true);
    for (uint64_t b = 0; b < dim; ++b) {
      for (int j = 0; j < k; ++j) {
        const int lim = trunc.degrees[static_cast<size_t>(j)] -
                        margins[static_cast<size_t>(j)] - (j == i ? 1 : 0);
        if (ix.slot_length(j, b) > lim) {
          ok[b] = false;
          break;
        }
      }
    }
    const int n = trunc.alphabet_sizes[static_cast<size_t>(i)];
    std::vector<DenseCMat> rs;
    rs.reserve(static_cast<size_t>(n));
    for (int s = 1; s <= n; ++s)
      rs.push_back(DenseCMat(right_creation(trunc, i, s)));
    for (int s = 1; s <= n; ++s) {
      for (int u = 1; u <= n; ++u) {
        for (int r = 0; r < coeff_dim; ++r) {
          for (int c = 0; c < coeff_dim; ++c) {
            const auto row0 = static_cast<Eigen::Index>(static_cast<uint64_t>(r) * dim);
            const auto col0 = static_cast<Eigen::Index>(static_cast<uint64_t>(c) * dim);
            DenseCMat tb = t.block(row0, col0, static_cast<Eigen::Index>(dim),
                                   static_cast<Eigen::Index>(dim));
            DenseCMat e = rs[static_cast<size_t>(s - 1)].adjoint() * tb *
                          rs[static_cast<size_t>(u - 1)];
            if (s == u) e -= tb;
            for (uint64_t br = 0; br < dim; ++br) {
              if (!ok[br]) continue;
              for (uint64_t bc = 0; bc < dim; ++bc) {
                if (!ok[bc]) continue;
                if (std::abs(e(static_cast<Eigen::Index>(br),
                               static_cast<Eigen::Index>(bc))) > tol)
                  return false;
              }
            }
          }
        }
      }
    }
  }
  return true;
}

bool is_multi_toeplitz(const DenseCMat& t, const Truncation& trunc,
                       int coeff_dim, double tol) {
  return is_multi_toeplitz(t, trunc, coeff_dim, tol,
                           std::vector<int>(static_cast<size_t>(trunc.factors()), 0));
}

double defect_delta(const ScalarPoint& z) {
  double delta = 1.0;
  for (const CVector& zi : z) delta *= 1.0 - zi.squaredNorm();
  return delta;
}

BerezinKernel berezin_kernel(const ScalarPoint& z, const Truncation& trunc) {
  if (static_cast<int>(z.size()) != trunc.factors())
    throw std::invalid_argument("point factor count mismatch");
  for (int i = 0; i < trunc.factors(); ++i) {
    if (z[static_cast<size_t>(i)].size() != trunc.alphabet_sizes[static_cast<size_t>(i)])
      throw std::invalid_argument("point coordinate count mismatch");
    if (z[static_cast<size_t>(i)].norm() >= 1.0)
      throw std::domain_error("point must be strictly inside the polyball");
  }
  BasisIndexer ix(trunc);
  BerezinKernel kern{trunc, {}, defect_delta(z), 0.0};
  kern.factors.reserve(z.size());
  double tail = 0.0;
  for (int i = 0; i < trunc.factors(); ++i) {
    const int n = trunc.alphabet_sizes[static_cast<size_t>(i)];
    const int d = trunc.degrees[static_cast<size_t>(i)];
    CVector v(static_cast<Eigen::Index>(ix.factor_dim(i)));
    v(0) = Complex(1.0, 0.0);
    for (int len = 1; len <= d; ++len) {
      const uint64_t prev = ix.words_below(i, len - 1);
      const uint64_t cur = ix.words_below(i, len);
      const uint64_t block = ix.words_below(i, len + 1) - cur;
      const uint64_t sub = cur - prev;  // words of length len-1
      for (int c = 1; c <= n; ++c) {
        const Complex zc = std::conj(z[static_cast<size_t>(i)](c - 1));
        for (uint64_t u = 0; u < sub; ++u) {
          v(static_cast<Eigen::Index>(cur + static_cast<uint64_t>(c - 1) * sub + u)) =
              zc * v(static_cast<Eigen::Index>(prev + u));
        }
      }
      (void)block;
    }
    kern.factors.push_back(std::move(v));
    tail += std::pow(z[static_cast<size_t>(i)].squaredNorm(), d + 1);
  }
  kern.tail_bound = tail;
  return kern;
}

double BerezinKernel::gram() const {
  double g = delta;
  for (const CVector& v : factors) g *= v.squaredNorm();
  return g;
}

CVector BerezinKernel::materialize(uint64_t cap) const {
  trunc.check_dim(cap);
  BasisIndexer ix(trunc);
  const uint64_t dim = ix.total_dim();
  CVector out(static_cast<Eigen::Index>(dim));
  const double root = std::sqrt(delta);
  for (uint64_t b = 0; b < dim; ++b) {
    Complex val(root, 0.0);
    for (int i = 0; i < trunc.factors(); ++i) {
      const uint64_t fi = (b / ix.stride(i)) % ix.factor_dim(i);
      val *= factors[static_cast<size_t>(i)](static_cast<Eigen::Index>(fi));
    }
    out(static_cast<Eigen::Index>(b)) = val;
  }
  return out;
}

DenseCMat evaluate_scalar(const FreePolynomial& f, const ScalarPoint& z) {
  if (z.size() != f.alphabet_sizes().size())
    throw std::invalid_argument("point factor count mismatch");
  for (size_t i = 0; i < z.size(); ++i)
    if (z[i].size() != f.alphabet_sizes()[i])
      throw std::invalid_argument("point coordinate count mismatch");
  DenseCMat acc = DenseCMat::Zero(f.coeff_dim(), f.coeff_dim());
  for (const auto& [w, coeff] : f.terms()) {
    Complex v(1.0, 0.0);
    for (int i = 0; i < w.factors(); ++i)
      for (int c : w.part(i).letters()) v *= z[static_cast<size_t>(i)](c - 1);
    acc += v * coeff;
  }
  return acc;
}

}  // namespace polyball
