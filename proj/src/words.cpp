#include "polyball/words.hpp"

#include <algorithm>
#include <functional>

namespace polyball {

Word::Word(std::vector<int> letters, int alphabet_size)
    : letters_(std::move(letters)), n_(alphabet_size) {
  if (n_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  for (int c : letters_) {
    if (c < 1 || c > n_)
      throw std::invalid_argument("letter out of range [1, n]");
  }
}

Word Word::reversed() const {
  std::vector<int> rev(letters_.rbegin(), letters_.rend());
  return Word(std::move(rev), n_);
}

Word Word::concat(const Word& tail) const {
  if (tail.n_ != n_) throw std::invalid_argument("alphabet mismatch");
  std::vector<int> joined = letters_;
  joined.insert(joined.end(), tail.letters_.begin(), tail.letters_.end());
  return Word(std::move(joined), n_);
}

bool operator<(const Word& a, const Word& b) {
  if (a.letters_.size() != b.letters_.size())
    return a.letters_.size() < b.letters_.size();
  return a.letters_ < b.letters_;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (int c : letters_) {
    if (!s.empty()) s += '.';
    s += 'g';
    s += std::to_string(c);
  }
  return s;
}

DivisionResult right_divides(const Word& gamma, const Word& omega) {
  if (gamma.alphabet_size() != omega.alphabet_size())
    throw std::invalid_argument("alphabet mismatch");
  const int lg = gamma.length(), lo = omega.length();
  if (lg > lo) return {};
  for (int i = 0; i < lg; ++i)
    if (gamma.letter(i) != omega.letter(lo - lg + i)) return {};
  std::vector<int> head(omega.letters().begin(),
                        omega.letters().begin() + (lo - lg));
  return {true, Word(std::move(head), omega.alphabet_size())};
}

DivisionResult left_divides(const Word& gamma, const Word& omega) {
  if (gamma.alphabet_size() != omega.alphabet_size())
    throw std::invalid_argument("alphabet mismatch");
  const int lg = gamma.length(), lo = omega.length();
  if (lg > lo) return {};
  for (int i = 0; i < lg; ++i)
    if (gamma.letter(i) != omega.letter(i)) return {};
  std::vector<int> tail(omega.letters().begin() + lg, omega.letters().end());
  return {true, Word(std::move(tail), omega.alphabet_size())};
}

MultiWord::MultiWord(std::vector<Word> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("need at least one factor");
}

MultiWord MultiWord::identity(const std::vector<int>& alphabet_sizes) {
  std::vector<Word> parts;
  parts.reserve(alphabet_sizes.size());
  for (int n : alphabet_sizes) parts.push_back(Word::identity(n));
  return MultiWord(std::move(parts));
}

std::vector<int> MultiWord::alphabet_sizes() const {
  std::vector<int> out;
  out.reserve(parts_.size());
  for (const Word& w : parts_) out.push_back(w.alphabet_size());
  return out;
}

bool MultiWord::is_identity() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Word& w) { return w.is_identity(); });
}

int MultiWord::total_degree() const {
  int d = 0;
  for (const Word& w : parts_) d += w.length();
  return d;
}

std::vector<int> MultiWord::multidegree() const {
  std::vector<int> deg;
  deg.reserve(parts_.size());
  for (const Word& w : parts_) deg.push_back(w.length());
  return deg;
}

MultiWord MultiWord::reversed() const {
  std::vector<Word> rev;
  rev.reserve(parts_.size());
  for (const Word& w : parts_) rev.push_back(w.reversed());
  return MultiWord(std::move(rev));
}

bool operator<(const MultiWord& a, const MultiWord& b) {
  // Factor-major: the first factor is the most significant.
  return std::lexicographical_compare(a.parts_.begin(), a.parts_.end(),
                                      b.parts_.begin(), b.parts_.end());
}

std::string MultiWord::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ", ";
    s += parts_[i].to_string();
  }
  return s + ")";
}

static void check_same_shape(const MultiWord& a, const MultiWord& b) {
  if (a.factors() != b.factors())
    throw std::invalid_argument("factor count mismatch");
  for (int i = 0; i < a.factors(); ++i)
    if (a.part(i).alphabet_size() != b.part(i).alphabet_size())
      throw std::invalid_argument("alphabet mismatch");
}

bool multiword_right_leq(const MultiWord& beta, const MultiWord& gamma) {
  check_same_shape(beta, gamma);
  for (int i = 0; i < beta.factors(); ++i)
    if (!right_divides(beta.part(i), gamma.part(i)).divides) return false;
  return true;
}

bool multiword_left_leq(const MultiWord& beta, const MultiWord& gamma) {
  check_same_shape(beta, gamma);
  for (int i = 0; i < beta.factors(); ++i)
    if (!left_divides(beta.part(i), gamma.part(i)).divides) return false;
  return true;
}

WordSet::WordSet(std::vector<int> alphabet_sizes,
                 std::vector<MultiWord> elements)
    : alphabet_sizes_(std::move(alphabet_sizes)),
      elements_(std::move(elements)) {
  for (const MultiWord& w : elements_) {
    if (w.alphabet_sizes() != alphabet_sizes_)
      throw std::invalid_argument("element alphabet mismatch");
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
}

bool WordSet::contains(const MultiWord& w) const {
  return std::binary_search(elements_.begin(), elements_.end(), w);
}

void WordSet::insert(MultiWord w) {
  if (w.alphabet_sizes() != alphabet_sizes_)
    throw std::invalid_argument("element alphabet mismatch");
  auto it = std::lower_bound(elements_.begin(), elements_.end(), w);
  if (it == elements_.end() || !(*it == w)) elements_.insert(it, std::move(w));
}

WordSet WordSet::reversed() const {
  std::vector<MultiWord> rev;
  rev.reserve(elements_.size());
  for (const MultiWord& w : elements_) rev.push_back(w.reversed());
  return WordSet(alphabet_sizes_, std::move(rev));
}

bool is_right_minimal(const WordSet& set) {
  const auto& el = set.elements();
  for (size_t a = 0; a < el.size(); ++a)
    for (size_t b = 0; b < el.size(); ++b)
      if (a != b && multiword_right_leq(el[a], el[b])) return false;
  return true;
}

bool is_left_minimal(const WordSet& set) { return is_right_minimal(set.reversed()); }

static bool prefix_incomparable(const Word& a, const Word& b) {
  return !left_divides(a, b).divides && !left_divides(b, a).divides;
}

bool is_orthogonal(const WordSet& set) {
  const auto& el = set.elements();
  for (size_t a = 0; a < el.size(); ++a) {
    for (size_t b = a + 1; b < el.size(); ++b) {
      bool ok = false;
      for (int i = 0; i < el[a].factors() && !ok; ++i)
        ok = prefix_incomparable(el[a].part(i), el[b].part(i));
      if (!ok) return false;
    }
  }
  return true;
}

static uint64_t checked_pow(uint64_t base, int exp, uint64_t cap) {
  uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / (base == 0 ? 1 : base)) return cap + 1;
    v *= base;
  }
  return v;
}

uint64_t lambda_cardinality(const std::vector<int>& degrees,
                            const std::vector<int>& alphabet_sizes) {
  uint64_t total = 1;
  const uint64_t kMax = UINT64_MAX / 2;
  for (size_t i = 0; i < degrees.size(); ++i) {
    uint64_t f = checked_pow(static_cast<uint64_t>(alphabet_sizes[i]),
                             degrees[i], kMax);
    if (f > kMax / std::max<uint64_t>(total, 1)) return kMax;
    total *= f;
  }
  return total;
}

uint64_t gamma_cardinality(int total_degree,
                           const std::vector<int>& alphabet_sizes) {
  // Dynamic programming over factors.
  std::vector<uint64_t> count(static_cast<size_t>(total_degree) + 1, 0);
  count[0] = 1;
  const uint64_t kMax = UINT64_MAX / 2;
  for (int n : alphabet_sizes) {
    std::vector<uint64_t> next(count.size(), 0);
    for (int q = 0; q <= total_degree; ++q) {
      if (count[q] == 0) continue;
      uint64_t words = 1;  // n^m, m = added degree
      for (int m = 0; q + m <= total_degree; ++m) {
        uint64_t add = count[q];
        if (words != 0 && add > kMax / std::max<uint64_t>(words, 1))
          return kMax;
        next[q + m] = std::min(kMax, next[q + m] + add * words);
        if (words > kMax / std::max<uint64_t>(n, 1)) {
          words = kMax;
        } else {
          words *= static_cast<uint64_t>(n);
        }
      }
    }
    count.swap(next);
  }
  return count[static_cast<size_t>(total_degree)];
}

namespace {

void fixed_length_rec(int n, int length, std::vector<int>& buf,
                      const std::function<void(const Word&)>& fn) {
  if (static_cast<int>(buf.size()) == length) {
    fn(Word(buf, n));
    return;
  }
  for (int c = 1; c <= n; ++c) {
    buf.push_back(c);
    fixed_length_rec(n, length, buf, fn);
    buf.pop_back();
  }
}

void lambda_rec(const std::vector<int>& degrees,
                const std::vector<int>& alphabet_sizes, size_t factor,
                std::vector<Word>& parts, std::vector<MultiWord>& out) {
  if (factor == degrees.size()) {
    out.emplace_back(parts);
    return;
  }
  std::vector<int> buf;
  fixed_length_rec(alphabet_sizes[factor], degrees[factor], buf,
                   [&](const Word& w) {
                     parts.push_back(w);
                     lambda_rec(degrees, alphabet_sizes, factor + 1, parts,
                                out);
                     parts.pop_back();
                   });
}

void gamma_rec(int remaining, const std::vector<int>& alphabet_sizes,
               size_t factor, std::vector<Word>& parts,
               std::vector<MultiWord>& out) {
  if (factor + 1 == alphabet_sizes.size()) {
    std::vector<int> buf;
    fixed_length_rec(alphabet_sizes[factor], remaining, buf,
                     [&](const Word& w) {
                       parts.push_back(w);
                       out.emplace_back(parts);
                       parts.pop_back();
                     });
    return;
  }
  // Shorter words first in this factor keeps the output in canonical order.
  for (int m = 0; m <= remaining; ++m) {
    std::vector<int> buf;
    fixed_length_rec(alphabet_sizes[factor], m, buf, [&](const Word& w) {
      parts.push_back(w);
      gamma_rec(remaining - m, alphabet_sizes, factor + 1, parts, out);
      parts.pop_back();
    });
  }
}

}  // namespace

WordSet enumerate_lambda(const std::vector<int>& degrees,
                         const std::vector<int>& alphabet_sizes,
                         uint64_t cap) {
  if (degrees.size() != alphabet_sizes.size())
    throw std::invalid_argument("degree/alphabet length mismatch");
  for (int p : degrees)
    if (p < 0) throw std::invalid_argument("degrees must be >= 0");
  uint64_t card = lambda_cardinality(degrees, alphabet_sizes);
  if (card > cap)
    throw std::length_error("enumerate_lambda: cardinality exceeds cap");
  std::vector<MultiWord> out;
  out.reserve(card);
  std::vector<Word> parts;
  lambda_rec(degrees, alphabet_sizes, 0, parts, out);
  return WordSet(alphabet_sizes, std::move(out));
}

WordSet enumerate_gamma(int total_degree,
                        const std::vector<int>& alphabet_sizes,
                        uint64_t cap) {
  if (total_degree < 0)
    throw std::invalid_argument("total degree must be >= 0");
  uint64_t card = gamma_cardinality(total_degree, alphabet_sizes);
  if (card > cap)
    throw std::length_error("enumerate_gamma: cardinality exceeds cap");
  std::vector<MultiWord> out;
  out.reserve(card);
  std::vector<Word> parts;
  gamma_rec(total_degree, alphabet_sizes, 0, parts, out);
  return WordSet(alphabet_sizes, std::move(out));
}

}  // namespace polyball
