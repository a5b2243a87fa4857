// Free-semigroup words over k alphabets, divisibility orders, and the
// minimal/orthogonal set predicates used by the rest of the library.

#ifndef POLYBALL_WORDS_HPP_
#define POLYBALL_WORDS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyball {

// A word over the generators g_1..g_n of the free semigroup F_n^+.
// Letters are 1-based; the empty letter sequence is the identity g_0.
class Word {
 public:
  Word() : n_(1) {}
  Word(std::vector<int> letters, int alphabet_size);

  static Word identity(int alphabet_size) { return Word({}, alphabet_size); }

  int alphabet_size() const { return n_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }
  int letter(int i) const { return letters_[static_cast<size_t>(i)]; }

  Word reversed() const;
  Word concat(const Word& tail) const;

  // Graded-lexicographic order: shorter words first, then letterwise.
  // This is the canonical enumeration/basis order everywhere.
  friend bool operator<(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) {
    return a.n_ == b.n_ && a.letters_ == b.letters_;
  }

  std::string to_string() const;

 private:
  std::vector<int> letters_;
  int n_;
};

struct DivisionResult {
  bool divides = false;
  Word remainder;  // valid only when divides
};

// gamma right-divides omega iff omega = sigma * gamma; remainder is sigma.
// When gamma == omega the remainder is the identity.
DivisionResult right_divides(const Word& gamma, const Word& omega);

// gamma left-divides omega iff omega = gamma * sigma (prefix semantics).
DivisionResult left_divides(const Word& gamma, const Word& omega);

// A k-tuple of words, one per factor F_{n_1}^+ x ... x F_{n_k}^+.
class MultiWord {
 public:
  MultiWord() = default;
  explicit MultiWord(std::vector<Word> parts);

  static MultiWord identity(const std::vector<int>& alphabet_sizes);

  int factors() const { return static_cast<int>(parts_.size()); }
  const Word& part(int i) const { return parts_[static_cast<size_t>(i)]; }
  const std::vector<Word>& parts() const { return parts_; }
  std::vector<int> alphabet_sizes() const;
  bool is_identity() const;

  // |alpha| = sum of factor lengths.
  int total_degree() const;
  std::vector<int> multidegree() const;

  MultiWord reversed() const;

  friend bool operator<(const MultiWord& a, const MultiWord& b);
  friend bool operator==(const MultiWord& a, const MultiWord& b) {
    return a.parts_ == b.parts_;
  }

  std::string to_string() const;

 private:
  std::vector<Word> parts_;
};

// Componentwise right order: beta <=_r gamma iff beta_i right-divides
// gamma_i in every factor.
bool multiword_right_leq(const MultiWord& beta, const MultiWord& gamma);
bool multiword_left_leq(const MultiWord& beta, const MultiWord& gamma);

// A finite set of multiwords over common alphabet sizes, kept sorted and
// deduplicated in the canonical order.
class WordSet {
 public:
  explicit WordSet(std::vector<int> alphabet_sizes)
      : alphabet_sizes_(std::move(alphabet_sizes)) {}
  WordSet(std::vector<int> alphabet_sizes, std::vector<MultiWord> elements);

  const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }
  const std::vector<MultiWord>& elements() const { return elements_; }
  size_t size() const { return elements_.size(); }
  bool contains(const MultiWord& w) const;
  void insert(MultiWord w);

  WordSet reversed() const;

 private:
  std::vector<int> alphabet_sizes_;
  std::vector<MultiWord> elements_;
};

// No two distinct elements comparable under the componentwise right
// (resp. left) order.
bool is_right_minimal(const WordSet& set);
bool is_left_minimal(const WordSet& set);

// The model isometries S_alpha, alpha in the set, have pairwise orthogonal
// ranges. Combinatorially: for every distinct pair there is a factor whose
// components are prefix-incomparable (neither left-divides the other).
bool is_orthogonal(const WordSet& set);

inline constexpr uint64_t kDefaultEnumerationCap = 1'000'000;

// All multiwords with |alpha_i| = p_i, in canonical order. Cardinality is
// prod n_i^{p_i}; throws std::length_error past the cap.
WordSet enumerate_lambda(const std::vector<int>& degrees,
                         const std::vector<int>& alphabet_sizes,
                         uint64_t cap = kDefaultEnumerationCap);

// All multiwords of total degree q, in canonical order.
WordSet enumerate_gamma(int total_degree,
                        const std::vector<int>& alphabet_sizes,
                        uint64_t cap = kDefaultEnumerationCap);

uint64_t lambda_cardinality(const std::vector<int>& degrees,
                            const std::vector<int>& alphabet_sizes);
uint64_t gamma_cardinality(int total_degree,
                           const std::vector<int>& alphabet_sizes);

}  // namespace polyball

#endif  // POLYBALL_WORDS_HPP_
