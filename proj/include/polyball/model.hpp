// Finite truncations of the tensor-product full Fock space, creation
// operator matrices, polynomial/pluriharmonic operator assembly, Berezin
// kernels at scalar points, and scalar evaluation.

#ifndef POLYBALL_MODEL_HPP_
#define POLYBALL_MODEL_HPP_

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "polyball/words.hpp"

namespace polyball {

using Complex = std::complex<double>;
using DenseCMat = Eigen::MatrixXcd;
using SparseCMat = Eigen::SparseMatrix<Complex>;
using CVector = Eigen::VectorXcd;

inline constexpr uint64_t kDefaultDimensionCap = 1u << 22;

// Per-factor degree cutoffs d_1..d_k. The retained subspace of
// F^2(H_{n_1}) (x) ... (x) F^2(H_{n_k}) is spanned by e_alpha with
// |alpha_i| <= d_i; everything is compressed to it.
struct Truncation {
  std::vector<int> degrees;
  std::vector<int> alphabet_sizes;

  Truncation(std::vector<int> d, std::vector<int> n);

  int factors() const { return static_cast<int>(degrees.size()); }
  uint64_t factor_dim(int i) const;
  uint64_t total_dim() const;
  void check_dim(uint64_t cap = kDefaultDimensionCap) const;
};

// Index arithmetic for the canonical basis order: graded-lex within each
// factor, factor-major across factors. Index 0 is the vacuum.
class BasisIndexer {
 public:
  explicit BasisIndexer(Truncation trunc);

  const Truncation& truncation() const { return trunc_; }
  uint64_t total_dim() const { return total_dim_; }
  uint64_t factor_dim(int i) const { return factor_dims_[static_cast<size_t>(i)]; }
  uint64_t stride(int i) const { return strides_[static_cast<size_t>(i)]; }

  // Number of words of length < len over alphabet i.
  uint64_t words_below(int i, int len) const {
    return pref_[static_cast<size_t>(i)][static_cast<size_t>(len)];
  }

  int word_length(int factor, uint64_t factor_index) const;
  uint64_t word_index(int factor, const Word& w) const;
  Word word_at(int factor, uint64_t factor_index) const;

  uint64_t index_of(const MultiWord& w) const;
  MultiWord multiword_at(uint64_t index) const;
  int slot_length(int factor, uint64_t flat_index) const;

  // Index of the concatenation (prefix word) * (word at factor_index),
  // assuming the result still fits the truncation.
  uint64_t prepend_index(int factor, const Word& prefix,
                         uint64_t factor_index) const;

 private:
  Truncation trunc_;
  std::vector<std::vector<uint64_t>> pref_;  // per factor, len 0..d_i+1
  std::vector<uint64_t> factor_dims_;
  std::vector<uint64_t> strides_;
  uint64_t total_dim_;
};

std::vector<MultiWord> basis(const Truncation& trunc,
                             uint64_t cap = kDefaultDimensionCap);

// Compression of the universal-model creation operators. Entries are 0/1;
// top-degree output is dropped.
SparseCMat left_creation(const Truncation& trunc, int factor, int letter,
                         uint64_t cap = kDefaultDimensionCap);
SparseCMat right_creation(const Truncation& trunc, int factor, int letter,
                          uint64_t cap = kDefaultDimensionCap);

// Per-letter scaling rho_{i,j} >= 0; rho_alpha is the product over the
// letters of alpha.
class Scaling {
 public:
  static Scaling uniform(double r);
  static Scaling per_factor(std::vector<double> r);
  static Scaling per_letter(std::vector<std::vector<double>> r);

  double letter_weight(int factor, int letter) const;
  double word_weight(int factor, const Word& w) const;
  double weight(const MultiWord& w) const;

 private:
  enum class Kind { kUniform, kPerFactor, kPerLetter };
  Kind kind_ = Kind::kUniform;
  double r_ = 1.0;
  std::vector<double> per_factor_;
  std::vector<std::vector<double>> per_letter_;
};

// F(X) = sum_alpha A_(alpha) (x) X_alpha with m x m matrix coefficients
// (m = 1 recovers the scalar case).
class FreePolynomial {
 public:
  FreePolynomial(std::vector<int> alphabet_sizes, int coeff_dim);

  static FreePolynomial constant(std::vector<int> alphabet_sizes,
                                 const DenseCMat& a0);
  static FreePolynomial constant(std::vector<int> alphabet_sizes, Complex a0);

  const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }
  int coeff_dim() const { return coeff_dim_; }
  const std::map<MultiWord, DenseCMat>& terms() const { return terms_; }

  void set_term(const MultiWord& w, DenseCMat coeff);
  void add_term(const MultiWord& w, const DenseCMat& coeff);
  void set_scalar_term(const MultiWord& w, Complex c);
  DenseCMat coefficient(const MultiWord& w) const;  // zero matrix if absent
  Complex scalar_coefficient(const MultiWord& w) const;

  bool empty() const { return terms_.empty(); }
  int degree() const;                 // max total degree
  int slot_degree(int factor) const;  // max degree in one factor
  std::vector<std::vector<int>> multidegrees() const;  // sorted, distinct

  FreePolynomial restricted_to_multidegree(const std::vector<int>& p) const;
  FreePolynomial restricted_to_total_degree(int q) const;

  void scale(Complex factor);
  FreePolynomial scaled(Complex factor) const;

 private:
  std::vector<int> alphabet_sizes_;
  int coeff_dim_;
  std::map<MultiWord, DenseCMat> terms_;
};

// Headroom rule: truncation degrees D + h in every factor, D = degree(F).
Truncation truncation_for(const FreePolynomial& f, int headroom = 4);

// sum_alpha A_(alpha) (x) rho_alpha S_alpha as an (m*dim) x (m*dim) matrix.
SparseCMat assemble(const FreePolynomial& f, const Scaling& rho,
                    const Truncation& trunc,
                    uint64_t cap = kDefaultDimensionCap);

// Series in S_alpha S_beta^* indexed by pairs with the per-factor structure
// |alpha_i| = p_i^-, |beta_i| = p_i^+ (at least one of alpha_i, beta_i is
// the identity in every factor).
class KPluriharmonic {
 public:
  KPluriharmonic(std::vector<int> alphabet_sizes, int coeff_dim);

  const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }
  int coeff_dim() const { return coeff_dim_; }
  const std::map<std::pair<MultiWord, MultiWord>, DenseCMat>& terms() const {
    return terms_;
  }

  void set_term(const MultiWord& alpha, const MultiWord& beta,
                DenseCMat coeff);
  DenseCMat coefficient(const MultiWord& alpha, const MultiWord& beta) const;
  int degree() const;  // max of |alpha| + |beta| over terms

 private:
  std::vector<int> alphabet_sizes_;
  int coeff_dim_;
  std::map<std::pair<MultiWord, MultiWord>, DenseCMat> terms_;
};

SparseCMat assemble_pluriharmonic(const KPluriharmonic& f, const Scaling& rho,
                                  const Truncation& trunc,
                                  uint64_t cap = kDefaultDimensionCap);

// Coefficient recovery from the vacuum rows/columns of a k-multi-Toeplitz
// operator: A_(alpha;beta)[r,s] = T[(r, e_alpha), (s, e_beta)]. Recovered
// degrees are limited to max_degrees per factor (in each of the two legs).
KPluriharmonic extract_pluriharmonic(const DenseCMat& t,
                                     const Truncation& trunc, int coeff_dim,
                                     const std::vector<int>& max_degrees,
                                     double drop_tol = 1e-14);

// Max entrywise reconstruction error of assemble(extracted) against t over
// the block whose slot degrees are <= d_i - margin_i.
double pluriharmonic_residual(const DenseCMat& t, const KPluriharmonic& f,
                              const Truncation& trunc,
                              const std::vector<int>& margins);

// Checks (I (x) R_{i,s})^* T (I (x) R_{i,t}) = delta_st T entrywise on the
// sub-block whose slot degrees stay valid under the shift; entries of T
// outside slot degrees d_i - margin_i are not trusted.
bool is_multi_toeplitz(const DenseCMat& t, const Truncation& trunc,
                       int coeff_dim, double tol,
                       const std::vector<int>& margins);
bool is_multi_toeplitz(const DenseCMat& t, const Truncation& trunc,
                       int coeff_dim, double tol);

// A point of the scalar polyball: z_i in C^{n_i} with ||z_i||_2 < 1.
using ScalarPoint = std::vector<CVector>;

double defect_delta(const ScalarPoint& z);  // prod_i (1 - ||z_i||^2)

// Berezin kernel at a scalar point, kept in tensor-factored form:
// K_z = sqrt(delta) * (kappa_1 (x) ... (x) kappa_k) with
// kappa_i[beta_i] = conj(z_i)_{beta_i}.
struct BerezinKernel {
  Truncation trunc;
  std::vector<CVector> factors;
  double delta = 1.0;
  double tail_bound = 0.0;  // bound on |K*K - 1| from the discarded tail

  double gram() const;  // K*K computed from the stored factors
  CVector materialize(uint64_t cap = kDefaultDimensionCap) const;
};

BerezinKernel berezin_kernel(const ScalarPoint& z, const Truncation& trunc);

// F~(z) = sum A_(alpha) z_alpha (commuting scalar substitution).
DenseCMat evaluate_scalar(const FreePolynomial& f, const ScalarPoint& z);

}  // namespace polyball

#endif  // POLYBALL_MODEL_HPP_
