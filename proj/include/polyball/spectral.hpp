// Spectral primitives: operator norm, Hermitian extremal eigenvalues,
// positivity tests, numerical radius, joint numerical radius.

#ifndef POLYBALL_SPECTRAL_HPP_
#define POLYBALL_SPECTRAL_HPP_

#include <cstdint>
#include <vector>

#include "polyball/model.hpp"

namespace polyball {

struct SpectralResult {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Dense decompositions below this dimension; iterative with seeded
// restarts above it.
inline constexpr int kDenseThreshold = 600;

// Largest singular value within tol.
SpectralResult operator_norm(const SparseCMat& a, double tol = 1e-10,
                             uint64_t seed = 1);
SpectralResult operator_norm(const DenseCMat& a, double tol = 1e-10,
                             uint64_t seed = 1);

// Extremal eigenvalues of a Hermitian matrix. Inputs must satisfy
// ||A - A*|| <= hermitian_tol (default 1e-10 * ||A||).
SpectralResult max_eig_hermitian(const DenseCMat& a, double tol = 1e-10,
                                 uint64_t seed = 1);
SpectralResult min_eig_hermitian(const DenseCMat& a, double tol = 1e-10,
                                 uint64_t seed = 1);
SpectralResult max_eig_hermitian(const SparseCMat& a, double tol = 1e-10,
                                 uint64_t seed = 1);
SpectralResult min_eig_hermitian(const SparseCMat& a, double tol = 1e-10,
                                 uint64_t seed = 1);

// min_eig >= -tol; tol <= 0 picks the default 1e-9 * ||A||.
bool is_positive(const DenseCMat& a, double tol = -1.0);
bool is_positive(const SparseCMat& a, double tol = -1.0);

// Certified two-sided bounds for the numerical radius. Re(e^{i theta} T)
// is the support function of the (convex) numerical range, so Rayleigh
// points give lower bounds and supporting-line intersections give upper
// bounds. Refinement stops once upper - lower <= tol, or as soon as the
// comparison against decide_le is settled (when decide_le >= 0).
struct RadiusBounds {
  double lower = 0.0;
  double upper = 0.0;
  int evals = 0;
  bool resolved = false;
};

RadiusBounds numerical_radius_bounds(const DenseCMat& t, double tol = 1e-9,
                                     double decide_le = -1.0,
                                     int initial_grid = 64,
                                     int max_evals = -1);

SpectralResult numerical_radius(const DenseCMat& t, double tol = 1e-9);
SpectralResult numerical_radius(const SparseCMat& t, double tol = 1e-9);

// w(T_1..T_n) = omega(sum T_i^* (x) S_i) with S_i the left creation
// operators on a degree-aux_degree truncation of F^2(H_n). Values are
// nondecreasing in aux_degree.
SpectralResult joint_numerical_radius(const std::vector<DenseCMat>& ts,
                                      int aux_degree = 8, double tol = 1e-9);

}  // namespace polyball

#endif  // POLYBALL_SPECTRAL_HPP_
