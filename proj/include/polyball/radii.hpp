// Majorant series, closed-form bound functions, and certified bisection
// solvers for the radius equations.

#ifndef POLYBALL_RADII_HPP_
#define POLYBALL_RADII_HPP_

#include <vector>

#include "polyball/model.hpp"

namespace polyball {

struct RadiusResult {
  double value = 0.0;
  double residual = 0.0;   // |f(value) - target|
  double lo = 0.0, hi = 0.0;
  double tail_bound = 0.0;  // series truncation certificate
  int series_terms_used = 0;
  bool boundary_flag = false;  // equation degenerates to the boundary
};

struct MajorantCurve {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<int> truncation_degrees;
};

// D(F, r): multi-homogeneous majorant, sum over multidegrees p of
// r^{|p|} || sum_{Lambda_p} A_alpha (x) S_alpha || at the given truncation.
// Throws if the truncation cannot hold degree(F).
double majorant_mh(const FreePolynomial& f, double r, const Truncation& trunc,
                   double norm_tol = 1e-11);

// M(F, r): homogeneous (total-degree) majorant; M <= D always.
double majorant_h(const FreePolynomial& f, double r, const Truncation& trunc,
                  double norm_tol = 1e-11);

MajorantCurve majorant_curve(const FreePolynomial& f, bool homogeneous,
                             const std::vector<double>& radii,
                             const Truncation& trunc);

// C(rho) with c = prod (1-r_i)^{-1} - 1: 1 when c <= 1/2, else c + 1/(4c).
double bound_C(const std::vector<double>& r);

// K(rho) = min{ C(rho), prod (1-r_i^2)^{-1/2} }.
double bound_K(const std::vector<double>& r);

// M(r) = 1 for r <= 1/3, else (4r^2 + (1-r)^2) / (4r(1-r)).
double bound_M(double r);

// Omega(r) = min{ M(r), (1-r^2)^{-k/2} }.
double bound_Omega(double r, int k);

// Root of sum_{m>=1} binom(m+k-1, k-1)^{1/2} r^m = 1/2; gamma_1 = 1/3.
RadiusResult solve_gamma_k(int k, double tol = 1e-12);

// Same series set equal to 1; t_1 = 1/2.
RadiusResult solve_t_k0(int k, double tol = 1e-12);

// Root of sum_{q=1}^m t^q cos(pi/(floor(m/q)+2)) = 1/2 on [1/3, 1].
// m = 1 forces t = 1 and is reported with boundary_flag set.
RadiusResult solve_t_m(int m, double tol = 1e-12);

struct ClosedBounds {
  double mh_lower_simple;  // 1 - (2/3)^{1/k}
  double mh_lower_gamma;   // gamma_k
  double mh_upper;         // min{1/3, 2 sqrt(log k)/sqrt(k)} (k>1), else 1/3
  double mh0_lower_simple; // sqrt(1 - (1/2)^{1/k})
  double mh0_lower;        // 1/(2 sqrt(k))
  double mh0_upper;        // min{1/sqrt 2, 2 sqrt(log k)/sqrt(k)} (k>1)
  double h_exact;          // 1/3
  double h0_lower;         // max{1/2, sqrt(1 - (1/2)^{1/k})}
  double h0_upper;         // 1/sqrt 2
};

ClosedBounds closed_bounds(int k);

}  // namespace polyball

#endif  // POLYBALL_RADII_HPP_
