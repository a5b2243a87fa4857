// Seeded randomized suites checking the library's inequalities against
// generated instances and independent closed forms.

#ifndef POLYBALL_SUITES_HPP_
#define POLYBALL_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "polyball/model.hpp"

namespace polyball {

struct Violation {
  int trial = 0;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  double tolerance = 0.0;
  double max_slack_used = 0.0;  // largest lhs - rhs seen across checks
  std::vector<Violation> violations;
  bool pass() const { return violations.empty(); }
};

struct SuiteConfig {
  uint64_t seed = 42;
  int trials = 500;
  double tol = 1e-8;
  int headroom = 2;
  // Landau constant; 2.0 is the theorem, anything smaller is a
  // deliberate corruption used as a negative control.
  double landau_factor = 2.0;
  int fejer_max_degree = 8;
  int threads = 0;  // 0 = hardware concurrency
};

// Random polynomial rescaled so its truncated model norm is 1 (a lower
// bound for the true norm; tests are run at the matching truncation).
struct SchurSample {
  FreePolynomial f;
  double certified_norm_lower = 1.0;
  double scaling_applied = 1.0;
  int headroom = 0;
};

SchurSample gen_schur(uint64_t seed, const std::vector<int>& alphabet_sizes,
                      int degree, int coeff_dim, int headroom = 2,
                      bool scalar_a0 = true, bool rotate_a0 = true);

// ||F(S)|| <= 1 at truncation (hence Re F(S) <= I there), constant term
// real in [0, 1).
FreePolynomial gen_re_bounded(uint64_t seed,
                              const std::vector<int>& alphabet_sizes,
                              int degree, int coeff_dim, int headroom = 2);

// Truncated Moebius function f_a(z) = (a - z)/(1 - a z), k = 1, n = 1.
FreePolynomial mobius_polynomial(double a, int terms);
// Closed form of its multi-homogeneous majorant: a + (1-a^2) r/(1-a r).
double mobius_majorant_closed(double a, double r);

SuiteReport wiener_suite(const SuiteConfig& cfg);
SuiteReport bohr_mh_suite(const SuiteConfig& cfg);
SuiteReport bohr_h_suite(const SuiteConfig& cfg);
SuiteReport landau_op_suite(const SuiteConfig& cfg);
SuiteReport fejer_suite(const SuiteConfig& cfg);
SuiteReport bohr_numrad_suite(const SuiteConfig& cfg);
SuiteReport landau_polydisc_suite(const SuiteConfig& cfg);
SuiteReport harnack_suite(const SuiteConfig& cfg);
SuiteReport re_bridge_suite(const SuiteConfig& cfg);
SuiteReport bombieri_upper_suite(const SuiteConfig& cfg);

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace polyball

#endif  // POLYBALL_SUITES_HPP_
