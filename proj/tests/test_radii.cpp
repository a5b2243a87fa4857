#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "polyball/radii.hpp"
#include "polyball/spectral.hpp"
#include "polyball/suites.hpp"

using namespace polyball;

namespace {

// Independent oracle for the binomial-coefficient series: plain
// term-by-term summation with a fixed large cutoff, no tail logic.
double naive_series(int k, double r, int terms) {
  double sum = 0.0;
  for (int m = 1; m <= terms; ++m) {
    double binom = 1.0;
    for (int j = 1; j < k; ++j)
      binom *= static_cast<double>(m + j) / j;
    sum += std::sqrt(binom) * std::pow(r, m);
  }
  return sum;
}

double naive_bisect(int k, double target) {
  double lo = 0.0, hi = 0.999;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (naive_series(k, mid, 4000) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FreePolynomial random_poly(std::mt19937_64& rng, const std::vector<int>& n,
                           int degree) {
  std::normal_distribution<double> g;
  FreePolynomial f(n, 1);
  for (int q = 0; q <= degree; ++q) {
    WordSet gq = enumerate_gamma(q, n);
    for (const MultiWord& mw : gq.elements())
      f.set_scalar_term(mw, Complex(g(rng), g(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("gamma_k closed form and oracle") {
  RadiusResult g1 = solve_gamma_k(1);
  CHECK(std::abs(g1.value - 1.0 / 3.0) < 1e-12);
  CHECK(g1.residual <= 1e-12);
  CHECK(g1.tail_bound <= 1e-12);

  RadiusResult g2 = solve_gamma_k(2);
  CHECK(std::abs(g2.value - naive_bisect(2, 0.5)) < 1e-9);
  CHECK(g2.value == doctest::Approx(0.2494).epsilon(1e-3));

  RadiusResult g5 = solve_gamma_k(5);
  CHECK(std::abs(g5.value - naive_bisect(5, 0.5)) < 1e-9);
}

TEST_CASE("gamma_k bracket for k = 2..50") {
  for (int k = 2; k <= 50; ++k) {
    RadiusResult g = solve_gamma_k(k);
    const double dk = k;
    CHECK(g.value > 1.0 / (3.0 * std::sqrt(dk)));
    CHECK(g.value < 2.0 * std::sqrt(std::log(dk) / dk));
    CHECK(g.residual <= 1e-12);
    CHECK(g.lo <= g.value);
    CHECK(g.value <= g.hi);
  }
}

TEST_CASE("t_k0") {
  RadiusResult t1 = solve_t_k0(1);
  CHECK(std::abs(t1.value - 0.5) < 1e-12);
  RadiusResult t2 = solve_t_k0(2);
  CHECK(t2.value > 1.0 / (2.0 * std::sqrt(2.0)));
  CHECK(t2.value < 1.0);
  CHECK(std::abs(t2.value - naive_bisect(2, 1.0)) < 1e-9);
  double prev = 1.0;
  for (int k = 1; k <= 12; ++k) {
    const double v = solve_t_k0(k).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("t_m solver") {
  // m = 2: root of t^2/2 + cos(pi/4) t = 1/2 by the quadratic formula.
  const double c1 = std::cos(M_PI / 4.0);
  const double expect = -c1 + std::sqrt(c1 * c1 + 1.0);
  RadiusResult t2 = solve_t_m(2);
  CHECK(std::abs(t2.value - expect) < 1e-11);
  CHECK(t2.value == doctest::Approx(0.5176).epsilon(1e-3));

  // Strictly decreasing toward 1/3.
  double prev = solve_t_m(2).value;
  for (int m = 3; m <= 200; ++m) {
    const double v = solve_t_m(m).value;
    CHECK(v < prev);
    CHECK(v > 1.0 / 3.0);
    prev = v;
  }
  CHECK(std::abs(solve_t_m(200).value - 1.0 / 3.0) < 1e-3);

  // m = 1 degenerates to the boundary.
  RadiusResult t1 = solve_t_m(1);
  CHECK(t1.value == 1.0);
  CHECK(t1.boundary_flag);
}

TEST_CASE("closed bound functions") {
  // k=1, r=1/3: c = 1/2 exactly, boundary of the two branches.
  CHECK(bound_C({1.0 / 3.0}) == doctest::Approx(1.0));
  CHECK(bound_C({0.5}) == doctest::Approx(1.25));
  CHECK(bound_C({0.0, 0.0}) == doctest::Approx(1.0));
  // Continuity across the branch point.
  CHECK(bound_C({1.0 / 3.0 + 1e-9}) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(bound_K({0.0}) == doctest::Approx(1.0));
  CHECK(bound_K({0.9}) ==
        doctest::Approx(std::min(bound_C({0.9}), 1.0 / std::sqrt(0.19))));
  // Monotone in each coordinate (sampled).
  double prev = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.85}) {
    const double v = bound_K({r, 0.2});
    CHECK(v >= prev - 1e-12);
    prev = v;
  }

  CHECK(bound_M(0.25) == doctest::Approx(1.0));
  CHECK(bound_M(1.0 / 3.0) == doctest::Approx(1.0));
  CHECK(bound_M(1.0 / 3.0 + 1e-10) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(bound_M(0.5) == doctest::Approx(1.25));
  CHECK(bound_Omega(0.5, 1) == doctest::Approx(std::min(1.25, 1.0 / std::sqrt(0.75))));
  CHECK(bound_Omega(0.25, 3) == doctest::Approx(1.0));

  // K <= C pointwise.
  for (double r : {0.1, 0.4, 0.6, 0.8})
    CHECK(bound_K({r, r}) <= bound_C({r, r}) + 1e-15);
}

TEST_CASE("closed_bounds record") {
  ClosedBounds b1 = closed_bounds(1);
  CHECK(b1.mh_lower_simple == doctest::Approx(1.0 / 3.0));
  CHECK(b1.mh_upper == doctest::Approx(1.0 / 3.0));
  CHECK(b1.mh_lower_gamma == doctest::Approx(1.0 / 3.0));
  CHECK(b1.h0_lower == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b1.h0_upper == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b1.mh0_lower == doctest::Approx(0.5));
  CHECK(b1.h_exact == doctest::Approx(1.0 / 3.0));

  ClosedBounds b4 = closed_bounds(4);
  CHECK(b4.mh_lower_simple == doctest::Approx(1.0 - std::pow(2.0 / 3.0, 0.25)));
  // The gamma_4 lower bound beats the simple one; report both.
  CHECK(b4.mh_lower_gamma > 1.0 / 6.0);
  CHECK(b4.mh_lower_gamma > b4.mh_lower_simple);
  CHECK(b4.mh_upper <= 1.0 / 3.0);
}

TEST_CASE("majorants") {
  // Constant.
  FreePolynomial c = FreePolynomial::constant({2, 2}, Complex(0.0, -2.5));
  Truncation tr({3, 3}, {2, 2});
  CHECK(majorant_mh(c, 0.7, tr) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(majorant_h(c, 0.7, tr) == doctest::Approx(2.5).epsilon(1e-12));

  // A single orthogonal block contributes r^{|p|} ||a||_2 exactly.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  FreePolynomial blk({2, 2}, 1);
  double sumsq = 0.0;
  WordSet lp = enumerate_lambda({1, 1}, {2, 2});
  for (const MultiWord& mw : lp.elements()) {
    Complex v(g(rng), g(rng));
    sumsq += std::norm(v);
    blk.set_scalar_term(mw, v);
  }
  const double r = 0.35;
  CHECK(majorant_mh(blk, r, tr) ==
        doctest::Approx(r * r * std::sqrt(sumsq)).epsilon(1e-9));

  // Moebius closed form: D(f_0.5, 1/3) = 0.8.
  FreePolynomial mob = mobius_polynomial(0.5, 60);
  Truncation trm({62}, {1});
  CHECK(majorant_mh(mob, 1.0 / 3.0, trm) == doctest::Approx(0.8).epsilon(1e-11));
  CHECK(mobius_majorant_closed(0.5, 1.0 / 3.0) == doctest::Approx(0.8));

  // k = 1: homogeneous and multi-homogeneous majorants agree.
  FreePolynomial f1 = random_poly(rng, {2}, 3);
  Truncation tr1({5}, {2});
  CHECK(majorant_h(f1, 0.3, tr1) ==
        doctest::Approx(majorant_mh(f1, 0.3, tr1)).epsilon(1e-10));

  // M <= D for random two-factor polynomials.
  for (int t = 0; t < 5; ++t) {
    FreePolynomial f = random_poly(rng, {2, 1}, 2);
    Truncation trf({4, 4}, {2, 1});
    for (double rr : {0.15, 0.45}) {
      CHECK(majorant_h(f, rr, trf) <= majorant_mh(f, rr, trf) + 1e-10);
    }
  }

  // D(F, r) <= K(r,...,r) ||F(S)|| at matched truncation.
  for (int t = 0; t < 5; ++t) {
    FreePolynomial f = random_poly(rng, {1, 2}, 2);
    Truncation trf({5, 5}, {1, 2});
    const double nn =
        operator_norm(assemble(f, Scaling::uniform(1.0), trf), 1e-11).value;
    for (double rr : {0.2, 0.5}) {
      CHECK(majorant_mh(f, rr, trf) <= bound_K({rr, rr}) * nn + 1e-8);
    }
  }

  // Truncation too small is an error for majorants.
  CHECK_THROWS_AS(majorant_mh(mob, 0.1, Truncation({3}, {1})),
                  std::invalid_argument);

  // Curve values are nonnegative and nondecreasing in r.
  MajorantCurve curve =
      majorant_curve(mob, false, {0.0, 0.1, 0.2, 0.3, 0.33}, trm);
  for (size_t i = 0; i < curve.values.size(); ++i) {
    CHECK(curve.values[i] >= 0.0);
    if (i) CHECK(curve.values[i] >= curve.values[i - 1] - 1e-12);
  }
}

TEST_CASE("solver defining functions are re-verified at the root") {
  for (int k : {1, 2, 7, 20}) {
    RadiusResult g = solve_gamma_k(k);
    CHECK(std::abs(naive_series(k, g.value, 4000) - 0.5) < 1e-10);
  }
  for (int m : {2, 5, 50}) {
    RadiusResult t = solve_t_m(m);
    double acc = 0.0;
    for (int q = 1; q <= m; ++q)
      acc += std::pow(t.value, q) * std::cos(M_PI / (m / q + 2));
    CHECK(std::abs(acc - 0.5) < 1e-11);
  }
}
