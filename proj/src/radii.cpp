#include "polyball/radii.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyball/spectral.hpp"

namespace polyball {

namespace {

void check_truncation_fits(const FreePolynomial& f, const Truncation& trunc) {
  if (f.alphabet_sizes() != trunc.alphabet_sizes)
    throw std::invalid_argument("alphabet mismatch");
  for (int i = 0; i < trunc.factors(); ++i)
    if (f.slot_degree(i) > trunc.degrees[static_cast<size_t>(i)])
      throw std::invalid_argument("truncation too small for degree(F)");
}

double block_norm(const FreePolynomial& block, const Truncation& trunc,
                  double tol) {
  if (block.empty()) return 0.0;
  return operator_norm(assemble(block, Scaling::uniform(1.0), trunc), tol)
      .value;
}

}  // namespace

double majorant_mh(const FreePolynomial& f, double r, const Truncation& trunc,
                   double norm_tol) {
  if (r < 0.0 || r >= 1.0)
    throw std::domain_error("radius must be in [0, 1)");
  check_truncation_fits(f, trunc);
  double total = 0.0;
  for (const auto& p : f.multidegrees()) {
    int abs_p = 0;
    for (int v : p) abs_p += v;
    total += std::pow(r, abs_p) *
             block_norm(f.restricted_to_multidegree(p), trunc, norm_tol);
  }
  return total;
}

double majorant_h(const FreePolynomial& f, double r, const Truncation& trunc,
                  double norm_tol) {
  if (r < 0.0 || r >= 1.0)
    throw std::domain_error("radius must be in [0, 1)");
  check_truncation_fits(f, trunc);
  double total = 0.0;
  for (int q = 0; q <= f.degree(); ++q) {
    FreePolynomial block = f.restricted_to_total_degree(q);
    if (block.empty()) continue;
    total += std::pow(r, q) * block_norm(block, trunc, norm_tol);
  }
  return total;
}

MajorantCurve majorant_curve(const FreePolynomial& f, bool homogeneous,
                             const std::vector<double>& radii,
                             const Truncation& trunc) {
  MajorantCurve curve;
  curve.radii = radii;
  curve.truncation_degrees = trunc.degrees;
  curve.values.reserve(radii.size());
  for (double r : radii)
    curve.values.push_back(homogeneous ? majorant_h(f, r, trunc)
                                       : majorant_mh(f, r, trunc));
  return curve;
}

double bound_C(const std::vector<double>& r) {
  double prod = 1.0;
  for (double ri : r) {
    if (ri < 0.0 || ri >= 1.0)
      throw std::domain_error("radius must be in [0, 1)");
    prod *= 1.0 - ri;
  }
  const double c = 1.0 / prod - 1.0;
  return c <= 0.5 ? 1.0 : c + 0.25 / c;
}

double bound_K(const std::vector<double>& r) {
  double prod = 1.0;
  for (double ri : r) prod *= 1.0 - ri * ri;
  return std::min(bound_C(r), 1.0 / std::sqrt(prod));
}

double bound_M(double r) {
  if (r < 0.0 || r >= 1.0)
    throw std::domain_error("radius must be in [0, 1)");
  if (r <= 1.0 / 3.0) return 1.0;
  return (4.0 * r * r + (1.0 - r) * (1.0 - r)) / (4.0 * r * (1.0 - r));
}

double bound_Omega(double r, int k) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  return std::min(bound_M(r), std::pow(1.0 - r * r, -0.5 * k));
}

namespace {

// sqrt(binom(m+k-1, k-1)) via lgamma; exact to double rounding for the
// sizes we use.
double sqrt_binom_term(int m, int k) {
  return std::exp(0.5 * (std::lgamma(static_cast<double>(m + k)) -
                         std::lgamma(static_cast<double>(m + 1)) -
                         std::lgamma(static_cast<double>(k))));
}

struct SeriesEval {
  double value;
  double tail;
  int terms;
};

// f_k(r) = sum_{m >= 1} sqrt(binom(m+k-1, k-1)) r^m with a certified
// geometric tail: past m the term ratio is at most sqrt((m+k)/(m+1)) r.
SeriesEval eval_binom_series(int k, double r) {
  if (r <= 0.0) return {0.0, 0.0, 0};
  double sum = 0.0;
  double term = 0.0;
  int m = 0;
  const int max_terms = 200000;
  while (true) {
    ++m;
    term = sqrt_binom_term(m, k) * std::pow(r, m);
    sum += term;
    const double ratio =
        std::sqrt(static_cast<double>(m + 1 + k) / (m + 2)) * r;
    if (ratio < 1.0) {
      const double tail = term * ratio / (1.0 - ratio);
      if (tail < 1e-15 * std::max(1.0, sum) || m >= max_terms)
        return {sum, tail, m};
    }
    if (m >= max_terms)
      throw std::runtime_error("series did not converge within term cap");
  }
}

using RealFn = std::function<double(double)>;

void check_strictly_increasing(const RealFn& f, double lo, double hi) {
  double prev = f(lo);
  for (int j = 1; j <= 8; ++j) {
    const double x = lo + (hi - lo) * j / 8.0;
    const double v = f(x);
    if (v <= prev)
      throw std::logic_error("defining function is not strictly increasing");
    prev = v;
  }
}

RadiusResult bisect_increasing(const RealFn& f, double lo, double hi,
                               double target, double tol) {
  check_strictly_increasing(f, lo, hi);
  if (f(lo) > target || f(hi) < target)
    throw std::logic_error("root not bracketed");
  RadiusResult out;
  const double width_goal = std::min(tol, 1e-14);
  for (int it = 0; it < 200 && hi - lo > width_goal; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.value = 0.5 * (lo + hi);
  out.lo = lo;
  out.hi = hi;
  out.residual = std::abs(f(out.value) - target);
  return out;
}

}  // namespace

RadiusResult solve_gamma_k(int k, double tol) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  SeriesEval last{0, 0, 0};
  auto f = [&](double r) {
    last = eval_binom_series(k, r);
    return last.value;
  };
  // The series is unbounded as r -> 1, so a bracket always exists.
  double hi = 0.5;
  while (f(hi) < 0.5) hi = 0.5 * (hi + 1.0);
  RadiusResult out = bisect_increasing(f, 0.0, hi, 0.5, tol);
  out.tail_bound = last.tail;
  out.series_terms_used = last.terms;
  return out;
}

RadiusResult solve_t_k0(int k, double tol) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  SeriesEval last{0, 0, 0};
  auto f = [&](double r) {
    last = eval_binom_series(k, r);
    return last.value;
  };
  double hi = 0.6;
  while (f(hi) < 1.0) hi = 0.5 * (hi + 1.0);
  RadiusResult out = bisect_increasing(f, 0.0, hi, 1.0, tol);
  out.tail_bound = last.tail;
  out.series_terms_used = last.terms;
  return out;
}

RadiusResult solve_t_m(int m, double tol) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (m == 1) {
    // t cos(pi/3) = 1/2 forces t = 1, outside the open interval the
    // finite-degree statement lives in.
    RadiusResult out;
    out.value = 1.0;
    out.lo = out.hi = 1.0;
    out.residual = std::abs(std::cos(M_PI / 3.0) - 0.5);
    out.series_terms_used = 1;
    out.boundary_flag = true;
    return out;
  }
  std::vector<double> cosines(static_cast<size_t>(m) + 1, 0.0);
  for (int q = 1; q <= m; ++q)
    cosines[static_cast<size_t>(q)] = std::cos(M_PI / (m / q + 2));
  auto f = [&](double t) {
    double acc = 0.0;
    for (int q = m; q >= 1; --q)
      acc = (acc + cosines[static_cast<size_t>(q)]) * t;
    return acc;
  };
  RadiusResult out = bisect_increasing(f, 1.0 / 3.0, 1.0, 0.5, tol);
  out.series_terms_used = m;
  return out;
}

ClosedBounds closed_bounds(int k) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  ClosedBounds b{};
  const double dk = static_cast<double>(k);
  b.mh_lower_simple = 1.0 - std::pow(2.0 / 3.0, 1.0 / dk);
  b.mh_lower_gamma = solve_gamma_k(k).value;
  const double boas = 2.0 * std::sqrt(std::log(dk)) / std::sqrt(dk);
  b.mh_upper = k > 1 ? std::min(1.0 / 3.0, boas) : 1.0 / 3.0;
  b.mh0_lower_simple = std::sqrt(1.0 - std::pow(0.5, 1.0 / dk));
  b.mh0_lower = 0.5 / std::sqrt(dk);
  b.mh0_upper = k > 1 ? std::min(1.0 / std::sqrt(2.0), boas)
                      : 1.0 / std::sqrt(2.0);
  b.h_exact = 1.0 / 3.0;
  b.h0_lower = std::max(0.5, b.mh0_lower_simple);
  b.h0_upper = 1.0 / std::sqrt(2.0);
  return b;
}

}  // namespace polyball
