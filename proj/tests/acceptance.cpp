// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and time budgets are pinned in the checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "polyball/io.hpp"
#include "polyball/model.hpp"
#include "polyball/radii.hpp"
#include "polyball/spectral.hpp"
#include "polyball/suites.hpp"

using namespace polyball;

namespace {

int failures = 0;

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("criterion %2d [%s] %s (%.2f s)%s%s\n", id,
              ok ? "PASS" : "FAIL", name.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  criterion(1, "gamma_1 = 1/3 within 1e-10, under 1 s", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    RadiusResult g = solve_gamma_k(1, 1e-12);
    d = "gamma_1 = " + format_number(g.value);
    return std::abs(g.value - 1.0 / 3.0) <= 1e-10 && elapsed(t0) < 1.0;
  });

  criterion(2, "gamma_k bracket for k = 2..50, residual <= 1e-12, under 10 s",
            [](std::string& d) {
              const auto t0 = std::chrono::steady_clock::now();
              for (int k = 2; k <= 50; ++k) {
                RadiusResult g = solve_gamma_k(k, 1e-12);
                const double dk = k;
                if (!(g.value > 1.0 / (3.0 * std::sqrt(dk)))) {
                  d = "lower bracket failed at k=" + std::to_string(k);
                  return false;
                }
                if (!(g.value < 2.0 * std::sqrt(std::log(dk) / dk))) {
                  d = "upper bracket failed at k=" + std::to_string(k);
                  return false;
                }
                if (!(g.residual <= 1e-12)) {
                  d = "residual " + format_number(g.residual) +
                      " at k=" + std::to_string(k);
                  return false;
                }
              }
              d = "elapsed " + format_number(elapsed(t0)) + " s";
              return elapsed(t0) < 10.0;
            });

  criterion(3,
            "t_m strictly decreasing on 2..200, above 1/3, t_200 near 1/3, "
            "under 5 s",
            [](std::string& d) {
              const auto t0 = std::chrono::steady_clock::now();
              double prev = 1.0;
              for (int m = 2; m <= 200; ++m) {
                RadiusResult t = solve_t_m(m, 1e-13);
                if (!(t.value < prev) || !(t.value > 1.0 / 3.0)) {
                  d = "monotonicity failed at m=" + std::to_string(m);
                  return false;
                }
                prev = t.value;
              }
              const double t200 = solve_t_m(200).value;
              d = "t_200 - 1/3 = " + format_number(t200 - 1.0 / 3.0);
              return std::abs(t200 - 1.0 / 3.0) < 1e-3 && elapsed(t0) < 5.0;
            });

  criterion(4, "t_k0(1) = 1/2 within 1e-10", [](std::string& d) {
    RadiusResult t = solve_t_k0(1, 1e-12);
    d = "t_1 = " + format_number(t.value);
    return std::abs(t.value - 0.5) <= 1e-10;
  });

  criterion(
      5, "orthogonal-range norm identity on 100 random Lambda_p blocks",
      [](std::string& d) {
        std::mt19937_64 rng(2024);
        std::normal_distribution<double> g;
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
          const int k = 1 + static_cast<int>(rng() % 3);
          std::vector<int> n(static_cast<size_t>(k)),
              p(static_cast<size_t>(k));
          int total = 0;
          for (int i = 0; i < k; ++i) {
            n[static_cast<size_t>(i)] = 1 + static_cast<int>(rng() % 3);
            p[static_cast<size_t>(i)] = static_cast<int>(rng() % 4);
            total += p[static_cast<size_t>(i)];
          }
          if (total == 0) p[0] = 1;
          WordSet lp = enumerate_lambda(p, n);
          FreePolynomial f(n, 1);
          double sumsq = 0.0;
          for (const MultiWord& mw : lp.elements()) {
            const Complex c(g(rng), g(rng));
            sumsq += std::norm(c);
            f.set_scalar_term(mw, c);
          }
          // d_i = p_i suffices: the compression is attained on the vacuum.
          Truncation tr(p, n);
          const double nn =
              operator_norm(assemble(f, Scaling::uniform(1.0), tr), 1e-12)
                  .value;
          worst = std::max(worst, std::abs(nn - std::sqrt(sumsq)));
        }
        d = "worst deviation " + format_number(worst);
        return worst <= 1e-10;
      });

  criterion(
      6, "Moebius majorant closed forms at r = 1/3 and r = 0.4",
      [](std::string& d) {
        Truncation tr({84}, {1});
        double worst = 0.0;
        std::vector<double> as = {0.1, 0.2, 0.3, 0.4, 0.5,
                                  0.6, 0.7, 0.8, 0.9, 0.99};
        for (double a : as) {
          FreePolynomial f = mobius_polynomial(a, 80);
          const double dv = majorant_mh(f, 1.0 / 3.0, tr);
          const double expect = (1.0 + 3.0 * a - 2.0 * a * a) / (3.0 - a);
          if (dv > 1.0 + 1e-12) {
            d = "D exceeded 1 at a=" + format_number(a);
            return false;
          }
          worst = std::max(worst, std::abs(dv - expect));
          const double slack = 2.0 * (1.0 - a) * (1.0 - a) / (3.0 - a);
          worst = std::max(worst, std::abs((1.0 - dv) - slack));
        }
        const double past =
            majorant_mh(mobius_polynomial(0.9, 80), 0.4, tr);
        if (std::abs(past - 1.01875) > 1e-9 || !(past > 1.0)) {
          d = "D(f_0.9, 0.4) = " + format_number(past);
          return false;
        }
        d = "worst closed-form deviation " + format_number(worst);
        return worst <= 1e-10;
      });

  criterion(7, "numerical radius of the truncated shift, d = 1..20",
            [](std::string& d) {
              double worst = 0.0;
              for (int deg = 1; deg <= 20; ++deg) {
                Truncation tr({deg}, {1});
                DenseCMat s = DenseCMat(left_creation(tr, 0, 1));
                const double w = numerical_radius(s, 5e-9).value;
                worst = std::max(
                    worst, std::abs(w - std::cos(M_PI / (deg + 2))));
              }
              d = "worst deviation " + format_number(worst);
              return worst <= 1e-8;
            });

  criterion(8, "Fejer suite, 500 trials per degree m <= 8 at tol 1e-9",
            [](std::string& d) {
              SuiteConfig cfg;
              cfg.trials = 500;
              cfg.tol = 1e-9;
              cfg.fejer_max_degree = 8;
              SuiteReport rep = fejer_suite(cfg);
              d = "cases " + std::to_string(rep.cases) + ", violations " +
                  std::to_string(rep.violations.size());
              return rep.pass();
            });

  criterion(
      9,
      "eight randomized suites, 500 trials each, zero violations, under 60 s",
      [](std::string& d) {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteConfig cfg;  // defaults: seed 42, 500 trials, tol 1e-8
        bool ok = true;
        std::string breakdown;
        for (const std::string& name :
             {std::string("wiener"), std::string("landau-op"),
              std::string("bohr-mh"), std::string("bohr-numrad"),
              std::string("landau-polydisc"), std::string("harnack"),
              std::string("re-bridge"), std::string("bombieri-upper")}) {
          SuiteReport rep = run_suite(name, cfg);
          if (!rep.pass()) {
            ok = false;
            breakdown += name + " FAILED(" +
                         std::to_string(rep.violations.size()) + ") ";
          }
        }
        const double secs = elapsed(t0);
        d = breakdown + "elapsed " + format_number(secs) + " s";
        return ok && secs < 60.0;
      });

  criterion(10, "Harnack scalar probe reaches 95% of the bound",
            [](std::string& d) {
              const double c = 0.999, rho = 0.9;
              const double value = (1.0 + c * rho) / (1.0 - c * rho);
              const double bound = (1.0 + rho) / (1.0 - rho);
              d = "ratio " + format_number(value / bound);
              return value <= bound && value >= 0.95 * bound;
            });

  criterion(11, "Berezin kernel gram defect within tail bound at degree 20",
            [](std::string& d) {
              Truncation tr({20, 20}, {1, 2});
              CVector z1(1), z2(2);
              z1(0) = Complex(0.38, -0.29);  // |z1| ~ 0.478
              z2(0) = Complex(0.21, 0.33);
              z2(1) = Complex(-0.28, 0.11);  // |z2| ~ 0.468
              BerezinKernel k = berezin_kernel({z1, z2}, tr);
              const double defect = std::abs(k.gram() - 1.0);
              d = "defect " + format_number(defect) + ", tail bound " +
                  format_number(k.tail_bound);
              return defect <= k.tail_bound && k.tail_bound <= 1e-6;
            });

  criterion(12, "negative control: corrupted Landau constant reports "
                "violations",
            [](std::string& d) {
              SuiteConfig cfg;
              cfg.trials = 100;
              cfg.landau_factor = 1.5;
              SuiteReport rep = landau_op_suite(cfg);
              d = std::to_string(rep.violations.size()) + " violations";
              return !rep.pass();
            });

  std::printf("%s\n", failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS"
                                    : "ACCEPTANCE: FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
