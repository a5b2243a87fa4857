#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyball/io.hpp"
#include "polyball/suites.hpp"

using namespace polyball;

TEST_CASE("polynomial JSON round trip") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    SchurSample s = gen_schur(rng(), {2, 1}, 2, 2, 1);
    FreePolynomial back = polynomial_from_json(polynomial_to_json(s.f));
    CHECK(back.alphabet_sizes() == s.f.alphabet_sizes());
    CHECK(back.coeff_dim() == s.f.coeff_dim());
    REQUIRE(back.terms().size() == s.f.terms().size());
    for (const auto& [w, c] : s.f.terms()) {
      CHECK((back.coefficient(w) - c).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("words serialize as integer arrays, identity as the empty array") {
  FreePolynomial f({2, 1}, 1);
  f.set_scalar_term(MultiWord::identity({2, 1}), Complex(1.5, 0.0));
  const std::string text = polynomial_to_json(f);
  CHECK(text.find("[]") != std::string::npos);
  FreePolynomial back = polynomial_from_json(text);
  CHECK(back.scalar_coefficient(MultiWord::identity({2, 1})) ==
        Complex(1.5, 0.0));
}

TEST_CASE("pluriharmonic JSON round trip") {
  KPluriharmonic f({2}, 1);
  MultiWord g1({Word({1}, 2)});
  f.set_term(g1, MultiWord::identity({2}),
             DenseCMat::Constant(1, 1, Complex(0.25, -1.0)));
  f.set_term(MultiWord::identity({2}), g1,
             DenseCMat::Constant(1, 1, Complex(0.25, 1.0)));
  KPluriharmonic back = pluriharmonic_from_json(pluriharmonic_to_json(f));
  CHECK(back.terms().size() == 2);
  CHECK(std::abs(back.coefficient(g1, MultiWord::identity({2}))(0, 0) -
                 Complex(0.25, -1.0)) == 0.0);
}

TEST_CASE("report serialization") {
  SuiteReport rep;
  rep.suite = "demo";
  rep.cases = 3;
  rep.tolerance = 1e-8;
  rep.max_slack_used = -0.125;
  CHECK(report_to_json(rep).find("\"pass\": true") != std::string::npos);
  rep.violations.push_back({7, "case", 2.0, 1.0, 1.0});
  const std::string j = report_to_json(rep);
  CHECK(j.find("\"pass\": false") != std::string::npos);
  CHECK(j.find("\"trial\": 7") != std::string::npos);
  CHECK(report_to_table(rep).find("FAIL") != std::string::npos);
}

TEST_CASE("number formatting is short, round-trippable, dot-separated") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0).substr(0, 8) == "0.333333");
  CHECK(format_number(1e-12).find('e') != std::string::npos);
  CHECK(format_number(12345.678).find(',') == std::string::npos);
}

TEST_CASE("identical inputs give byte-identical serialized output") {
  SchurSample a = gen_schur(7, {2}, 2, 1, 2);
  SchurSample b = gen_schur(7, {2}, 2, 1, 2);
  CHECK(polynomial_to_json(a.f) == polynomial_to_json(b.f));

  SuiteConfig cfg;
  cfg.trials = 10;
  cfg.seed = 3;
  cfg.threads = 2;
  CHECK(report_to_json(wiener_suite(cfg)) == report_to_json(wiener_suite(cfg)));
}
