// JSON file formats for polynomials and suite reports, plus
// locale-independent number formatting for the CLI.

#ifndef POLYBALL_IO_HPP_
#define POLYBALL_IO_HPP_

#include <string>

#include "polyball/model.hpp"
#include "polyball/suites.hpp"

namespace polyball {

// Polynomial files:
//   {"n": [n_1..n_k], "m": coeff_dim,
//    "terms": [{"word": [[letters]..k], "coeff": [[[re,im]..]..m rows]}]}
// Pluriharmonic files add "word_star" per term.
std::string polynomial_to_json(const FreePolynomial& f);
FreePolynomial polynomial_from_json(const std::string& text);
std::string pluriharmonic_to_json(const KPluriharmonic& f);
KPluriharmonic pluriharmonic_from_json(const std::string& text);

FreePolynomial load_polynomial(const std::string& path);
void save_polynomial(const FreePolynomial& f, const std::string& path);

std::string report_to_json(const SuiteReport& rep);
std::string report_to_table(const SuiteReport& rep);

// 12 significant digits, '.' decimal point regardless of locale.
std::string format_number(double v);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace polyball

#endif  // POLYBALL_IO_HPP_
