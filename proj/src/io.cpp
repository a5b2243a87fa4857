#include "polyball/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace polyball {

using nlohmann::json;

namespace {

json word_to_json(const Word& w) { return json(w.letters()); }

Word word_from_json(const json& j, int alphabet_size) {
  std::vector<int> letters = j.get<std::vector<int>>();
  return Word(std::move(letters), alphabet_size);
}

json multiword_to_json(const MultiWord& w) {
  json arr = json::array();
  for (const Word& part : w.parts()) arr.push_back(word_to_json(part));
  return arr;
}

MultiWord multiword_from_json(const json& j, const std::vector<int>& n) {
  if (!j.is_array() || j.size() != n.size())
    throw std::invalid_argument("word must have one letter array per factor");
  std::vector<Word> parts;
  parts.reserve(n.size());
  for (size_t i = 0; i < n.size(); ++i)
    parts.push_back(word_from_json(j[i], n[i]));
  return MultiWord(std::move(parts));
}

json coeff_to_json(const DenseCMat& c) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index s = 0; s < c.cols(); ++s)
      row.push_back(json::array({c(r, s).real(), c(r, s).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseCMat coeff_from_json(const json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m)
    throw std::invalid_argument("coefficient must be an m x m matrix");
  DenseCMat c(m, m);
  for (int r = 0; r < m; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw std::invalid_argument("coefficient must be an m x m matrix");
    for (int s = 0; s < m; ++s) {
      const json& e = row[static_cast<size_t>(s)];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("entries must be [re, im] pairs");
      c(r, s) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return c;
}

}  // namespace

std::string polynomial_to_json(const FreePolynomial& f) {
  json doc;
  doc["n"] = f.alphabet_sizes();
  doc["m"] = f.coeff_dim();
  json terms = json::array();
  for (const auto& [w, c] : f.terms()) {
    json term;
    term["word"] = multiword_to_json(w);
    term["coeff"] = coeff_to_json(c);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2);
}

FreePolynomial polynomial_from_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<int> n = doc.at("n").get<std::vector<int>>();
  const int m = doc.at("m").get<int>();
  FreePolynomial f(n, m);
  for (const json& term : doc.at("terms")) {
    f.add_term(multiword_from_json(term.at("word"), n),
               coeff_from_json(term.at("coeff"), m));
  }
  return f;
}

std::string pluriharmonic_to_json(const KPluriharmonic& f) {
  json doc;
  doc["n"] = f.alphabet_sizes();
  doc["m"] = f.coeff_dim();
  json terms = json::array();
  for (const auto& [key, c] : f.terms()) {
    json term;
    term["word"] = multiword_to_json(key.first);
    term["word_star"] = multiword_to_json(key.second);
    term["coeff"] = coeff_to_json(c);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2);
}

KPluriharmonic pluriharmonic_from_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<int> n = doc.at("n").get<std::vector<int>>();
  const int m = doc.at("m").get<int>();
  KPluriharmonic f(n, m);
  for (const json& term : doc.at("terms")) {
    f.set_term(multiword_from_json(term.at("word"), n),
               multiword_from_json(term.at("word_star"), n),
               coeff_from_json(term.at("coeff"), m));
  }
  return f;
}

FreePolynomial load_polynomial(const std::string& path) {
  return polynomial_from_json(read_text_file(path));
}

void save_polynomial(const FreePolynomial& f, const std::string& path) {
  write_text_file(path, polynomial_to_json(f));
}

std::string report_to_json(const SuiteReport& rep) {
  json doc;
  doc["suite"] = rep.suite;
  doc["cases"] = rep.cases;
  doc["tolerance"] = rep.tolerance;
  doc["pass"] = rep.pass();
  doc["max_slack_used"] = rep.max_slack_used;
  json vs = json::array();
  for (const Violation& v : rep.violations) {
    json jv;
    jv["trial"] = v.trial;
    jv["params"] = v.params;
    jv["lhs"] = v.lhs;
    jv["rhs"] = v.rhs;
    jv["slack"] = v.slack;
    vs.push_back(std::move(jv));
  }
  doc["violations"] = std::move(vs);
  return doc.dump(2);
}

std::string report_to_table(const SuiteReport& rep) {
  std::ostringstream os;
  os << rep.suite << ": " << (rep.pass() ? "PASS" : "FAIL") << "  cases="
     << rep.cases << "  violations=" << rep.violations.size()
     << "  max_slack=" << format_number(rep.max_slack_used) << "\n";
  size_t shown = 0;
  for (const Violation& v : rep.violations) {
    if (++shown > 10) {
      os << "  ... " << rep.violations.size() - 10 << " more\n";
      break;
    }
    os << "  trial " << v.trial << " [" << v.params
       << "] lhs=" << format_number(v.lhs) << " rhs=" << format_number(v.rhs)
       << " slack=" << format_number(v.slack) << "\n";
  }
  return os.str();
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polyball
