// Command-line surface: radius tables, bound curves, norm/radius
// evaluation of polynomial files, and the verification runner.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyball/io.hpp"
#include "polyball/radii.hpp"
#include "polyball/spectral.hpp"
#include "polyball/suites.hpp"

using namespace polyball;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

Truncation truncation_for_file(const FreePolynomial& f,
                               const std::string& trunc_csv, int headroom) {
  if (trunc_csv.empty()) return truncation_for(f, headroom);
  std::vector<int> d = parse_int_list(trunc_csv);
  if (d.size() == 1 && f.alphabet_sizes().size() > 1)
    d.assign(f.alphabet_sizes().size(), d[0]);
  return Truncation(d, f.alphabet_sizes());
}

ScalarPoint parse_point(const std::string& text,
                        const std::vector<int>& alphabet_sizes) {
  auto doc = nlohmann::json::parse(text);
  if (!doc.is_array() || doc.size() != alphabet_sizes.size())
    throw std::invalid_argument("point must list one coordinate row per factor");
  ScalarPoint z;
  for (size_t i = 0; i < doc.size(); ++i) {
    const auto& row = doc[i];
    if (static_cast<int>(row.size()) != alphabet_sizes[i])
      throw std::invalid_argument("coordinate row length must match n_i");
    CVector zi(alphabet_sizes[i]);
    for (int j = 0; j < alphabet_sizes[i]; ++j) {
      const auto& e = row[static_cast<size_t>(j)];
      zi(j) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
    z.push_back(std::move(zi));
  }
  return z;
}

int cmd_radii(int k_min, int k_max, int m_min, int m_max, double tol,
              const std::string& format, const std::string& out_path) {
  std::ostringstream os;
  if (format == "csv") {
    os << "k,mh_lower_simple,gamma_k,inv_3sqrtk,boas_khavinson,"
          "mh0_lower_simple,inv_2sqrtk,t_k0\n";
    for (int k = k_min; k <= k_max; ++k) {
      ClosedBounds b = closed_bounds(k);
      const double dk = k;
      os << k << ',' << format_number(b.mh_lower_simple) << ','
         << format_number(b.mh_lower_gamma) << ','
         << format_number(1.0 / (3.0 * std::sqrt(dk))) << ','
         << format_number(k > 1 ? 2.0 * std::sqrt(std::log(dk) / dk) : 0.0)
         << ',' << format_number(b.mh0_lower_simple) << ','
         << format_number(b.mh0_lower) << ','
         << format_number(solve_t_k0(k, tol).value) << "\n";
    }
    os << "m,t_m\n";
    for (int m = m_min; m <= m_max; ++m)
      os << m << ',' << format_number(solve_t_m(m, tol).value) << "\n";
  } else {
    nlohmann::json doc;
    auto& ks = doc["k_table"];
    for (int k = k_min; k <= k_max; ++k) {
      ClosedBounds b = closed_bounds(k);
      nlohmann::json row;
      row["k"] = k;
      row["mh_lower_simple"] = b.mh_lower_simple;
      row["gamma_k"] = b.mh_lower_gamma;
      row["inv_3sqrtk"] = 1.0 / (3.0 * std::sqrt(static_cast<double>(k)));
      row["boas_khavinson"] =
          k > 1 ? 2.0 * std::sqrt(std::log(static_cast<double>(k)) / k) : 0.0;
      row["mh0_lower_simple"] = b.mh0_lower_simple;
      row["inv_2sqrtk"] = b.mh0_lower;
      row["t_k0"] = solve_t_k0(k, tol).value;
      ks.push_back(std::move(row));
    }
    auto& ms = doc["m_table"];
    for (int m = m_min; m <= m_max; ++m) {
      nlohmann::json row;
      row["m"] = m;
      row["t_m"] = solve_t_m(m, tol).value;
      ms.push_back(std::move(row));
    }
    os << doc.dump(2) << "\n";
  }
  emit(os.str(), out_path);
  return 0;
}

int cmd_curve(const std::string& kind, const std::string& file, int k,
              double r0, double r1, int steps, const std::string& trunc_csv,
              int headroom, const std::string& out_path) {
  std::ostringstream os;
  os << "r,value\n";
  std::vector<double> grid;
  for (int j = 0; j <= steps; ++j)
    grid.push_back(r0 + (r1 - r0) * j / std::max(1, steps));

  if (kind == "D" || kind == "M") {
    if (file.empty())
      throw std::invalid_argument("curve kind " + kind + " needs --file");
    FreePolynomial f = load_polynomial(file);
    Truncation tr = truncation_for_file(f, trunc_csv, headroom);
    for (double r : grid)
      os << format_number(r) << ','
         << format_number(kind == "D" ? majorant_mh(f, r, tr)
                                      : majorant_h(f, r, tr))
         << "\n";
  } else if (kind == "C" || kind == "K") {
    for (double r : grid) {
      std::vector<double> rv(static_cast<size_t>(k), r);
      os << format_number(r) << ','
         << format_number(kind == "C" ? bound_C(rv) : bound_K(rv)) << "\n";
    }
  } else if (kind == "Omega") {
    for (double r : grid)
      os << format_number(r) << ',' << format_number(bound_Omega(r, k))
         << "\n";
  } else {
    throw std::invalid_argument("unknown curve kind: " + kind);
  }
  emit(os.str(), out_path);
  return 0;
}

int cmd_norm(const std::string& file, double r, const std::string& trunc_csv,
             int headroom, bool radius, double tol,
             const std::string& out_path) {
  FreePolynomial f = load_polynomial(file);
  Truncation tr = truncation_for_file(f, trunc_csv, headroom);
  SparseCMat a = assemble(f, Scaling::uniform(r), tr);
  std::ostringstream os;
  if (radius) {
    SpectralResult res = numerical_radius(DenseCMat(a), tol);
    os << "numerical_radius " << format_number(res.value) << " residual "
       << format_number(res.residual);
  } else {
    SpectralResult res = operator_norm(a, tol);
    os << "norm " << format_number(res.value) << " residual "
       << format_number(res.residual);
  }
  os << " trunc";
  for (int d : tr.degrees) os << ' ' << d;
  os << " (norm values are nondecreasing in the truncation degrees)\n";
  emit(os.str(), out_path);
  return 0;
}

int cmd_eval(const std::string& file, const std::string& point,
             const std::string& out_path) {
  FreePolynomial f = load_polynomial(file);
  ScalarPoint z = parse_point(point, f.alphabet_sizes());
  DenseCMat v = evaluate_scalar(f, z);
  std::ostringstream os;
  if (f.coeff_dim() == 1) {
    os << format_number(v(0, 0).real()) << (v(0, 0).imag() < 0 ? " - " : " + ")
       << format_number(std::abs(v(0, 0).imag())) << "i\n";
  } else {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index c = 0; c < v.cols(); ++c)
        os << '(' << format_number(v(r, c).real()) << ','
           << format_number(v(r, c).imag()) << ") ";
      os << "\n";
    }
  }
  emit(os.str(), out_path);
  return 0;
}

int cmd_verify(const std::vector<std::string>& which, const SuiteConfig& cfg,
               const std::string& out_dir, const std::string& format) {
  std::vector<std::string> names = which.empty() ? suite_names() : which;
  bool all_pass = true;
  for (const std::string& name : names) {
    SuiteReport rep = run_suite(name, cfg);
    all_pass = all_pass && rep.pass();
    std::cout << report_to_table(rep);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_text_file(out_dir + "/" + name + ".json", report_to_json(rep));
    } else if (format == "json") {
      std::cout << report_to_json(rep) << "\n";
    }
  }
  std::cout << (all_pass ? "ALL SUITES PASS" : "SUITE FAILURES PRESENT")
            << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polyball: truncated Fock-space models, Bohr radii, and inequality "
      "verification on noncommutative polyballs"};
  app.require_subcommand(1);

  uint64_t seed = 42;
  double tol = 1e-8;
  int trials = 500;
  int headroom = 4;
  std::string trunc_csv, out_path, format = "csv";
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--tol", tol, "tolerance")->capture_default_str();
  app.add_option("--trials", trials, "trials per suite")->capture_default_str();
  app.add_option("--trunc", trunc_csv, "truncation degrees d1,d2,...");
  app.add_option("--headroom", headroom, "truncation headroom over degree")
      ->capture_default_str();
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* radii = app.add_subcommand(
      "radii",
      "radius table: per k the closed bounds with gamma_k and t_k0 "
      "columns, per m the t_m column");
  int k_min = 1, k_max = 8, m_min = 2, m_max = 12;
  radii->add_option("--kmin", k_min)->capture_default_str();
  radii->add_option("--kmax", k_max)->capture_default_str();
  radii->add_option("--mmin", m_min)->capture_default_str();
  radii->add_option("--mmax", m_max)->capture_default_str();

  auto* curve = app.add_subcommand("curve", "bound/majorant curve as CSV");
  std::string kind = "Omega", file;
  int k_factors = 1, steps = 50;
  double r0 = 0.0, r1 = 0.9;
  curve->add_option("--kind", kind, "D|M|C|K|Omega")->capture_default_str();
  curve->add_option("--file", file, "polynomial JSON (kinds D and M)");
  curve->add_option("-k,--factors", k_factors)->capture_default_str();
  curve->add_option("--r0", r0)->capture_default_str();
  curve->add_option("--r1", r1)->capture_default_str();
  curve->add_option("--steps", steps)->capture_default_str();

  auto* norm = app.add_subcommand("norm", "truncated model norm of a file");
  auto* numrad =
      app.add_subcommand("numrad", "truncated numerical radius of a file");
  std::string nfile;
  double nr = 1.0;
  for (auto* sc : {norm, numrad}) {
    sc->add_option("--file", nfile, "polynomial JSON")->required();
    sc->add_option("-r,--radius", nr, "scaling r")->capture_default_str();
  }

  auto* eval = app.add_subcommand("eval", "scalar evaluation F~(z)");
  std::string efile, point;
  eval->add_option("--file", efile, "polynomial JSON")->required();
  eval->add_option("--point", point,
                   "JSON point [[ [re,im] x n_i ] x k]")
      ->required();

  auto* verify = app.add_subcommand(
      "verify", "run verification suites; exit 0 iff all pass");
  std::vector<std::string> which;
  std::string out_dir;
  double landau_factor = 2.0;
  int threads = 0;
  verify->add_option("--suites", which,
                     "suite names (default: all)")
      ->delimiter(',');
  verify->add_option("--out-dir", out_dir, "directory for JSON reports");
  verify->add_option("--landau-constant", landau_factor,
                     "Landau bound constant; below 2.0 this is a deliberate "
                     "corruption (negative control)")
      ->capture_default_str();
  verify->add_option("--threads", threads, "worker threads (0 = auto)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (radii->parsed())
      return cmd_radii(k_min, k_max, m_min, m_max,
                       std::min(tol, 1e-12), format, out_path);
    if (curve->parsed())
      return cmd_curve(kind, file, k_factors, r0, r1, steps, trunc_csv,
                       headroom, out_path);
    if (norm->parsed())
      return cmd_norm(nfile, nr, trunc_csv, headroom, false, tol, out_path);
    if (numrad->parsed())
      return cmd_norm(nfile, nr, trunc_csv, headroom, true, tol, out_path);
    if (eval->parsed()) return cmd_eval(efile, point, out_path);
    if (verify->parsed()) {
      SuiteConfig cfg;
      cfg.seed = seed;
      cfg.trials = trials;
      cfg.tol = tol;
      cfg.landau_factor = landau_factor;
      cfg.threads = threads;
      return cmd_verify(which, cfg, out_dir, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
