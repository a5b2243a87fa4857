#include "polyball/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "polyball/radii.hpp"
#include "polyball/spectral.hpp"

namespace polyball {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += UINT64_C(0x9e3779b97f4a7c15);
  x = (x ^ (x >> 30)) * UINT64_C(0xbf58476d1ce4e5b9);
  x = (x ^ (x >> 27)) * UINT64_C(0x94d049bb133111eb);
  return x ^ (x >> 31);
}

uint64_t trial_seed(uint64_t suite_seed, uint64_t salt, int trial) {
  return splitmix64(splitmix64(suite_seed ^ salt) + static_cast<uint64_t>(trial));
}

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return Complex(re, im);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  return u(rng);
}

// Per-trial result, merged in trial order so reports are independent of
// the thread count.
struct TrialOut {
  std::vector<Violation> violations;
  double max_slack = -std::numeric_limits<double>::infinity();
  int cases = 0;
};

class Checker {
 public:
  Checker(int trial, double tol) : trial_(trial), tol_(tol) {}

  // Expect lhs <= rhs + tol.
  void le(double lhs, double rhs, const std::string& what) {
    ++out_.cases;
    const double slack = lhs - rhs;
    out_.max_slack = std::max(out_.max_slack, slack);
    if (!(slack <= tol_))
      out_.violations.push_back({trial_, what, lhs, rhs, slack});
  }

  // Sharpness probes: expect lhs > rhs strictly.
  void gt(double lhs, double rhs, const std::string& what) {
    ++out_.cases;
    out_.max_slack = std::max(out_.max_slack, rhs - lhs);
    if (!(lhs > rhs))
      out_.violations.push_back({trial_, what, lhs, rhs, rhs - lhs});
  }

  TrialOut take() { return std::move(out_); }

 private:
  int trial_;
  double tol_;
  TrialOut out_;
};

template <typename Fn>
SuiteReport run_trials(const std::string& name, const SuiteConfig& cfg,
                       int trials, Fn per_trial) {
  std::vector<TrialOut> outs(static_cast<size_t>(trials));
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, trials == 0 ? 1 : trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) outs[static_cast<size_t>(t)] = per_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          const int t = next.fetch_add(1);
          if (t >= trials) break;
          outs[static_cast<size_t>(t)] = per_trial(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  SuiteReport rep;
  rep.suite = name;
  rep.tolerance = cfg.tol;
  rep.max_slack_used = -std::numeric_limits<double>::infinity();
  for (auto& o : outs) {
    rep.cases += o.cases;
    rep.max_slack_used = std::max(rep.max_slack_used, o.max_slack);
    for (auto& v : o.violations) rep.violations.push_back(std::move(v));
  }
  return rep;
}

struct Shape {
  std::vector<int> n;
  int degree;
  int coeff_dim;
};

Shape pick_shape(std::mt19937_64& rng, bool allow_matrix) {
  Shape s;
  switch (uniform_int(rng, 0, 6)) {
    case 0: s.n = {1}; s.degree = uniform_int(rng, 2, 5); break;
    case 1: s.n = {2}; s.degree = uniform_int(rng, 1, 3); break;
    case 2: s.n = {3}; s.degree = uniform_int(rng, 1, 2); break;
    case 3: s.n = {1, 1}; s.degree = uniform_int(rng, 1, 3); break;
    case 4: s.n = {1, 2}; s.degree = uniform_int(rng, 1, 2); break;
    case 5: s.n = {2, 2}; s.degree = 1; break;
    default: s.n = {1, 1, 1}; s.degree = uniform_int(rng, 1, 2); break;
  }
  s.coeff_dim = allow_matrix && uniform_int(rng, 0, 2) == 0 ? 2 : 1;
  return s;
}

std::string shape_tag(const Shape& s) {
  std::string tag = "n=";
  for (size_t i = 0; i < s.n.size(); ++i) {
    if (i) tag += ",";
    tag += std::to_string(s.n[i]);
  }
  tag += " deg=" + std::to_string(s.degree) + " m=" + std::to_string(s.coeff_dim);
  return tag;
}

FreePolynomial random_polynomial(std::mt19937_64& rng,
                                 const std::vector<int>& n, int degree,
                                 int coeff_dim, bool scalar_a0) {
  FreePolynomial f(n, coeff_dim);
  for (int q = 0; q <= degree; ++q) {
    WordSet gamma = enumerate_gamma(q, n);
    for (const MultiWord& w : gamma.elements()) {
      if (q == 0 && scalar_a0) {
        f.set_term(w, gaussian(rng) * DenseCMat::Identity(coeff_dim, coeff_dim));
        continue;
      }
      DenseCMat c(coeff_dim, coeff_dim);
      for (int r = 0; r < coeff_dim; ++r)
        for (int s = 0; s < coeff_dim; ++s) c(r, s) = gaussian(rng);
      f.set_term(w, c);
    }
  }
  return f;
}

// Exact full-space norm of a block supported on an orthogonal set: the
// model isometries have orthogonal ranges, so T*T = I (x) sum A*A.
double orthogonal_block_norm(const FreePolynomial& block) {
  if (block.empty()) return 0.0;
  const int m = block.coeff_dim();
  DenseCMat gram = DenseCMat::Zero(m, m);
  for (const auto& [w, a] : block.terms()) gram += a.adjoint() * a;
  return std::sqrt(std::max(0.0, max_eig_hermitian(gram).value));
}

double truncated_norm(const FreePolynomial& f, int headroom) {
  Truncation tr = truncation_for(f, headroom);
  SparseCMat a = assemble(f, Scaling::uniform(1.0), tr);
  return operator_norm(a, 1e-10).value;
}

}  // namespace

SchurSample gen_schur(uint64_t seed, const std::vector<int>& alphabet_sizes,
                      int degree, int coeff_dim, int headroom, bool scalar_a0,
                      bool rotate_a0) {
  std::mt19937_64 rng(seed);
  FreePolynomial f =
      random_polynomial(rng, alphabet_sizes, degree, coeff_dim, scalar_a0);
  const double eta = truncated_norm(f, headroom);
  if (eta <= 0.0) throw std::runtime_error("degenerate random polynomial");
  f.scale(Complex(1.0 / eta, 0.0));
  if (rotate_a0) {
    const Complex a0 =
        f.coefficient(MultiWord::identity(alphabet_sizes))(0, 0);
    if (std::abs(a0) > 1e-14) f.scale(std::conj(a0) / std::abs(a0));
  }
  return {std::move(f), 1.0, 1.0 / eta, headroom};
}

FreePolynomial gen_re_bounded(uint64_t seed,
                              const std::vector<int>& alphabet_sizes,
                              int degree, int coeff_dim, int headroom) {
  return gen_schur(seed, alphabet_sizes, degree, coeff_dim, headroom,
                   /*scalar_a0=*/true, /*rotate_a0=*/true)
      .f;
}

FreePolynomial mobius_polynomial(double a, int terms) {
  if (a <= 0.0 || a >= 1.0)
    throw std::domain_error("parameter must be in (0, 1)");
  FreePolynomial f({1}, 1);
  f.set_scalar_term(MultiWord::identity({1}), Complex(a, 0.0));
  double coeff = -(1.0 - a * a);
  for (int n = 1; n <= terms; ++n) {
    f.set_scalar_term(MultiWord({Word(std::vector<int>(static_cast<size_t>(n), 1), 1)}),
                      Complex(coeff, 0.0));
    coeff *= a;
  }
  return f;
}

double mobius_majorant_closed(double a, double r) {
  return a + (1.0 - a * a) * r / (1.0 - a * r);
}

SuiteReport wiener_suite(const SuiteConfig& cfg) {
  return run_trials("wiener", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0x5741, t));
    Shape sh = pick_shape(rng, /*allow_matrix=*/true);
    SchurSample sample = gen_schur(trial_seed(cfg.seed, 0x5742, t), sh.n,
                                   sh.degree, sh.coeff_dim, cfg.headroom);
    const double a0 =
        std::abs(sample.f.coefficient(MultiWord::identity(sh.n))(0, 0));
    Checker ck(t, cfg.tol);
    for (const auto& p : sample.f.multidegrees()) {
      if (std::all_of(p.begin(), p.end(), [](int v) { return v == 0; }))
        continue;
      const double lhs =
          orthogonal_block_norm(sample.f.restricted_to_multidegree(p));
      ck.le(lhs, 1.0 - a0 * a0, shape_tag(sh) + " |Lambda_p block|");
    }
    return ck.take();
  });
}

SuiteReport bohr_mh_suite(const SuiteConfig& cfg) {
  return run_trials("bohr-mh", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0xB041, t));
    Shape sh = pick_shape(rng, /*allow_matrix=*/true);
    SchurSample sample = gen_schur(trial_seed(cfg.seed, 0xB042, t), sh.n,
                                   sh.degree, sh.coeff_dim, cfg.headroom);
    const double a0 =
        std::abs(sample.f.coefficient(MultiWord::identity(sh.n))(0, 0));
    const int k = static_cast<int>(sh.n.size());

    std::vector<std::pair<std::vector<int>, double>> blocks;
    for (const auto& p : sample.f.multidegrees())
      blocks.emplace_back(
          p, orthogonal_block_norm(sample.f.restricted_to_multidegree(p)));

    auto lhs_at = [&](const std::vector<double>& r) {
      double acc = 0.0;
      for (const auto& [p, norm] : blocks) {
        double w = 1.0;
        for (int i = 0; i < k; ++i)
          w *= std::pow(r[static_cast<size_t>(i)], p[static_cast<size_t>(i)]);
        acc += w * norm;
      }
      return acc;
    };

    Checker ck(t, cfg.tol);
    std::vector<double> r(static_cast<size_t>(k));
    for (auto& ri : r) ri = uniform(rng, 0.0, 0.45);
    double prod = 1.0;
    for (double ri : r) prod *= 1.0 - ri;
    const double rhs = a0 + (1.0 - a0 * a0) * (1.0 / prod - 1.0);
    ck.le(lhs_at(r), rhs, shape_tag(sh) + " mh sum vs a0 bound");

    // Radii inside the simple Bohr region: product (1 - r_i) >= 2/3.
    const double cap = 1.0 - std::pow(2.0 / 3.0, 1.0 / k);
    for (auto& ri : r) ri = uniform(rng, 0.0, cap);
    ck.le(lhs_at(r), 1.0, shape_tag(sh) + " mh sum inside Bohr region");
    return ck.take();
  });
}

SuiteReport bohr_h_suite(const SuiteConfig& cfg) {
  SuiteReport rep = run_trials("bohr-h", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0xB051, t));
    Shape sh = pick_shape(rng, /*allow_matrix=*/true);
    SchurSample sample = gen_schur(trial_seed(cfg.seed, 0xB052, t), sh.n,
                                   sh.degree, sh.coeff_dim, cfg.headroom);
    Truncation tr = truncation_for(sample.f, cfg.headroom);
    const double r = uniform(rng, 0.0, 1.0 / 3.0);
    double m_of_r = 0.0;
    for (int q = 0; q <= sample.f.degree(); ++q) {
      FreePolynomial block = sample.f.restricted_to_total_degree(q);
      if (block.empty()) continue;
      SparseCMat a = assemble(block, Scaling::uniform(1.0), tr);
      m_of_r += std::pow(r, q) * operator_norm(a, 1e-10).value;
    }
    Checker ck(t, cfg.tol);
    ck.le(m_of_r, 1.0, shape_tag(sh) + " M(F,r) at r<=1/3");
    return ck.take();
  });

  // Sharpness probes from the Moebius closed forms.
  Checker ck(-1, cfg.tol);
  for (double a : {0.5, 0.7, 0.9, 0.99}) {
    FreePolynomial f = mobius_polynomial(a, 80);
    Truncation tr({84}, {1});
    const double d_third = majorant_mh(f, 1.0 / 3.0, tr);
    ck.le(d_third, 1.0, "Moebius D(f_a,1/3) <= 1");
    ck.le(std::abs(d_third - mobius_majorant_closed(a, 1.0 / 3.0)), 1e-10,
          "Moebius D closed form match");
  }
  const double d_past = majorant_mh(mobius_polynomial(0.9, 80), 0.4,
                                    Truncation({84}, {1}));
  ck.gt(d_past, 1.0, "Moebius D(f_0.9,0.4) exceeds 1 past r=1/3");
  TrialOut probes = ck.take();
  rep.cases += probes.cases;
  rep.max_slack_used = std::max(rep.max_slack_used, probes.max_slack);
  for (auto& v : probes.violations) rep.violations.push_back(std::move(v));
  return rep;
}

namespace {

// Truncation-certified version of f(z) = 2sz/(1+sz), which has Re f <= 1,
// f(0) = 0 and saturates the Landau bound as s -> 1.
FreePolynomial landau_extremal(double s, int terms) {
  FreePolynomial f({1}, 1);
  double coeff = 2.0 * s;
  for (int n = 1; n <= terms; ++n) {
    f.set_scalar_term(MultiWord({Word(std::vector<int>(static_cast<size_t>(n), 1), 1)}),
                      Complex(coeff, 0.0));
    coeff *= -s;
  }
  const double tail = 2.0 * std::pow(s, terms + 1) / (1.0 - s);
  f.scale(Complex(1.0 / (1.0 + tail), 0.0));
  return f;
}

}  // namespace

SuiteReport landau_op_suite(const SuiteConfig& cfg) {
  const double factor = cfg.landau_factor;
  SuiteReport rep = run_trials("landau-op", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0x1a41, t));
    Shape sh = pick_shape(rng, /*allow_matrix=*/true);
    FreePolynomial f = gen_re_bounded(trial_seed(cfg.seed, 0x1a42, t), sh.n,
                                      sh.degree, sh.coeff_dim, cfg.headroom);
    const int m = sh.coeff_dim;
    const double a0 =
        std::abs(f.coefficient(MultiWord::identity(sh.n))(0, 0));
    const double one_minus = 1.0 - a0;
    Checker ck(t, cfg.tol);

    // Gamma_q are right minimal: coefficient sums against the matrix bound.
    for (int q = 1; q <= f.degree(); ++q) {
      FreePolynomial block = f.restricted_to_total_degree(q);
      if (block.empty()) continue;
      DenseCMat gram = DenseCMat::Zero(m, m);
      for (const auto& [w, a] : block.terms()) gram += a.adjoint() * a;
      const double lhs = max_eig_hermitian(gram).value;
      ck.le(lhs, factor * factor * one_minus * one_minus,
            shape_tag(sh) + " sum A*A over Gamma_" + std::to_string(q));
    }

    // Orthogonal sets: Lambda_p block norms against factor*(1 - a0).
    for (const auto& p : f.multidegrees()) {
      if (std::all_of(p.begin(), p.end(), [](int v) { return v == 0; }))
        continue;
      const double lhs = orthogonal_block_norm(f.restricted_to_multidegree(p));
      ck.le(lhs, factor * one_minus,
            shape_tag(sh) + " |Lambda_p block| vs 2||I-A0||");
    }

    // Direct positivity of the operator matrix P_Lambda for a small
    // right-minimal sample of the support.
    std::vector<MultiWord> pool;
    for (const auto& [w, c] : f.terms())
      if (!w.is_identity()) pool.push_back(w);
    std::shuffle(pool.begin(), pool.end(), rng);
    WordSet lambda(sh.n);
    for (const MultiWord& w : pool) {
      if (lambda.size() >= 5) break;
      WordSet probe = lambda;
      probe.insert(w);
      if (is_right_minimal(probe)) lambda = std::move(probe);
    }
    if (lambda.size() >= 2) {
      const int blocks = static_cast<int>(lambda.size()) + 1;
      DenseCMat pl = DenseCMat::Zero(blocks * m, blocks * m);
      const DenseCMat diag =
          factor * one_minus * DenseCMat::Identity(m, m);
      for (int b = 0; b < blocks; ++b)
        pl.block(b * m, b * m, m, m) = diag;
      int row = 1;
      for (const MultiWord& w : lambda.elements()) {
        const DenseCMat a = f.coefficient(w);
        pl.block(row * m, 0, m, m) = a;
        pl.block(0, row * m, m, m) = a.adjoint();
        ++row;
      }
      const double min_eig = min_eig_hermitian(pl).value;
      ck.le(-min_eig, 0.0, shape_tag(sh) + " P_Lambda positivity");
    }
    return ck.take();
  });

  // Deterministic near-extremal probe: saturates the orthogonal-set bound
  // (|a_1| -> 2) so a corrupted constant is guaranteed to be caught.
  Checker ck(-1, cfg.tol);
  FreePolynomial ext = landau_extremal(0.9, 100);
  const Word g1({1}, 1);
  const double a1 = std::abs(ext.scalar_coefficient(MultiWord({g1})));
  ck.le(a1, factor * 1.0, "Landau extremal |a_1| vs factor*(1-a0)");
  ck.le(a1 * a1, factor * factor * 1.0,
        "Landau extremal |a_1|^2 vs factor^2*(1-a0)^2");
  TrialOut probe = ck.take();
  rep.cases += probe.cases;
  rep.max_slack_used = std::max(rep.max_slack_used, probe.max_slack);
  for (auto& v : probe.violations) rep.violations.push_back(std::move(v));
  return rep;
}

namespace {

// Exponential coefficients c_0..c_m of |q(e^{i theta})|^2 by convolution.
std::vector<Complex> squared_modulus_coefficients(
    const std::vector<Complex>& q) {
  const int m = static_cast<int>(q.size()) - 1;
  std::vector<Complex> c(static_cast<size_t>(m) + 1, Complex(0));
  for (int p = 0; p <= m; ++p)
    for (int j = 0; j + p <= m; ++j)
      c[static_cast<size_t>(p)] += q[static_cast<size_t>(j + p)] * std::conj(q[static_cast<size_t>(j)]);
  return c;
}

double fejer_cos(int m, int p) { return std::cos(M_PI / (m / p + 2)); }

}  // namespace

SuiteReport fejer_suite(const SuiteConfig& cfg) {
  const int m_max = cfg.fejer_max_degree;
  // Scalar part: trials per degree m.
  SuiteReport rep =
      run_trials("fejer", cfg, cfg.trials * m_max, [&](int t) {
        const int m = 1 + t % m_max;
        std::mt19937_64 rng(trial_seed(cfg.seed, 0xFE41, t));
        std::vector<Complex> q(static_cast<size_t>(m) + 1);
        for (auto& b : q) b = gaussian(rng);
        std::vector<Complex> c = squared_modulus_coefficients(q);
        const double c0 = c[0].real();
        Checker ck(t, cfg.tol);
        if (c0 > 1e-12) {
          for (int p = 1; p <= m; ++p) {
            // Amplitude convention: a_p = 2 c_p, a_0 = c_0.
            const double lhs = 2.0 * std::abs(c[static_cast<size_t>(p)]) / c0;
            ck.le(lhs, 2.0 * fejer_cos(m, p),
                  "trig deg " + std::to_string(m) + " coeff " + std::to_string(p));
          }
        }
        return ck.take();
      });

  // Extremal construction: q_j = sin((j+1) pi/(m+2)) attains the p = 1
  // bound; require equality within 1e-3.
  Checker ext(-1, cfg.tol);
  for (int m = 1; m <= m_max; ++m) {
    std::vector<Complex> q(static_cast<size_t>(m) + 1);
    for (int j = 0; j <= m; ++j)
      q[static_cast<size_t>(j)] = std::sin((j + 1) * M_PI / (m + 2));
    std::vector<Complex> c = squared_modulus_coefficients(q);
    const double ratio = 2.0 * std::abs(c[1]) / c[0].real();
    ext.le(ratio, 2.0 * fejer_cos(m, 1), "extremal within bound, m=" + std::to_string(m));
    ext.le(2.0 * fejer_cos(m, 1) - ratio, 1e-3,
           "extremal reaches bound, m=" + std::to_string(m));
  }
  TrialOut e = ext.take();
  rep.cases += e.cases;
  rep.max_slack_used = std::max(rep.max_slack_used, e.max_slack);
  for (auto& v : e.violations) rep.violations.push_back(std::move(v));

  // Operator part: T = G(S)*G(S) on a one-factor model is a positive
  // 1-multi-Toeplitz operator; its holomorphic blocks obey the same
  // cosine bound relative to ||C_0||.
  const int op_trials = std::max(1, cfg.trials / 4);
  SuiteReport op = run_trials("fejer-op", cfg, op_trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0xFE51, t));
    const int n = uniform_int(rng, 1, 2);
    const int deg = n == 1 ? uniform_int(rng, 1, 3) : uniform_int(rng, 1, 2);
    const int mc = uniform_int(rng, 1, 2);
    FreePolynomial g = random_polynomial(rng, {n}, deg, mc, false);
    Truncation tr({2 * deg}, {n});
    DenseCMat gs = DenseCMat(assemble(g, Scaling::uniform(1.0), tr));
    DenseCMat ts = gs.adjoint() * gs;
    KPluriharmonic ph = extract_pluriharmonic(ts, tr, mc, {deg});
    BasisIndexer ix(tr);
    const uint64_t dim = ix.total_dim();
    DenseCMat c0(mc, mc);
    for (int r = 0; r < mc; ++r)
      for (int s = 0; s < mc; ++s)
        c0(r, s) = ts(static_cast<Eigen::Index>(static_cast<uint64_t>(r) * dim),
                      static_cast<Eigen::Index>(static_cast<uint64_t>(s) * dim));
    const double c0_norm = operator_norm(c0).value;
    Checker ck(t, cfg.tol);
    const MultiWord id = MultiWord::identity({n});
    for (int q = 1; q <= deg; ++q) {
      FreePolynomial block({n}, mc);
      for (const auto& [key, coeff] : ph.terms()) {
        if (key.second == id && key.first.total_degree() == q)
          block.set_term(key.first, coeff);
      }
      if (block.empty()) continue;
      const double bound = c0_norm * fejer_cos(deg, q);
      DenseCMat blk = DenseCMat(assemble(block, Scaling::uniform(1.0), tr));
      RadiusBounds rb =
          numerical_radius_bounds(blk, cfg.tol / 4, bound + cfg.tol);
      ck.le(rb.upper <= bound + cfg.tol ? rb.upper : rb.lower, bound,
            "operator block q=" + std::to_string(q) + " n=" + std::to_string(n));
    }
    return ck.take();
  });
  rep.cases += op.cases;
  rep.max_slack_used = std::max(rep.max_slack_used, op.max_slack_used);
  for (auto& v : op.violations) rep.violations.push_back(std::move(v));
  return rep;
}

SuiteReport bohr_numrad_suite(const SuiteConfig& cfg) {
  // t_m values are shared across trials.
  std::vector<double> tm(16, 0.0);
  for (int m = 2; m < 16; ++m) tm[static_cast<size_t>(m)] = solve_t_m(m).value;

  return run_trials("bohr-numrad", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0xB741, t));
    Shape sh;
    switch (uniform_int(rng, 0, 2)) {
      case 0: sh.n = {1}; sh.degree = uniform_int(rng, 2, 4); break;
      case 1: sh.n = {2}; sh.degree = uniform_int(rng, 2, 3); break;
      default: sh.n = {1, 1}; sh.degree = uniform_int(rng, 2, 3); break;
    }
    sh.coeff_dim = 1;
    FreePolynomial f = gen_re_bounded(trial_seed(cfg.seed, 0xB742, t), sh.n,
                                      sh.degree, 1, cfg.headroom);
    // Blocks are compressions at any truncation, so a lean model keeps the
    // numerical-radius sweeps cheap without weakening the check.
    Truncation tr = truncation_for(f, 1);
    const int deg = f.degree();
    std::vector<double> omegas(static_cast<size_t>(deg) + 1, 0.0);
    omegas[0] = std::abs(f.coefficient(MultiWord::identity(sh.n))(0, 0));
    for (int q = 1; q <= deg; ++q) {
      FreePolynomial block = f.restricted_to_total_degree(q);
      if (block.empty()) continue;
      DenseCMat blk = DenseCMat(assemble(block, Scaling::uniform(1.0), tr));
      omegas[static_cast<size_t>(q)] = numerical_radius(blk, 1e-9).value;
    }
    auto weighted = [&](double r) {
      double acc = 0.0;
      for (int q = 0; q <= deg; ++q)
        acc += omegas[static_cast<size_t>(q)] * std::pow(r, q);
      return acc;
    };
    Checker ck(t, cfg.tol);
    const double t_deg = deg < 16 ? tm[static_cast<size_t>(deg)] : 1.0 / 3.0;
    ck.le(weighted(t_deg), 1.0, shape_tag(sh) + " omega sum at t_m");
    ck.le(weighted(1.0 / 3.0), 1.0, shape_tag(sh) + " omega sum at 1/3");
    return ck.take();
  });
}

namespace {

// Scalar polydisc polynomial machinery (n_i = 1 everywhere).

MultiWord monomial_multiword(const std::vector<int>& powers) {
  std::vector<Word> parts;
  parts.reserve(powers.size());
  for (int p : powers)
    parts.emplace_back(std::vector<int>(static_cast<size_t>(p), 1), 1);
  return MultiWord(std::move(parts));
}

Complex eval_polydisc(const FreePolynomial& f, const std::vector<Complex>& z) {
  Complex acc(0);
  for (const auto& [w, c] : f.terms()) {
    Complex v(1, 0);
    for (int i = 0; i < w.factors(); ++i)
      v *= std::pow(z[static_cast<size_t>(i)], w.part(i).length());
    acc += v * c(0, 0);
  }
  return acc;
}

// Certified sup over the torus: grid max + Lipschitz margin from the
// angular derivative bound sum_p |a_p| p_i.
double certified_sup_norm(const FreePolynomial& f, int grid,
                          bool real_part_only, double* grid_max_out) {
  const int k = static_cast<int>(f.alphabet_sizes().size());
  double lip = 0.0;
  for (const auto& [w, c] : f.terms())
    lip += std::abs(c(0, 0)) * w.total_degree();
  double gmax = real_part_only ? -std::numeric_limits<double>::infinity() : 0.0;
  std::vector<int> idx(static_cast<size_t>(k), 0);
  std::vector<Complex> z(static_cast<size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) {
      const double th = 2.0 * M_PI * idx[static_cast<size_t>(i)] / grid;
      z[static_cast<size_t>(i)] = std::polar(1.0, th);
    }
    const Complex v = eval_polydisc(f, z);
    gmax = std::max(gmax, real_part_only ? v.real() : std::abs(v));
    int i = k - 1;
    while (i >= 0) {
      if (++idx[static_cast<size_t>(i)] < grid) break;
      idx[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  if (grid_max_out) *grid_max_out = gmax;
  return gmax + lip * M_PI / grid;
}

FreePolynomial random_polydisc_poly(std::mt19937_64& rng, int k, int degree) {
  FreePolynomial f(std::vector<int>(static_cast<size_t>(k), 1), 1);
  std::vector<int> p(static_cast<size_t>(k), 0);
  while (true) {
    int total = 0;
    for (int v : p) total += v;
    if (total <= degree) f.set_scalar_term(monomial_multiword(p), gaussian(rng));
    int i = k - 1;
    while (i >= 0) {
      if (++p[static_cast<size_t>(i)] <= degree) break;
      p[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return f;
}

FreePolynomial polydisc_partial(const FreePolynomial& f, int factor) {
  FreePolynomial out(f.alphabet_sizes(), 1);
  for (const auto& [w, c] : f.terms()) {
    const int p = w.part(factor).length();
    if (p == 0) continue;
    std::vector<int> powers = w.multidegree();
    powers[static_cast<size_t>(factor)] -= 1;
    out.add_term(monomial_multiword(powers),
                 static_cast<double>(p) * c);
  }
  return out;
}

}  // namespace

SuiteReport landau_polydisc_suite(const SuiteConfig& cfg) {
  SuiteReport rep = run_trials("landau-polydisc", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0x1d41, t));
    const int k = uniform_int(rng, 1, 3);
    const int deg = k == 3 ? uniform_int(rng, 1, 2) : uniform_int(rng, 1, 3);
    FreePolynomial f = random_polydisc_poly(rng, k, deg);
    const int grid = k == 1 ? 128 : (k == 2 ? 48 : 24);
    const double sup = certified_sup_norm(f, grid, false, nullptr);
    f.scale(Complex(1.0 / sup, 0.0));

    std::vector<Complex> a(static_cast<size_t>(k));
    for (auto& ai : a)
      ai = std::polar(uniform(rng, 0.0, 0.8), uniform(rng, 0.0, 2.0 * M_PI));
    Complex fa = eval_polydisc(f, a);
    if (std::abs(fa) > 1e-14) f.scale(std::conj(fa) / std::abs(fa));
    fa = Complex(std::abs(fa), 0.0);

    double lhs = 0.0;
    for (int i = 0; i < k; ++i) {
      const Complex di = eval_polydisc(polydisc_partial(f, i), a);
      lhs += (1.0 - std::norm(a[static_cast<size_t>(i)])) * std::abs(di);
    }
    Checker ck(t, cfg.tol);
    ck.le(lhs, 2.0 * (1.0 - fa.real()),
          "k=" + std::to_string(k) + " deg=" + std::to_string(deg));
    return ck.take();
  });

  // Moebius probe at a = 0: |f'(0)| = 1 - b^2 vs 2(1 - b), tight as b -> 1.
  Checker ck(-1, cfg.tol);
  for (double b : {0.3, 0.6, 0.9, 0.99}) {
    FreePolynomial f = mobius_polynomial(b, 600);
    const double tail = (1.0 + b) * std::pow(b, 600);
    f.scale(Complex(1.0 / (1.0 + tail), 0.0));
    const double a1 = std::abs(f.scalar_coefficient(
        MultiWord({Word({1}, 1)})));
    const double f0 = f.scalar_coefficient(MultiWord::identity({1})).real();
    ck.le(a1, 2.0 * (1.0 - f0), "Moebius derivative probe b");
  }
  TrialOut probe = ck.take();
  rep.cases += probe.cases;
  rep.max_slack_used = std::max(rep.max_slack_used, probe.max_slack);
  for (auto& v : probe.violations) rep.violations.push_back(std::move(v));
  return rep;
}

namespace {

struct HarmonicFactor {
  std::vector<Complex> c;  // c_0 real > 0, boundary values nonnegative
  int degree() const { return static_cast<int>(c.size()) - 1; }

  double eval(Complex z) const {
    Complex acc(c[0].real(), 0.0);
    Complex zp(1, 0);
    for (size_t p = 1; p < c.size(); ++p) {
      zp *= z;
      acc += 2.0 * (c[p] * zp).real();
    }
    return acc.real();
  }
};

HarmonicFactor random_positive_harmonic(std::mt19937_64& rng, int m) {
  std::vector<Complex> q(static_cast<size_t>(m) + 1);
  for (auto& b : q) b = gaussian(rng);
  return {squared_modulus_coefficients(q)};
}

double harnack_cos_bound(int m, double rho) {
  double acc = 1.0;
  for (int p = 1; p <= m; ++p)
    acc += 2.0 * std::pow(rho, p) * std::cos(M_PI / (m / p + 2));
  return acc;
}

}  // namespace

SuiteReport harnack_suite(const SuiteConfig& cfg) {
  SuiteReport rep = run_trials("harnack", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0x4a41, t));
    Checker ck(t, cfg.tol);

    // Scalar polydisc: products of positive harmonic factors.
    const int k = uniform_int(rng, 1, 3);
    double value = 1.0, f0 = 1.0, mid = 1.0, poisson = 1.0;
    std::string tag = "k=" + std::to_string(k) + " degs=";
    for (int i = 0; i < k; ++i) {
      const int m = uniform_int(rng, 1, 4);
      HarmonicFactor h = random_positive_harmonic(rng, m);
      const double rho = uniform(rng, 0.0, 0.9);
      const double phi = uniform(rng, 0.0, 2.0 * M_PI);
      value *= h.eval(std::polar(rho, phi));
      f0 *= h.c[0].real();
      mid *= harnack_cos_bound(m, rho);
      poisson *= (1.0 + rho) / (1.0 - rho);
      tag += std::to_string(m) + ",";
    }
    ck.le(value, f0 * mid, tag + " F(z) vs cosine product");
    ck.le(f0 * mid, f0 * poisson, tag + " cosine product vs Poisson bound");

    // Operator side. G(S)*G(S) is a positive k-multi-Toeplitz operator;
    // extracting its normal-ordered coefficients gives a positive
    // pluriharmonic function F with rho-independent coefficients, and the
    // Harnack bound applies to F(rho S).
    const int kk = uniform_int(rng, 1, 2);
    std::vector<int> n(static_cast<size_t>(kk));
    for (auto& ni : n) ni = uniform_int(rng, 1, 2);
    const int deg = uniform_int(rng, 1, 2);
    const int mc = uniform_int(rng, 1, 2);
    FreePolynomial g = random_polynomial(rng, n, deg, mc, false);
    std::vector<double> rho(static_cast<size_t>(kk));
    for (auto& ri : rho) ri = uniform(rng, 0.1, 0.75);
    std::vector<int> d(static_cast<size_t>(kk)), gdeg(static_cast<size_t>(kk));
    for (int i = 0; i < kk; ++i) {
      gdeg[static_cast<size_t>(i)] = g.slot_degree(i);
      d[static_cast<size_t>(i)] = 2 * std::max(1, g.slot_degree(i));
    }
    Truncation tr(d, n);
    DenseCMat gs = DenseCMat(assemble(g, Scaling::uniform(1.0), tr));
    DenseCMat ts = gs.adjoint() * gs;
    KPluriharmonic f = extract_pluriharmonic(ts, tr, mc, gdeg);
    const double a0_norm =
        operator_norm(f.coefficient(MultiWord::identity(n),
                                    MultiWord::identity(n)))
            .value;
    DenseCMat frho = DenseCMat(
        assemble_pluriharmonic(f, Scaling::per_factor(rho), tr));
    const double min_eig = min_eig_hermitian(frho).value;
    ck.le(-min_eig, 0.0, "F(rho S) stays positive");
    const double omega = max_eig_hermitian(frho).value;  // PSD: omega = norm
    double mid_op = 1.0, poisson_op = 1.0;
    for (int i = 0; i < kk; ++i) {
      mid_op *= harnack_cos_bound(std::max(1, gdeg[static_cast<size_t>(i)]),
                                  rho[static_cast<size_t>(i)]);
      poisson_op *= (1.0 + rho[static_cast<size_t>(i)]) /
                    (1.0 - rho[static_cast<size_t>(i)]);
    }
    ck.le(omega, a0_norm * mid_op, "operator Harnack cosine bound");
    ck.le(a0_norm * mid_op, a0_norm * poisson_op,
          "operator Harnack Poisson bound");
    if (frho.rows() <= 64) {
      const double om2 = numerical_radius(frho, 1e-7).value;
      ck.le(std::abs(om2 - omega), 1e-6, "omega equals norm for positive T");
    }
    return ck.take();
  });

  // Near-sharpness probe: one Poisson factor, c = 0.999, z = rho = 0.9.
  Checker ck(-1, cfg.tol);
  const double c = 0.999, rho = 0.9;
  const double value = (1.0 + c * rho) / (1.0 - c * rho);
  const double bound = (1.0 + rho) / (1.0 - rho);
  ck.le(value, bound, "Poisson probe within Harnack bound");
  ck.gt(value, 0.95 * bound, "Poisson probe reaches 95% of Harnack bound");
  TrialOut probe = ck.take();
  rep.cases += probe.cases;
  rep.max_slack_used = std::max(rep.max_slack_used, probe.max_slack);
  for (auto& v : probe.violations) rep.violations.push_back(std::move(v));
  return rep;
}

SuiteReport re_bridge_suite(const SuiteConfig& cfg) {
  return run_trials("re-bridge", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0x4e41, t));
    const int k = uniform_int(rng, 1, 2);
    const int deg = uniform_int(rng, 1, 3);
    FreePolynomial f = random_polydisc_poly(rng, k, deg);
    const int grid = k == 1 ? 128 : 48;
    double grid_max = 0.0;
    const double sup_re = certified_sup_norm(f, grid, true, &grid_max);

    // Shift so Re f <= 1 is certified, then check the model positivity.
    FreePolynomial shifted = f;
    shifted.add_term(monomial_multiword(std::vector<int>(static_cast<size_t>(k), 0)),
                     DenseCMat::Constant(1, 1, Complex(1.0 - sup_re, 0.0)));
    const double r = uniform(rng, 0.0, 0.95);
    Truncation tr(std::vector<int>(static_cast<size_t>(k), deg + 3),
                  std::vector<int>(static_cast<size_t>(k), 1));
    DenseCMat fs =
        DenseCMat(assemble(shifted, Scaling::uniform(r), tr));
    DenseCMat witness = 2.0 * DenseCMat::Identity(fs.rows(), fs.cols()) - fs -
                        fs.adjoint();
    Checker ck(t, cfg.tol);
    ck.le(-min_eig_hermitian(witness).value, 0.0,
          "k=" + std::to_string(k) + " forward positivity");

    // Converse: force sup Re f >= 1.3 and require the witness to go
    // negative at some truncation (k = 1 keeps this cheap).
    if (k == 1) {
      FreePolynomial bad = f;
      bad.add_term(monomial_multiword({0}),
                   DenseCMat::Constant(1, 1, Complex(1.3 - grid_max, 0.0)));
      bool went_negative = false;
      for (int d : {8, 16, 32, 64}) {
        Truncation trd({d}, {1});
        DenseCMat bs = DenseCMat(assemble(bad, Scaling::uniform(0.99), trd));
        DenseCMat w2 = 2.0 * DenseCMat::Identity(bs.rows(), bs.cols()) - bs -
                       bs.adjoint();
        if (min_eig_hermitian(w2).value < -1e-6) {
          went_negative = true;
          break;
        }
      }
      ck.gt(went_negative ? 1.0 : 0.0, 0.5, "converse detects Re f > 1");
    }
    return ck.take();
  });
}

SuiteReport bombieri_upper_suite(const SuiteConfig& cfg) {
  SuiteReport rep = run_trials("bombieri-upper", cfg, cfg.trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, 0xBB41, t));
    Shape sh = pick_shape(rng, /*allow_matrix=*/false);
    SchurSample sample = gen_schur(trial_seed(cfg.seed, 0xBB42, t), sh.n,
                                   sh.degree, 1, cfg.headroom);
    const int k = static_cast<int>(sh.n.size());
    const double r = uniform(rng, 0.0, 0.9);
    double d_of_r = 0.0;
    for (const auto& p : sample.f.multidegrees()) {
      int abs_p = 0;
      for (int v : p) abs_p += v;
      d_of_r += std::pow(r, abs_p) *
                orthogonal_block_norm(sample.f.restricted_to_multidegree(p));
    }
    Checker ck(t, cfg.tol);
    // Truncated norm is 1 by construction; ||F||_2 <= ||F(S)||_trunc keeps
    // the matched-truncation inequality a theorem for d >= deg.
    ck.le(d_of_r, std::pow(1.0 - r * r, -0.5 * k) * 1.0,
          shape_tag(sh) + " D(F,r) vs (1-r^2)^{-k/2}");

    // Product functions on distinct factors: D and the norm multiply.
    const int kk = uniform_int(rng, 2, 3);
    const int deg = uniform_int(rng, 1, 3);
    std::vector<std::vector<Complex>> fs(static_cast<size_t>(kk));
    for (auto& fi : fs) {
      fi.resize(static_cast<size_t>(deg) + 1);
      for (auto& c : fi) c = gaussian(rng);
    }
    FreePolynomial prod(std::vector<int>(static_cast<size_t>(kk), 1), 1);
    std::vector<int> p(static_cast<size_t>(kk), 0);
    while (true) {
      Complex c(1, 0);
      for (int i = 0; i < kk; ++i)
        c *= fs[static_cast<size_t>(i)][static_cast<size_t>(p[static_cast<size_t>(i)])];
      prod.set_scalar_term(monomial_multiword(p), c);
      int i = kk - 1;
      while (i >= 0) {
        if (++p[static_cast<size_t>(i)] <= deg) break;
        p[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
    const double rr = uniform(rng, 0.0, 0.9);
    double d_prod = 0.0;
    for (const auto& pd : prod.multidegrees()) {
      int abs_p = 0;
      for (int v : pd) abs_p += v;
      d_prod += std::pow(rr, abs_p) *
                std::abs(prod.scalar_coefficient(monomial_multiword(pd)));
    }
    double d_factors = 1.0;
    for (const auto& fi : fs) {
      double acc = 0.0;
      for (size_t q = 0; q < fi.size(); ++q)
        acc += std::abs(fi[q]) * std::pow(rr, static_cast<double>(q));
      d_factors *= acc;
    }
    ck.le(std::abs(d_prod - d_factors), 1e-10 * std::max(1.0, d_factors),
          "product multiplicativity of D");

    Truncation trp(std::vector<int>(static_cast<size_t>(kk), deg + 2),
                   std::vector<int>(static_cast<size_t>(kk), 1));
    const double norm_prod =
        operator_norm(assemble(prod, Scaling::uniform(1.0), trp), 1e-10).value;
    double norm_factors = 1.0;
    for (const auto& fi : fs) {
      FreePolynomial f1({1}, 1);
      for (size_t q = 0; q < fi.size(); ++q)
        f1.set_scalar_term(
            monomial_multiword({static_cast<int>(q)}), fi[q]);
      norm_factors *=
          operator_norm(assemble(f1, Scaling::uniform(1.0),
                                 Truncation({deg + 2}, {1})),
                        1e-10)
              .value;
    }
    ck.le(std::abs(norm_prod - norm_factors), cfg.tol * std::max(1.0, norm_factors),
          "tensor multiplicativity of the norm");
    return ck.take();
  });
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "wiener",        "bohr-mh",   "bohr-h",          "landau-op",
      "fejer",         "bohr-numrad", "landau-polydisc", "harnack",
      "re-bridge",     "bombieri-upper"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "wiener") return wiener_suite(cfg);
  if (name == "bohr-mh") return bohr_mh_suite(cfg);
  if (name == "bohr-h") return bohr_h_suite(cfg);
  if (name == "landau-op") return landau_op_suite(cfg);
  if (name == "fejer") return fejer_suite(cfg);
  if (name == "bohr-numrad") return bohr_numrad_suite(cfg);
  if (name == "landau-polydisc") return landau_polydisc_suite(cfg);
  if (name == "harnack") return harnack_suite(cfg);
  if (name == "re-bridge") return re_bridge_suite(cfg);
  if (name == "bombieri-upper") return bombieri_upper_suite(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace polyball
