#include "polyball/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace polyball {

namespace {

CVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  const double norm = v.norm();
  return norm > 0 ? CVector(v / norm) : v;
}

// Power iteration for the top eigenvalue of a Hermitian PSD operator given
// through its matvec. Residual certifies an eigenvalue within `residual`
// of the returned value; seeded restarts guard against unlucky starts.
template <typename MatVec>
SpectralResult psd_top_eig(Eigen::Index n, const MatVec& apply, double tol,
                           uint64_t seed, int restarts = 5,
                           int max_iter = 20000) {
  SpectralResult best;
  std::mt19937_64 rng(seed ^ UINT64_C(0x9e3779b97f4a7c15));
  for (int attempt = 0; attempt < restarts; ++attempt) {
    CVector v = random_unit_vector(n, rng);
    SpectralResult cur;
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
      CVector w = apply(v);
      lambda = v.dot(w).real();  // Rayleigh quotient, v normalized
      const double resid = (w - lambda * v).norm();
      cur = {lambda, resid, it, resid <= tol * std::max(1.0, lambda)};
      if (cur.converged) break;
      const double wn = w.norm();
      if (wn == 0.0) {
        cur = {0.0, 0.0, it, true};
        break;
      }
      v = w / wn;
    }
    if (cur.value > best.value || (cur.converged && !best.converged)) {
      best = cur;
    }
    if (best.converged && attempt >= 1) break;
  }
  return best;
}

double sparse_frobenius(const SparseCMat& a) {
  double s = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseCMat::InnerIterator it(a, k); it; ++it)
      s += std::norm(it.value());
  return std::sqrt(s);
}

void check_hermitian(const DenseCMat& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * scale)
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
}

}  // namespace

SpectralResult operator_norm(const DenseCMat& a, double tol, uint64_t seed) {
  if (!a.allFinite())
    throw std::invalid_argument("operator has non-finite entries");
  if (a.rows() == 0 || a.cols() == 0) return {0.0, 0.0, 0, true};
  if (std::min(a.rows(), a.cols()) <= kDenseThreshold &&
      std::max(a.rows(), a.cols()) <= 4 * kDenseThreshold) {
    Eigen::BDCSVD<DenseCMat> svd(a);
    const double v = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return {v, 1e-14 * std::max(1.0, v), 1, true};
  }
  const bool tall = a.rows() >= a.cols();
  auto apply = [&](const CVector& v) -> CVector {
    if (tall) return a.adjoint() * (a * v);
    return a * (a.adjoint() * v);
  };
  SpectralResult r =
      psd_top_eig(tall ? a.cols() : a.rows(), apply, tol, seed);
  const double sigma = std::sqrt(std::max(0.0, r.value));
  return {sigma, r.residual / (2 * std::max(sigma, 1e-300)), r.iterations,
          r.converged};
}

SpectralResult operator_norm(const SparseCMat& a, double tol, uint64_t seed) {
  if (a.rows() == 0 || a.cols() == 0 || a.nonZeros() == 0)
    return {0.0, 0.0, 0, true};
  // Iterative first: assembled model operators are sparse and usually have
  // a healthy top gap. Small problems fall back to a dense decomposition
  // when the iteration stalls.
  SparseCMat ah = a.adjoint();
  const bool tall = a.rows() >= a.cols();
  auto apply = [&](const CVector& v) -> CVector {
    if (tall) return ah * (a * v);
    return a * (ah * v);
  };
  SpectralResult r =
      psd_top_eig(tall ? a.cols() : a.rows(), apply, tol, seed);
  if (!r.converged && std::min(a.rows(), a.cols()) <= kDenseThreshold &&
      std::max(a.rows(), a.cols()) <= 4 * kDenseThreshold) {
    return operator_norm(DenseCMat(a), tol, seed);
  }
  const double sigma = std::sqrt(std::max(0.0, r.value));
  return {sigma, r.residual / (2 * std::max(sigma, 1e-300)), r.iterations,
          r.converged};
}

SpectralResult max_eig_hermitian(const DenseCMat& a, double tol,
                                 uint64_t seed) {
  check_hermitian(a);
  if (a.rows() <= kDenseThreshold) {
    Eigen::SelfAdjointEigenSolver<DenseCMat> es(a, Eigen::EigenvaluesOnly);
    const double v = es.eigenvalues()(a.rows() - 1);
    return {v, 1e-14 * std::max(1.0, std::abs(v)), 1, true};
  }
  const DenseCMat h = 0.5 * (a + a.adjoint());
  const double shift = h.norm();  // Frobenius bounds the spectral norm
  auto apply = [&](const CVector& v) -> CVector { return h * v + shift * v; };
  SpectralResult r = psd_top_eig(h.rows(), apply, tol, seed);
  return {r.value - shift, r.residual, r.iterations, r.converged};
}

SpectralResult min_eig_hermitian(const DenseCMat& a, double tol,
                                 uint64_t seed) {
  SpectralResult r = max_eig_hermitian(DenseCMat(-a), tol, seed);
  return {-r.value, r.residual, r.iterations, r.converged};
}

SpectralResult max_eig_hermitian(const SparseCMat& a, double tol,
                                 uint64_t seed) {
  if (a.rows() <= kDenseThreshold)
    return max_eig_hermitian(DenseCMat(a), tol, seed);
  const double shift = sparse_frobenius(a);
  auto apply = [&](const CVector& v) -> CVector {
    return 0.5 * (a * v + a.adjoint() * v) + shift * v;
  };
  SpectralResult r = psd_top_eig(a.rows(), apply, tol, seed);
  return {r.value - shift, r.residual, r.iterations, r.converged};
}

SpectralResult min_eig_hermitian(const SparseCMat& a, double tol,
                                 uint64_t seed) {
  SpectralResult r = max_eig_hermitian(SparseCMat(-a), tol, seed);
  return {-r.value, r.residual, r.iterations, r.converged};
}

bool is_positive(const DenseCMat& a, double tol) {
  const double scale = a.rows() ? a.cwiseAbs().maxCoeff() : 0.0;
  const double eff = tol >= 0 ? tol : 1e-9 * std::max(1.0, scale);
  return min_eig_hermitian(a).value >= -eff;
}

bool is_positive(const SparseCMat& a, double tol) {
  const double scale = sparse_frobenius(a);
  const double eff = tol >= 0 ? tol : 1e-9 * std::max(1.0, scale);
  return min_eig_hermitian(a).value >= -eff;
}

namespace {

struct SupportSample {
  double theta;
  double g;        // top eigenvalue of cos(theta) Hc + sin(theta) Hs
  double px, py;   // Rayleigh point of the top eigenvector
};

SupportSample support_sample(const DenseCMat& hc, const DenseCMat& hs,
                             double theta) {
  DenseCMat h = std::cos(theta) * hc + std::sin(theta) * hs;
  Eigen::SelfAdjointEigenSolver<DenseCMat> es(h);
  const Eigen::Index n = h.rows();
  SupportSample s;
  s.theta = theta;
  s.g = es.eigenvalues()(n - 1);
  CVector v = es.eigenvectors().col(n - 1);
  s.px = v.dot(hc * v).real();
  s.py = v.dot(hs * v).real();
  return s;
}

// Norm of the intersection of the supporting lines at two samples.
double vertex_norm(const SupportSample& a, const SupportSample& b) {
  const double dt = b.theta - a.theta;
  const double sd = std::sin(dt);
  if (sd <= 1e-15) return std::max(a.g, b.g);
  const double num =
      a.g * a.g + b.g * b.g - 2.0 * a.g * b.g * std::cos(dt);
  return std::sqrt(std::max(0.0, num)) / sd;
}

}  // namespace

RadiusBounds numerical_radius_bounds(const DenseCMat& t, double tol,
                                     double decide_le, int initial_grid,
                                     int max_evals) {
  if (t.rows() != t.cols()) throw std::invalid_argument("matrix not square");
  if (!t.allFinite())
    throw std::invalid_argument("operator has non-finite entries");
  RadiusBounds out;
  if (t.rows() == 0 || t.cwiseAbs().maxCoeff() == 0.0) {
    out.resolved = true;
    return out;
  }
  initial_grid = std::max(initial_grid, 16);
  if (max_evals < 0) {
    // Circular numerical ranges need O(1/sqrt(tol)) supporting lines, so
    // allow more evaluations when the eigensolves are cheap.
    const double n3 = std::pow(static_cast<double>(t.rows()), 3.0);
    max_evals = static_cast<int>(
        std::clamp(2.0e8 / (n3 + 1.0), 4000.0, 400000.0));
  }
  const DenseCMat hc = 0.5 * (t + t.adjoint());
  const DenseCMat hs =
      0.5 * (Complex(0, 1) * t + (Complex(0, 1) * t).adjoint());

  std::vector<SupportSample> samples;
  samples.reserve(static_cast<size_t>(initial_grid) + 64);
  const double two_pi = 2.0 * M_PI;
  for (int j = 0; j < initial_grid; ++j)
    samples.push_back(support_sample(hc, hs, two_pi * j / initial_grid));
  out.evals = initial_grid;

  while (true) {
    double lower = 0.0, upper = 0.0;
    for (size_t j = 0; j < samples.size(); ++j) {
      const SupportSample& s = samples[j];
      // Both the Rayleigh point and the support value are true lower
      // bounds for the radius.
      lower = std::max(lower, std::hypot(s.px, s.py));
      lower = std::max(lower, s.g);
    }
    for (size_t j = 0; j < samples.size(); ++j) {
      SupportSample b = samples[(j + 1) % samples.size()];
      if (j + 1 == samples.size()) b.theta += two_pi;
      upper = std::max(upper, vertex_norm(samples[j], b));
    }
    out.lower = lower;
    out.upper = upper;
    if (upper - lower <= tol) {
      out.resolved = true;
      return out;
    }
    if (decide_le >= 0 && (upper <= decide_le || lower > decide_le)) {
      out.resolved = true;
      return out;
    }
    if (out.evals >= max_evals) return out;

    // Batch refinement: only arcs whose vertex exceeds the pruning
    // threshold can still influence either bound.
    double threshold = lower + 0.25 * tol;
    if (decide_le >= 0) threshold = std::max(threshold, decide_le);
    std::vector<SupportSample> refined;
    refined.reserve(2 * samples.size());
    for (size_t j = 0; j < samples.size(); ++j) {
      refined.push_back(samples[j]);
      SupportSample b = samples[(j + 1) % samples.size()];
      if (j + 1 == samples.size()) b.theta += two_pi;
      if (vertex_norm(samples[j], b) > threshold &&
          out.evals < max_evals) {
        refined.push_back(
            support_sample(hc, hs, 0.5 * (samples[j].theta + b.theta)));
        ++out.evals;
      }
    }
    samples = std::move(refined);
  }
}

SpectralResult numerical_radius(const DenseCMat& t, double tol) {
  RadiusBounds b = numerical_radius_bounds(t, tol);
  // The value is the certified lower bound (exact whenever a support
  // sample hits the maximizing direction); the residual is the gap.
  return {b.lower, b.upper - b.lower, b.evals, b.resolved};
}

SpectralResult numerical_radius(const SparseCMat& t, double tol) {
  return numerical_radius(DenseCMat(t), tol);
}

SpectralResult joint_numerical_radius(const std::vector<DenseCMat>& ts,
                                      int aux_degree, double tol) {
  if (ts.empty()) throw std::invalid_argument("need at least one operator");
  const Eigen::Index m = ts[0].rows();
  for (const DenseCMat& t : ts)
    if (t.rows() != m || t.cols() != m)
      throw std::invalid_argument("operators must be square, equal size");
  const int n = static_cast<int>(ts.size());
  Truncation aux({aux_degree}, {n});
  aux.check_dim();
  BasisIndexer ix(aux);
  const Eigen::Index fdim = static_cast<Eigen::Index>(ix.total_dim());
  if (m * fdim > 4000)
    throw std::length_error("joint numerical radius model too large");
  DenseCMat big = DenseCMat::Zero(m * fdim, m * fdim);
  for (int i = 0; i < n; ++i) {
    DenseCMat s = DenseCMat(left_creation(aux, 0, i + 1));
    DenseCMat ti = ts[static_cast<size_t>(i)].adjoint();
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        if (ti(r, c) != Complex(0))
          big.block(r * fdim, c * fdim, fdim, fdim) += ti(r, c) * s;
  }
  return numerical_radius(big, tol);
}

}  // namespace polyball
