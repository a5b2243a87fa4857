#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "polyball/spectral.hpp"

using namespace polyball;

namespace {

DenseCMat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  DenseCMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

DenseCMat random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<DenseCMat> qr(random_matrix(rng, n, n));
  return qr.householderQ();
}

DenseCMat nilpotent_shift(int dim) {
  DenseCMat j = DenseCMat::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) j(i + 1, i) = Complex(1);
  return j;
}

// Independent oracle: dense eigensolve of Re(e^{i theta} T) over a fine
// uniform grid, no refinement logic shared with the implementation.
double numrad_grid_oracle(const DenseCMat& t, int grid) {
  double best = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double th = 2.0 * M_PI * j / grid;
    DenseCMat h = 0.5 * (std::polar(1.0, th) * t +
                         (std::polar(1.0, th) * t).adjoint());
    Eigen::SelfAdjointEigenSolver<DenseCMat> es(h, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues()(t.rows() - 1));
  }
  return best;
}

}  // namespace

TEST_CASE("operator norm basics") {
  DenseCMat id = DenseCMat::Identity(5, 5);
  CHECK(operator_norm(id).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(nilpotent_shift(3)).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator norm vs dense SVD oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const int rows = 2 + static_cast<int>(rng() % 120);
    const int cols = 2 + static_cast<int>(rng() % 120);
    DenseCMat m = random_matrix(rng, rows, cols);
    Eigen::JacobiSVD<DenseCMat> svd(m);
    const double expect = svd.singularValues()(0);
    CHECK(std::abs(operator_norm(m).value - expect) < 1e-9);
    // The sparse path must agree too.
    SparseCMat s = m.sparseView();
    SpectralResult r = operator_norm(s, 1e-11);
    CHECK(std::abs(r.value - expect) < 1e-8);
  }
}

TEST_CASE("hermitian extremes and positivity") {
  CHECK(min_eig_hermitian(DenseCMat(DenseCMat::Identity(4, 4))).value ==
        doctest::Approx(1.0));
  DenseCMat d = DenseCMat::Zero(2, 2);
  d(0, 0) = Complex(1);
  d(1, 1) = Complex(-2);
  CHECK(min_eig_hermitian(d).value == doctest::Approx(-2.0));
  CHECK(max_eig_hermitian(d).value == doctest::Approx(1.0));

  std::mt19937_64 rng(5);
  DenseCMat g = random_matrix(rng, 30, 30);
  DenseCMat gram = g.adjoint() * g;
  CHECK(min_eig_hermitian(gram).value >= -1e-12);
  CHECK(is_positive(gram));
  CHECK(is_positive(DenseCMat(DenseCMat::Identity(3, 3))));
  CHECK_FALSE(is_positive(DenseCMat(-DenseCMat::Identity(3, 3))));
  CHECK_THROWS_AS(max_eig_hermitian(random_matrix(rng, 8, 8)),
                  std::invalid_argument);
}

TEST_CASE("numerical radius classics") {
  // Hermitian: omega equals the norm.
  std::mt19937_64 rng(7);
  DenseCMat g = random_matrix(rng, 24, 24);
  DenseCMat h = 0.5 * (g + g.adjoint());
  const double nh = operator_norm(h).value;
  CHECK(numerical_radius(h, 1e-10).value == doctest::Approx(nh).epsilon(1e-9));

  // 2x2 nilpotent Jordan block: 1/2.
  CHECK(numerical_radius(nilpotent_shift(2), 1e-10).value ==
        doctest::Approx(0.5).epsilon(1e-9));

  // Truncated shift: cos(pi/(d+2)), against the grid oracle as well.
  for (int d : {1, 2, 5, 9}) {
    DenseCMat s = nilpotent_shift(d + 1);
    const double expect = std::cos(M_PI / (d + 2));
    SpectralResult r = numerical_radius(s, 1e-9);
    CHECK(std::abs(r.value - expect) < 1e-9);
    CHECK(std::abs(numrad_grid_oracle(s, 4001) - expect) < 1e-6);
  }
}

TEST_CASE("numerical radius certified bounds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    DenseCMat m = random_matrix(rng, 18, 18);
    RadiusBounds b = numerical_radius_bounds(m, 1e-9);
    CHECK(b.resolved);
    CHECK(b.upper - b.lower <= 1e-9);
    // The uniform grid resolves omega only to O((pi/grid)^2).
    const double oracle = numrad_grid_oracle(m, 2000);
    CHECK(oracle <= b.upper + 1e-9);
    CHECK(b.lower <= oracle + 1e-4);
  }
}

TEST_CASE("numerical radius properties") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 12; ++t) {
    const int n = 6 + static_cast<int>(rng() % 20);
    DenseCMat a = random_matrix(rng, n, n);
    DenseCMat b = random_matrix(rng, n, n);
    const double wa = numerical_radius(a, 1e-10).value;
    const double wb = numerical_radius(b, 1e-10).value;
    const double wab = numerical_radius(DenseCMat(a + b), 1e-10).value;
    CHECK(wab <= wa + wb + 2e-9);

    const Complex lam(0.7, -1.3);
    CHECK(numerical_radius(DenseCMat(lam * a), 1e-10).value ==
          doctest::Approx(std::abs(lam) * wa).epsilon(1e-8));

    DenseCMat u = random_unitary(rng, n);
    CHECK(numerical_radius(DenseCMat(u.adjoint() * a * u), 1e-10).value ==
          doctest::Approx(wa).epsilon(1e-8));

    const double na = operator_norm(a).value;
    CHECK(wa <= na + 1e-9);
    CHECK(na <= 2 * wa + 1e-9);

    DenseCMat gram = a.adjoint() * a;
    CHECK(numerical_radius(gram, 1e-10).value ==
          doctest::Approx(operator_norm(gram).value).epsilon(1e-8));
  }
}

TEST_CASE("joint numerical radius") {
  // n = 1, scalar c: w = |c| * omega(truncated shift) -> |c|.
  std::vector<DenseCMat> single = {DenseCMat::Constant(1, 1, Complex(0.8))};
  double prev = 0.0;
  for (int d : {4, 8, 16, 32}) {
    const double w = joint_numerical_radius(single, d, 1e-7).value;
    CHECK(w == doctest::Approx(0.8 * std::cos(M_PI / (d + 2))).epsilon(1e-6));
    CHECK(w >= prev - 1e-7);  // monotone in the truncation degree
    prev = w;
  }

  // Coordinate projections stay bounded by 1.
  std::vector<DenseCMat> projections;
  for (int i = 0; i < 3; ++i) {
    DenseCMat p = DenseCMat::Zero(3, 3);
    p(i, i) = Complex(1);
    projections.push_back(p);
  }
  CHECK(joint_numerical_radius(projections, 3, 1e-8).value <= 1.0 + 1e-7);

  // Permutation symmetry.
  std::mt19937_64 rng(17);
  std::vector<DenseCMat> ts = {random_matrix(rng, 4, 4),
                               random_matrix(rng, 4, 4),
                               random_matrix(rng, 4, 4)};
  std::vector<DenseCMat> perm = {ts[2], ts[0], ts[1]};
  CHECK(joint_numerical_radius(ts, 2, 1e-8).value ==
        doctest::Approx(joint_numerical_radius(perm, 2, 1e-8).value)
            .epsilon(1e-7));
}
