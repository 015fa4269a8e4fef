#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "cqpolar/errors.hpp"
#include "cqpolar/linalg.hpp"
#include "cqpolar/rng.hpp"
#include "oracle_linalg.hpp"

using namespace cqpolar;

namespace {

// Random rank-limited state rho = G G^T / Tr.
Eigen::MatrixXd random_state(CounterStream& rng, Eigen::Index dim, Eigen::Index rank) {
  Eigen::MatrixXd g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.uniform() - 0.5;
  }
  const Eigen::MatrixXd rho = g * g.transpose();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("symmetric eigenvalues match the Jacobi oracle") {
  CounterStream rng(7, 0, 9);
  for (Eigen::Index dim : {1, 2, 5, 16}) {
    Eigen::MatrixXd a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.uniform() - 0.5;
    }
    const auto mine = symmetric_eigen(a);
    Eigen::VectorXd ref = oracle::jacobi_eigen(a).values;
    std::sort(ref.data(), ref.data() + ref.size());
    for (Eigen::Index j = 0; j < dim; ++j) CHECK(std::abs(mine.values[j] - ref[j]) <= 1e-12);
    for (Eigen::Index j = 1; j < dim; ++j) CHECK(mine.values[j - 1] <= mine.values[j]);
    const Eigen::MatrixXd back = mine.vectors * mine.values.asDiagonal() * mine.vectors.transpose();
    CHECK((back - a).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("entropy and root fidelity match the Jacobi oracle") {
  CounterStream rng(11, 0, 9);
  for (Eigen::Index dim : {2, 4, 8}) {
    for (Eigen::Index rank : {Eigen::Index{1}, dim / 2, dim}) {
      const Eigen::MatrixXd rho = random_state(rng, dim, rank);
      const Eigen::MatrixXd sigma = random_state(rng, dim, dim);
      CHECK(von_neumann_entropy({rho}) == doctest::Approx(oracle::entropy_bits(rho)).epsilon(1e-9));
      CHECK(root_fidelity({rho}, {sigma}) == doctest::Approx(oracle::root_fidelity(rho, sigma)).epsilon(1e-7));
    }
  }
}

TEST_CASE("pure-state closed forms") {
  const double angle = 0.3;
  Eigen::Vector2d a(1.0, 0.0);
  Eigen::Vector2d b(std::cos(angle), std::sin(angle));
  const DensityMatrix pa{a * a.transpose()};
  const DensityMatrix pb{b * b.transpose()};
  CHECK(root_fidelity(pa, pb) == doctest::Approx(std::cos(angle)).epsilon(1e-7));
  CHECK(std::abs(von_neumann_entropy(pa)) <= 1e-12);
  CHECK(von_neumann_entropy({Eigen::Matrix2d::Identity() / 2}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(root_fidelity(pa, pa) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("negative spectrum is a numeric anomaly") {
  Eigen::Matrix2d bad;
  bad << 1.1, 0.0, 0.0, -0.1;
  CHECK_THROWS_AS(psd_spectrum(bad, "test"), NumericAnomaly);
  Eigen::Matrix2d tiny;
  tiny << 1.0, 0.0, 0.0, -1e-12;
  const auto clipped = psd_spectrum(tiny, "test");
  CHECK(clipped.minCoeff() == 0.0);
}
