#pragma once

#include <Eigen/Dense>

namespace cqpolar {

/// Eigenvalues below -kPsdTolerance mean a state is not positive semidefinite.
inline constexpr double kPsdTolerance = 1e-9;

/// Real symmetric unit-trace positive-semidefinite matrix.
struct DensityMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index dimension() const { return entries.rows(); }
  double trace() const { return entries.trace(); }
};

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Throws NumericAnomaly if the solver does not converge.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m);
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// Clips eigenvalues in [-kPsdTolerance, 0) to zero; throws NumericAnomaly below that.
Eigen::VectorXd psd_spectrum(const Eigen::MatrixXd& rho, const char* what);

/// von Neumann entropy -Tr rho log2 rho.
double von_neumann_entropy(const DensityMatrix& rho);

/// Root fidelity ||sqrt(rho) sqrt(sigma)||_1 = Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double root_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace cqpolar
