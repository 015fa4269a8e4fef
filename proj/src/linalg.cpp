#include "cqpolar/linalg.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "cqpolar/errors.hpp"

namespace cqpolar {
namespace {

// Relative cut below which a clipped eigenvalue is treated as outside the support.
constexpr double kSupportCut = 1e-14;

}  // namespace

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "symmetric eigensolver failed on a " << m.rows() << "x" << m.cols()
        << " matrix (max |entry| " << m.cwiseAbs().maxCoeff() << ", asymmetry "
        << (m - m.transpose()).cwiseAbs().maxCoeff() << ")";
    throw NumericAnomaly(msg.str());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericAnomaly("symmetric eigensolver failed (eigenvalues only)");
  }
  return solver.eigenvalues();
}

Eigen::VectorXd psd_spectrum(const Eigen::MatrixXd& rho, const char* what) {
  Eigen::VectorXd values = symmetric_eigenvalues(rho);
  if (values.size() > 0 && values(0) < -kPsdTolerance) {
    std::ostringstream msg;
    msg << what << " is not positive semidefinite: smallest eigenvalue " << values(0);
    throw NumericAnomaly(msg.str());
  }
  return values.cwiseMax(0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd values = psd_spectrum(rho.entries, "density matrix");
  double h = 0.0;
  for (double v : values) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double root_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension()) {
    throw ParameterError("root_fidelity: dimension mismatch");
  }
  const SymmetricEigen eig = symmetric_eigen(rho.entries);
  if (eig.values.size() > 0 && eig.values(0) < -kPsdTolerance) {
    std::ostringstream msg;
    msg << "state is not positive semidefinite: smallest eigenvalue " << eig.values(0);
    throw NumericAnomaly(msg.str());
  }
  // sqrt(rho) = B B^T restricted to the support of rho; the nonzero spectrum of
  // sqrt(rho) sigma sqrt(rho) equals that of B^T sigma B.
  const double cut = kSupportCut * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  Eigen::Index first = 0;
  while (first < eig.values.size() && eig.values(first) <= cut) ++first;
  const Eigen::Index rank = eig.values.size() - first;
  if (rank == 0) return 0.0;
  Eigen::MatrixXd b = eig.vectors.rightCols(rank);
  for (Eigen::Index j = 0; j < rank; ++j) b.col(j) *= std::sqrt(eig.values(first + j));
  const Eigen::MatrixXd inner = b.transpose() * sigma.entries.selfadjointView<Eigen::Lower>() * b;
  const Eigen::VectorXd values = psd_spectrum(inner, "sqrt(rho) sigma sqrt(rho)");
  double f = 0.0;
  for (double v : values) f += std::sqrt(v);
  return std::min(1.0, f);
}

}  // namespace cqpolar
