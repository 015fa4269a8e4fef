#pragma once

// Test-side dense linear algebra written out by hand, so oracles never share a
// decomposition routine with the library under test. Eigen types are used as
// storage only.

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Core>

namespace oracle {

struct Eigensystem {
  Eigen::VectorXd values;   // unsorted
  Eigen::MatrixXd vectors;  // columns
};

// Cyclic Jacobi rotations until every off-diagonal entry is below tol * ||A||_F.
inline Eigensystem jacobi_eigen(Eigen::MatrixXd a, double tol = 1e-15, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    }
    if (off <= tol * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return {a.diagonal(), v};
}

// One-sided (Hestenes) Jacobi: orthogonalize columns, singular values are column norms.
inline Eigen::VectorXd jacobi_singular_values(Eigen::MatrixXd m, double tol = 1e-15, int max_sweeps = 100) {
  const Eigen::Index cols = m.cols();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < cols; ++p) {
      for (Eigen::Index q = p + 1; q < cols; ++q) {
        const double alpha = m.col(p).squaredNorm();
        const double beta = m.col(q).squaredNorm();
        const double gamma = m.col(p).dot(m.col(q));
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index k = 0; k < m.rows(); ++k) {
          const double mp = m(k, p);
          const double mq = m(k, q);
          m(k, p) = c * mp - s * mq;
          m(k, q) = s * mp + c * mq;
        }
      }
    }
    if (!rotated) break;
  }
  Eigen::VectorXd out(cols);
  for (Eigen::Index j = 0; j < cols; ++j) out[j] = m.col(j).norm();
  return out;
}

// Tr sqrt(sqrt(rho) sigma sqrt(rho)) with both square roots from jacobi_eigen.
inline double root_fidelity(const Eigen::MatrixXd& rho, const Eigen::MatrixXd& sigma) {
  const auto er = jacobi_eigen(rho);
  Eigen::MatrixXd root = Eigen::MatrixXd::Zero(rho.rows(), rho.cols());
  for (Eigen::Index j = 0; j < rho.rows(); ++j) {
    const double lambda = std::max(0.0, er.values[j]);
    root += std::sqrt(lambda) * er.vectors.col(j) * er.vectors.col(j).transpose();
  }
  const Eigen::MatrixXd inner = root * sigma * root;
  const auto ei = jacobi_eigen(0.5 * (inner + inner.transpose()));
  double total = 0.0;
  for (Eigen::Index j = 0; j < ei.values.size(); ++j) total += std::sqrt(std::max(0.0, ei.values[j]));
  return total;
}

inline double entropy_bits(const Eigen::MatrixXd& rho) {
  const auto e = jacobi_eigen(rho);
  double h = 0.0;
  for (Eigen::Index j = 0; j < e.values.size(); ++j) {
    if (e.values[j] > 1e-300) h -= e.values[j] * std::log2(e.values[j]);
  }
  return h;
}

}  // namespace oracle
