#pragma once

// Test-side reference computations that avoid the library's eigendecomposition path.

#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

// Average of |exp(-iHt) e_v0|^2 over t_k = k * tau / samples, k = 0 .. samples - 1,
// stepping with one Pade exponential of the grid spacing.
inline Eigen::VectorXd time_average(const Eigen::MatrixXd& H, Eigen::Index v0, double tau, int samples) {
  const double dt = tau / samples;
  const Eigen::MatrixXcd step = (std::complex<double>(0.0, -dt) * H.cast<std::complex<double>>()).exp();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(H.rows());
  psi(v0) = 1.0;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(H.rows());
  for (int k = 0; k < samples; ++k) {
    acc += psi.cwiseAbs2();
    psi = step * psi;
  }
  return acc / samples;
}

// exp(-iHt) e_v0 by Pade.
inline Eigen::VectorXcd propagate(const Eigen::MatrixXd& H, Eigen::Index v0, double t) {
  const Eigen::MatrixXcd U = (std::complex<double>(0.0, -t) * H.cast<std::complex<double>>()).exp();
  return U.col(v0);
}

// exp(-Ht) e_v0 by Pade.
inline Eigen::VectorXd heat(const Eigen::MatrixXd& H, Eigen::Index v0, double t) {
  const Eigen::MatrixXd U = (-t * H).exp();
  return U.col(v0);
}

}  // namespace oracle
