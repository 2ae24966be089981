#pragma once

// Data-parallel inner loops. Each kernel in chimera::kernels is OpenMP-parallel;
// chimera::kernels::serial holds a straightforward single-threaded reference that
// follows a different algebraic route and is kept for tests and benchmarks.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "chimera/eigensystem.hpp"

namespace chimera::kernels {

// max_ij |(S H - H S)_ij|. Exploits the row sparsity of S (permutation-like operators
// carry at most a handful of nonzeros per row) and never forms the products.
double commutator_maxnorm(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H);

// P(v') = sum over degenerate groups g of (sum_{i in g} V(v', i) V(v0, i))^2.
Eigen::VectorXd projector_weights(const Eigen::MatrixXd& V,
                                  const std::vector<DegeneracyGroup>& groups, std::size_t v0);

// psi = V diag(phase) V^T e_v0 evaluated row-parallel.
Eigen::VectorXcd spectral_propagate(const Eigen::MatrixXd& V, const Eigen::VectorXcd& phase,
                                    std::size_t v0);

// Sum over the given intracell offsets of |DFT2(psi restricted to offset)|^2 on an
// M x N cell grid, unitary 1/sqrt(MN) normalization. `cell_stride` is 2L and
// `offsets` are zero-based mu values.
Eigen::MatrixXd fourier_power(const Eigen::VectorXcd& psi, int M, int N, int cell_stride,
                              const std::vector<int>& offsets);

namespace serial {

double commutator_maxnorm(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H);

// Builds each group projector V_g V_g^T explicitly and reads its v0 column.
Eigen::VectorXd projector_weights(const Eigen::MatrixXd& V,
                                  const std::vector<DegeneracyGroup>& groups, std::size_t v0);

Eigen::VectorXcd spectral_propagate(const Eigen::MatrixXd& V, const Eigen::VectorXcd& phase,
                                    std::size_t v0);

// Direct quadruple-loop DFT.
Eigen::MatrixXd fourier_power(const Eigen::VectorXcd& psi, int M, int N, int cell_stride,
                              const std::vector<int>& offsets);

}  // namespace serial

// Number of OpenMP threads the kernels will use (1 without OpenMP).
int thread_count();

}  // namespace chimera::kernels
