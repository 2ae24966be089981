#pragma once

#include <Eigen/Dense>

#include "chimera/graph.hpp"
#include "chimera/operators.hpp"
#include "chimera/spectral.hpp"

namespace chimera {

struct WalkerState {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;
  VertexCoord origin;
};

enum class FieldKind { instantaneous, limiting, classical };

std::string_view to_string(FieldKind k);

struct ProbabilityField {
  Eigen::VectorXd values;
  FieldKind kind = FieldKind::instantaneous;
};

// psi(t) = V exp(-i Lambda t) V^T e_v0 from the cached eigendecomposition.
WalkerState evolve(const WalkHamiltonian& H, const VertexCoord& v0, double t);

ProbabilityField transition_probability(const WalkHamiltonian& H, const VertexCoord& v0, double t);

// Cesaro limit of the transition probability: sum over energy levels E of
// (<v'|Pi_E|v0>)^2, levels grouped with the shared degeneracy tolerance.
ProbabilityField limiting_distribution(const WalkHamiltonian& H, const VertexCoord& v0);

// Classical continuous-time walk p(t) = exp(-H t) e_v0 with H as the generator.
ProbabilityField classical_ctrw(const WalkHamiltonian& H, const VertexCoord& v0, double t);

struct SubspaceWeights {
  double left = 0.0;
  double right = 0.0;
  double both = 0.0;
};

// Population of each unit-lattice family: w_X = sum_{k in X} |<phi_k|psi>|^2.
SubspaceWeights subspace_weights(const LabeledBasis& basis, const Eigen::VectorXcd& psi);

// Component of psi inside one family's eigenspace.
Eigen::VectorXcd project_family(const LabeledBasis& basis, const Eigen::VectorXcd& psi, Family family);

enum class Side { left, right };

// Momentum distribution of one side of every cell on the M x N cell grid. Each
// intracell label on that side is transformed separately (unitary 2D DFT over the
// cells) and the power spectra are summed, i.e. mu is traced out. Normalized to
// unit total; an all-zero input yields an all-zero grid. Entry (k, k') is indexed
// from 0 along m and n respectively.
Eigen::MatrixXd fourier2d(const Eigen::VectorXcd& psi, const Dims& dims, Side side);

// Largest relative standard deviation along k' over the rows k whose marginal is at
// least `dominance` times the largest row marginal. Zero for a grid flat along k'.
double kprime_flatness(const Eigen::MatrixXd& grid, double dominance = 0.5);

}  // namespace chimera
