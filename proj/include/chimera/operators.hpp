#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chimera/eigensystem.hpp"
#include "chimera/graph.hpp"

namespace chimera {

// Laplacian-convention walk Hamiltonian: off-diagonals are minus the coupling of
// the edge (j for intracell and enhancement edges, k for intercell edges, each times
// the edge weight) and the diagonal is the weighted degree, so rows sum to zero.
// The eigendecomposition is computed on first use and shared between copies.
class WalkHamiltonian {
 public:
  WalkHamiltonian(Eigen::MatrixXd matrix, Dims dims, double j, double k);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  double j() const { return j_; }
  double k() const { return k_; }
  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
  double max_abs() const { return matrix_.cwiseAbs().maxCoeff(); }

  const EigenSystem& eigensystem() const;

 private:
  struct Cache;
  Eigen::MatrixXd matrix_;
  Dims dims_;
  double j_;
  double k_;
  std::shared_ptr<Cache> cache_;
};

WalkHamiltonian hamiltonian(const ChimeraGraph& g, double j = 1.0, double k = 1.0);

enum class SymmetrySource { permutation, hermitized_permutation, line_hamiltonian_tensor };

struct SymmetryOperator {
  std::string name;
  Eigen::MatrixXd matrix;  // symmetric
  SymmetrySource source = SymmetrySource::permutation;
  // image[v] = sigma(v) for permutation-derived operators.
  std::optional<std::vector<std::size_t>> image;

  // The unhermitized 0/1 matrix S(sigma(v), v) = 1. Throws if there is no permutation.
  Eigen::MatrixXd permutation_matrix() const;
};

// Vertex permutation of sigma_1..sigma_8 (index 1..8) as an image map.
// sigma_1/sigma_3: cyclic intracell shift on the left/right side;
// sigma_2/sigma_4: intracell mirror on the left/right side;
// sigma_5/sigma_7: cyclic cell translation along m/n (periodic boundary only);
// sigma_6/sigma_8: cell mirror along m/n.
std::vector<std::size_t> sigma_image(const Dims& d, int which);

// True when the permutation maps the edge set of g onto itself.
bool is_automorphism(const ChimeraGraph& g, const std::vector<std::size_t>& image);

// Symmetry operator of sigma_`which`. The cyclic shifts (odd indices) are replaced by
// (S + S^T)/2; the mirrors are involutions and are returned as-is.
// Throws InvalidSymmetry when the permutation is not declared for the graph's
// boundary or variant.
SymmetryOperator permutation_operator(const ChimeraGraph& g, int which);

// Path-graph walk Hamiltonian on M vertices: -1 on the first off-diagonals, 2 on the
// interior diagonal, 1 at the two ends, and [0] for M = 1.
Eigen::MatrixXd line_operator(int M);

// S'_5 = A_M (x) 1_N (x) 1_2L and S'_6 = 1_M (x) A_N (x) 1_2L. Reflecting boundary only.
std::pair<SymmetryOperator, SymmetryOperator> intercell_operators(const ChimeraGraph& g);

// Pi_1: (1 2)(3 4), Pi_2: (1 3)(2 4) on the left side of every cell; Pi_3, Pi_4 the
// same on vertices 5..8. Enhanced graphs with L = 4 only.
std::vector<SymmetryOperator> pi_operators(const ChimeraGraph& g);

// The commuting-observable set used for labeling:
//   plain periodic:     sigma_1..sigma_8
//   plain reflecting:   sigma_1..sigma_4, S'_5, S'_6
//   enhanced reflecting (L = 4): Pi_1..Pi_4, S'_5, S'_6
std::vector<SymmetryOperator> symmetry_set(const ChimeraGraph& g);

// max_ij |(S H - H S)_ij| via the parallel kernel.
double commutator_maxnorm(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H);

// Relative tolerance under which an operator is taken to commute with H.
inline constexpr double kCommuteRelTol = 1e-10;

}  // namespace chimera
