#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace chimera {

// Eigenvalues closer than this fraction of the spectral range are treated as one
// degenerate level. Shared by projector grouping and eigenstate labeling.
inline constexpr double kDegeneracyRelTol = 1e-8;

// Half-open index range [begin, end) of one degenerate level.
struct DegeneracyGroup {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
  std::vector<DegeneracyGroup> groups;
  double tolerance = 0.0;   // absolute grouping tolerance actually used
  bool fallback = false;    // LAPACK result failed the residual probe; Eigen solved it

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  std::size_t group_of(std::size_t index) const;
};

// Absolute grouping tolerance for a sorted spectrum.
double degeneracy_tolerance(const Eigen::VectorXd& sorted_values);

// Partition of a sorted spectrum into runs whose consecutive gaps are <= tol.
std::vector<DegeneracyGroup> group_levels(const Eigen::VectorXd& sorted_values, double tol);

// Full dense symmetric eigendecomposition (LAPACK dsyevd). The result is checked with
// a random probe of the residual and of orthonormality; if either is off (some BLAS
// builds pick broken kernels at run time) Eigen's own solver is used instead. Inside each degenerate
// group the basis is rotated to a canonical form: a column-pivoted QR of the group's
// rows picks the most vertex-concentrated direction first, so an eigenvector equal to
// a vertex indicator (isolated vertex) is recovered exactly. Every eigenvector is then
// signed so its first non-negligible component is positive.
// Throws NotSymmetric if H differs from its transpose.
EigenSystem eigensolve(const Eigen::MatrixXd& H);

// Sum of |psi_v|^4; equals 1 for a state supported on a single vertex.
double inverse_participation_ratio(const Eigen::VectorXd& psi);

}  // namespace chimera
