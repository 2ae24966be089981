#pragma once

#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "chimera/eigensystem.hpp"
#include "chimera/operators.hpp"
#include "chimera/spectral.hpp"

namespace chimera {

struct Schedule {
  double T = 1.0;
  // Initial step count; refined by doubling until fidelities settle.
  int steps = 1;
  double y = std::numbers::pi;
  double z = 2.0;
  // On-site energies of the initial Hamiltonian diag(a); must be pairwise distinct.
  std::vector<double> onsite;

  void validate(std::size_t dimension) const;
};

// a_v = v + 1.
std::vector<double> default_onsite(std::size_t dimension);

// H' = H + sum_l (y^l S_{2l-1} + z^l S_{2l}) over consecutive operator pairs.
// Throws Error("incomplete_operator_set") unless the set has a positive even size.
Eigen::MatrixXd target_hamiltonian(const Eigen::MatrixXd& H, const std::vector<SymmetryOperator>& ops,
                                   double y, double z);

// Smallest gap between consecutive eigenvalues; > 0 means nondegenerate.
double min_level_spacing(const Eigen::MatrixXd& H);

inline constexpr double kFidelitySettleTol = 1e-6;
inline constexpr double kNormTol = 1e-9;
inline constexpr int kMaxAdiabaticSteps = 1 << 21;

struct AdiabaticResult {
  Eigen::VectorXcd final_state;
  Eigen::VectorXd mode_energies;  // eigenvalues of H', ascending
  Eigen::VectorXd fidelities;     // |<mode_k|psi(T)>|^2
  std::size_t dominant_mode = 0;
  int steps = 0;
  double norm_error = 0.0;

  double max_fidelity() const { return fidelities.size() ? fidelities.maxCoeff() : 0.0; }
};

// Integrates i dpsi/dt = H(t) psi with H(t) = (1 - t/T) diag(a) + (t/T) H' using the
// exact exponential of H frozen at each step midpoint. The step count starts at
// schedule.steps and doubles until a further halving moves every modal fidelity by
// less than kFidelitySettleTol. Throws IntegrationAccuracy if that needs more than
// kMaxAdiabaticSteps steps or the norm drifts by more than kNormTol.
AdiabaticResult adiabatic_evolve(const Schedule& schedule, const Eigen::MatrixXd& target,
                                 std::size_t v0);

// For each eigenvector of H' (columns of `modes`), the index in `basis` of the
// labeled eigenstate with the largest overlap.
std::vector<std::size_t> match_modes(const Eigen::MatrixXd& modes, const LabeledBasis& basis);

}  // namespace chimera
