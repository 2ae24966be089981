#include "chimera/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <fmt/format.h>

#include "chimera/error.hpp"
#include "chimera/kernels.hpp"

namespace chimera {

namespace {

std::size_t origin_index(const WalkHamiltonian& H, const VertexCoord& v0) {
  return coords_to_index(v0, H.dims());
}

void require_basis(const LabeledBasis& basis, Eigen::Index n) {
  if (basis.empty()) throw LabelingUnavailable("eigenstates have not been labeled");
  if (basis.vectors.rows() != n) throw DimensionMismatch("state and labeled basis differ in size");
}

}  // namespace

std::string_view to_string(FieldKind k) {
  switch (k) {
    case FieldKind::instantaneous:
      return "instantaneous";
    case FieldKind::limiting:
      return "limiting";
    case FieldKind::classical:
      return "classical";
  }
  return "instantaneous";
}

WalkerState evolve(const WalkHamiltonian& H, const VertexCoord& v0, double t) {
  if (t < 0.0) throw Error("invalid_time", "evolution time must be non-negative");
  const std::size_t origin = origin_index(H, v0);
  const EigenSystem& eig = H.eigensystem();
  Eigen::VectorXcd phase(eig.values.size());
  for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::polar(1.0, -eig.values(k) * t);
  return {kernels::spectral_propagate(eig.vectors, phase, origin), t, v0};
}

ProbabilityField transition_probability(const WalkHamiltonian& H, const VertexCoord& v0, double t) {
  const WalkerState s = evolve(H, v0, t);
  return {s.amplitudes.cwiseAbs2(), FieldKind::instantaneous};
}

ProbabilityField limiting_distribution(const WalkHamiltonian& H, const VertexCoord& v0) {
  const std::size_t origin = origin_index(H, v0);
  const EigenSystem& eig = H.eigensystem();
  return {kernels::projector_weights(eig.vectors, eig.groups, origin), FieldKind::limiting};
}

ProbabilityField classical_ctrw(const WalkHamiltonian& H, const VertexCoord& v0, double t) {
  if (t < 0.0) throw Error("invalid_time", "evolution time must be non-negative");
  const std::size_t origin = origin_index(H, v0);
  const EigenSystem& eig = H.eigensystem();
  Eigen::VectorXcd decay(eig.values.size());
  for (Eigen::Index k = 0; k < decay.size(); ++k) decay(k) = std::exp(-eig.values(k) * t);
  Eigen::VectorXd p = kernels::spectral_propagate(eig.vectors, decay, origin).real();
  // Roundoff can leave entries a few ulps below zero.
  p = p.cwiseMax(0.0);
  return {p, FieldKind::classical};
}

SubspaceWeights subspace_weights(const LabeledBasis& basis, const Eigen::VectorXcd& psi) {
  require_basis(basis, psi.size());
  const Eigen::VectorXcd overlaps = basis.vectors.transpose().cast<std::complex<double>>() * psi;
  SubspaceWeights w;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double p = std::norm(overlaps(static_cast<Eigen::Index>(k)));
    switch (basis.labels[k].family) {
      case Family::left:
        w.left += p;
        break;
      case Family::right:
        w.right += p;
        break;
      case Family::both:
        w.both += p;
        break;
    }
  }
  return w;
}

Eigen::VectorXcd project_family(const LabeledBasis& basis, const Eigen::VectorXcd& psi, Family family) {
  require_basis(basis, psi.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis.labels[k].family != family) continue;
    const Eigen::VectorXd phi = basis.vectors.col(static_cast<Eigen::Index>(k));
    const std::complex<double> c = phi.cast<std::complex<double>>().dot(psi);
    out += c * phi.cast<std::complex<double>>();
  }
  return out;
}

Eigen::MatrixXd fourier2d(const Eigen::VectorXcd& psi, const Dims& dims, Side side) {
  if (static_cast<std::size_t>(psi.size()) != dims.vertices()) {
    throw DimensionMismatch("state length does not match the chimera dimensions");
  }
  std::vector<int> offsets;
  const int first = side == Side::left ? 0 : dims.L;
  for (int mu = 0; mu < dims.L; ++mu) offsets.push_back(first + mu);
  Eigen::MatrixXd power = kernels::fourier_power(psi, dims.M, dims.N, 2 * dims.L, offsets);
  const double total = power.sum();
  if (total > 0.0) power /= total;
  return power;
}

double kprime_flatness(const Eigen::MatrixXd& grid, double dominance) {
  if (grid.size() == 0) return 0.0;
  const Eigen::VectorXd marginal = grid.rowwise().sum();
  const double top = marginal.maxCoeff();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < grid.rows(); ++k) {
    if (marginal(k) <= 0.0 || marginal(k) < dominance * top) continue;
    const Eigen::ArrayXd row = grid.row(k).transpose().array();
    const double mean = row.mean();
    worst = std::max(worst, std::sqrt((row - mean).square().mean()) / mean);
  }
  return worst;
}

}  // namespace chimera
