#include "chimera/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <fmt/format.h>

#include "chimera/error.hpp"

namespace chimera {

void Schedule::validate(std::size_t dimension) const {
  if (!(T >= 0.0)) throw Error("invalid_schedule", "total time T must be non-negative");
  if (steps < 1) throw Error("invalid_schedule", "step count must be at least 1");
  if (onsite.size() != dimension) {
    throw DimensionMismatch(fmt::format("{} on-site energies for dimension {}", onsite.size(), dimension));
  }
  std::vector<double> sorted = onsite;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("invalid_schedule", "on-site energies must be pairwise distinct");
  }
}

std::vector<double> default_onsite(std::size_t dimension) {
  std::vector<double> a(dimension);
  for (std::size_t v = 0; v < dimension; ++v) a[v] = static_cast<double>(v + 1);
  return a;
}

Eigen::MatrixXd target_hamiltonian(const Eigen::MatrixXd& H, const std::vector<SymmetryOperator>& ops,
                                   double y, double z) {
  if (ops.empty() || ops.size() % 2 != 0) {
    throw Error("incomplete_operator_set",
                fmt::format("target Hamiltonian needs operator pairs, got {} operators", ops.size()));
  }
  Eigen::MatrixXd out = H;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].matrix.rows() != H.rows()) throw DimensionMismatch("operator and Hamiltonian differ in size");
    const double power = static_cast<double>(i / 2 + 1);
    const double coeff = std::pow(i % 2 == 0 ? y : z, power);
    out += coeff * ops[i].matrix;
  }
  return out;
}

double min_level_spacing(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& w = solver.eigenvalues();
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < w.size(); ++i) gap = std::min(gap, w(i) - w(i - 1));
  return gap;
}

namespace {

Eigen::VectorXcd integrate(const Eigen::VectorXd& onsite, const Eigen::MatrixXd& target,
                           std::size_t v0, double T, int steps) {
  const auto n = target.rows();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  psi(static_cast<Eigen::Index>(v0)) = 1.0;
  if (T == 0.0) return psi;

  const double dt = T / steps;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(n);
  Eigen::MatrixXd frozen(n, n);
  for (int k = 0; k < steps; ++k) {
    const double s = (k + 0.5) / steps;
    frozen = s * target;
    frozen.diagonal() += (1.0 - s) * onsite;
    solver.compute(frozen);
    const Eigen::MatrixXd& V = solver.eigenvectors();
    Eigen::VectorXcd c = V.transpose().cast<std::complex<double>>() * psi;
    for (Eigen::Index i = 0; i < n; ++i) c(i) *= std::polar(1.0, -solver.eigenvalues()(i) * dt);
    psi = V.cast<std::complex<double>>() * c;
  }
  return psi;
}

}  // namespace

AdiabaticResult adiabatic_evolve(const Schedule& schedule, const Eigen::MatrixXd& target,
                                 std::size_t v0) {
  const auto n = static_cast<std::size_t>(target.rows());
  schedule.validate(n);
  if (v0 >= n) throw IndexError(fmt::format("initial vertex {} out of range", v0));

  const EigenSystem modes = eigensolve(target);
  const Eigen::Map<const Eigen::VectorXd> onsite(schedule.onsite.data(),
                                                  static_cast<Eigen::Index>(n));
  const Eigen::MatrixXcd basis = modes.vectors.cast<std::complex<double>>();
  auto fidelities_of = [&](const Eigen::VectorXcd& psi) -> Eigen::VectorXd {
    return (basis.adjoint() * psi).cwiseAbs2();
  };

  AdiabaticResult r;
  r.mode_energies = modes.values;
  int steps = schedule.steps;
  Eigen::VectorXcd psi = integrate(onsite, target, v0, schedule.T, steps);
  Eigen::VectorXd fid = fidelities_of(psi);
  // A zero-length schedule has nothing to refine.
  while (schedule.T > 0.0) {
    if (steps > kMaxAdiabaticSteps / 2) {
      throw IntegrationAccuracy(fmt::format(
          "fidelities still moving after {} steps (T = {})", steps, schedule.T));
    }
    Eigen::VectorXcd finer = integrate(onsite, target, v0, schedule.T, 2 * steps);
    Eigen::VectorXd finer_fid = fidelities_of(finer);
    const double change = (finer_fid - fid).cwiseAbs().maxCoeff();
    steps *= 2;
    psi = std::move(finer);
    fid = std::move(finer_fid);
    if (change < kFidelitySettleTol) break;
  }

  r.norm_error = std::abs(psi.norm() - 1.0);
  if (r.norm_error > kNormTol) {
    throw IntegrationAccuracy(fmt::format("norm drifted by {:.3e}", r.norm_error));
  }
  r.final_state = std::move(psi);
  r.fidelities = std::move(fid);
  Eigen::Index dominant = 0;
  r.fidelities.maxCoeff(&dominant);
  r.dominant_mode = static_cast<std::size_t>(dominant);
  r.steps = steps;
  return r;
}

std::vector<std::size_t> match_modes(const Eigen::MatrixXd& modes, const LabeledBasis& basis) {
  if (basis.empty()) throw LabelingUnavailable("no labeled basis to match against");
  if (modes.rows() != basis.vectors.rows()) throw DimensionMismatch("mode and basis sizes differ");
  const Eigen::MatrixXd overlap = (basis.vectors.transpose() * modes).cwiseAbs();
  std::vector<std::size_t> out(static_cast<std::size_t>(modes.cols()));
  for (Eigen::Index c = 0; c < modes.cols(); ++c) {
    Eigen::Index best = 0;
    overlap.col(c).maxCoeff(&best);
    out[static_cast<std::size_t>(c)] = static_cast<std::size_t>(best);
  }
  return out;
}

}  // namespace chimera
