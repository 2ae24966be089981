#include "chimera/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <lapacke.h>
#include <fmt/format.h>

#include "chimera/error.hpp"

namespace chimera {

namespace {

constexpr double kSignThreshold = 1e-8;
constexpr double kProbeRelTol = 1e-9;

// Residual of H V = V diag(w) and of V^T V = I along one fixed pseudo-random direction.
bool decomposition_ok(const Eigen::MatrixXd& H, const Eigen::MatrixXd& V, const Eigen::VectorXd& w) {
  const auto n = H.rows();
  Eigen::VectorXd x(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index i = 0; i < n; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    x(i) = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
  }
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff()) * x.norm() * static_cast<double>(n);
  const Eigen::VectorXd Vx = V * x;
  const double residual = (H * Vx - V * w.cwiseProduct(x)).norm();
  const double orth = (V.transpose() * Vx - x).norm();
  return std::isfinite(residual) && residual <= kProbeRelTol * scale && orth <= kProbeRelTol * x.norm() * n;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSignThreshold) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

void canonicalize_group(Eigen::MatrixXd& vectors, const DegeneracyGroup& g) {
  const auto k = static_cast<Eigen::Index>(g.size());
  auto block = vectors.middleCols(static_cast<Eigen::Index>(g.begin), k);
  Eigen::MatrixXd rows = block.transpose();  // k x n
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rows);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  block = block * q;
}

}  // namespace

std::size_t EigenSystem::group_of(std::size_t index) const {
  auto it = std::upper_bound(groups.begin(), groups.end(), index,
                             [](std::size_t i, const DegeneracyGroup& g) { return i < g.end; });
  if (it == groups.end()) throw IndexError(fmt::format("eigen index {} out of range", index));
  return static_cast<std::size_t>(it - groups.begin());
}

double degeneracy_tolerance(const Eigen::VectorXd& sorted_values) {
  if (sorted_values.size() == 0) return 0.0;
  const double range = sorted_values(sorted_values.size() - 1) - sorted_values(0);
  const double scale = std::max(range, sorted_values.cwiseAbs().maxCoeff());
  // Floor keeps exact repeats grouped when the whole spectrum collapses to one value.
  return kDegeneracyRelTol * (range > 0.0 ? range : std::max(scale, 1.0));
}

std::vector<DegeneracyGroup> group_levels(const Eigen::VectorXd& sorted_values, double tol) {
  std::vector<DegeneracyGroup> groups;
  const auto n = static_cast<std::size_t>(sorted_values.size());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || sorted_values(static_cast<Eigen::Index>(i)) -
                          sorted_values(static_cast<Eigen::Index>(i - 1)) >
                      tol) {
      groups.push_back({start, i});
      start = i;
    }
  }
  return groups;
}

EigenSystem eigensolve(const Eigen::MatrixXd& H) {
  if (H.rows() != H.cols()) throw NotSymmetric("eigensolve requires a square matrix");
  const auto n = H.rows();
  EigenSystem es;
  if (n == 0) return es;
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NotSymmetric("eigensolve requires a symmetric matrix");
  }

  // Column-major copy; dsyevd overwrites it with the eigenvectors.
  es.vectors = H;
  es.values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                                         es.vectors.data(), static_cast<lapack_int>(n),
                                         es.values.data());
  if (info != 0 || !decomposition_ok(H, es.vectors, es.values)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success) throw Error("eigensolver_error", "symmetric eigensolver did not converge");
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
    es.fallback = true;
  }

  es.tolerance = degeneracy_tolerance(es.values);
  es.groups = group_levels(es.values, es.tolerance);
  for (const auto& g : es.groups) {
    if (g.size() > 1) canonicalize_group(es.vectors, g);
  }
  for (Eigen::Index c = 0; c < n; ++c) fix_sign(es.vectors.col(c));
  return es;
}

double inverse_participation_ratio(const Eigen::VectorXd& psi) {
  return psi.array().square().square().sum();
}

}  // namespace chimera
