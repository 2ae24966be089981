#include "chimera/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Sparse>
#include <fmt/format.h>

#include "chimera/error.hpp"

namespace chimera {

namespace {

constexpr double kOperatorClusterTol = 1e-6;
constexpr double kLabelEnergyRelTol = 1e-6;
constexpr double kLabelSTol = 1e-6;

struct Axis {
  std::vector<int> modes;
  std::vector<double> chain;  // c(j)
  std::vector<double> s_a;    // cosine-type label (s5 or s'5)
  std::vector<double> s_b;    // mirror label (s6); unused for reflecting
};

// Eigenvalue of the periodic ring Laplacian on `count` cells for mode j.
double ring_eigenvalue(int j, int count) {
  const double phase = std::cos(2.0 * std::numbers::pi * j / count);
  if (count >= 3) return 2.0 - 2.0 * phase;
  if (count == 2) return 1.0 - phase;
  return 0.0;
}

Axis periodic_axis(int count) {
  Axis a;
  for (int j = 0; j < count; ++j) {
    a.modes.push_back(j);
    a.chain.push_back(ring_eigenvalue(j, count));
    a.s_a.push_back(std::cos(2.0 * std::numbers::pi * j / count));
    a.s_b.push_back(j < count / 2.0 ? 1.0 : -1.0);
  }
  return a;
}

Axis reflecting_axis(int count) {
  Axis a;
  for (int j = 1; j <= count; ++j) {
    const double s = 2.0 + 2.0 * std::cos(std::numbers::pi * j / count);
    a.modes.push_back(j);
    a.chain.push_back(s);
    a.s_a.push_back(s);
    a.s_b.push_back(0.0);
  }
  return a;
}

double intracell_cos(int iota, int L) { return std::cos(2.0 * std::numbers::pi * iota / L); }
double intracell_mirror(int iota, int L) { return iota < L / 2.0 ? 1.0 : -1.0; }

std::pair<double, double> both_sides_energies(int L, double cm, double cn) {
  const double mid = L + 0.5 * (cm + cn);
  const double root = std::sqrt(static_cast<double>(L) * L + 0.25 * (cm - cn) * (cm - cn));
  return {mid - root, mid + root};
}

std::vector<SpectralLabel> enumerate_plain(Boundary boundary, int M, int N, int L) {
  const bool periodic = boundary == Boundary::periodic;
  const Axis am = periodic ? periodic_axis(M) : reflecting_axis(M);
  const Axis an = periodic ? periodic_axis(N) : reflecting_axis(N);

  // s-vector in symmetry_set() order.
  auto svec = [&](int iota, int iota2, std::size_t jm, std::size_t jn) {
    std::vector<double> s{intracell_cos(iota, L), intracell_mirror(iota, L), intracell_cos(iota2, L),
                          intracell_mirror(iota2, L)};
    if (periodic) {
      s.insert(s.end(), {am.s_a[jm], am.s_b[jm], an.s_a[jn], an.s_b[jn]});
    } else {
      s.insert(s.end(), {am.s_a[jm], an.s_a[jn]});
    }
    return s;
  };

  std::vector<SpectralLabel> out;
  out.reserve(2 * static_cast<std::size_t>(M) * N * L);
  for (int iota = 1; iota < L; ++iota) {
    for (std::size_t jm = 0; jm < am.modes.size(); ++jm) {
      for (std::size_t jn = 0; jn < an.modes.size(); ++jn) {
        out.push_back({Family::left, {iota, 0, am.modes[jm], an.modes[jn]}, svec(iota, 0, jm, jn),
                       L + am.chain[jm], 0});
      }
    }
  }
  for (int iota = 1; iota < L; ++iota) {
    for (std::size_t jm = 0; jm < am.modes.size(); ++jm) {
      for (std::size_t jn = 0; jn < an.modes.size(); ++jn) {
        out.push_back({Family::right, {0, iota, am.modes[jm], an.modes[jn]}, svec(0, iota, jm, jn),
                       L + an.chain[jn], 0});
      }
    }
  }
  for (std::size_t jm = 0; jm < am.modes.size(); ++jm) {
    for (std::size_t jn = 0; jn < an.modes.size(); ++jn) {
      auto [lo, hi] = both_sides_energies(L, am.chain[jm], an.chain[jn]);
      const std::vector<int> lattice{0, 0, am.modes[jm], an.modes[jn]};
      out.push_back({Family::both, lattice, svec(0, 0, jm, jn), lo, -1});
      out.push_back({Family::both, lattice, svec(0, 0, jm, jn), hi, +1});
    }
  }
  return out;
}

std::vector<SpectralLabel> enumerate_enhanced(int M, int N, int L) {
  if (L != 4) throw Unsupported("closed-form enhanced spectrum is available for L = 4 only");
  const Axis am = reflecting_axis(M);
  const Axis an = reflecting_axis(N);
  const std::array<std::pair<int, int>, 3> odd{{{1, -1}, {-1, 1}, {-1, -1}}};

  std::vector<SpectralLabel> out;
  out.reserve(2 * static_cast<std::size_t>(M) * N * L);
  for (auto [p1, p2] : odd) {
    for (std::size_t jm = 0; jm < am.modes.size(); ++jm) {
      for (std::size_t jn = 0; jn < an.modes.size(); ++jn) {
        const double e = L + am.chain[jm] + (p1 == -1 ? 2.0 : 0.0);
        out.push_back({Family::left, {p1, p2, 1, 1, am.modes[jm], an.modes[jn]},
                       {double(p1), double(p2), 1.0, 1.0, am.s_a[jm], an.s_a[jn]}, e, 0});
      }
    }
  }
  for (auto [p3, p4] : odd) {
    for (std::size_t jm = 0; jm < am.modes.size(); ++jm) {
      for (std::size_t jn = 0; jn < an.modes.size(); ++jn) {
        const double e = L + an.chain[jn] + (p3 == -1 ? 2.0 : 0.0);
        out.push_back({Family::right, {1, 1, p3, p4, am.modes[jm], an.modes[jn]},
                       {1.0, 1.0, double(p3), double(p4), am.s_a[jm], an.s_a[jn]}, e, 0});
      }
    }
  }
  for (std::size_t jm = 0; jm < am.modes.size(); ++jm) {
    for (std::size_t jn = 0; jn < an.modes.size(); ++jn) {
      auto [lo, hi] = both_sides_energies(L, am.chain[jm], an.chain[jn]);
      const std::vector<int> lattice{1, 1, 1, 1, am.modes[jm], an.modes[jn]};
      const std::vector<double> s{1.0, 1.0, 1.0, 1.0, am.s_a[jm], an.s_a[jn]};
      out.push_back({Family::both, lattice, s, lo, -1});
      out.push_back({Family::both, lattice, s, hi, +1});
    }
  }
  return out;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::left:
      return "left";
    case Family::right:
      return "right";
    case Family::both:
      return "both";
  }
  return "both";
}

std::string_view family_glyph(Family f) {
  switch (f) {
    case Family::left:
      return ">";
    case Family::right:
      return "<";
    case Family::both:
      return "x";
  }
  return "x";
}

std::vector<SpectralLabel> enumerate_labels(Variant variant, Boundary boundary, int M, int N, int L) {
  if (M < 1 || N < 1 || L < 1) throw InvalidDimension("enumerate_labels needs positive dimensions");
  if (variant == Variant::plain) return enumerate_plain(boundary, M, N, L);
  if (variant == Variant::enhanced && boundary == Boundary::reflecting) return enumerate_enhanced(M, N, L);
  throw Unsupported(fmt::format("no closed-form spectrum for the {} {} chimera graph",
                                to_string(variant), to_string(boundary)));
}

std::vector<SpectralLabel> enumerate_labels(const ChimeraGraph& g) {
  const Dims& d = g.dims();
  return enumerate_labels(g.variant(), g.boundary(), d.M, d.N, d.L);
}

SpectrumReport verify_spectrum(const std::vector<SpectralLabel>& labels, const EigenSystem& eig) {
  SpectrumReport r;
  r.expected_count = labels.size();
  r.actual_count = eig.size();
  r.count_mismatch = r.expected_count != r.actual_count;

  std::vector<double> expected;
  expected.reserve(labels.size());
  for (const auto& l : labels) expected.push_back(l.energy);
  std::sort(expected.begin(), expected.end());
  const std::size_t common = std::min(expected.size(), eig.size());
  for (std::size_t i = 0; i < common; ++i) {
    r.max_deviation = std::max(r.max_deviation,
                               std::abs(expected[i] - eig.values(static_cast<Eigen::Index>(i))));
  }
  return r;
}

LabeledBasis label_eigenstates(const EigenSystem& eig, const std::vector<SymmetryOperator>& ops,
                               const std::vector<SpectralLabel>& expected) {
  if (expected.size() != eig.size()) {
    throw Error("label_mismatch", fmt::format("{} enumerated labels for {} eigenstates",
                                              expected.size(), eig.size()));
  }
  const auto n = static_cast<Eigen::Index>(eig.size());
  std::vector<Eigen::SparseMatrix<double>> sparse;
  sparse.reserve(ops.size());
  for (const auto& op : ops) {
    if (op.matrix.rows() != n) throw DimensionMismatch(fmt::format("operator {} has the wrong size", op.name));
    sparse.push_back(op.matrix.sparseView());
  }

  LabeledBasis out;
  out.vectors.resize(n, n);
  out.energies.resize(n);
  Eigen::Index column = 0;

  for (const auto& g : eig.groups) {
    const double energy = eig.values.segment(static_cast<Eigen::Index>(g.begin),
                                             static_cast<Eigen::Index>(g.size())).mean();
    std::vector<Eigen::MatrixXd> blocks{
        eig.vectors.middleCols(static_cast<Eigen::Index>(g.begin), static_cast<Eigen::Index>(g.size()))};
    for (const auto& S : sparse) {
      std::vector<Eigen::MatrixXd> refined;
      for (auto& block : blocks) {
        if (block.cols() == 1) {
          refined.push_back(std::move(block));
          continue;
        }
        const Eigen::MatrixXd restricted = block.transpose() * (S * block);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (restricted + restricted.transpose()));
        const Eigen::VectorXd& w = solver.eigenvalues();
        Eigen::Index start = 0;
        for (Eigen::Index i = 1; i <= w.size(); ++i) {
          if (i == w.size() || w(i) - w(i - 1) > kOperatorClusterTol) {
            refined.push_back(block * solver.eigenvectors().middleCols(start, i - start));
            start = i;
          }
        }
      }
      blocks = std::move(refined);
    }
    for (auto& block : blocks) {
      if (block.cols() != 1) {
        throw DegeneracyNotLifted(fmt::format(
            "block of dimension {} at E = {:.12g} is not resolved by the symmetry set", block.cols(), energy));
      }
      out.vectors.col(column) = block.col(0);
      fix_sign(out.vectors.col(column));
      out.energies(column) = energy;
      ++column;
    }
  }

  // Match each measured (E, s) to an unused enumerated label.
  std::vector<std::size_t> order(expected.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return expected[a].energy < expected[b].energy; });
  std::vector<double> sorted_e;
  for (auto i : order) sorted_e.push_back(expected[i].energy);
  std::vector<bool> used(expected.size(), false);

  out.labels.reserve(expected.size());
  out.measured_s.reserve(expected.size());
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::VectorXd phi = out.vectors.col(c);
    std::vector<double> s;
    for (const auto& S : sparse) s.push_back(phi.dot(S * phi));
    const double e = out.energies(c);
    const double etol = kLabelEnergyRelTol * std::max(1.0, std::abs(e));

    auto lo = std::lower_bound(sorted_e.begin(), sorted_e.end(), e - etol);
    std::optional<std::size_t> hit;
    for (auto it = lo; it != sorted_e.end() && *it <= e + etol; ++it) {
      const std::size_t cand = order[static_cast<std::size_t>(it - sorted_e.begin())];
      if (used[cand] || expected[cand].s.size() != s.size()) continue;
      bool same = true;
      for (std::size_t k = 0; k < s.size() && same; ++k) same = std::abs(expected[cand].s[k] - s[k]) <= kLabelSTol;
      if (same) {
        hit = cand;
        break;
      }
    }
    if (!hit) {
      std::string sv;
      for (double x : s) sv += fmt::format(" {:.6f}", x);
      throw Error("label_mismatch",
                  fmt::format("no enumerated label for E = {:.10g}, s =[{} ]", e, sv));
    }
    used[*hit] = true;
    out.labels.push_back(expected[*hit]);
    out.measured_s.push_back(std::move(s));
  }
  return out;
}

SpectralDiff spectral_diff(const EigenSystem& a, const EigenSystem& b) {
  if (a.size() != b.size()) throw DimensionMismatch("spectral_diff needs spectra of equal dimension");
  SpectralDiff d;
  const double tol = std::max(a.tolerance, b.tolerance);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.values(static_cast<Eigen::Index>(i));
    const double y = b.values(static_cast<Eigen::Index>(i));
    if (std::abs(x - y) > tol) d.pairs.push_back({i, x, y});
  }

  d.groups_a = a.groups.size();
  const double* bv = b.values.data();
  const double* be = bv + b.values.size();
  for (const auto& g : a.groups) {
    const double lo_v = a.values(static_cast<Eigen::Index>(g.begin));
    const double hi_v = a.values(static_cast<Eigen::Index>(g.end - 1));
    const auto count = static_cast<std::size_t>(std::upper_bound(bv, be, hi_v + tol) -
                                                std::lower_bound(bv, be, lo_v - tol));
    if (count != g.size()) d.changed.push_back({0.5 * (lo_v + hi_v), g.size(), count});
  }

  for (std::size_t i = 0; i < b.size(); ++i) {
    const double ipr = inverse_participation_ratio(b.vectors.col(static_cast<Eigen::Index>(i)));
    if (ipr >= 0.5) d.localized.push_back({i, b.values(static_cast<Eigen::Index>(i)), ipr});
  }
  return d;
}

Eigen::VectorXd eigenstate_field(const EigenSystem& eig, std::size_t index) {
  if (index >= eig.size()) throw IndexError(fmt::format("eigenstate index {} out of range", index));
  return eig.vectors.col(static_cast<Eigen::Index>(index));
}

}  // namespace chimera
