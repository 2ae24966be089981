#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "chimera/eigensystem.hpp"
#include "chimera/graph.hpp"
#include "chimera/operators.hpp"

namespace chimera {

// Unit-lattice families: left-supported, right-supported, both sides.
enum class Family { left, right, both };

std::string_view to_string(Family f);
// Glyphs used in exported tables: ">" "<" "x".
std::string_view family_glyph(Family f);

struct SpectralLabel {
  Family family = Family::both;
  // (iota, iota', j, j') for plain graphs; (pi1, pi2, pi3, pi4, j, j') for enhanced.
  std::vector<int> lattice;
  // Joint eigenvalues in the order of symmetry_set().
  std::vector<double> s;
  double energy = 0.0;
  // Both-sides states come in pairs sharing a lattice point: -1 lower, +1 upper.
  int branch = 0;
};

// Closed-form spectrum. Supported: plain periodic, plain reflecting, enhanced
// reflecting with L = 4. Throws Unsupported otherwise.
//
// Energies are written in terms of the intercell chain eigenvalue c of each axis:
//   left family  E = L + c_m (+2 for enhanced states odd under Pi_1)
//   right family E = L + c_n (+2 for enhanced states odd under Pi_3)
//   both sides   E = L + (c_m + c_n)/2 -/+ sqrt(L^2 + (c_m - c_n)^2 / 4)
// Reflecting: c = s' = 2 + 2cos(pi j / M), j in [1, M].
// Periodic:   c = 2 - 2cos(2 pi j / M), j in [0, M), which turns the both-sides
//             branch into (L+2) - (s5+s7) -/+ sqrt(L^2 + (s5-s7)^2). A two-cell ring
//             is a single edge (duplicate links collapse), so there c = 1 - cos(pi j).
std::vector<SpectralLabel> enumerate_labels(Variant variant, Boundary boundary, int M, int N, int L);
std::vector<SpectralLabel> enumerate_labels(const ChimeraGraph& g);

struct SpectrumReport {
  std::size_t expected_count = 0;
  std::size_t actual_count = 0;
  bool count_mismatch = false;
  double max_deviation = 0.0;  // after sorted (optimal) matching of the common prefix
};

SpectrumReport verify_spectrum(const std::vector<SpectralLabel>& labels, const EigenSystem& eig);

// Eigenbasis refined by joint diagonalization; column i carries labels[i].
struct LabeledBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd energies;
  std::vector<SpectralLabel> labels;
  std::vector<std::vector<double>> measured_s;  // Rayleigh quotients <phi|S_i|phi>

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
};

// Inside each degenerate group, diagonalizes each operator (in order) restricted to
// the current sub-blocks until every block is one-dimensional, then matches the
// measured (E, s) against the enumerated labels. Throws DegeneracyNotLifted when a
// block survives all operators and Error("label_mismatch") when a measured key has no
// enumerated partner.
LabeledBasis label_eigenstates(const EigenSystem& eig, const std::vector<SymmetryOperator>& ops,
                               const std::vector<SpectralLabel>& expected);

struct DegeneracyChange {
  double value = 0.0;
  std::size_t multiplicity_a = 0;
  std::size_t multiplicity_b = 0;
};

struct SpectralDiff {
  struct Pair {
    std::size_t index;
    double a;
    double b;
  };
  std::vector<Pair> pairs;                 // index-aligned, only entries that moved
  std::size_t groups_a = 0;
  std::vector<DegeneracyChange> changed;  // levels of A whose multiplicity differs in B
  struct Localized {
    std::size_t index;  // eigen index in B
    double energy;
    double ipr;
  };
  std::vector<Localized> localized;        // B eigenvectors with IPR >= 0.5

  bool empty() const { return pairs.empty() && changed.empty(); }
};

// Index-aligned comparison of two spectra of equal dimension. A level of A counts as
// changed when B does not hold the same number of eigenvalues within A's grouping
// tolerance of it.
SpectralDiff spectral_diff(const EigenSystem& a, const EigenSystem& b);

// Per-vertex components of eigenvector `index`.
Eigen::VectorXd eigenstate_field(const EigenSystem& eig, std::size_t index);

}  // namespace chimera
