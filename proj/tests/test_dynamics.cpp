#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chimera/dynamics.hpp"
#include "chimera/error.hpp"
#include "chimera/operators.hpp"
#include "chimera/spectral.hpp"
#include "oracles.hpp"

using namespace chimera;

namespace {

LabeledBasis label(const ChimeraGraph& g, const WalkHamiltonian& H) {
  return label_eigenstates(H.eigensystem(), symmetry_set(g), enumerate_labels(g));
}

Eigen::Index idx(const VertexCoord& c, const Dims& d) { return static_cast<Eigen::Index>(coords_to_index(c, d)); }

}  // namespace

TEST_CASE("two-vertex walk") {
  const auto H = hamiltonian(build_chimera(1, 1, 1, Boundary::reflecting));
  for (double t : {0.0, 0.3, 1.0, std::numbers::pi / 2, 7.5}) {
    const auto p = transition_probability(H, {1, 1, 1}, t).values;
    CHECK(p(1) == doctest::Approx(std::pow(std::sin(t), 2)).epsilon(1e-12));
  }
  const auto pbar = limiting_distribution(H, {1, 1, 1}).values;
  CHECK(pbar(0) == doctest::Approx(0.5));
  CHECK(pbar(1) == doctest::Approx(0.5));
}

TEST_CASE("evolution matches the Pade propagator and stays unitary") {
  const auto g = build_chimera(3, 2, 3, Boundary::periodic);
  const auto H = hamiltonian(g);
  const VertexCoord v0{2, 1, 5};
  for (double t : {0.0, 0.7, 3.0, 12.0}) {
    const auto s = evolve(H, v0, t);
    CHECK(std::abs(s.amplitudes.norm() - 1.0) <= 1e-10);
    CHECK((s.amplitudes - oracle::propagate(H.matrix(), idx(v0, g.dims()), t)).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto p0 = transition_probability(H, v0, 0.0).values;
  CHECK(p0(idx(v0, g.dims())) == doctest::Approx(1.0));
  CHECK(p0.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(evolve(H, v0, -1.0), Error);
}

TEST_CASE("mirror symmetry of a symmetric start") {
  // v0 sits on the sigma_6 mirror line of a 3-row periodic graph, so P is invariant.
  const auto g = build_chimera(3, 4, 2, Boundary::periodic);
  const auto H = hamiltonian(g);
  const auto img = sigma_image(g.dims(), 6);
  const VertexCoord v0{2, 2, 1};
  REQUIRE(img[coords_to_index(v0, g.dims())] == coords_to_index(v0, g.dims()));
  const auto p = transition_probability(H, v0, 4.0).values;
  for (std::size_t v = 0; v < img.size(); ++v) {
    CHECK(std::abs(p(static_cast<Eigen::Index>(v)) - p(static_cast<Eigen::Index>(img[v]))) < 1e-12);
  }
}

TEST_CASE("limiting distribution equals the time average") {
  const auto g = build_chimera(4, 4, 4, Boundary::reflecting);
  const auto H = hamiltonian(g);
  const VertexCoord v0{2, 3, 2};
  const auto pbar = limiting_distribution(H, v0).values;
  CHECK(pbar.sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pbar.minCoeff() >= 0.0);
  const auto avg = oracle::time_average(H.matrix(), idx(v0, g.dims()), 200.0, 2000);
  CHECK((pbar - avg).cwiseAbs().sum() < 2e-2);
}

TEST_CASE("rescaling the rates leaves limiting distributions unchanged") {
  const auto g = build_chimera(3, 3, 2, Boundary::periodic);
  const auto a = hamiltonian(g);
  const auto b = hamiltonian(g, 2.5, 2.5);
  CHECK((b.eigensystem().values - 2.5 * a.eigensystem().values).cwiseAbs().maxCoeff() < 1e-10);
  const VertexCoord v0{1, 2, 3};
  CHECK((limiting_distribution(a, v0).values - limiting_distribution(b, v0).values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("classical walk") {
  const auto g = build_chimera(3, 3, 2, Boundary::periodic);
  const auto H = hamiltonian(g);
  const VertexCoord v0{1, 1, 1};
  const auto p0 = classical_ctrw(H, v0, 0.0).values;
  CHECK(p0(0) == doctest::Approx(1.0));
  for (double t : {0.5, 2.0, 10.0}) {
    const auto p = classical_ctrw(H, v0, t).values;
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((p - oracle::heat(H.matrix(), 0, t)).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto late = classical_ctrw(H, v0, 500.0).values;
  CHECK((late.array() - 1.0 / 36).abs().maxCoeff() < 1e-10);
}

TEST_CASE("subspace weights") {
  const auto g = build_chimera(4, 4, 4, Boundary::periodic);
  const auto H = hamiltonian(g);
  const auto basis = label(g, H);
  for (double t : {0.0, 3.0, 12.0}) {
    const auto wl = subspace_weights(basis, evolve(H, {2, 3, 1}, t).amplitudes);
    CHECK(wl.left == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(wl.both == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(wl.right) < 1e-9);
    const auto wr = subspace_weights(basis, evolve(H, {2, 3, 7}, t).amplitudes);
    CHECK(wr.right == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(wr.both == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(wr.left) < 1e-9);
  }
  CHECK_THROWS_AS(subspace_weights(LabeledBasis{}, Eigen::VectorXcd::Zero(128)), LabelingUnavailable);
}

TEST_CASE("family projection") {
  const auto g = build_chimera(4, 4, 4, Boundary::periodic);
  const auto H = hamiltonian(g);
  const auto basis = label(g, H);
  const auto psi = evolve(H, {1, 1, 2}, 5.0).amplitudes;
  const auto left = project_family(basis, psi, Family::left);
  const auto both = project_family(basis, psi, Family::both);
  const auto right = project_family(basis, psi, Family::right);
  CHECK((left + both + right - psi).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(left.squaredNorm() == doctest::Approx(0.75));
  // The left family lives on left-side vertices only.
  for (Eigen::Index v = 0; v < left.size(); ++v) {
    if (index_to_coords(static_cast<std::size_t>(v), g.dims()).mu > 4) CHECK(std::abs(left(v)) < 1e-12);
  }
}

TEST_CASE("fourier transform") {
  const Dims d{4, 6, 2};
  SUBCASE("uniform cells map to zero momentum") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d.vertices()));
    for (int m = 1; m <= 4; ++m) {
      for (int n = 1; n <= 6; ++n) psi(idx({m, n, 1}, d)) = 1.0;
    }
    const auto grid = fourier2d(psi, d, Side::left);
    CHECK(grid(0, 0) == doctest::Approx(1.0));
    CHECK(grid.sum() == doctest::Approx(1.0));
  }
  SUBCASE("an impulse is flat") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d.vertices()));
    psi(idx({2, 5, 4}, d)) = 1.0;
    const auto grid = fourier2d(psi, d, Side::right);
    CHECK((grid.array() - 1.0 / 24).abs().maxCoeff() < 1e-14);
    CHECK(fourier2d(psi, d, Side::left).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("intracell labels are traced out") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d.vertices()));
    psi(idx({1, 1, 1}, d)) = 1.0;
    psi(idx({1, 1, 2}, d)) = -1.0;
    const auto grid = fourier2d(psi, d, Side::left);
    CHECK((grid.array() - 1.0 / 24).abs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(fourier2d(Eigen::VectorXcd::Zero(5), d, Side::left), DimensionMismatch);
}

TEST_CASE("k' flatness") {
  Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(4, 5);
  flat.row(1).setConstant(0.2);
  CHECK(kprime_flatness(flat) == 0.0);
  Eigen::MatrixXd bumpy = flat;
  bumpy(1, 0) = 0.4;
  bumpy(1, 1) = 0.0;
  // Row 1 is (0.4, 0, 0.2, 0.2, 0.2): mean 0.2, standard deviation sqrt(0.016).
  CHECK(kprime_flatness(bumpy) == doctest::Approx(std::sqrt(0.016) / 0.2));
  // Rows below half of the dominant marginal are ignored.
  bumpy(3, 0) = 0.1;
  CHECK(kprime_flatness(bumpy) == doctest::Approx(std::sqrt(0.016) / 0.2));
}
