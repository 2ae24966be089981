#include "chimera/operators.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include <fmt/format.h>

#include "chimera/error.hpp"
#include "chimera/kernels.hpp"

namespace chimera {

struct WalkHamiltonian::Cache {
  std::once_flag once;
  std::optional<EigenSystem> eig;
};

WalkHamiltonian::WalkHamiltonian(Eigen::MatrixXd matrix, Dims dims, double j, double k)
    : matrix_(std::move(matrix)), dims_(dims), j_(j), k_(k), cache_(std::make_shared<Cache>()) {
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != dims_.vertices()) {
    throw DimensionMismatch("Hamiltonian size does not match the chimera dimensions");
  }
}

const EigenSystem& WalkHamiltonian::eigensystem() const {
  std::call_once(cache_->once, [this] { cache_->eig = eigensolve(matrix_); });
  return *cache_->eig;
}

WalkHamiltonian hamiltonian(const ChimeraGraph& g, double j, double k) {
  if (!(j > 0.0) || !(k > 0.0)) throw Error("invalid_rate", "transition rates j and k must be positive");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const double rate = (e.kind == EdgeKind::inter ? k : j) * e.weight;
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    H(u, v) -= rate;
    H(v, u) -= rate;
    H(u, u) += rate;
    H(v, v) += rate;
  }
  return WalkHamiltonian(std::move(H), g.dims(), j, k);
}

Eigen::MatrixXd SymmetryOperator::permutation_matrix() const {
  if (!image) throw InvalidSymmetry(fmt::format("{} is not a permutation operator", name));
  const auto n = static_cast<Eigen::Index>(image->size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) P(static_cast<Eigen::Index>((*image)[static_cast<std::size_t>(v)]), v) = 1.0;
  return P;
}

std::vector<std::size_t> sigma_image(const Dims& d, int which) {
  if (which < 1 || which > 8) throw InvalidSymmetry(fmt::format("no permutation sigma_{}", which));
  const int L = d.L;
  std::vector<std::size_t> image(d.vertices());
  for (std::size_t i = 0; i < image.size(); ++i) {
    VertexCoord c = index_to_coords(i, d);
    const bool left = c.mu <= L;
    switch (which) {
      case 1:
        if (left) c.mu = c.mu == L ? 1 : c.mu + 1;
        break;
      case 2:
        if (left) c.mu = L + 1 - c.mu;
        break;
      case 3:
        if (!left) c.mu = c.mu == 2 * L ? L + 1 : c.mu + 1;
        break;
      case 4:
        if (!left) c.mu = 3 * L + 1 - c.mu;
        break;
      case 5:
        c.m = c.m == d.M ? 1 : c.m + 1;
        break;
      case 6:
        c.m = d.M + 1 - c.m;
        break;
      case 7:
        c.n = c.n == d.N ? 1 : c.n + 1;
        break;
      case 8:
        c.n = d.N + 1 - c.n;
        break;
    }
    image[i] = coords_to_index(c, d);
  }
  return image;
}

bool is_automorphism(const ChimeraGraph& g, const std::vector<std::size_t>& image) {
  if (image.size() != g.vertex_count()) return false;
  std::vector<bool> seen(image.size(), false);
  for (auto v : image) {
    if (v >= image.size() || seen[v]) return false;
    seen[v] = true;
  }
  // A bijection that maps every edge to an edge preserves the (finite) edge set.
  for (const auto& e : g.edges()) {
    if (!g.has_edge(image[e.u], image[e.v])) return false;
  }
  return true;
}

namespace {

SymmetryOperator from_permutation(std::string name, std::vector<std::size_t> image, bool hermitize) {
  SymmetryOperator op;
  op.name = std::move(name);
  op.image = std::move(image);
  op.matrix = op.permutation_matrix();
  if (hermitize) {
    op.matrix = 0.5 * (op.matrix + op.matrix.transpose()).eval();
    op.source = SymmetrySource::hermitized_permutation;
  }
  return op;
}

}  // namespace

SymmetryOperator permutation_operator(const ChimeraGraph& g, int which) {
  if ((which == 5 || which == 7) && g.boundary() != Boundary::periodic) {
    throw InvalidSymmetry(fmt::format("sigma_{} requires a periodic boundary", which));
  }
  auto image = sigma_image(g.dims(), which);
  if (!is_automorphism(g, image)) {
    throw InvalidSymmetry(fmt::format("sigma_{} is not an automorphism of this {} {} graph", which,
                                      to_string(g.variant()), to_string(g.boundary())));
  }
  return from_permutation(fmt::format("sigma{}", which), std::move(image), which % 2 == 1);
}

Eigen::MatrixXd line_operator(int M) {
  if (M < 1) throw InvalidDimension("line operator needs at least one vertex");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i + 1 < M; ++i) {
    A(i, i + 1) = -1.0;
    A(i + 1, i) = -1.0;
    A(i, i) += 1.0;
    A(i + 1, i + 1) += 1.0;
  }
  return A;
}

std::pair<SymmetryOperator, SymmetryOperator> intercell_operators(const ChimeraGraph& g) {
  if (g.boundary() != Boundary::reflecting) {
    throw InvalidSymmetry("S'5/S'6 are defined for the reflecting boundary; use sigma_5..sigma_8");
  }
  if (g.variant() == Variant::diminished) {
    throw InvalidSymmetry("S'5/S'6 do not commute with a diminished graph");
  }
  const Dims& d = g.dims();
  const auto n = static_cast<Eigen::Index>(d.vertices());
  const Eigen::MatrixXd am = line_operator(d.M);
  const Eigen::MatrixXd an = line_operator(d.N);

  SymmetryOperator s5{"S5'", Eigen::MatrixXd::Zero(n, n), SymmetrySource::line_hamiltonian_tensor, {}};
  SymmetryOperator s6{"S6'", Eigen::MatrixXd::Zero(n, n), SymmetrySource::line_hamiltonian_tensor, {}};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = index_to_coords(static_cast<std::size_t>(i), d);
    for (int m2 = std::max(1, c.m - 1); m2 <= std::min(d.M, c.m + 1); ++m2) {
      s5.matrix(i, static_cast<Eigen::Index>(coords_to_index({m2, c.n, c.mu}, d))) = am(c.m - 1, m2 - 1);
    }
    for (int n2 = std::max(1, c.n - 1); n2 <= std::min(d.N, c.n + 1); ++n2) {
      s6.matrix(i, static_cast<Eigen::Index>(coords_to_index({c.m, n2, c.mu}, d))) = an(c.n - 1, n2 - 1);
    }
  }
  return {std::move(s5), std::move(s6)};
}

std::vector<SymmetryOperator> pi_operators(const ChimeraGraph& g) {
  if (g.variant() != Variant::enhanced) throw InvalidSymmetry("Pi operators need the enhanced variant");
  const Dims& d = g.dims();
  if (d.L != 4) throw Unsupported("Pi operators are defined for L = 4 only");

  // Intracell transposition pairs per operator (one-based mu).
  const std::array<std::array<std::pair<int, int>, 2>, 4> swaps{{
      {{{1, 2}, {3, 4}}},
      {{{1, 3}, {2, 4}}},
      {{{5, 6}, {7, 8}}},
      {{{5, 7}, {6, 8}}},
  }};
  std::vector<SymmetryOperator> ops;
  for (std::size_t p = 0; p < swaps.size(); ++p) {
    std::vector<std::size_t> image(d.vertices());
    for (std::size_t i = 0; i < image.size(); ++i) {
      VertexCoord c = index_to_coords(i, d);
      for (auto [a, b] : swaps[p]) {
        if (c.mu == a) {
          c.mu = b;
        } else if (c.mu == b) {
          c.mu = a;
        }
      }
      image[i] = coords_to_index(c, d);
    }
    if (!is_automorphism(g, image)) {
      throw InvalidSymmetry(fmt::format("Pi{} is not an automorphism of this graph", p + 1));
    }
    ops.push_back(from_permutation(fmt::format("Pi{}", p + 1), std::move(image), false));
  }
  return ops;
}

std::vector<SymmetryOperator> symmetry_set(const ChimeraGraph& g) {
  std::vector<SymmetryOperator> ops;
  if (g.variant() == Variant::plain && g.boundary() == Boundary::periodic) {
    for (int i = 1; i <= 8; ++i) ops.push_back(permutation_operator(g, i));
  } else if (g.variant() == Variant::plain && g.boundary() == Boundary::reflecting) {
    for (int i = 1; i <= 4; ++i) ops.push_back(permutation_operator(g, i));
    auto [s5, s6] = intercell_operators(g);
    ops.push_back(std::move(s5));
    ops.push_back(std::move(s6));
  } else if (g.variant() == Variant::enhanced && g.boundary() == Boundary::reflecting) {
    ops = pi_operators(g);
    auto [s5, s6] = intercell_operators(g);
    ops.push_back(std::move(s5));
    ops.push_back(std::move(s6));
  } else {
    throw Unsupported(fmt::format("no commuting-observable set for the {} {} chimera graph",
                                  to_string(g.variant()), to_string(g.boundary())));
  }
  return ops;
}

double commutator_maxnorm(const Eigen::MatrixXd& S, const Eigen::MatrixXd& H) {
  return kernels::commutator_maxnorm(S, H);
}

}  // namespace chimera
