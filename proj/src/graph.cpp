#include "chimera/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "chimera/error.hpp"

namespace chimera {

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "reflecting";
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::plain:
      return "plain";
    case Variant::enhanced:
      return "enhanced";
    case Variant::diminished:
      return "diminished";
  }
  return "plain";
}

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::intra:
      return "intra";
    case EdgeKind::inter:
      return "inter";
    case EdgeKind::enhance:
      return "enhance";
  }
  return "intra";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "reflecting") return Boundary::reflecting;
  throw Error("parse_error", fmt::format("unknown boundary '{}'", s));
}

Variant parse_variant(std::string_view s) {
  if (s == "plain") return Variant::plain;
  if (s == "enhanced") return Variant::enhanced;
  if (s == "diminished") return Variant::diminished;
  throw Error("parse_error", fmt::format("unknown variant '{}'", s));
}

std::size_t coords_to_index(const VertexCoord& v, const Dims& d) {
  if (v.m < 1 || v.m > d.M || v.n < 1 || v.n > d.N || v.mu < 1 || v.mu > 2 * d.L) {
    throw IndexError(fmt::format("coordinate ({},{},{}) outside chimera {}x{}x{}", v.m, v.n,
                                 v.mu, d.M, d.N, d.L));
  }
  const auto cell = static_cast<std::size_t>(v.m - 1) * d.N + static_cast<std::size_t>(v.n - 1);
  return cell * 2 * d.L + static_cast<std::size_t>(v.mu - 1);
}

VertexCoord index_to_coords(std::size_t i, const Dims& d) {
  if (i >= d.vertices()) {
    throw IndexError(fmt::format("vertex index {} outside [0, {})", i, d.vertices()));
  }
  const std::size_t side = 2 * static_cast<std::size_t>(d.L);
  const std::size_t cell = i / side;
  return VertexCoord{static_cast<int>(cell / d.N) + 1, static_cast<int>(cell % d.N) + 1,
                     static_cast<int>(i % side) + 1};
}

ChimeraGraph::ChimeraGraph(Dims dims, Boundary boundary, Variant variant,
                           std::vector<Edge> edges, std::vector<VertexCoord> broken)
    : dims_(dims), boundary_(boundary), variant_(variant), broken_(std::move(broken)) {
  if (dims_.M < 1 || dims_.N < 1 || dims_.L < 1) {
    throw InvalidDimension(
        fmt::format("chimera dimensions must be positive, got {}x{}x{}", dims_.M, dims_.N, dims_.L));
  }
  const std::size_t n = dims_.vertices();
  for (auto& e : edges) {
    if (e.u == e.v) throw Error("invalid_graph", fmt::format("self-loop at vertex {}", e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n) throw IndexError(fmt::format("edge endpoint {} out of range", e.v));
    if (!(e.weight > 0.0)) throw Error("invalid_graph", "edge weights must be positive");
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());

  broken_mask_.assign(n, false);
  for (const auto& c : broken_) broken_mask_[coords_to_index(c, dims_)] = true;
  std::erase_if(edges, [&](const Edge& e) { return broken_mask_[e.u] || broken_mask_[e.v]; });
  edges_ = std::move(edges);

  // Canonical broken list: sorted by index, no repeats.
  broken_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (broken_mask_[i]) broken_.push_back(index_to_coords(i, dims_));
  }
}

std::size_t ChimeraGraph::count(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.kind == kind; }));
}

std::vector<std::size_t> ChimeraGraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count(), 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

bool ChimeraGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                             [](const Edge& e, const std::pair<std::size_t, std::size_t>& key) {
                               return e.u != key.first ? e.u < key.first : e.v < key.second;
                             });
  return it != edges_.end() && it->u == a && it->v == b;
}

bool ChimeraGraph::is_broken(std::size_t i) const { return broken_mask_.at(i); }

ChimeraGraph build_chimera(int M, int N, int L, Boundary boundary) {
  if (M < 1 || N < 1 || L < 1) {
    throw InvalidDimension(
        fmt::format("chimera dimensions must be positive, got {}x{}x{}", M, N, L));
  }
  const Dims d{M, N, L};
  const bool wrap = boundary == Boundary::periodic;
  std::vector<Edge> edges;
  edges.reserve(d.cells() * (static_cast<std::size_t>(L) * L + 2 * L));

  auto id = [&](int m, int n, int mu) { return coords_to_index({m, n, mu}, d); };
  for (int m = 1; m <= M; ++m) {
    for (int n = 1; n <= N; ++n) {
      for (int a = 1; a <= L; ++a) {
        for (int b = L + 1; b <= 2 * L; ++b) edges.push_back({id(m, n, a), id(m, n, b), EdgeKind::intra});
      }
      // Each vertex links forward only; the wrap link from the last row/column closes the torus.
      for (int mu = 1; mu <= L; ++mu) {
        int next = m + 1;
        if (next > M) {
          if (!wrap || M == 1) continue;
          next = 1;
        }
        edges.push_back({id(m, n, mu), id(next, n, mu), EdgeKind::inter});
      }
      for (int mu = L + 1; mu <= 2 * L; ++mu) {
        int next = n + 1;
        if (next > N) {
          if (!wrap || N == 1) continue;
          next = 1;
        }
        edges.push_back({id(m, n, mu), id(m, next, mu), EdgeKind::inter});
      }
    }
  }
  return ChimeraGraph(d, boundary, Variant::plain, std::move(edges));
}

ChimeraGraph enhance(const ChimeraGraph& g) {
  if (g.variant() != Variant::plain) {
    throw Unsupported("enhance requires a plain chimera graph");
  }
  const Dims& d = g.dims();
  const int L = d.L;
  if (L < 2) throw Unsupported("enhancement is undefined for L = 1");

  // Intracell vertical pairs on one side, offsets relative to the side's first vertex.
  std::vector<std::pair<int, int>> pairs;
  if (L == 2) {
    pairs = {{1, 2}};
  } else if (L == 3) {
    pairs = {{1, 2}, {2, 3}};
  } else {
    pairs = {{1, 2}, {L - 1, L}};
  }

  std::vector<Edge> edges = g.edges();
  for (int m = 1; m <= d.M; ++m) {
    for (int n = 1; n <= d.N; ++n) {
      for (int offset : {0, L}) {
        for (auto [a, b] : pairs) {
          edges.push_back({coords_to_index({m, n, offset + a}, d),
                           coords_to_index({m, n, offset + b}, d), EdgeKind::enhance});
        }
      }
    }
  }
  return ChimeraGraph(d, g.boundary(), Variant::enhanced, std::move(edges), g.broken());
}

namespace {

bool touches_row_col(const std::vector<VertexCoord>& sample, int m, int n) {
  return std::any_of(sample.begin(), sample.end(),
                     [&](const VertexCoord& c) { return c.m == m || c.n == n; });
}

}  // namespace

ChimeraGraph diminish(const ChimeraGraph& g, double fraction, std::uint64_t seed,
                      RowColConstraint constraint) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw Error("invalid_fraction", fmt::format("fraction must lie in [0, 1), got {}", fraction));
  }
  const Dims& d = g.dims();
  if (constraint.kind != RowColConstraint::Kind::none &&
      (constraint.m < 1 || constraint.m > d.M || constraint.n < 1 || constraint.n > d.N)) {
    throw IndexError(fmt::format("constraint cell ({},{}) outside grid", constraint.m, constraint.n));
  }
  const std::size_t total = d.vertices();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total)));

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(total);
  std::vector<VertexCoord> sample;
  for (int attempt = 0; attempt < kMaxDiminishAttempts; ++attempt) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` slots are a uniform draw without replacement.
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, total - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    sample.clear();
    for (std::size_t i = 0; i < count; ++i) sample.push_back(index_to_coords(pool[i], d));

    bool ok = true;
    if (constraint.kind == RowColConstraint::Kind::avoid) {
      ok = !touches_row_col(sample, constraint.m, constraint.n);
    } else if (constraint.kind == RowColConstraint::Kind::require) {
      ok = touches_row_col(sample, constraint.m, constraint.n);
    }
    if (ok) {
      std::vector<VertexCoord> broken = g.broken();
      broken.insert(broken.end(), sample.begin(), sample.end());
      return ChimeraGraph(d, g.boundary(), count == 0 ? g.variant() : Variant::diminished,
                          g.edges(), std::move(broken));
    }
  }
  throw SamplingError(fmt::format("row/column constraint unsatisfied after {} draws",
                                  kMaxDiminishAttempts));
}

ChimeraGraph break_vertices(const ChimeraGraph& g, const std::vector<VertexCoord>& broken) {
  std::vector<VertexCoord> all = g.broken();
  all.insert(all.end(), broken.begin(), broken.end());
  const Variant v = all.empty() ? g.variant() : Variant::diminished;
  return ChimeraGraph(g.dims(), g.boundary(), v, g.edges(), std::move(all));
}

}  // namespace chimera
