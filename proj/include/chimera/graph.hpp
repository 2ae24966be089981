#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chimera {

enum class Boundary { periodic, reflecting };
enum class Variant { plain, enhanced, diminished };
enum class EdgeKind { intra, inter, enhance };

std::string_view to_string(Boundary b);
std::string_view to_string(Variant v);
std::string_view to_string(EdgeKind k);
Boundary parse_boundary(std::string_view s);
Variant parse_variant(std::string_view s);

// Grid shape of a chimera graph: M x N unit cells of 2L vertices each.
struct Dims {
  int M = 1;
  int N = 1;
  int L = 1;

  std::size_t cells() const { return static_cast<std::size_t>(M) * N; }
  std::size_t vertices() const { return cells() * 2 * L; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

// One-based chimera coordinate. mu <= L is the left side of the cell, mu > L the right.
struct VertexCoord {
  int m = 1;
  int n = 1;
  int mu = 1;

  bool left(int L) const { return mu <= L; }
  friend bool operator==(const VertexCoord&, const VertexCoord&) = default;
};

// Linear index ((m-1)N + (n-1))2L + (mu-1). Throws IndexError when out of range.
std::size_t coords_to_index(const VertexCoord& v, const Dims& d);
VertexCoord index_to_coords(std::size_t i, const Dims& d);

struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  EdgeKind kind = EdgeKind::intra;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class ChimeraGraph {
 public:
  // Validates and canonicalizes: edges are sorted by (u, v), self-loops rejected,
  // duplicates collapsed to one edge of the first-seen kind and weight.
  ChimeraGraph(Dims dims, Boundary boundary, Variant variant, std::vector<Edge> edges,
               std::vector<VertexCoord> broken = {});

  const Dims& dims() const { return dims_; }
  Boundary boundary() const { return boundary_; }
  Variant variant() const { return variant_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexCoord>& broken() const { return broken_; }
  std::size_t vertex_count() const { return dims_.vertices(); }

  std::size_t count(EdgeKind kind) const;
  std::vector<std::size_t> degrees() const;
  bool has_edge(std::size_t a, std::size_t b) const;
  bool is_broken(std::size_t i) const;

 private:
  Dims dims_;
  Boundary boundary_;
  Variant variant_;
  std::vector<Edge> edges_;
  std::vector<VertexCoord> broken_;
  std::vector<bool> broken_mask_;
};

// Plain chimera graph with unit weights. Throws InvalidDimension if any of M, N, L < 1.
ChimeraGraph build_chimera(int M, int N, int L, Boundary boundary);

// Adds the vertical intracell edges of the enhanced variant. Requires a plain graph
// and L >= 2.
ChimeraGraph enhance(const ChimeraGraph& g);

struct RowColConstraint {
  enum class Kind { none, avoid, require };
  Kind kind = Kind::none;
  int m = 0;
  int n = 0;
};

inline constexpr int kMaxDiminishAttempts = 10000;

// Isolates floor(fraction * 2MNL) vertices drawn uniformly without replacement.
// Constrained draws reject and redraw the whole set, at most kMaxDiminishAttempts times.
ChimeraGraph diminish(const ChimeraGraph& g, double fraction, std::uint64_t seed,
                      RowColConstraint constraint = {});

// Isolates exactly the listed vertices (incident edges removed, vertices kept).
ChimeraGraph break_vertices(const ChimeraGraph& g, const std::vector<VertexCoord>& broken);

}  // namespace chimera
