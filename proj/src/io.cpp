#include "chimera/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "chimera/error.hpp"

namespace chimera::io {

namespace {

EdgeKind parse_kind(const std::string& s) {
  if (s == "intra") return EdgeKind::intra;
  if (s == "inter") return EdgeKind::inter;
  if (s == "enhance") return EdgeKind::enhance;
  throw Error("parse_error", fmt::format("unknown edge kind '{}'", s));
}

template <typename Seq, typename F>
std::string join(const Seq& seq, F&& fmt_one) {
  std::string out;
  bool first = true;
  for (const auto& x : seq) {
    if (!first) out += ' ';
    out += fmt_one(x);
    first = false;
  }
  return out;
}

}  // namespace

std::string format_number(double x) { return fmt::format("{}", x); }

json graph_to_json(const ChimeraGraph& g) {
  const Dims& d = g.dims();
  json broken = json::array();
  for (const auto& c : g.broken()) broken.push_back({c.m, c.n, c.mu});
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"kind", to_string(e.kind)}, {"weight", e.weight}});
  }
  return {{"format", "chimera-graph/1"},
          {"M", d.M},
          {"N", d.N},
          {"L", d.L},
          {"boundary", to_string(g.boundary())},
          {"variant", to_string(g.variant())},
          {"broken", std::move(broken)},
          {"edges", std::move(edges)}};
}

ChimeraGraph graph_from_json(const json& doc) {
  try {
    const Dims d{doc.at("M").get<int>(), doc.at("N").get<int>(), doc.at("L").get<int>()};
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({e.at("u").get<std::size_t>(), e.at("v").get<std::size_t>(),
                       parse_kind(e.at("kind").get<std::string>()), e.value("weight", 1.0)});
    }
    std::vector<VertexCoord> broken;
    for (const auto& b : doc.value("broken", json::array())) {
      broken.push_back({b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>()});
    }
    return ChimeraGraph(d, parse_boundary(doc.at("boundary").get<std::string>()),
                        parse_variant(doc.at("variant").get<std::string>()), std::move(edges),
                        std::move(broken));
  } catch (const json::exception& ex) {
    throw Error("parse_error", fmt::format("malformed graph document: {}", ex.what()));
  }
}

json matrix_to_json(const std::string& name, const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"format", "chimera-matrix/1"}, {"name", name}, {"rows", m.rows()}, {"cols", m.cols()},
          {"data", std::move(rows)}};
}

Eigen::MatrixXd matrix_from_json(const json& doc) {
  try {
    const auto rows = doc.at("rows").get<Eigen::Index>();
    const auto cols = doc.at("cols").get<Eigen::Index>();
    const auto& data = doc.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows) throw Error("parse_error", "row count mismatch");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& row = data.at(static_cast<std::size_t>(i));
      if (static_cast<Eigen::Index>(row.size()) != cols) throw Error("parse_error", "column count mismatch");
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
    return m;
  } catch (const json::exception& ex) {
    throw Error("parse_error", fmt::format("malformed matrix document: {}", ex.what()));
  }
}

void write_field_csv(std::ostream& out, const Eigen::VectorXd& values, const Dims& dims) {
  if (static_cast<std::size_t>(values.size()) != dims.vertices()) {
    throw DimensionMismatch("field length does not match the chimera dimensions");
  }
  out << "index,m,n,mu,value\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const auto c = index_to_coords(static_cast<std::size_t>(i), dims);
    out << fmt::format("{},{},{},{},{}\n", i, c.m, c.n, c.mu, values(i));
  }
}

json heatmap_json(const Eigen::VectorXd& values, const Dims& dims) {
  if (static_cast<std::size_t>(values.size()) != dims.vertices()) {
    throw DimensionMismatch("field length does not match the chimera dimensions");
  }
  auto table = [&](bool left, bool take_max) {
    json rows = json::array();
    for (int m = 1; m <= dims.M; ++m) {
      json row = json::array();
      for (int n = 1; n <= dims.N; ++n) {
        double acc = take_max ? -std::numeric_limits<double>::infinity() : 0.0;
        for (int k = 1; k <= dims.L; ++k) {
          const int mu = left ? k : dims.L + k;
          const double x = values(static_cast<Eigen::Index>(coords_to_index({m, n, mu}, dims)));
          acc = take_max ? std::max(acc, x) : acc + x;
        }
        row.push_back(acc);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  json per_vertex = json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) per_vertex.push_back(values(i));
  return {{"M", dims.M},
          {"N", dims.N},
          {"L", dims.L},
          {"values", std::move(per_vertex)},
          {"cells",
           {{"left_sum", table(true, false)},
            {"left_max", table(true, true)},
            {"right_sum", table(false, false)},
            {"right_max", table(false, true)}}}};
}

void write_spectrum_csv(std::ostream& out, const EigenSystem& eig, const LabeledBasis* labels) {
  if (labels && labels->size() != eig.size()) throw DimensionMismatch("labeling and spectrum differ in size");
  out << "index,eigenvalue,group,family,lattice,branch,s\n";
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const double e = eig.values(static_cast<Eigen::Index>(i));
    if (labels) {
      const auto& l = labels->labels[i];
      out << fmt::format("{},{},{},{},{},{},{}\n", i, e, eig.group_of(i), family_glyph(l.family),
                         join(l.lattice, [](int x) { return std::to_string(x); }), l.branch,
                         join(l.s, format_number));
    } else {
      out << fmt::format("{},{},{},,,,\n", i, e, eig.group_of(i));
    }
  }
}

void write_labels_csv(std::ostream& out, const LabeledBasis& labels) {
  out << "index,energy,family,lattice,branch,s,s_measured\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels.labels[i];
    out << fmt::format("{},{},{},{},{},{},{}\n", i, labels.energies(static_cast<Eigen::Index>(i)),
                       family_glyph(l.family), join(l.lattice, [](int x) { return std::to_string(x); }),
                       l.branch, join(l.s, format_number),
                       join(labels.measured_s[i], [](double x) { return fmt::format("{:.12f}", x); }));
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("io_error", fmt::format("cannot open {} for writing", path.string()));
  f << text;
  if (!f) throw Error("io_error", fmt::format("failed writing {}", path.string()));
}

}  // namespace chimera::io
