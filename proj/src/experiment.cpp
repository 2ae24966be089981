#include "chimera/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "chimera/adiabatic.hpp"
#include "chimera/dynamics.hpp"
#include "chimera/error.hpp"
#include "chimera/io.hpp"
#include "chimera/operators.hpp"
#include "chimera/spectral.hpp"

namespace chimera {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config parsing

namespace {

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

template <typename T>
T field(const json& obj, const std::string& key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(join_path(path, key), fmt::format("field '{}' has the wrong type", join_path(path, key)));
  }
}

VertexCoord parse_coord(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(path, "coordinate must be [m, n, mu]");
  try {
    return {v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>()};
  } catch (const json::exception&) {
    throw ConfigError(path, "coordinate entries must be integers");
  }
}

void check_coord(const VertexCoord& c, const Dims& d, const std::string& path) {
  if (c.m < 1 || c.m > d.M || c.n < 1 || c.n > d.N || c.mu < 1 || c.mu > 2 * d.L) {
    throw ConfigError(path, fmt::format("coordinate ({},{},{}) outside the {}x{}x{} chimera graph", c.m,
                                        c.n, c.mu, d.M, d.N, d.L));
  }
}

RowColConstraint::Kind parse_constraint_kind(const std::string& s, const std::string& path) {
  if (s == "none") return RowColConstraint::Kind::none;
  if (s == "avoid" || s == "avoid_row_col") return RowColConstraint::Kind::avoid;
  if (s == "require" || s == "require_row_col") return RowColConstraint::Kind::require;
  throw ConfigError(path, fmt::format("unknown constraint '{}'", s));
}

std::string_view constraint_name(RowColConstraint::Kind k) {
  switch (k) {
    case RowColConstraint::Kind::none:
      return "none";
    case RowColConstraint::Kind::avoid:
      return "avoid";
    case RowColConstraint::Kind::require:
      return "require";
  }
  return "none";
}

GraphSpec parse_graph(const json& g) {
  if (!g.is_object()) throw ConfigError("graph", "graph section must be an object");
  GraphSpec s;
  s.M = field<int>(g, "M", "graph", 0);
  s.N = field<int>(g, "N", "graph", 0);
  s.L = field<int>(g, "L", "graph", 0);
  for (auto [name, value] : {std::pair{"M", s.M}, {"N", s.N}, {"L", s.L}}) {
    if (value < 1) throw ConfigError(join_path("graph", name), "dimension must be a positive integer");
  }
  const Dims d{s.M, s.N, s.L};
  const auto boundary = field<std::string>(g, "boundary", "graph", "reflecting");
  if (boundary != "periodic" && boundary != "reflecting") {
    throw ConfigError("graph.boundary", fmt::format("unknown boundary '{}'", boundary));
  }
  s.boundary = parse_boundary(boundary);
  const auto variant = field<std::string>(g, "variant", "graph", "plain");
  if (variant != "plain" && variant != "enhanced") {
    throw ConfigError("graph.variant", "variant must be 'plain' or 'enhanced' (breakage is configured separately)");
  }
  s.variant = parse_variant(variant);
  if (g.contains("broken")) {
    const auto& list = g.at("broken");
    if (!list.is_array()) throw ConfigError("graph.broken", "broken must be a list of [m, n, mu]");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = fmt::format("graph.broken[{}]", i);
      s.broken.push_back(parse_coord(list[i], path));
      check_coord(s.broken.back(), d, path);
    }
  }
  s.fraction = field<double>(g, "fraction", "graph", 0.0);
  if (!(s.fraction >= 0.0 && s.fraction < 1.0)) throw ConfigError("graph.fraction", "fraction must lie in [0, 1)");
  if (g.contains("constraint")) {
    const auto& c = g.at("constraint");
    if (!c.is_object()) throw ConfigError("graph.constraint", "constraint must be an object");
    s.constraint.kind = parse_constraint_kind(field<std::string>(c, "kind", "graph.constraint", "none"),
                                              "graph.constraint.kind");
    s.constraint.m = field<int>(c, "m", "graph.constraint", 0);
    s.constraint.n = field<int>(c, "n", "graph.constraint", 0);
    if (s.constraint.kind != RowColConstraint::Kind::none) {
      if (s.constraint.m < 1 || s.constraint.m > s.M) throw ConfigError("graph.constraint.m", "row out of range");
      if (s.constraint.n < 1 || s.constraint.n > s.N) throw ConfigError("graph.constraint.n", "column out of range");
    }
  }
  return s;
}

std::vector<double> number_list(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  if (!v.is_array()) throw ConfigError(key, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(fmt::format("{}[{}]", key, i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"walk",        "classical", "limiting",
                                              "spectrum",    "labels",    "broken_diff",
                                              "fourier",     "adiabatic", "distance"};
  return names;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.experiment = field<std::string>(doc, "experiment", "", "");
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
    throw ConfigError("experiment", fmt::format("unknown experiment '{}'", cfg.experiment));
  }
  if (!doc.contains("graph")) throw ConfigError("graph", "missing graph section");
  cfg.graph = parse_graph(doc.at("graph"));
  const Dims d{cfg.graph.M, cfg.graph.N, cfg.graph.L};

  if (doc.contains("seed") && (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0)) {
    throw ConfigError("seed", "seed must be a non-negative integer");
  }
  cfg.seed = field<std::uint64_t>(doc, "seed", "", 0);
  if (doc.contains("seeds")) {
    const auto& s = doc.at("seeds");
    if (!s.is_array()) throw ConfigError("seeds", "seeds must be a list of integers");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_number_integer() || s[i].get<long long>() < 0) throw ConfigError(fmt::format("seeds[{}]", i), "seed must be a non-negative integer");
      cfg.seeds.push_back(s[i].get<std::uint64_t>());
    }
  }
  if (doc.contains("weights")) {
    const auto& w = doc.at("weights");
    cfg.j = field<double>(w, "j", "weights", 1.0);
    cfg.k = field<double>(w, "k", "weights", 1.0);
    if (!(cfg.j > 0.0)) throw ConfigError("weights.j", "rate must be positive");
    if (!(cfg.k > 0.0)) throw ConfigError("weights.k", "rate must be positive");
  }
  if (doc.contains("v0")) {
    cfg.v0 = parse_coord(doc.at("v0"), "v0");
    check_coord(cfg.v0, d, "v0");
  }
  cfg.t = field<double>(doc, "t", "", 0.0);
  if (cfg.t < 0.0) throw ConfigError("t", "time must be non-negative");
  cfg.t_grid = number_list(doc, "t_grid");
  for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
    if (cfg.t_grid[i] < 0.0) throw ConfigError(fmt::format("t_grid[{}]", i), "time must be non-negative");
  }
  cfg.side = field<std::string>(doc, "side", "", "left");
  if (cfg.side != "left" && cfg.side != "right") throw ConfigError("side", "side must be 'left' or 'right'");
  cfg.project = field<bool>(doc, "project", "", true);
  cfg.T_sweep = number_list(doc, "T_sweep");
  for (std::size_t i = 0; i < cfg.T_sweep.size(); ++i) {
    if (cfg.T_sweep[i] < 0.0) throw ConfigError(fmt::format("T_sweep[{}]", i), "total time must be non-negative");
  }
  cfg.y = field<double>(doc, "y", "", cfg.y);
  cfg.z = field<double>(doc, "z", "", cfg.z);
  cfg.steps = field<int>(doc, "steps", "", 0);
  if (cfg.steps < 0) throw ConfigError("steps", "step count must be non-negative");
  cfg.all_vertices = field<bool>(doc, "all_vertices", "", false);
  cfg.output = field<std::string>(doc, "output", "", "out");

  // Experiment-specific requirements.
  const auto& e = cfg.experiment;
  if ((e == "walk" || e == "classical" || e == "fourier") && !doc.contains("t") && cfg.t_grid.empty()) {
    throw ConfigError("t", fmt::format("experiment '{}' needs a time t", e));
  }
  if (e == "adiabatic" && cfg.T_sweep.empty()) throw ConfigError("T_sweep", "adiabatic needs a T sweep");
  if ((e == "broken_diff" || e == "distance") && cfg.graph.broken.empty() && cfg.graph.fraction == 0.0) {
    throw ConfigError("graph.fraction", fmt::format("experiment '{}' needs broken vertices or a fraction", e));
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json broken = json::array();
  for (const auto& c : cfg.graph.broken) broken.push_back({c.m, c.n, c.mu});
  return {{"experiment", cfg.experiment},
          {"graph",
           {{"M", cfg.graph.M},
            {"N", cfg.graph.N},
            {"L", cfg.graph.L},
            {"boundary", to_string(cfg.graph.boundary)},
            {"variant", to_string(cfg.graph.variant)},
            {"broken", broken},
            {"fraction", cfg.graph.fraction},
            {"constraint",
             {{"kind", constraint_name(cfg.graph.constraint.kind)},
              {"m", cfg.graph.constraint.m},
              {"n", cfg.graph.constraint.n}}}}},
          {"seed", cfg.seed},
          {"seeds", cfg.seeds},
          {"weights", {{"j", cfg.j}, {"k", cfg.k}}},
          {"v0", {cfg.v0.m, cfg.v0.n, cfg.v0.mu}},
          {"t", cfg.t},
          {"t_grid", cfg.t_grid},
          {"side", cfg.side},
          {"project", cfg.project},
          {"T_sweep", cfg.T_sweep},
          {"y", cfg.y},
          {"z", cfg.z},
          {"steps", cfg.steps},
          {"all_vertices", cfg.all_vertices},
          {"output", cfg.output}};
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

ChimeraGraph build_base(const GraphSpec& spec) {
  ChimeraGraph g = build_chimera(spec.M, spec.N, spec.L, spec.boundary);
  if (spec.variant == Variant::enhanced) g = enhance(g);
  return g;
}

ChimeraGraph build_graph(const GraphSpec& spec, std::uint64_t seed) {
  ChimeraGraph g = build_base(spec);
  if (!spec.broken.empty()) g = break_vertices(g, spec.broken);
  if (spec.fraction > 0.0) g = diminish(g, spec.fraction, seed, spec.constraint);
  return g;
}

double compare_fields(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(fmt::format("fields differ in length ({} vs {})", a.size(), b.size()));
  }
  return (a - b).cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

struct Writer {
  fs::path dir;
  std::vector<std::string>& outputs;

  void text(const std::string& name, const std::string& body) {
    io::write_text(dir / name, body);
    outputs.push_back(name);
  }
  void json_file(const std::string& name, const json& doc) { text(name, doc.dump(2) + "\n"); }
  void field(const std::string& name, const Eigen::VectorXd& values, const Dims& d) {
    std::ostringstream os;
    io::write_field_csv(os, values, d);
    text(name, os.str());
  }
  void heatmap(const std::string& name, const Eigen::VectorXd& values, const Dims& d) {
    json_file(name, io::heatmap_json(values, d));
  }
};

std::optional<LabeledBasis> try_label(const ChimeraGraph& g, const WalkHamiltonian& H) {
  try {
    const auto expected = enumerate_labels(g);
    const auto ops = symmetry_set(g);
    return label_eigenstates(H.eigensystem(), ops, expected);
  } catch (const Unsupported&) {
    return std::nullopt;
  }
}

json family_counts(const LabeledBasis& basis) {
  std::size_t left = 0, right = 0, both = 0;
  for (const auto& l : basis.labels) {
    (l.family == Family::left ? left : l.family == Family::right ? right : both)++;
  }
  return {{"left", left}, {"right", right}, {"both", both}};
}

json run_walk(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph g = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian H = hamiltonian(g, cfg.j, cfg.k);
  const Dims& d = g.dims();
  json summary;
  if (!cfg.t_grid.empty()) {
    std::string series = "t,index,m,n,mu,value\n";
    for (double t : cfg.t_grid) {
      const auto p = transition_probability(H, cfg.v0, t).values;
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        const auto c = index_to_coords(static_cast<std::size_t>(i), d);
        series += fmt::format("{},{},{},{},{},{}\n", t, i, c.m, c.n, c.mu, p(i));
      }
    }
    w.text("series.csv", series);
  }
  const double t = cfg.t_grid.empty() ? cfg.t : cfg.t_grid.back();
  const auto p = transition_probability(H, cfg.v0, t).values;
  w.field("field.csv", p, d);
  w.heatmap("heatmap.json", p, d);
  summary["t"] = t;
  summary["total_probability"] = p.sum();
  return summary;
}

json run_classical(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph g = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian H = hamiltonian(g, cfg.j, cfg.k);
  const auto p = classical_ctrw(H, cfg.v0, cfg.t).values;
  w.field("field.csv", p, g.dims());
  w.heatmap("heatmap.json", p, g.dims());
  return {{"t", cfg.t}, {"total_probability", p.sum()}};
}

json run_limiting(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph g = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian H = hamiltonian(g, cfg.j, cfg.k);
  const auto p = limiting_distribution(H, cfg.v0).values;
  w.field("field.csv", p, g.dims());
  w.heatmap("heatmap.json", p, g.dims());
  return {{"total_probability", p.sum()}, {"levels", H.eigensystem().groups.size()}};
}

json run_spectrum(const ExperimentConfig& cfg, Writer& w, bool require_labels) {
  const ChimeraGraph g = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian H = hamiltonian(g, cfg.j, cfg.k);
  const EigenSystem& eig = H.eigensystem();
  json summary{{"eigenvalues", eig.size()}, {"levels", eig.groups.size()}};

  std::optional<LabeledBasis> labels;
  if (cfg.j == 1.0 && cfg.k == 1.0) labels = try_label(g, H);
  if (require_labels && !labels) {
    throw Unsupported("eigenstate labeling needs unit rates and a plain or enhanced (L = 4) graph "
                      "without broken vertices");
  }
  std::ostringstream spec;
  io::write_spectrum_csv(spec, eig, labels ? &*labels : nullptr);
  w.text("spectrum.csv", spec.str());
  if (labels) {
    std::ostringstream lab;
    io::write_labels_csv(lab, *labels);
    w.text("labels.csv", lab.str());
    const auto report = verify_spectrum(enumerate_labels(g), eig);
    summary["labeled"] = labels->size();
    summary["families"] = family_counts(*labels);
    summary["verify"] = {{"expected", report.expected_count},
                         {"actual", report.actual_count},
                         {"count_mismatch", report.count_mismatch},
                         {"max_deviation", report.max_deviation}};
  }
  return summary;
}

json run_broken_diff(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph base = build_base(cfg.graph);
  const ChimeraGraph broken = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian ha = hamiltonian(base, cfg.j, cfg.k);
  const WalkHamiltonian hb = hamiltonian(broken, cfg.j, cfg.k);
  const SpectralDiff diff = spectral_diff(ha.eigensystem(), hb.eigensystem());

  json doc;
  json bl = json::array();
  for (const auto& c : broken.broken()) bl.push_back({c.m, c.n, c.mu});
  doc["broken"] = bl;
  doc["levels_a"] = diff.groups_a;
  json changed = json::array();
  for (const auto& c : diff.changed) {
    changed.push_back({{"value", c.value}, {"multiplicity_a", c.multiplicity_a}, {"multiplicity_b", c.multiplicity_b}});
  }
  doc["changed"] = changed;
  json localized = json::array();
  for (const auto& l : diff.localized) {
    const auto c = index_to_coords(static_cast<std::size_t>(
                                       [&] {
                                         Eigen::Index at = 0;
                                         hb.eigensystem().vectors.col(static_cast<Eigen::Index>(l.index)).cwiseAbs().maxCoeff(&at);
                                         return at;
                                       }()),
                                   broken.dims());
    localized.push_back({{"index", l.index}, {"energy", l.energy}, {"ipr", l.ipr}, {"peak", {c.m, c.n, c.mu}}});
  }
  doc["localized"] = localized;
  json pairs = json::array();
  for (const auto& p : diff.pairs) pairs.push_back({p.index, p.a, p.b});
  doc["pairs"] = pairs;
  w.json_file("diff.json", doc);

  std::ostringstream spec;
  io::write_spectrum_csv(spec, hb.eigensystem());
  w.text("spectrum.csv", spec.str());
  if (!diff.localized.empty()) {
    const auto field = eigenstate_field(hb.eigensystem(), diff.localized.front().index);
    w.field("field.csv", field, broken.dims());
    w.heatmap("heatmap.json", field, broken.dims());
  }
  return {{"changed_levels", diff.changed.size()},
          {"levels_a", diff.groups_a},
          {"moved_eigenvalues", diff.pairs.size()},
          {"localized_states", diff.localized.size()}};
}

json run_fourier(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph g = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian H = hamiltonian(g, cfg.j, cfg.k);
  const Side side = cfg.side == "left" ? Side::left : Side::right;
  Eigen::VectorXcd psi = evolve(H, cfg.v0, cfg.t).amplitudes;
  if (cfg.project) {
    const auto labels = try_label(g, H);
    if (!labels) throw Unsupported("family projection needs a labelable graph; set \"project\": false");
    psi = project_family(*labels, psi, side == Side::left ? Family::left : Family::right);
  }
  const Eigen::MatrixXd grid = fourier2d(psi, g.dims(), side);
  std::string csv = "k,kp,value\n";
  json rows = json::array();
  for (Eigen::Index k = 0; k < grid.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index kp = 0; kp < grid.cols(); ++kp) {
      csv += fmt::format("{},{},{}\n", k, kp, grid(k, kp));
      row.push_back(grid(k, kp));
    }
    rows.push_back(std::move(row));
  }
  w.text("fourier.csv", csv);
  w.json_file("fourier.json", {{"M", g.dims().M}, {"N", g.dims().N}, {"side", cfg.side}, {"grid", rows}});
  const Eigen::VectorXd prob = psi.cwiseAbs2();
  w.field("field.csv", prob, g.dims());
  return {{"t", cfg.t}, {"projected_norm", prob.sum()}, {"kprime_max_rsd", kprime_flatness(grid)}};
}

json run_adiabatic(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph g = build_graph(cfg.graph, cfg.seed);
  const WalkHamiltonian H = hamiltonian(g, cfg.j, cfg.k);
  const auto ops = symmetry_set(g);
  const Eigen::MatrixXd target = target_hamiltonian(H.matrix(), ops, cfg.y, cfg.z);
  const double spacing = min_level_spacing(target);
  const EigenSystem modes = eigensolve(target);
  const auto labels = try_label(g, H);
  std::optional<std::vector<std::size_t>> mode_label;
  if (labels) mode_label = match_modes(modes.vectors, *labels);

  const std::size_t v0 = coords_to_index(cfg.v0, g.dims());
  auto schedule_for = [&](double T) {
    Schedule s;
    s.T = T;
    s.steps = cfg.steps > 0 ? cfg.steps : std::max(1, static_cast<int>(std::ceil(20.0 * T)));
    s.y = cfg.y;
    s.z = cfg.z;
    s.onsite = default_onsite(g.vertex_count());
    return s;
  };
  auto describe = [&](std::size_t mode) -> json {
    if (!mode_label) return nullptr;
    const auto& l = labels->labels[(*mode_label)[mode]];
    return {{"family", to_string(l.family)}, {"lattice", l.lattice}, {"branch", l.branch}, {"energy_H", l.energy}};
  };

  std::string csv = "T,steps,max_fidelity,dominant_mode,mode_energy,fidelity_sum\n";
  json runs = json::array();
  for (double T : cfg.T_sweep) {
    const auto r = adiabatic_evolve(schedule_for(T), target, v0);
    csv += fmt::format("{},{},{},{},{},{}\n", T, r.steps, r.max_fidelity(), r.dominant_mode,
                       r.mode_energies(static_cast<Eigen::Index>(r.dominant_mode)), r.fidelities.sum());
    runs.push_back({{"T", T},
                    {"steps", r.steps},
                    {"max_fidelity", r.max_fidelity()},
                    {"dominant_mode", r.dominant_mode},
                    {"dominant_label", describe(r.dominant_mode)},
                    {"fidelities", std::vector<double>(r.fidelities.data(), r.fidelities.data() + r.fidelities.size())}});
  }
  w.text("adiabatic.csv", csv);

  json doc{{"min_level_spacing", spacing},
           {"mode_energies", std::vector<double>(modes.values.data(), modes.values.data() + modes.values.size())},
           {"runs", runs}};
  if (cfg.all_vertices) {
    const double T = *std::max_element(cfg.T_sweep.begin(), cfg.T_sweep.end());
    json corr = json::array();
    std::vector<std::size_t> dominant;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const auto r = adiabatic_evolve(schedule_for(T), target, v);
      const auto c = index_to_coords(v, g.dims());
      dominant.push_back(r.dominant_mode);
      corr.push_back({{"v", {c.m, c.n, c.mu}}, {"dominant_mode", r.dominant_mode}, {"max_fidelity", r.max_fidelity()}});
    }
    auto sorted = dominant;
    std::sort(sorted.begin(), sorted.end());
    doc["correspondence"] = {{"T", T},
                             {"distinct", std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()},
                             {"vertices", corr}};
  }
  w.json_file("adiabatic.json", doc);
  double best = 0.0;
  for (const auto& r : runs) best = std::max(best, r["max_fidelity"].get<double>());
  return {{"min_level_spacing", spacing}, {"best_max_fidelity", best}};
}

json run_distance(const ExperimentConfig& cfg, Writer& w) {
  const ChimeraGraph base = build_base(cfg.graph);
  const WalkHamiltonian hb = hamiltonian(base, cfg.j, cfg.k);
  const auto baseline = limiting_distribution(hb, cfg.v0).values;
  w.field("baseline_field.csv", baseline, base.dims());

  const std::vector<std::uint64_t> seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : cfg.seeds;
  std::string csv = "seed,distance,broken_count\n";
  json runs = json::array();
  std::vector<double> distances;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const ChimeraGraph g = build_graph(cfg.graph, seeds[i]);
    const auto field = limiting_distribution(hamiltonian(g, cfg.j, cfg.k), cfg.v0).values;
    const double dist = compare_fields(baseline, field);
    distances.push_back(dist);
    csv += fmt::format("{},{},{}\n", seeds[i], dist, g.broken().size());
    json bl = json::array();
    for (const auto& c : g.broken()) bl.push_back({c.m, c.n, c.mu});
    runs.push_back({{"seed", seeds[i]}, {"distance", dist}, {"broken", bl}});
    if (i == 0) {
      w.field("field.csv", field, g.dims());
      w.heatmap("heatmap.json", field, g.dims());
    }
  }
  w.text("distances.csv", csv);
  std::vector<double> sorted = distances;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  const double median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  w.json_file("distance.json", {{"v0", {cfg.v0.m, cfg.v0.n, cfg.v0.mu}}, {"median", median}, {"runs", runs}});
  return {{"median_distance", median}, {"trials", distances.size()}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.directory = cfg.output;
  std::error_code ec;
  fs::create_directories(result.directory, ec);
  if (ec) throw Error("io_error", fmt::format("cannot create {}: {}", cfg.output, ec.message()));
  Writer w{result.directory, result.outputs};

  const auto& e = cfg.experiment;
  if (e == "walk") {
    result.summary = run_walk(cfg, w);
  } else if (e == "classical") {
    result.summary = run_classical(cfg, w);
  } else if (e == "limiting") {
    result.summary = run_limiting(cfg, w);
  } else if (e == "spectrum") {
    result.summary = run_spectrum(cfg, w, false);
  } else if (e == "labels") {
    result.summary = run_spectrum(cfg, w, true);
  } else if (e == "broken_diff") {
    result.summary = run_broken_diff(cfg, w);
  } else if (e == "fourier") {
    result.summary = run_fourier(cfg, w);
  } else if (e == "adiabatic") {
    result.summary = run_adiabatic(cfg, w);
  } else if (e == "distance") {
    result.summary = run_distance(cfg, w);
  } else {
    throw ConfigError("experiment", fmt::format("unknown experiment '{}'", e));
  }

  const json config = config_to_json(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest{{"experiment", e},
                {"version", kVersion},
                {"config", config},
                {"config_hash", fnv1a_hex(config.dump())},
                {"outputs", result.outputs},
                {"summary", result.summary},
                {"wall_time_s", wall},
                {"timestamp", utc_timestamp()}};
  io::write_text(result.directory / "manifest.json", manifest.dump(2) + "\n");
  result.outputs.push_back("manifest.json");
  return result;
}

}  // namespace chimera
