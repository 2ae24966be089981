#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "chimera/graph.hpp"

namespace chimera {

inline constexpr const char* kVersion = "0.1.0";

struct GraphSpec {
  int M = 1;
  int N = 1;
  int L = 1;
  Boundary boundary = Boundary::reflecting;
  Variant variant = Variant::plain;  // plain or enhanced; breakage is described below
  std::vector<VertexCoord> broken;
  double fraction = 0.0;  // random breakage, applied with the run seed
  RowColConstraint constraint;
};

// Base graph of the spec (plain or enhanced, nothing broken).
ChimeraGraph build_base(const GraphSpec& spec);
// Base graph with explicit and random breakage applied.
ChimeraGraph build_graph(const GraphSpec& spec, std::uint64_t seed);

struct ExperimentConfig {
  std::string experiment;
  GraphSpec graph;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;  // distance: batch over seeds
  double j = 1.0;
  double k = 1.0;
  VertexCoord v0;
  double t = 0.0;
  std::vector<double> t_grid;
  std::string side = "left";
  bool project = true;  // fourier: restrict to the side's lattice family first
  std::vector<double> T_sweep;
  double y = 3.141592653589793;
  double z = 2.0;
  int steps = 0;  // adiabatic: initial step count, 0 picks ceil(20 T)
  bool all_vertices = false;
  std::string output = "out";
};

// Experiment names accepted by run().
const std::vector<std::string>& experiment_names();

// Parses a config document. Missing optional fields take the defaults above; errors
// raise ConfigError naming the offending field path.
ExperimentConfig parse_config(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

struct RunResult {
  std::filesystem::path directory;
  std::vector<std::string> outputs;
  nlohmann::json summary;
};

// Runs one experiment and writes its artifacts plus manifest.json into cfg.output.
// Outputs other than the manifest's timestamp and wall time are deterministic.
RunResult run(const ExperimentConfig& cfg);

// 1-norm distance sum_v |a_v - b_v|. Throws DimensionMismatch on length mismatch.
double compare_fields(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace chimera
