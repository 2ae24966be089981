#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <Eigen/Dense>
#include "json.hpp"

#include "chimera/eigensystem.hpp"
#include "chimera/graph.hpp"
#include "chimera/spectral.hpp"

namespace chimera::io {

using nlohmann::json;

// Graph document:
// {"format": "chimera-graph/1", "M", "N", "L", "boundary", "variant",
//  "broken": [[m, n, mu], ...], "edges": [{"u", "v", "kind", "weight"}, ...]}
json graph_to_json(const ChimeraGraph& g);
ChimeraGraph graph_from_json(const json& doc);

// Dense matrix document: {"format": "chimera-matrix/1", "name", "rows", "cols",
// "data": [[row 0], [row 1], ...]}
json matrix_to_json(const std::string& name, const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& doc);

// Shortest round-trip decimal form of a double.
std::string format_number(double x);

// Header: index,m,n,mu,value
void write_field_csv(std::ostream& out, const Eigen::VectorXd& values, const Dims& dims);

// {"M", "N", "L", "values": [per vertex], "cells": {"left_sum", "left_max",
//  "right_sum", "right_max"}}; each cell table is M rows of N entries.
json heatmap_json(const Eigen::VectorXd& values, const Dims& dims);

// Header: index,eigenvalue,group,family,lattice,branch,s
// lattice and s are space-separated lists; family/lattice/branch/s are empty when no
// labeling is supplied.
void write_spectrum_csv(std::ostream& out, const EigenSystem& eig, const LabeledBasis* labels = nullptr);

// Header: index,energy,family,lattice,branch,s,s_measured
void write_labels_csv(std::ostream& out, const LabeledBasis& labels);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace chimera::io
