#pragma once

#include <stdexcept>
#include <string>

namespace chimera {

// Every library failure derives from Error and carries a stable machine-readable
// code so the CLI can emit it as JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct InvalidDimension : Error {
  explicit InvalidDimension(const std::string& msg) : Error("invalid_dimension", msg) {}
};

struct IndexError : Error {
  explicit IndexError(const std::string& msg) : Error("index_error", msg) {}
};

struct InvalidSymmetry : Error {
  explicit InvalidSymmetry(const std::string& msg) : Error("invalid_symmetry", msg) {}
};

struct SamplingError : Error {
  explicit SamplingError(const std::string& msg) : Error("sampling_error", msg) {}
};

struct Unsupported : Error {
  explicit Unsupported(const std::string& msg) : Error("unsupported", msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error("dimension_mismatch", msg) {}
};

struct NotSymmetric : Error {
  explicit NotSymmetric(const std::string& msg) : Error("not_symmetric", msg) {}
};

struct DegeneracyNotLifted : Error {
  explicit DegeneracyNotLifted(const std::string& msg) : Error("degeneracy_not_lifted", msg) {}
};

struct LabelingUnavailable : Error {
  explicit LabelingUnavailable(const std::string& msg) : Error("labeling_unavailable", msg) {}
};

struct IntegrationAccuracy : Error {
  explicit IntegrationAccuracy(const std::string& msg) : Error("integration_accuracy", msg) {}
};

// Invalid experiment configuration; `field` is a dotted path such as "graph.M".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& msg)
      : Error("config_error", msg), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace chimera
