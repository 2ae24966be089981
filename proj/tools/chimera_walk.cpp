#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "chimera/error.hpp"
#include "chimera/experiment.hpp"

using nlohmann::json;

namespace {

int fail(const std::string& code, const std::string& message, const std::string& field = {}) {
  json err{{"code", code}, {"message", message}};
  if (!field.empty()) err["field"] = field;
  std::cerr << json{{"error", err}}.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum walks on chimera graphs"};
  app.set_version_flag("--version", std::string(chimera::kVersion));

  std::string experiment;
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::string names;
  for (const auto& n : chimera::experiment_names()) names += (names.empty() ? "" : ", ") + n;

  app.add_option("experiment", experiment, "Experiment to run: " + names)->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--seed", seed, "RNG seed (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what());
  }

  json doc;
  {
    std::ifstream in(config_path);
    if (!in) return fail("io_error", "cannot read config file " + config_path);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      return fail("config_error", std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) return fail("config_error", "config must be a JSON object");
  if (doc.contains("experiment") && doc["experiment"] != experiment) {
    return fail("config_error", "config names experiment " + doc["experiment"].dump() + " but " +
                                    experiment + " was requested", "experiment");
  }
  doc["experiment"] = experiment;

  try {
    chimera::ExperimentConfig cfg = chimera::parse_config(doc);
    if (out_dir) cfg.output = *out_dir;
    if (seed) {
      cfg.seed = *seed;
      cfg.seeds.clear();
    }
    const auto result = chimera::run(cfg);
    std::cout << json{{"output", result.directory.string()}, {"files", result.outputs}, {"summary", result.summary}}
                     .dump(2)
              << '\n';
  } catch (const chimera::ConfigError& e) {
    return fail(e.code(), e.what(), e.field());
  } catch (const chimera::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail("internal_error", e.what());
  }
  return 0;
}
