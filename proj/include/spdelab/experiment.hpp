#pragma once
//==============================================================================
// experiment.hpp
// Configuration-driven experiment runner: parses the flat key-value config
// format (INI-style sections, '#' comments, strictly typed values), builds
// the equation, runs the coupled error estimator, and renders the report as
// CSV plus a JSON summary whose provenance block embeds the full config text.
//
// Identical config + seed reproduce the artifacts byte for byte at any
// worker count.
//==============================================================================

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdelab/equations.hpp"
#include "spdelab/error_lab.hpp"

namespace spde::experiment {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string raw_text;

  std::string equation;
  std::vector<int> levels;
  int n_ref = 0;
  int paths = 0;
  int steps = 256;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string functional = "gaussian_bell";
  int psi_slot = 0;
  double psi_scale = 1.0;
  std::string out_dir = "results";
  int workers = 0;
  std::uint64_t budget = 1ull << 32;
  bool allow_shallow_reference = false;

  equations::WaveParams wave;
  equations::DiagonalParams diagonal;
  equations::HjmmParams hjmm;
  equations::TorusParams torus;
  std::optional<errlab::NormInputs> constants;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

equations::EquationSpec build_equation(const ExperimentConfig& cfg);

struct RunArtifacts {
  errlab::ErrorReport report;
  std::string csv;
  std::string summary_json;
};

RunArtifacts run_experiment(const ExperimentConfig& cfg);

// Writes report.csv and summary.json under out_dir (created if missing).
void write_artifacts(const RunArtifacts& artifacts, const std::string& out_dir);

std::string render_csv(const errlab::ErrorReport& report);
std::string render_summary(const ExperimentConfig& cfg,
                           const errlab::ErrorReport& report);

// FNV-1a over the raw config text and the effective seed.
std::uint64_t config_hash(const ExperimentConfig& cfg);

const char* version();
const char* demo_config_text();

}  // namespace spde::experiment
