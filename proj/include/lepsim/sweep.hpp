#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lepsim/cooling.hpp"
#include "lepsim/types.hpp"

namespace lepsim {

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

struct FloquetBlock {
  bool enabled = false;
  double drive_omega = 1.0;
  double fraction = 0.4;
};

// Grid-sweep description: a model family, fixed parameters, up to two
// axes, and the outputs to evaluate per grid point.
struct SweepConfig {
  std::string model_kind = "three_level";  // three_level | sideband | eit
  std::map<std::string, double> params;
  int n_cut = 5;
  std::vector<SweepAxis> axes;
  std::vector<std::string> outputs;
  FloquetBlock floquet;
  double dt = 0.01;
  double t_final = 20.0;
  double nbar = 1.0;
  double cluster_tol = 1e-6;
  uint64_t seed = 12345;
  int workers = 0;
};

// Fill in model defaults, then overlay the JSON file. Unknown keys,
// malformed axes, or bad kinds raise ModelError.
SweepConfig load_config(const std::string& path, SweepConfig base);
void apply_json(const nlohmann::json& j, SweepConfig& cfg);
nlohmann::ordered_json config_echo(const SweepConfig& cfg);
std::map<std::string, double> default_params(const std::string& model_kind);

// Effective parameter set: model defaults overlaid by cfg.params, with
// unknown names rejected.
std::map<std::string, double> effective_params(const SweepConfig& cfg);

SidebandParams sideband_from(const std::map<std::string, double>& params,
                             int n_cut);
EITParams eit_from(const std::map<std::string, double>& params);

struct Cell {
  enum Kind { Empty, Number, Text } kind = Empty;
  double num = 0.0;
  std::string text;

  static Cell number(double v) { return Cell{Number, v, {}}; }
  static Cell str(std::string s) { return Cell{Text, 0.0, std::move(s)}; }
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta;
};

// Evaluate the configured outputs on the grid. Per-point failures land in
// the trailing error column; the sweep always completes.
ResultTable run_sweep(const SweepConfig& cfg);

std::vector<double> axis_values(const SweepAxis& axis);

std::string format_numeric(double v);
std::string to_csv(const ResultTable& table);
std::string to_json_text(const ResultTable& table);

// format is "csv" or "json"; path "-" writes to stdout.
void emit_table(const ResultTable& table, const std::string& format,
                const std::string& path);

}  // namespace lepsim
