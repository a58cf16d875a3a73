#include "lepsim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "lepsim/cooling.hpp"
#include "lepsim/floquet.hpp"
#include "lepsim/liouville.hpp"
#include "lepsim/parallel.hpp"

namespace lepsim {

using nlohmann::json;
using nlohmann::ordered_json;

std::map<std::string, double> default_params(const std::string& model_kind) {
  if (model_kind == "three_level") return {{"gamma", 1.0}, {"omega", 1.0}};
  if (model_kind == "sideband") {
    SidebandParams d;
    return {{"nu", d.nu},
            {"delta_detuning", d.delta_detuning},
            {"omega_g", d.omega_g},
            {"eta", d.eta},
            {"gamma", d.gamma}};
  }
  if (model_kind == "eit") {
    EITParams d;
    return {{"gamma_e", d.gamma_e}, {"omega_r", d.omega_r},
            {"delta_r", d.delta_r}, {"omega_g", d.omega_g},
            {"delta_g", d.delta_g}, {"eta", d.eta},
            {"nu", d.nu}};
  }
  throw ModelError("unknown model kind '" + model_kind + "'");
}

namespace {

const std::set<std::string> kAxisNames3 = {"gamma", "omega", "drive_omega",
                                           "fraction"};
const std::set<std::string> kAxisNamesSb = {
    "nu",    "delta_detuning", "omega_g",        "eta",
    "gamma", "omega_over_gamma", "delta_over_nu"};
const std::set<std::string> kAxisNamesEit = {
    "gamma_e", "omega_r", "delta_r", "omega_g", "delta_g", "eta", "nu"};

const std::set<std::string> kOutputs3 = {"gap", "reference_gap", "spectrum",
                                         "floquet_gap", "mu"};
const std::set<std::string> kOutputsSb = {"gap", "subsystem_gap",
                                          "cooling_limit", "spectrum"};
const std::set<std::string> kOutputsEit = {"gap", "full_gap", "delta_g_star",
                                           "residual"};

const std::set<std::string>& axis_names_for(const std::string& kind) {
  if (kind == "three_level") return kAxisNames3;
  if (kind == "sideband") return kAxisNamesSb;
  if (kind == "eit") return kAxisNamesEit;
  throw ModelError("unknown model kind '" + kind + "'");
}

const std::set<std::string>& outputs_for(const std::string& kind) {
  if (kind == "three_level") return kOutputs3;
  if (kind == "sideband") return kOutputsSb;
  if (kind == "eit") return kOutputsEit;
  throw ModelError("unknown model kind '" + kind + "'");
}

double expect_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ModelError("config: " + where + " must be a number");
  return j.get<double>();
}

}  // namespace

SidebandParams sideband_from(const std::map<std::string, double>& p,
                             int n_cut) {
  SidebandParams out;
  out.nu = p.at("nu");
  out.delta_detuning = p.at("delta_detuning");
  out.omega_g = p.at("omega_g");
  out.eta = p.at("eta");
  out.gamma = p.at("gamma");
  out.n_cut = n_cut;
  return out;
}

EITParams eit_from(const std::map<std::string, double>& p) {
  EITParams out;
  out.gamma_e = p.at("gamma_e");
  out.omega_r = p.at("omega_r");
  out.delta_r = p.at("delta_r");
  out.omega_g = p.at("omega_g");
  out.delta_g = p.at("delta_g");
  out.eta = p.at("eta");
  out.nu = p.at("nu");
  return out;
}

std::vector<double> axis_values(const SweepAxis& axis) {
  if (axis.count < 1) throw ModelError("axis '" + axis.name + "': count < 1");
  std::vector<double> v(axis.count);
  if (axis.count == 1) {
    v[0] = axis.start;
    return v;
  }
  for (int k = 0; k < axis.count; ++k)
    v[k] = axis.start + k * (axis.stop - axis.start) / (axis.count - 1);
  return v;
}

void apply_json(const json& j, SweepConfig& cfg) {
  if (!j.is_object()) throw ModelError("config: top level must be an object");
  for (const auto& [key, val] : j.items()) {
    if (key == "model") {
      cfg.model_kind = val.get<std::string>();
      auto defaults = default_params(cfg.model_kind);
      for (const auto& [name, x] : defaults)
        if (!cfg.params.count(name)) cfg.params[name] = x;
    } else if (key == "params") {
      if (!val.is_object())
        throw ModelError("config: params must be an object");
      for (const auto& [name, x] : val.items())
        cfg.params[name] = expect_number(x, "params." + name);
    } else if (key == "n_cut") {
      cfg.n_cut = val.get<int>();
    } else if (key == "axes") {
      if (!val.is_array()) throw ModelError("config: axes must be an array");
      cfg.axes.clear();
      for (const auto& a : val) {
        SweepAxis axis;
        for (const auto& [ak, av] : a.items()) {
          if (ak == "name")
            axis.name = av.get<std::string>();
          else if (ak == "start")
            axis.start = expect_number(av, "axis start");
          else if (ak == "stop")
            axis.stop = expect_number(av, "axis stop");
          else if (ak == "count")
            axis.count = av.get<int>();
          else
            throw ModelError("config: unknown axis key '" + ak + "'");
        }
        if (axis.name.empty()) throw ModelError("config: axis without a name");
        cfg.axes.push_back(axis);
      }
    } else if (key == "outputs") {
      if (!val.is_array())
        throw ModelError("config: outputs must be an array");
      cfg.outputs = val.get<std::vector<std::string>>();
    } else if (key == "floquet") {
      cfg.floquet.enabled = true;
      for (const auto& [fk, fv] : val.items()) {
        if (fk == "drive_omega")
          cfg.floquet.drive_omega = expect_number(fv, "floquet.drive_omega");
        else if (fk == "fraction")
          cfg.floquet.fraction = expect_number(fv, "floquet.fraction");
        else
          throw ModelError("config: unknown floquet key '" + fk + "'");
      }
    } else if (key == "integration") {
      for (const auto& [ik, iv] : val.items()) {
        if (ik == "dt")
          cfg.dt = expect_number(iv, "integration.dt");
        else if (ik == "t_final")
          cfg.t_final = expect_number(iv, "integration.t_final");
        else
          throw ModelError("config: unknown integration key '" + ik + "'");
      }
    } else if (key == "nbar") {
      cfg.nbar = expect_number(val, "nbar");
    } else if (key == "cluster_tol") {
      cfg.cluster_tol = expect_number(val, "cluster_tol");
    } else if (key == "seed") {
      cfg.seed = val.get<uint64_t>();
    } else if (key == "workers") {
      cfg.workers = val.get<int>();
    } else {
      throw ModelError("config: unknown key '" + key + "'");
    }
  }
}

SweepConfig load_config(const std::string& path, SweepConfig base) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ModelError("config parse error in '" + path + "': " + e.what());
  }
  apply_json(j, base);
  return base;
}

ordered_json config_echo(const SweepConfig& cfg) {
  ordered_json echo;
  echo["model"] = cfg.model_kind;
  echo["params"] = cfg.params;
  echo["n_cut"] = cfg.n_cut;
  ordered_json axes = ordered_json::array();
  for (const auto& a : cfg.axes)
    axes.push_back({{"name", a.name},
                    {"start", a.start},
                    {"stop", a.stop},
                    {"count", a.count}});
  echo["axes"] = axes;
  echo["outputs"] = cfg.outputs;
  if (cfg.floquet.enabled)
    echo["floquet"] = {{"drive_omega", cfg.floquet.drive_omega},
                       {"fraction", cfg.floquet.fraction}};
  echo["integration"] = {{"dt", cfg.dt}, {"t_final", cfg.t_final}};
  echo["nbar"] = cfg.nbar;
  echo["cluster_tol"] = cfg.cluster_tol;
  echo["seed"] = cfg.seed;
  echo["workers"] = cfg.workers;
  return echo;
}

std::map<std::string, double> effective_params(const SweepConfig& cfg) {
  auto params = default_params(cfg.model_kind);
  for (const auto& [name, x] : cfg.params) {
    if (!params.count(name))
      throw ModelError("unknown parameter '" + name + "' for model '" +
                       cfg.model_kind + "'");
    params[name] = x;
  }
  return params;
}

ResultTable run_sweep(const SweepConfig& cfg) {
  const auto& valid_axes = axis_names_for(cfg.model_kind);
  const auto& valid_outputs = outputs_for(cfg.model_kind);

  auto params = effective_params(cfg);
  if (cfg.axes.size() > 2)
    throw ModelError("at most two sweep axes are supported");
  for (const auto& a : cfg.axes)
    if (!valid_axes.count(a.name))
      throw ModelError("axis '" + a.name + "' is not valid for model '" +
                       cfg.model_kind + "'");
  if (cfg.outputs.empty()) throw ModelError("no outputs requested");
  for (const auto& o : cfg.outputs) {
    if (!valid_outputs.count(o))
      throw ModelError("output '" + o + "' is not valid for model '" +
                       cfg.model_kind + "'");
    if ((o == "floquet_gap" || o == "mu") && !cfg.floquet.enabled)
      throw ModelError("output '" + o + "' needs a floquet block");
  }

  int dim = 0;
  if (cfg.model_kind == "three_level") dim = 3;
  if (cfg.model_kind == "sideband") dim = 2 * (cfg.n_cut + 1);

  ResultTable table;
  for (const auto& a : cfg.axes) table.columns.push_back(a.name);
  for (const auto& o : cfg.outputs) {
    if (o == "spectrum") {
      for (int k = 0; k < dim * dim; ++k) {
        table.columns.push_back("lambda" + std::to_string(k) + "_re");
        table.columns.push_back("lambda" + std::to_string(k) + "_im");
      }
    } else {
      table.columns.push_back(o);
    }
  }
  table.columns.push_back("error");
  table.meta = config_echo(cfg);

  std::vector<std::vector<double>> grids;
  for (const auto& a : cfg.axes) grids.push_back(axis_values(a));
  size_t npoints = 1;
  for (const auto& g : grids) npoints *= g.size();
  table.rows.assign(npoints, {});

  parallel_for(int(npoints), cfg.workers, [&](int idx) {
    std::vector<Cell>& row = table.rows[idx];
    row.reserve(table.columns.size());
    auto pt = params;
    double drive_omega = cfg.floquet.drive_omega;
    double fraction = cfg.floquet.fraction;
    size_t rest = idx;
    std::vector<double> coords(grids.size());
    for (int ax = int(grids.size()) - 1; ax >= 0; --ax) {
      coords[ax] = grids[ax][rest % grids[ax].size()];
      rest /= grids[ax].size();
    }
    for (size_t ax = 0; ax < grids.size(); ++ax) {
      const std::string& name = cfg.axes[ax].name;
      row.push_back(Cell::number(coords[ax]));
      if (name == "drive_omega")
        drive_omega = coords[ax];
      else if (name == "fraction")
        fraction = coords[ax];
      else if (name == "omega_over_gamma")
        pt["omega_g"] = coords[ax] * pt.at("gamma") / pt.at("eta");
      else if (name == "delta_over_nu")
        pt["delta_detuning"] = coords[ax] * pt.at("nu");
      else
        pt[name] = coords[ax];
    }
    std::string error;
    for (const auto& o : cfg.outputs) {
      if (!error.empty()) {
        int width = (o == "spectrum") ? 2 * dim * dim : 1;
        for (int k = 0; k < width; ++k) row.push_back(Cell{});
        continue;
      }
      try {
        if (cfg.model_kind == "three_level") {
          double g = pt.at("gamma"), om = pt.at("omega");
          if (o == "gap") {
            row.push_back(Cell::number(gap_of_matrix(
                build_superoperator(three_level_model(g, om)).matrix)));
          } else if (o == "reference_gap") {
            row.push_back(Cell::number(three_level_reference(g, om).gap));
          } else if (o == "spectrum") {
            auto vals = eigenvalues_only(
                build_superoperator(three_level_model(g, om)).matrix);
            for (cxd z : vals) {
              row.push_back(Cell::number(z.real()));
              row.push_back(Cell::number(z.imag()));
            }
          } else {
            FloquetProtocol proto{drive_omega,
                                  fraction * 2.0 * M_PI / drive_omega};
            Monodromy p = monodromy(three_level_model(g, om), proto);
            row.push_back(Cell::number(o == "mu" ? mu_parameter(p)
                                                 : floquet_gap(p)));
          }
        } else if (cfg.model_kind == "sideband") {
          SidebandParams sp = sideband_from(pt, cfg.n_cut);
          if (o == "gap") {
            row.push_back(Cell::number(full_gap(sp)));
          } else if (o == "subsystem_gap") {
            row.push_back(Cell::number(subsystem_gap(sp)));
          } else if (o == "cooling_limit") {
            row.push_back(Cell::number(cooling_limit(sp)));
          } else {
            auto vals = eigenvalues_only(
                build_superoperator(build_sideband_model(sp)).matrix);
            for (cxd z : vals) {
              row.push_back(Cell::number(z.real()));
              row.push_back(Cell::number(z.imag()));
            }
          }
        } else {
          EITParams ep = eit_from(pt);
          if (o == "gap") {
            row.push_back(Cell::number(subsystem_gap(eit_reduce(ep))));
          } else if (o == "full_gap") {
            row.push_back(Cell::number(full_gap(eit_reduce(ep))));
          } else if (o == "delta_g_star") {
            row.push_back(Cell::number(eit_optimal_detuning(ep)));
          } else {
            SidebandParams red = eit_reduce(ep);
            double resid = std::abs(red.delta_detuning +
                                    2 * ac_stark_shift(red) - ep.nu);
            row.push_back(Cell::number(resid));
          }
        }
      } catch (const std::exception& e) {
        error = e.what();
        int width = (o == "spectrum") ? 2 * dim * dim : 1;
        for (int k = 0; k < width; ++k) row.push_back(Cell{});
      }
    }
    row.push_back(error.empty() ? Cell{} : Cell::str(error));
  });
  return table;
}

std::string format_numeric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      switch (row[c].kind) {
        case Cell::Number: out += format_numeric(row[c].num); break;
        case Cell::Text: out += csv_quote(row[c].text); break;
        case Cell::Empty: break;
      }
    }
    out += '\n';
  }
  return out;
}

std::string to_json_text(const ResultTable& table) {
  ordered_json doc;
  doc["meta"] = table.meta;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    for (size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      switch (row[c].kind) {
        case Cell::Number: r[table.columns[c]] = row[c].num; break;
        case Cell::Text: r[table.columns[c]] = row[c].text; break;
        case Cell::Empty: r[table.columns[c]] = nullptr; break;
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit_table(const ResultTable& table, const std::string& format,
                const std::string& path) {
  std::string text;
  if (format == "csv")
    text = to_csv(table);
  else if (format == "json")
    text = to_json_text(table);
  else
    throw ModelError("unknown output format '" + format + "'");
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write output file '" + path + "'");
  out << text;
}

}  // namespace lepsim
