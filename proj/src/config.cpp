#include "pild/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>

namespace pild {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path + key, "missing required field");
  return j.at(key);
}

double as_number(const json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return std::numeric_limits<double>::infinity();
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& field) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail(field, "expected a real number or an [re, im] pair");
}

Matrix as_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const auto rows = j.size();
  Matrix m(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != rows)
      fail(field, "expected a square matrix (row " + std::to_string(i) + " has wrong length)");
    for (std::size_t k = 0; k < rows; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          as_complex(row[k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ModelConfig parse_model(const json& j) {
  ModelConfig mc;
  mc.kind = require(j, "kind", "model.").get<std::string>();
  if (mc.kind == "dimer") {
    mc.dimer.eps1 = as_number(j.value("eps1", json(5.0)), "model.eps1");
    mc.dimer.eps2 = as_number(j.value("eps2", json(5.0)), "model.eps2");
    mc.dimer.delta = as_number(j.value("delta", json(1.0)), "model.delta");
    mc.dimer.drive_amplitude =
        as_number(j.value("drive_amplitude", json(0.0)), "model.drive_amplitude");
    mc.dimer.drive_frequency =
        as_number(j.value("drive_frequency", json(0.0)), "model.drive_frequency");
  } else if (mc.kind == "spin_boson") {
    mc.sb_eps = as_number(j.value("eps", json(0.0)), "model.eps");
    mc.sb_delta = as_number(j.value("delta", json(1.0)), "model.delta");
  } else if (mc.kind == "explicit") {
    mc.explicit_hamiltonian = as_matrix(require(j, "hamiltonian", "model."), "model.hamiltonian");
  } else {
    fail("model.kind", "unknown model \"" + mc.kind + "\"");
  }
  return mc;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::direct_pild: return "direct_pild";
    case Method::ttm_pild: return "ttm_pild";
    case Method::lindblad_only: return "lindblad_only";
    case Method::brute_force: return "brute_force";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "direct_pild") return Method::direct_pild;
  if (s == "ttm_pild") return Method::ttm_pild;
  if (s == "lindblad_only") return Method::lindblad_only;
  if (s == "brute_force") return Method::brute_force;
  fail("method", "unknown method \"" + s + "\"");
}

SimConfig SimConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config: JSON parse error in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

SimConfig SimConfig::from_json(const json& j) {
  SimConfig cfg;
  cfg.schema_version = require(j, "schema_version", "").get<int>();
  if (cfg.schema_version != kConfigSchemaVersion)
    fail("schema_version", "unsupported version " + std::to_string(cfg.schema_version) +
                               " (expected " + std::to_string(kConfigSchemaVersion) + ")");

  cfg.model = parse_model(require(j, "model", ""));

  if (j.contains("baths")) {
    const auto& baths = j.at("baths");
    if (!baths.is_array()) fail("baths", "expected an array");
    for (std::size_t i = 0; i < baths.size(); ++i) {
      const std::string path = "baths[" + std::to_string(i) + "].";
      const auto& b = baths[i];
      BathConfig bc;
      bc.kind = b.value("kind", "ohmic_exponential");
      if (bc.kind != "ohmic_exponential")
        fail(path + "kind", "only \"ohmic_exponential\" is supported");
      bc.xi = as_number(require(b, "xi", path), path + "xi");
      bc.omega_c = as_number(require(b, "omega_c", path), path + "omega_c");
      bc.beta = as_number(require(b, "beta", path), path + "beta");
      if (bc.xi < 0.0) fail(path + "xi", "must be >= 0");
      if (!(bc.omega_c > 0.0)) fail(path + "omega_c", "must be > 0");
      if (!(bc.beta > 0.0)) fail(path + "beta", "must be > 0 (or \"inf\")");
      const auto& coupling = require(b, "coupling", path);
      if (coupling.is_string()) {
        bc.coupling_name = coupling.get<std::string>();
      } else if (coupling.is_array()) {
        bc.coupling_values.resize(static_cast<Eigen::Index>(coupling.size()));
        for (std::size_t k = 0; k < coupling.size(); ++k)
          bc.coupling_values(static_cast<Eigen::Index>(k)) =
              as_number(coupling[k], path + "coupling[" + std::to_string(k) + "]");
      } else {
        fail(path + "coupling", "expected a named coupling or an array of diagonal values");
      }
      cfg.baths.push_back(std::move(bc));
    }
  }

  if (j.contains("jumps")) {
    const auto& jumps = j.at("jumps");
    if (!jumps.is_array()) fail("jumps", "expected an array");
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      const std::string path = "jumps[" + std::to_string(i) + "].";
      const auto& spec = jumps[i];
      JumpConfig jc;
      if (spec.contains("name")) jc.name = spec.at("name").get<std::string>();
      if (spec.contains("matrix")) jc.matrix = as_matrix(spec.at("matrix"), path + "matrix");
      if (jc.name.empty() && jc.matrix.size() == 0)
        fail(path, "needs either \"name\" or \"matrix\"");
      jc.rate = as_number(spec.value("rate", json(1.0)), path + "rate");
      if (!std::isfinite(jc.rate)) fail(path + "rate", "must be finite");
      cfg.jumps.push_back(std::move(jc));
    }
  }

  const auto& grid = require(j, "grid", "");
  cfg.dt = as_number(require(grid, "dt", "grid."), "grid.dt");
  cfg.n_steps = require(grid, "n_steps", "grid.").get<int>();
  cfg.k_max = grid.value("k_max", 1);
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail("grid.dt", "must be > 0 and finite");
  if (cfg.n_steps < 1) fail("grid.n_steps", "must be >= 1");
  if (cfg.k_max < 1) fail("grid.k_max", "must be >= 1");
  if (cfg.k_max > cfg.n_steps) fail("grid.k_max", "must be <= grid.n_steps");

  cfg.method = method_from_string(require(j, "method", "").get<std::string>());

  const auto& init = require(j, "initial_state", "");
  if (init.is_string()) {
    cfg.initial_label = init.get<std::string>();
  } else if (init.is_number_integer()) {
    cfg.initial_label = std::to_string(init.get<int>());
  } else if (init.is_array()) {
    cfg.initial_matrix = as_matrix(init, "initial_state");
  } else {
    fail("initial_state", "expected a basis label, an index, or a matrix");
  }

  const auto& outputs = require(j, "outputs", "");
  cfg.output_file = require(outputs, "file", "outputs.").get<std::string>();
  if (cfg.output_file.empty()) fail("outputs.file", "must be non-empty");
  if (outputs.contains("observables")) {
    for (const auto& name : outputs.at("observables"))
      cfg.observables.push_back(name.get<std::string>());
  }
  cfg.kmax_sensitivity = outputs.value("kmax_sensitivity", false);

  if (j.contains("tolerances")) {
    const auto& tol = j.at("tolerances");
    cfg.ode_tolerance = as_number(tol.value("ode", json(1e-10)), "tolerances.ode");
    cfg.quad_tolerance = as_number(tol.value("quadrature", json(1e-12)), "tolerances.quadrature");
  }
  if (!(cfg.ode_tolerance > 0.0) || cfg.ode_tolerance > 1e-2)
    fail("tolerances.ode", "must lie in (0, 1e-2]");
  if (!(cfg.quad_tolerance > 0.0) || cfg.quad_tolerance > 1e-6)
    fail("tolerances.quadrature", "must lie in (0, 1e-6]");

  if (j.contains("memory_budget_bytes"))
    cfg.memory_budget = j.at("memory_budget_bytes").get<std::uint64_t>();
  if (j.contains("max_brute_force_paths"))
    cfg.max_brute_force_paths = j.at("max_brute_force_paths").get<std::uint64_t>();

  if (j.contains("ttm")) {
    const auto& ttm = j.at("ttm");
    cfg.ttm.l_mem = ttm.value("l_mem", 0);
    if (cfg.ttm.l_mem < 0) fail("ttm.l_mem", "must be >= 0 (0 = use n_steps)");
    cfg.ttm.tail_threshold = as_number(ttm.value("tail_threshold", json(1e-8)),
                                       "ttm.tail_threshold");
    cfg.ttm.tensor_file = ttm.value("tensor_file", "");
  }
  return cfg;
}

json SimConfig::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  json model_j;
  model_j["kind"] = model.kind;
  if (model.kind == "dimer") {
    model_j["eps1"] = model.dimer.eps1;
    model_j["eps2"] = model.dimer.eps2;
    model_j["delta"] = model.dimer.delta;
    model_j["drive_amplitude"] = model.dimer.drive_amplitude;
    model_j["drive_frequency"] = model.dimer.drive_frequency;
  } else if (model.kind == "spin_boson") {
    model_j["eps"] = model.sb_eps;
    model_j["delta"] = model.sb_delta;
  } else {
    model_j["hamiltonian"] = matrix_to_json(model.explicit_hamiltonian);
  }
  j["model"] = std::move(model_j);

  j["baths"] = json::array();
  for (const auto& b : baths) {
    json bj;
    bj["kind"] = b.kind;
    bj["xi"] = b.xi;
    bj["omega_c"] = b.omega_c;
    if (std::isinf(b.beta))
      bj["beta"] = "inf";
    else
      bj["beta"] = b.beta;
    if (!b.coupling_name.empty()) {
      bj["coupling"] = b.coupling_name;
    } else {
      json vals = json::array();
      for (Eigen::Index i = 0; i < b.coupling_values.size(); ++i)
        vals.push_back(b.coupling_values(i));
      bj["coupling"] = std::move(vals);
    }
    j["baths"].push_back(std::move(bj));
  }

  j["jumps"] = json::array();
  for (const auto& jc : jumps) {
    json jj;
    if (!jc.name.empty()) jj["name"] = jc.name;
    if (jc.matrix.size() != 0) jj["matrix"] = matrix_to_json(jc.matrix);
    jj["rate"] = jc.rate;
    j["jumps"].push_back(std::move(jj));
  }

  j["grid"] = {{"dt", dt}, {"n_steps", n_steps}, {"k_max", k_max}};
  j["method"] = to_string(method);
  if (!initial_label.empty())
    j["initial_state"] = initial_label;
  else
    j["initial_state"] = matrix_to_json(initial_matrix);
  j["outputs"] = {{"file", output_file},
                  {"observables", observables},
                  {"kmax_sensitivity", kmax_sensitivity}};
  j["tolerances"] = {{"ode", ode_tolerance}, {"quadrature", quad_tolerance}};
  j["memory_budget_bytes"] = memory_budget;
  j["max_brute_force_paths"] = max_brute_force_paths;
  j["ttm"] = {{"l_mem", ttm.l_mem},
              {"tail_threshold", ttm.tail_threshold},
              {"tensor_file", ttm.tensor_file}};
  return j;
}

namespace {

RealVector named_coupling(const std::string& name, const std::string& field,
                          const ModelConfig& model) {
  if (model.kind == "dimer") {
    const DimerModel dimer = build_dimer(model.dimer);
    if (name == "monomer1") return dimer.coupling_monomer1;
    if (name == "monomer2") return dimer.coupling_monomer2;
    fail(field, "unknown dimer coupling \"" + name + "\" (monomer1|monomer2)");
  }
  if (model.kind == "spin_boson") {
    if (name == "sigma_z") {
      RealVector v(2);
      v << 1, -1;
      return v;
    }
    fail(field, "unknown spin_boson coupling \"" + name + "\" (sigma_z)");
  }
  fail(field, "named couplings are only defined for named models");
}

Matrix named_jump(const std::string& name, const std::string& field, const ModelConfig& model) {
  if (model.kind == "dimer") {
    const DimerModel dimer = build_dimer(model.dimer);
    if (name == "pump_left") return dimer.pump_left;
    if (name == "drain_right") return dimer.drain_right;
    fail(field, "unknown dimer jump \"" + name + "\" (pump_left|drain_right)");
  }
  fail(field, "named jumps are only defined for the dimer model");
}

DensityMatrix initial_state(const SimConfig& cfg, int dim) {
  if (cfg.initial_matrix.size() != 0) {
    if (cfg.initial_matrix.rows() != dim)
      fail("initial_state", "matrix dimension does not match the model");
    try {
      return DensityMatrix::from_matrix(cfg.initial_matrix);
    } catch (const ValidationError& e) {
      fail("initial_state", e.what());
    }
  }
  const std::string& label = cfg.initial_label;
  if (dim == 4) {
    if (label == "gg") return DensityMatrix::basis_state(4, 0);
    if (label == "ge") return DensityMatrix::basis_state(4, 1);
    if (label == "eg") return DensityMatrix::basis_state(4, 2);
    if (label == "ee") return DensityMatrix::basis_state(4, 3);
  }
  try {
    const int idx = std::stoi(label);
    if (idx >= 0 && idx < dim) return DensityMatrix::basis_state(dim, idx);
  } catch (...) {
  }
  fail("initial_state", "unknown basis label \"" + label + "\" for dimension " +
                            std::to_string(dim));
}

}  // namespace

ResolvedSystem resolve_system(const SimConfig& cfg) {
  SystemHamiltonian hamiltonian = [&]() -> SystemHamiltonian {
    if (cfg.model.kind == "dimer") return build_dimer(cfg.model.dimer).hamiltonian;
    if (cfg.model.kind == "spin_boson")
      return build_spin_boson(cfg.model.sb_eps, cfg.model.sb_delta).hamiltonian;
    try {
      return SystemHamiltonian(cfg.model.explicit_hamiltonian);
    } catch (const ValidationError& e) {
      fail("model.hamiltonian", e.what());
    }
  }();
  const int dim = hamiltonian.dim();

  std::vector<JumpOperator> jumps;
  for (std::size_t i = 0; i < cfg.jumps.size(); ++i) {
    const std::string field = "jumps[" + std::to_string(i) + "]";
    const auto& jc = cfg.jumps[i];
    Matrix m = jc.name.empty() ? jc.matrix : named_jump(jc.name, field + ".name", cfg.model);
    if (m.rows() != dim || m.cols() != dim)
      fail(field + ".matrix", "dimension does not match the model");
    jumps.push_back(JumpOperator::constant(std::move(m), jc.rate));
  }

  std::vector<BathSpec> baths;
  for (std::size_t i = 0; i < cfg.baths.size(); ++i) {
    const std::string field = "baths[" + std::to_string(i) + "]";
    const auto& bc = cfg.baths[i];
    BathSpec spec;
    spec.spectral_density = SpectralDensity{bc.xi, bc.omega_c};
    spec.beta = bc.beta;
    spec.coupling = bc.coupling_name.empty()
                        ? bc.coupling_values
                        : named_coupling(bc.coupling_name, field + ".coupling", cfg.model);
    if (spec.coupling.size() != dim)
      fail(field + ".coupling", "dimension does not match the model");
    baths.push_back(std::move(spec));
  }

  if (cfg.method == Method::ttm_pild) {
    if (hamiltonian.time_dependent())
      fail("model.drive_amplitude", "time-dependent field unsupported by ttm_pild");
  }
  if (cfg.method == Method::lindblad_only && !baths.empty())
    fail("baths", "unsupported by lindblad_only (use direct_pild for baths)");

  check_observable_names(dim, cfg.observables);

  return ResolvedSystem{dim, std::move(hamiltonian), std::move(jumps), std::move(baths),
                        initial_state(cfg, dim)};
}

}  // namespace pild
