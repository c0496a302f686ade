#include "pild/run.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "pild/propagator.hpp"

namespace pild {

using nlohmann::json;

namespace {

std::vector<BathInfluence> build_influences(const ResolvedSystem& sys, const SimConfig& cfg,
                                            int k_max) {
  std::vector<BathInfluence> out;
  out.reserve(sys.baths.size());
  for (const auto& bath : sys.baths)
    out.push_back(BathInfluence{eta_table(bath, cfg.dt, k_max, cfg.n_steps, cfg.quad_tolerance),
                                bath.coupling});
  return out;
}

// 17 significant digits: parses back to the identical double.
std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, double dt,
               const std::vector<DensityMatrix>& states, const ObservableTable& table) {
  std::ofstream out(path, std::ios::binary);  // fixed newlines on every platform
  if (!out) throw ValidationError("outputs.file: cannot open " + path.string() + " for writing");

  const int d = states.front().dim();
  out << "t";
  for (std::size_t i = 0; i + 2 < table.names.size(); ++i) out << "," << table.names[i];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out << ",re_rho_" << i << "_" << j << ",im_rho_" << i << "_" << j;
  out << ",trace,min_eigenvalue\n";

  for (std::size_t n = 0; n < states.size(); ++n) {
    const Matrix& rho = states[n].matrix();
    const Complex tr = rho.trace();
    if (std::abs(tr.imag()) > 1e-12)
      throw NumericalError("run: |Im(trace)| = " + std::to_string(std::abs(tr.imag())) +
                           " at step " + std::to_string(n));
    const auto& row = table.rows[n];
    out << format_double(static_cast<double>(n) * dt);
    for (std::size_t i = 0; i + 2 < row.size(); ++i) out << "," << format_double(row[i]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out << "," << format_double(rho(i, j).real()) << "," << format_double(rho(i, j).imag());
    out << "," << format_double(row[row.size() - 2]) << ","
        << format_double(row[row.size() - 1]) << "\n";
  }
}

std::vector<DensityMatrix> with_initial(const DensityMatrix& rho0,
                                        std::vector<DensityMatrix> states) {
  std::vector<DensityMatrix> out;
  out.reserve(states.size() + 1);
  out.push_back(rho0);
  for (auto& s : states) out.push_back(std::move(s));
  return out;
}

std::vector<DensityMatrix> propagate_lindblad_only(const ResolvedSystem& sys,
                                                   const SimConfig& cfg) {
  LiouvillianGenerator gen(sys.hamiltonian, sys.jumps);
  const auto steps = propagator_series(gen, 0.0, cfg.dt, cfg.n_steps, cfg.ode_tolerance);
  std::vector<DensityMatrix> states;
  states.reserve(cfg.n_steps);
  Vector rho = sys.rho0.vec();
  for (int n = 0; n < cfg.n_steps; ++n) {
    rho = steps[static_cast<std::size_t>(n)].m * rho;
    states.push_back(DensityMatrix::raw(unvectorize(rho)));
  }
  return states;
}

TransferTensorSet tensors_for_config(const ResolvedSystem& sys, const SimConfig& cfg,
                                     int threads) {
  if (!cfg.ttm.tensor_file.empty())
    return load_transfer_tensors(cfg.ttm.tensor_file, sys.dim, cfg.dt);

  // Bath-only dynamical maps; the jump operators enter only in the
  // Strang-split propagation afterwards.
  LiouvillianGenerator bare(sys.hamiltonian, {});
  const int n_maps = cfg.ttm.l_mem > 0 ? cfg.ttm.l_mem : cfg.n_steps;
  const int k_max = std::min(cfg.k_max, n_maps);
  const auto steps = propagator_series(bare, 0.0, cfg.dt, n_maps, cfg.ode_tolerance);
  const auto maps = dynamical_maps(steps, build_influences(sys, cfg, k_max), n_maps, k_max,
                                   cfg.dt, cfg.memory_budget, threads);
  TransferTensorSet tensors = extract_transfer_tensors(maps, n_maps);

  // Trailing tensors below the tail threshold carry no memory; drop them.
  std::size_t keep = tensors.tensors.size();
  while (keep > 1 && tensors.tensors[keep - 1].m.norm() < cfg.ttm.tail_threshold) --keep;
  tensors.tensors.resize(keep);
  return tensors;
}

std::vector<DensityMatrix> propagate_states(const ResolvedSystem& sys, const SimConfig& cfg,
                                            const RunOptions& opt) {
  switch (cfg.method) {
    case Method::lindblad_only:
      return propagate_lindblad_only(sys, cfg);
    case Method::direct_pild: {
      LiouvillianGenerator gen(sys.hamiltonian, sys.jumps);
      const auto steps = propagator_series(gen, 0.0, cfg.dt, cfg.n_steps, cfg.ode_tolerance);
      return iterative_pi(steps, build_influences(sys, cfg, cfg.k_max), sys.rho0, cfg.n_steps,
                          cfg.k_max, cfg.memory_budget);
    }
    case Method::brute_force: {
      LiouvillianGenerator gen(sys.hamiltonian, sys.jumps);
      const auto steps = propagator_series(gen, 0.0, cfg.dt, cfg.n_steps, cfg.ode_tolerance);
      std::vector<BathInfluence> baths;
      for (const auto& bath : sys.baths)
        baths.push_back(BathInfluence{
            eta_table(bath, cfg.dt, std::max(1, cfg.n_steps - 1), cfg.n_steps,
                      cfg.quad_tolerance),
            bath.coupling});
      return brute_force_pi(steps, baths, sys.rho0, cfg.n_steps, cfg.max_brute_force_paths);
    }
    case Method::ttm_pild: {
      const TransferTensorSet tensors = tensors_for_config(sys, cfg, opt.threads);
      const SuperOperator lindbladian = build_lindbladian(sys.jumps, 0.0, sys.dim);
      return propagate_ttm_lindblad(tensors, lindbladian, sys.rho0, cfg.n_steps);
    }
  }
  throw ValidationError("method: unknown");
}

RunDiagnostics diagnose(const std::vector<DensityMatrix>& states, const ObservableTable& table) {
  RunDiagnostics diag;
  diag.min_eigenvalue = 1.0;
  for (std::size_t n = 0; n < states.size(); ++n) {
    const Matrix& rho = states[n].matrix();
    const Complex tr = rho.trace();
    diag.trace_drift_max = std::max(diag.trace_drift_max, std::abs(tr - 1.0));
    diag.im_trace_max = std::max(diag.im_trace_max, std::abs(tr.imag()));
    diag.hermiticity_max = std::max(diag.hermiticity_max, hermiticity_residual(rho));
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, table.rows[n].back());
  }
  return diag;
}

}  // namespace

RunResult run(const SimConfig& cfg, const RunOptions& opt) {
  const auto t_begin = std::chrono::steady_clock::now();
  ResolvedSystem sys = resolve_system(cfg);

  RunResult result;
  result.csv_path = opt.output_dir / cfg.output_file;
  result.manifest_path = result.csv_path;
  result.manifest_path += ".manifest.json";
  if (opt.validate_only) return result;

  result.states = with_initial(sys.rho0, propagate_states(sys, cfg, opt));
  result.table = evaluate_observables(result.states, cfg.observables);
  result.diagnostics = diagnose(result.states, result.table);

  if (cfg.kmax_sensitivity && cfg.method == Method::direct_pild && cfg.k_max > 1 &&
      !sys.baths.empty()) {
    SimConfig reduced = cfg;
    reduced.k_max = cfg.k_max - 1;
    reduced.kmax_sensitivity = false;
    const auto alt = propagate_states(sys, reduced, opt);
    double diff = 0.0;
    for (std::size_t n = 0; n < alt.size(); ++n)
      diff = std::max(diff, (alt[n].matrix().diagonal() -
                             result.states[n + 1].matrix().diagonal())
                                .cwiseAbs()
                                .maxCoeff());
    result.diagnostics.kmax_sensitivity = diff;
  }

  std::filesystem::create_directories(opt.output_dir);
  write_csv(result.csv_path, cfg.dt, result.states, result.table);

  const auto t_end = std::chrono::steady_clock::now();
  result.diagnostics.wall_ms =
      std::chrono::duration<double, std::milli>(t_end - t_begin).count();

  json manifest;
  manifest["schema_version"] = kConfigSchemaVersion;
  manifest["resolved_config"] = cfg.to_json();
  manifest["diagnostics"] = {
      {"trace_drift_max", result.diagnostics.trace_drift_max},
      {"hermiticity_max", result.diagnostics.hermiticity_max},
      {"min_eigenvalue", result.diagnostics.min_eigenvalue},
      {"im_trace_max", result.diagnostics.im_trace_max},
  };
  if (result.diagnostics.kmax_sensitivity >= 0.0)
    manifest["diagnostics"]["kmax_sensitivity"] = result.diagnostics.kmax_sensitivity;
  manifest["wall_time_ms"] = result.diagnostics.wall_ms;
  std::ofstream mf(result.manifest_path);
  if (!mf)
    throw ValidationError("outputs.file: cannot open " + result.manifest_path.string() +
                          " for writing");
  mf << manifest.dump(2) << "\n";
  return result;
}

std::filesystem::path export_transfer_tensors(const SimConfig& cfg, const RunOptions& opt) {
  ResolvedSystem sys = resolve_system(cfg);
  if (sys.hamiltonian.time_dependent())
    throw ValidationError("model.drive_amplitude: time-dependent field unsupported by "
                          "transfer-tensor export");

  const TransferTensorSet tensors = tensors_for_config(sys, cfg, opt.threads);

  json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["dt"] = tensors.dt;
  j["dim"] = sys.dim;
  j["l_mem"] = tensors.tensors.size();
  j["k_max"] = cfg.k_max;
  json list = json::array();
  for (const auto& t : tensors.tensors) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < t.m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < t.m.cols(); ++c)
        row.push_back(json::array({t.m(r, c).real(), t.m(r, c).imag()}));
      rows.push_back(std::move(row));
    }
    list.push_back(std::move(rows));
  }
  j["tensors"] = std::move(list);

  std::filesystem::create_directories(opt.output_dir);
  std::filesystem::path path = opt.output_dir / cfg.output_file;
  path += ".tensors.json";
  std::ofstream out(path);
  if (!out) throw ValidationError("outputs.file: cannot open " + path.string() + " for writing");
  out << j.dump() << "\n";
  return path;
}

TransferTensorSet load_transfer_tensors(const std::filesystem::path& path, int expected_dim,
                                        double expected_dt) {
  std::ifstream in(path);
  if (!in) throw ValidationError("ttm.tensor_file: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("ttm.tensor_file: JSON parse error: " + std::string(e.what()));
  }
  if (j.value("schema_version", -1) != kConfigSchemaVersion)
    throw ValidationError("ttm.tensor_file: unsupported schema_version");
  if (j.value("dim", -1) != expected_dim)
    throw ValidationError("ttm.tensor_file: tensor dimension does not match the model");
  const double dt = j.value("dt", 0.0);
  if (std::abs(dt - expected_dt) > 1e-15 * std::max(1.0, std::abs(expected_dt)))
    throw ValidationError("ttm.tensor_file: dt does not match grid.dt");

  TransferTensorSet set;
  set.dt = dt;
  const int n = expected_dim * expected_dim;
  for (const auto& rows : j.at("tensors")) {
    Matrix m(n, n);
    if (static_cast<int>(rows.size()) != n)
      throw ValidationError("ttm.tensor_file: tensor has wrong shape");
    for (int r = 0; r < n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (static_cast<int>(row.size()) != n)
        throw ValidationError("ttm.tensor_file: tensor has wrong shape");
      for (int c = 0; c < n; ++c) {
        const auto& e = row[static_cast<std::size_t>(c)];
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
    set.tensors.push_back(SuperOperator(std::move(m)));
  }
  if (set.tensors.empty()) throw ValidationError("ttm.tensor_file: no tensors in archive");
  return set;
}

}  // namespace pild
