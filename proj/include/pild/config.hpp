// Declarative run configuration: a versioned JSON document describing one
// simulation (system, field, baths, jump operators, grid, memory length,
// method, outputs).  Parsing is strict: every violated constraint is reported
// with the offending field's path.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pild/liouville.hpp"
#include "pild/models.hpp"
#include "pild/path_integral.hpp"
#include "pild/types.hpp"

namespace pild {

inline constexpr int kConfigSchemaVersion = 1;

enum class Method { direct_pild, ttm_pild, lindblad_only, brute_force };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct ModelConfig {
  std::string kind;  // "dimer" | "spin_boson" | "explicit"
  DimerSpec dimer;
  double sb_eps = 0.0;
  double sb_delta = 1.0;
  Matrix explicit_hamiltonian;
};

struct BathConfig {
  std::string kind = "ohmic_exponential";
  double xi = 0.0;
  double omega_c = 1.0;
  double beta = 1.0;  // +inf allowed ("inf" in JSON)
  std::string coupling_name;     // named coupling, or empty when values given
  RealVector coupling_values;    // diagonal entries of the coupling operator
};

struct JumpConfig {
  std::string name;  // "pump_left" | "drain_right" (dimer), or empty when matrix given
  Matrix matrix;
  double rate = 1.0;
};

struct TtmConfig {
  int l_mem = 0;                  // 0 = as many maps as n_steps
  double tail_threshold = 1e-8;   // drop trailing tensors below this norm
  std::string tensor_file;        // reload tensors instead of recomputing
};

struct SimConfig {
  int schema_version = kConfigSchemaVersion;
  ModelConfig model;
  std::vector<BathConfig> baths;
  std::vector<JumpConfig> jumps;

  double dt = 0.0;
  int n_steps = 0;
  int k_max = 1;

  Method method = Method::direct_pild;

  std::string initial_label;  // basis label/index, or empty when matrix given
  Matrix initial_matrix;

  std::vector<std::string> observables;
  std::string output_file;
  bool kmax_sensitivity = false;

  double ode_tolerance = 1e-10;
  double quad_tolerance = 1e-12;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  std::uint64_t max_brute_force_paths = kDefaultPathBudget;

  TtmConfig ttm;

  static SimConfig from_json_file(const std::filesystem::path& path);
  static SimConfig from_json(const nlohmann::json& j);

  /// The fully resolved configuration (defaults filled in) for the manifest.
  nlohmann::json to_json() const;
};

/// Everything a run needs, built and cross-validated from a SimConfig.
struct ResolvedSystem {
  int dim = 0;
  SystemHamiltonian hamiltonian;
  std::vector<JumpOperator> jumps;
  std::vector<BathSpec> baths;
  DensityMatrix rho0;
};

/// Builds the system described by the config; throws ValidationError with the
/// offending field named on any inconsistency (dimension mismatches,
/// non-Hermitian inputs, method/feature conflicts, grid violations).
ResolvedSystem resolve_system(const SimConfig& cfg);

}  // namespace pild
