#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pild/config.hpp"

using namespace pild;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "schema_version": 1,
    "model": {"kind": "dimer", "drive_amplitude": 0.0, "drive_frequency": 10.0},
    "baths": [
      {"kind": "ohmic_exponential", "xi": 0.16, "omega_c": 7.5, "beta": 1.0,
       "coupling": "monomer1"}
    ],
    "jumps": [{"name": "pump_left", "rate": 1.0}],
    "grid": {"dt": 0.05, "n_steps": 20, "k_max": 3},
    "method": "direct_pild",
    "initial_state": "gg",
    "outputs": {"file": "out.csv", "observables": ["pop_gg", "P1"]}
  })");
}

void expect_rejection(const json& j, const std::string& field) {
  try {
    const SimConfig cfg = SimConfig::from_json(j);
    resolve_system(cfg);
    FAIL("expected rejection mentioning ", field);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(field) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("a valid config parses and resolves") {
  const SimConfig cfg = SimConfig::from_json(base_config());
  CHECK(cfg.dt == 0.05);
  CHECK(cfg.method == Method::direct_pild);
  const ResolvedSystem sys = resolve_system(cfg);
  CHECK(sys.dim == 4);
  CHECK(sys.baths.size() == 1);
  CHECK(sys.jumps.size() == 1);
  CHECK(sys.rho0.matrix()(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("schema version is enforced") {
  json j = base_config();
  j["schema_version"] = 2;
  expect_rejection(j, "schema_version");
}

TEST_CASE("grid constraints") {
  json j = base_config();
  j["grid"]["dt"] = 0.0;
  expect_rejection(j, "grid.dt");

  j = base_config();
  j["grid"]["k_max"] = 21;  // > n_steps
  expect_rejection(j, "grid.k_max");

  j = base_config();
  j["grid"]["n_steps"] = 0;
  expect_rejection(j, "grid.n_steps");
}

TEST_CASE("ttm_pild rejects time-dependent fields") {
  json j = base_config();
  j["method"] = "ttm_pild";
  j["model"]["drive_amplitude"] = 11.96575;
  expect_rejection(j, "time-dependent field unsupported by ttm_pild");
}

TEST_CASE("lindblad_only rejects baths") {
  json j = base_config();
  j["method"] = "lindblad_only";
  expect_rejection(j, "baths");
}

TEST_CASE("bath parameter constraints") {
  json j = base_config();
  j["baths"][0]["xi"] = -0.1;
  expect_rejection(j, "xi");

  j = base_config();
  j["baths"][0]["omega_c"] = 0.0;
  expect_rejection(j, "omega_c");

  j = base_config();
  j["baths"][0]["beta"] = -1.0;
  expect_rejection(j, "beta");

  j = base_config();
  j["baths"][0]["beta"] = "inf";  // zero temperature is allowed
  CHECK_NOTHROW(resolve_system(SimConfig::from_json(j)));

  j = base_config();
  j["baths"][0]["coupling"] = "monomer7";
  expect_rejection(j, "coupling");

  j = base_config();
  j["baths"][0]["coupling"] = {0.0, 1.0};  // wrong length for d = 4
  expect_rejection(j, "coupling");
}

TEST_CASE("jump and initial-state validation") {
  json j = base_config();
  j["jumps"][0] = {{"name", "no_such_jump"}};
  expect_rejection(j, "no_such_jump");

  j = base_config();
  j["initial_state"] = "xy";
  expect_rejection(j, "initial_state");

  // Non-Hermitian explicit initial state is refused, not repaired.
  j = base_config();
  j["initial_state"] = json::parse(
      R"([[[1.0,0],[0,0.001],[0,0],[0,0]],
          [[0,0],[0,0],[0,0],[0,0]],
          [[0,0],[0,0],[0,0],[0,0]],
          [[0,0],[0,0],[0,0],[0,0]]])");
  expect_rejection(j, "initial_state");
}

TEST_CASE("observable names are validated up front") {
  json j = base_config();
  j["outputs"]["observables"] = {"pop_gg", "bogus"};
  expect_rejection(j, "bogus");
}

TEST_CASE("tolerance ranges") {
  json j = base_config();
  j["tolerances"] = {{"ode", 1.0}};
  expect_rejection(j, "tolerances.ode");

  j = base_config();
  j["tolerances"] = {{"quadrature", 1e-3}};
  expect_rejection(j, "tolerances.quadrature");
}

TEST_CASE("explicit model matrices round-trip through the resolved config") {
  json j = base_config();
  j["model"] = {{"kind", "explicit"},
                {"hamiltonian", {{{1.0, 0.0}, {0.5, 0.0}}, {{0.5, 0.0}, {-1.0, 0.0}}}}};
  j["baths"][0]["coupling"] = {1.0, -1.0};
  j["jumps"] = json::array();
  j["initial_state"] = "0";
  j["outputs"]["observables"] = {"pop_0"};
  const SimConfig cfg = SimConfig::from_json(j);
  const ResolvedSystem sys = resolve_system(cfg);
  CHECK(sys.dim == 2);
  CHECK(sys.hamiltonian.static_part()(0, 1) == Complex(0.5, 0.0));

  // Resolved config re-parses to the same system.
  const SimConfig cfg2 = SimConfig::from_json(cfg.to_json());
  CHECK(cfg2.model.explicit_hamiltonian == cfg.model.explicit_hamiltonian);
  CHECK(cfg2.dt == cfg.dt);
}

TEST_CASE("non-Hermitian explicit Hamiltonian is rejected") {
  json j = base_config();
  j["model"] = {{"kind", "explicit"},
                {"hamiltonian", {{{1.0, 0.0}, {0.5, 0.1}}, {{0.5, 0.0}, {-1.0, 0.0}}}}};
  j["baths"] = json::array();
  j["jumps"] = json::array();
  j["initial_state"] = "0";
  j["outputs"]["observables"] = json::array();
  expect_rejection(j, "model.hamiltonian");
}
