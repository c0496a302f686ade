#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "pild/bath.hpp"

using namespace pild;

namespace {

const SpectralDensity kOhmic{0.16, 7.5};  // xi, omega_c

BathSpec ohmic_bath(double beta = 1.0) {
  BathSpec bath;
  bath.spectral_density = kOhmic;
  bath.beta = beta;
  bath.coupling = RealVector::Ones(2);
  return bath;
}

}  // namespace

TEST_CASE("spectral density shape") {
  CHECK(kOhmic.value(0.0) == 0.0);
  for (double w : {0.1, 1.0, 7.5, 30.0}) CHECK(kOhmic.value(w) > 0.0);
  // peak at omega_c for the Ohmic-exponential form
  CHECK(kOhmic.value(7.5) > kOhmic.value(6.0));
  CHECK(kOhmic.value(7.5) > kOhmic.value(9.0));
}

TEST_CASE("zero coupling gives a vanishing correlation function") {
  const SpectralDensity off{0.0, 7.5};
  for (double t : {0.0, 0.3, 2.0}) CHECK(bath_correlation(off, 1.0, t) == Complex(0.0, 0.0));
}

TEST_CASE("correlation function symmetry C(-t) = conj(C(t))") {
  const Complex plus = bath_correlation(kOhmic, 1.0, 1.3);
  const Complex minus = bath_correlation(kOhmic, 1.0, -1.3);
  CHECK(std::abs(minus - std::conj(plus)) < 1e-14);
}

TEST_CASE("C(0) against the frozen trapezoid-oracle value") {
  // Trapezoid oracle on [0, 50 omega_c], 4e6 points: 4.719786372135.
  const double frozen_c0 = 4.719786372135;
  const Complex c0 = bath_correlation(kOhmic, 1.0, 0.0);
  CHECK(std::abs(c0.real() - frozen_c0) < 1e-9);
  CHECK(std::abs(c0.imag()) < 1e-12);
  // And against the oracle evaluated here.
  oracles::CorrelationOracle oracle(0.16, 7.5, 1.0, 500000);
  CHECK(std::abs(c0 - oracle(0.0)) < 1e-8);
}

TEST_CASE("zero temperature is the coth -> 1 limit") {
  const double beta_inf = std::numeric_limits<double>::infinity();
  const Complex c = bath_correlation(kOhmic, beta_inf, 0.2);
  const Complex c_cold = bath_correlation(kOhmic, 1e6, 0.2);
  CHECK(std::abs(c - c_cold) < 1e-8);
}

TEST_CASE("eta table is zero at zero coupling") {
  BathSpec bath = ohmic_bath();
  bath.spectral_density.xi = 0.0;
  const EtaTable table = eta_table(bath, 0.1, 3, 10);
  CHECK(table.diag == Complex(0.0, 0.0));
  for (const auto& lag : table.lag) CHECK(lag == Complex(0.0, 0.0));
}

TEST_CASE("diagonal eta approaches C(0) dt^2 / 2") {
  const BathSpec bath = ohmic_bath();
  const Complex c0 = bath_correlation(kOhmic, 1.0, 0.0);
  double prev_err = 1e9;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const EtaTable table = eta_table(bath, dt, 1, 1);
    const double ratio = (table.diag / (dt * dt)).real() / (0.5 * c0.real());
    const double err = std::abs(ratio - 1.0);
    CHECK(err < 0.05);
    CHECK(err < prev_err);  // first-order shrink in dt
    prev_err = err;
  }
}

TEST_CASE("eta table matches the independent 2D quadrature oracle") {
  const BathSpec bath = ohmic_bath();
  const double dt = 0.05;
  const int k_max = 5;
  const EtaTable table = eta_table(bath, dt, k_max, 100);

  oracles::CorrelationOracle c(0.16, 7.5, 1.0, 200000);
  const Complex diag = oracles::integrate_triangle(c, 0.0, dt);
  CHECK(std::abs(table.diag - diag) < 1e-8);
  for (int l = 1; l <= k_max; ++l) {
    const Complex cell = oracles::integrate_cell(c, l * dt, (l + 1) * dt, 0.0, dt);
    CHECK(std::abs(table.lag[static_cast<std::size_t>(l) - 1] - cell) < 1e-8);
  }
}

TEST_CASE("eta invariants: dissipative diagonal and lag decay") {
  const BathSpec bath = ohmic_bath();
  for (double dt : {0.05, 0.1}) {
    const EtaTable table = eta_table(bath, dt, 6, 10);
    CHECK(table.diag.real() >= 0.0);
    for (std::size_t l = 1; l < table.lag.size(); ++l)
      CHECK(std::abs(table.lag[l]) <= std::abs(table.lag[l - 1]));
  }
}

TEST_CASE("eta table validates its grid") {
  const BathSpec bath = ohmic_bath();
  CHECK_THROWS_AS(eta_table(bath, -0.1, 1, 10), ValidationError);
  CHECK_THROWS_AS(eta_table(bath, 0.1, 0, 10), ValidationError);
  CHECK_THROWS_AS(eta_table(bath, 0.1, 11, 10), ValidationError);
}

TEST_CASE("influence weight trivial cases") {
  const EtaTable table = eta_table(ohmic_bath(), 0.05, 5, 10);

  // Forward equals backward: full cancellation.
  std::array<double, 4> s{1.0, 0.0, 1.0, 1.0};
  CHECK(influence_weight(table, s, s) == Complex(1.0, 0.0));

  // Single step, s+ = 1, s- = 0: exp(-eta_diag).
  std::array<double, 1> sp{1.0}, sm{0.0};
  const Complex w = influence_weight(table, sp, sm);
  CHECK(std::abs(w - std::exp(-table.diag)) < 1e-15);
}

TEST_CASE("influence weight equals a naive double loop") {
  const EtaTable table = eta_table(ohmic_bath(), 0.1, 4, 10);
  // A 4-step path with dimer-like (0/1) couplings.
  std::array<double, 4> sp{1.0, 0.0, 1.0, 1.0};
  std::array<double, 4> sm{0.0, 1.0, 1.0, 0.0};

  Complex exponent(0.0, 0.0);
  for (int k = 0; k < 4; ++k)
    for (int kp = 0; kp <= k; ++kp) {
      const Complex eta = k == kp ? table.diag : table.lag[static_cast<std::size_t>(k - kp) - 1];
      exponent += (sp[k] - sm[k]) * (eta * sp[kp] - std::conj(eta) * sm[kp]);
    }
  CHECK(std::abs(influence_weight(table, sp, sm) - std::exp(-exponent)) < 1e-15);
}

TEST_CASE("influence weight magnitude is bounded by one for real paths") {
  const EtaTable table = eta_table(ohmic_bath(), 0.05, 6, 10);
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 7> sp{}, sm{};
    for (int i = 0; i < 7; ++i) {
      sp[i] = dist(rng);
      sm[i] = dist(rng);
    }
    CHECK(std::abs(influence_weight(table, sp, sm)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("influence weight ignores appended zero-coupling points") {
  const EtaTable table = eta_table(ohmic_bath(), 0.05, 6, 10);
  std::array<double, 3> sp{1.0, -0.5, 0.25}, sm{0.5, 1.0, -1.0};
  std::array<double, 5> sp_pad{1.0, -0.5, 0.25, 0.0, 0.0}, sm_pad{0.5, 1.0, -1.0, 0.0, 0.0};
  CHECK(std::abs(influence_weight(table, sp, sm) - influence_weight(table, sp_pad, sm_pad)) <
        1e-15);
}

TEST_CASE("influence weight rejects overlong segments") {
  const EtaTable table = eta_table(ohmic_bath(), 0.05, 2, 10);
  std::array<double, 4> s{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(influence_weight(table, s, s), ValidationError);
}
