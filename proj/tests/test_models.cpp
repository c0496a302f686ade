#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pild/models.hpp"
#include "pild/path_integral.hpp"
#include "pild/propagator.hpp"

using namespace pild;

TEST_CASE("dimer Hamiltonian matrix elements") {
  const DimerModel model = build_dimer(DimerSpec{5.0, 5.0, 1.0, 0.0, 0.0});
  const Matrix& h = model.hamiltonian.static_part();
  CHECK(h(1, 2) == Complex(-1.0, 0.0));
  CHECK(h(2, 1) == Complex(-1.0, 0.0));
  CHECK(h(0, 0) == Complex(0.0, 0.0));
  CHECK(h(1, 1) == Complex(5.0, 0.0));
  CHECK(h(2, 2) == Complex(5.0, 0.0));
  CHECK(h(3, 3) == Complex(10.0, 0.0));
  CHECK(hermiticity_residual(h) == 0.0);
}

TEST_CASE("dimer field term and couplings") {
  const DimerModel model = build_dimer(DimerSpec{5.0, 5.0, 1.0, 11.96575, 10.0});
  REQUIRE(model.hamiltonian.time_dependent());
  const Matrix h0 = model.hamiltonian.at(0.0);
  // At t = 0 the drive adds +A to |eg><eg| and -A to |ge><ge|.
  CHECK(h0(2, 2).real() == doctest::Approx(5.0 + 11.96575).epsilon(1e-14));
  CHECK(h0(1, 1).real() == doctest::Approx(5.0 - 11.96575).epsilon(1e-14));
  // A quarter period of cos(10 t) later the drive vanishes.
  const double t_quarter = 0.5 * oracles::kPi / 10.0;
  CHECK(oracles::max_abs_diff(model.hamiltonian.at(t_quarter),
                              build_dimer(DimerSpec{}).hamiltonian.static_part()) < 1e-10);

  RealVector s1(4), s2(4);
  s1 << 0, 0, 1, 1;
  s2 << 0, 1, 0, 1;
  CHECK(model.coupling_monomer1 == s1);
  CHECK(model.coupling_monomer2 == s2);
}

TEST_CASE("frozen dimer: delta = 0 and no drive keeps populations fixed") {
  const DimerModel model = build_dimer(DimerSpec{5.0, 5.0, 0.0, 0.0, 0.0});
  LiouvillianGenerator gen(model.hamiltonian, {});
  const auto k = propagator_static(gen.liouvillian(0.0), 0.3);
  const DensityMatrix rho0 = DensityMatrix::basis_state(4, 2);
  const Matrix rho1 = unvectorize(k.m * rho0.vec());
  CHECK(oracles::max_abs_diff(rho1, rho0.matrix()) < 1e-13);
}

TEST_CASE("pump excites monomer 1 from the ground state") {
  const DimerModel model = build_dimer(DimerSpec{});
  const Matrix gg = DensityMatrix::basis_state(4, 0).matrix();
  const Matrix pumped = model.pump_left * gg * model.pump_left.adjoint();
  CHECK(oracles::max_abs_diff(pumped, DensityMatrix::basis_state(4, 2).matrix()) == 0.0);
  // And the drain maps |ge><ge| down to |gg><gg|.
  const Matrix ge = DensityMatrix::basis_state(4, 1).matrix();
  const Matrix drained = model.drain_right * ge * model.drain_right.adjoint();
  CHECK(oracles::max_abs_diff(drained, gg) == 0.0);
}

TEST_CASE("spin-boson Rabi oscillation at frequency 2 delta") {
  const SpinBosonModel model = build_spin_boson(0.0, 1.0);
  LiouvillianGenerator gen(model.hamiltonian, {});
  const double dt = 0.05;
  const auto k = propagator_static(gen.liouvillian(0.0), dt);
  Vector rho = DensityMatrix::basis_state(2, 0).vec();
  for (int n = 1; n <= 40; ++n) {
    rho = k.m * rho;
    const double sz = (rho(0) - rho(3)).real();
    CHECK(std::abs(sz - std::cos(2.0 * n * dt)) < 1e-12);
  }
}

TEST_CASE("pure dephasing: sigma_z is conserved for any coupling strength") {
  const SpinBosonModel model = build_spin_boson(0.7, 0.0);  // delta = 0
  LiouvillianGenerator gen(model.hamiltonian, {});
  const double dt = 0.1;
  const int n = 8;
  const auto steps = propagator_series(gen, 0.0, dt, n);
  BathSpec bath{SpectralDensity{0.16, 7.5}, 1.0, model.coupling};
  const std::vector<BathInfluence> baths{
      BathInfluence{eta_table(bath, dt, 4, n), bath.coupling}};
  Matrix mixed(2, 2);
  mixed << 0.8, Complex(0.1, 0.05), Complex(0.1, -0.05), 0.2;
  const auto states = iterative_pi(steps, baths, DensityMatrix::from_matrix(mixed), n, 4);
  for (const auto& s : states) {
    CHECK(std::abs(s.matrix()(0, 0).real() - 0.8) < 1e-12);
    CHECK(std::abs(s.matrix()(1, 1).real() - 0.2) < 1e-12);
  }
}

TEST_CASE("one-excitation subspace is invariant without drive or jumps") {
  const DimerModel model = build_dimer(DimerSpec{});
  LiouvillianGenerator gen(model.hamiltonian, {});
  const double dt = 0.05;
  const int n = 40;
  const auto steps = propagator_series(gen, 0.0, dt, n);
  BathSpec b1{SpectralDensity{0.16, 7.5}, 1.0, model.coupling_monomer1};
  BathSpec b2{SpectralDensity{0.16, 7.5}, 1.0, model.coupling_monomer2};
  const std::vector<BathInfluence> baths{BathInfluence{eta_table(b1, dt, 3, n), b1.coupling},
                                         BathInfluence{eta_table(b2, dt, 3, n), b2.coupling}};
  const auto states = iterative_pi(steps, baths, DensityMatrix::basis_state(4, 2), n, 3);
  for (const auto& s : states) {
    CHECK(std::abs(s.matrix()(0, 0)) < 1e-10);
    CHECK(std::abs(s.matrix()(3, 3)) < 1e-10);
  }
}

TEST_CASE("monomer swap symmetry of the undriven symmetric dimer") {
  const DimerModel model = build_dimer(DimerSpec{5.0, 5.0, 1.0, 0.0, 0.0});
  LiouvillianGenerator gen(model.hamiltonian, {});
  const double dt = 0.05;
  const int n = 30;
  const auto steps = propagator_series(gen, 0.0, dt, n);
  BathSpec b1{SpectralDensity{0.16, 7.5}, 1.0, model.coupling_monomer1};
  BathSpec b2{SpectralDensity{0.16, 7.5}, 1.0, model.coupling_monomer2};
  const std::vector<BathInfluence> baths{BathInfluence{eta_table(b1, dt, 3, n), b1.coupling},
                                         BathInfluence{eta_table(b2, dt, 3, n), b2.coupling}};
  const auto from_eg = iterative_pi(steps, baths, DensityMatrix::basis_state(4, 2), n, 3);
  const auto from_ge = iterative_pi(steps, baths, DensityMatrix::basis_state(4, 1), n, 3);
  for (int j = 0; j < n; ++j) {
    // Swapping monomers maps |eg> <-> |ge| and leaves |gg>, |ee> fixed.
    CHECK(std::abs(from_eg[static_cast<std::size_t>(j)].matrix()(2, 2) -
                   from_ge[static_cast<std::size_t>(j)].matrix()(1, 1)) < 1e-12);
    CHECK(std::abs(from_eg[static_cast<std::size_t>(j)].matrix()(1, 1) -
                   from_ge[static_cast<std::size_t>(j)].matrix()(2, 2)) < 1e-12);
  }
}

TEST_CASE("observables: named populations and monomer sums") {
  const DensityMatrix eg = DensityMatrix::basis_state(4, 2);
  const DensityMatrix ee = DensityMatrix::basis_state(4, 3);
  const auto table =
      evaluate_observables({eg, ee}, {"pop_gg", "pop_ge", "pop_eg", "pop_ee", "P1", "P2"});
  REQUIRE(table.names.size() == 8);  // + trace, min_eigenvalue
  CHECK(table.names[6] == "trace");
  CHECK(table.names[7] == "min_eigenvalue");

  // |eg><eg|: P1 = 1, P2 = 0.
  CHECK(table.rows[0][2] == 1.0);
  CHECK(table.rows[0][4] == 1.0);
  CHECK(table.rows[0][5] == 0.0);
  // |ee><ee|: P1 = P2 = 1.
  CHECK(table.rows[1][4] == 1.0);
  CHECK(table.rows[1][5] == 1.0);
  CHECK(table.rows[1][6] == 1.0);

  // P1 + P2 = pop_eg + pop_ge + 2 pop_ee identically on random states.
  std::mt19937 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = DensityMatrix::raw(oracles::random_density(4, rng));
    const auto t = evaluate_observables({rho}, {"pop_ge", "pop_eg", "pop_ee", "P1", "P2"});
    const auto& r = t.rows[0];
    CHECK(std::abs((r[3] + r[4]) - (r[0] + r[1] + 2.0 * r[2])) < 1e-14);
  }
}

TEST_CASE("unknown observable names are rejected") {
  const DensityMatrix rho = DensityMatrix::basis_state(2, 0);
  CHECK_THROWS_AS(evaluate_observables({rho}, {"pop_7"}), ValidationError);
  CHECK_THROWS_AS(evaluate_observables({rho}, {"P1"}), ValidationError);  // d = 2
  CHECK_THROWS_AS(check_observable_names(2, {"nonsense"}), ValidationError);
  CHECK_NOTHROW(check_observable_names(2, {"pop_0", "pop_1", "sigma_z"}));
  CHECK_NOTHROW(check_observable_names(4, {"pop_gg", "P1", "P2"}));
}
