// Model builders: the driven excitonic dimer with pump/drain jump operators
// and monomer observables, plus a two-level (spin-boson) test system.
//
// Dimer basis order is fixed as |gg>, |ge>, |eg>, |ee> (indices 0..3); the
// first letter is monomer 1, the second is monomer 2.  All operators below
// are transcribed in this order.

#pragma once

#include <string>
#include <vector>

#include "pild/liouville.hpp"
#include "pild/types.hpp"

namespace pild {

struct DimerSpec {
  double eps1 = 5.0;
  double eps2 = 5.0;
  double delta = 1.0;
  double drive_amplitude = 0.0;
  double drive_frequency = 0.0;
};

struct DimerModel {
  SystemHamiltonian hamiltonian;
  // Bath couplings are the monomer excitation projectors:
  //   s1 = |eg><eg| + |ee><ee|,  s2 = |ge><ge| + |ee><ee|
  // (diagonals in the fixed basis).
  RealVector coupling_monomer1;
  RealVector coupling_monomer2;
  Matrix pump_left;    // L1 = |eg><gg| + |ee><ge|
  Matrix drain_right;  // L2 = |gg><ge| + |eg><ee|
};

/// H0 = diag(0, eps2, eps1, eps1+eps2) with -delta on |eg><ge| + h.c., plus
/// the field term A cos(Omega t) (|eg><eg| - |ge><ge|) when A != 0.
DimerModel build_dimer(const DimerSpec& spec);

struct SpinBosonModel {
  SystemHamiltonian hamiltonian;  // eps * sigma_z + delta * sigma_x
  RealVector coupling;            // sigma_z diagonal (1, -1)
};

SpinBosonModel build_spin_boson(double eps, double delta);

/// Named time series evaluated on a state trajectory.  Trace and minimum
/// eigenvalue diagnostics are always appended.
struct ObservableTable {
  std::vector<std::string> names;          // includes trailing "trace", "min_eigenvalue"
  std::vector<std::vector<double>> rows;   // one row per state
};

/// Supported names: pop_<i> for any dimension; dimer aliases pop_gg, pop_ge,
/// pop_eg, pop_ee and monomer populations P1 = rho_eg,eg + rho_ee,ee,
/// P2 = rho_ge,ge + rho_ee,ee; sigma_z for d = 2.  Unknown names are
/// rejected.
ObservableTable evaluate_observables(const std::vector<DensityMatrix>& states,
                                     const std::vector<std::string>& names);

/// Validation helper for configs: throws ValidationError on an unknown name.
void check_observable_names(int dim, const std::vector<std::string>& names);

}  // namespace pild
