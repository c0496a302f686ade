// Discretized influence-functional path integral with Lindbladian
// forward-backward step propagators.
//
// A path is a sequence of Liouville indices u_0..u_N, where u = i*d + j
// fuses the forward/backward pair (s^+ = basis i, s^- = basis j).  Step j
// contributes the propagator element K_j[u_j, u_{j-1}]; the influence
// functional couples path points 1..N (the point at the later edge of each
// dt interval carries that interval's coupling), truncated at lag k_max.
// The initial point u_0 enters only through vec(rho_0).

#pragma once

#include <cstdint>
#include <vector>

#include "pild/bath.hpp"
#include "pild/types.hpp"

namespace pild {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t(2) << 30;  // 2 GiB
inline constexpr std::uint64_t kDefaultPathBudget = std::uint64_t(1) << 26;

/// One bath's contribution to the path weight: its eta table plus the
/// diagonal of its coupling operator in the simulation basis.
struct BathInfluence {
  EtaTable etas;
  RealVector coupling;
};

/// The iterative engine's state: a complex tensor with one Liouville index
/// per retained path point (newest point on the fastest-varying index).
struct AugmentedTensor {
  int liouville_dim = 0;  // d^2
  int rank = 0;           // number of retained path points
  std::vector<Complex> entries;

  /// Contract over all indices except the newest -> vec(rho) at the current step.
  Vector readout() const;
};

/// Exact sum over all forward-backward paths with the full (untruncated)
/// influence functional; the reference implementation.  Refuses runs whose
/// path count (d^2)^(N+1) exceeds max_paths.
std::vector<DensityMatrix> brute_force_pi(const std::vector<SuperOperator>& steps,
                                          const std::vector<BathInfluence>& baths,
                                          const DensityMatrix& rho0, int n_steps,
                                          std::uint64_t max_paths = kDefaultPathBudget);

/// Iterative finite-memory augmented-tensor propagation.  For
/// n_steps <= k_max this is identical to brute_force_pi.  Step propagators
/// may differ per step (time-dependent generators).
std::vector<DensityMatrix> iterative_pi(const std::vector<SuperOperator>& steps,
                                        const std::vector<BathInfluence>& baths,
                                        const DensityMatrix& rho0, int n_steps, int k_max,
                                        std::uint64_t memory_budget = kDefaultMemoryBudget);

struct DynamicalMapSeries {
  double dt = 0.0;
  std::vector<SuperOperator> maps;  // E(j*dt), j = 1..N
};

/// Runs iterative_pi from each of the d^2 matrix units and assembles the
/// columns into dynamical maps: E(j*dt) vec(rho0) equals the iterative_pi
/// output for any rho0.  The d^2 runs are independent and execute on up to
/// `threads` workers (0 = hardware concurrency).
DynamicalMapSeries dynamical_maps(const std::vector<SuperOperator>& steps,
                                  const std::vector<BathInfluence>& baths, int n_steps,
                                  int k_max, double dt,
                                  std::uint64_t memory_budget = kDefaultMemoryBudget,
                                  int threads = 0);

}  // namespace pild
