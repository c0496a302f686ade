// One-step forward-backward propagator superoperators K.
//
// Static Liouvillian: K = exp(-i L dt).  Time-dependent Liouvillian: K solves
//   dK/dt = -i L(t) K(t),  K(t_start) = I
// integrated with an adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on
// the full d^2 x d^2 matrix as the ODE state, so the result is a reusable
// superoperator rather than a single trajectory.

#pragma once

#include <vector>

#include "pild/liouville.hpp"
#include "pild/types.hpp"

namespace pild {

struct PropagatorRequest {
  const LiouvillianGenerator& generator;
  double t_start = 0.0;
  double dt = 0.0;            // must be > 0
  double tolerance = 1e-10;   // relative ODE error target, in (0, 1e-2]
};

/// exp(-i L dt).
SuperOperator propagator_static(const SuperOperator& liouvillian, double dt);

/// K(t_start + dt <- t_start) for a possibly time-dependent generator.
/// Reduces to propagator_static when the generator is time-independent.
SuperOperator propagator_timedep(const PropagatorRequest& req);

/// Per-step propagators K_j = K(t0 + j*dt <- t0 + (j-1)*dt), j = 1..n_steps.
std::vector<SuperOperator> propagator_series(const LiouvillianGenerator& gen, double t0,
                                             double dt, int n_steps, double tolerance = 1e-10);

}  // namespace pild
