// Harmonic-bath influence: spectral densities, the bath autocorrelation
// function, discretized influence-functional coefficients (the eta table) and
// influence weights for path segments.
//
// Baths are represented implicitly through J(omega); discrete modes are never
// materialized.  The discretization is the bare piecewise-constant one: the
// system path is held constant over each dt interval and the double-time
// integrals of C are evaluated exactly (analytically in the frequency
// domain), so the coefficients depend only on the lag k - k'.

#pragma once

#include <span>
#include <vector>

#include "pild/types.hpp"

namespace pild {

/// J(omega) = (pi/2) * xi * omega * exp(-omega/omega_c), hbar = 1.
struct SpectralDensity {
  double xi = 0.0;       // Kondo parameter, dimensionless
  double omega_c = 1.0;  // cutoff frequency

  double value(double omega) const;
};

/// A bath attached to the system through a diagonal coupling operator; the
/// coupling is stored as the vector of its diagonal entries in the
/// simulation basis.
struct BathSpec {
  SpectralDensity spectral_density;
  double beta = 1.0;  // inverse temperature; +infinity means T = 0
  RealVector coupling;
};

/// C(t) = (1/pi) Int_0^inf J(w) [coth(beta w / 2) cos(w t) - i sin(w t)] dw.
/// Adaptive Gauss-Kronrod on [0, 50 omega_c]; the truncated tail of the
/// exponential cutoff is below 1e-18 relative.  beta = inf is the
/// zero-temperature limit coth -> 1.  C(-t) = conj(C(t)).
Complex bath_correlation(const SpectralDensity& sd, double beta, double t,
                         double quad_tol = 1e-12);

/// Influence-functional coefficients on a uniform grid with step dt:
///   eta_{kk'} = Int_{t_{k-1}}^{t_k} dt' Int_{t_{k'-1}}^{t_{k'}} dt'' C(t'-t'')   (k > k')
///   eta_{kk}  = Int_{t_{k-1}}^{t_k} dt' Int_{t_{k-1}}^{t'}     dt'' C(t'-t'')
/// Only lags up to k_max are materialized (memory truncation tau_mem =
/// k_max * dt).
struct EtaTable {
  double dt = 0.0;
  int k_max = 0;
  Complex diag;               // eta_{kk}, identical for every k
  std::vector<Complex> lag;   // lag[l-1] = eta_{k,k-l},  l = 1..k_max

  /// eta_{kk'} by lag; requires 0 <= k - k' <= k_max.
  Complex at(int k, int kp) const;
};

EtaTable eta_table(const BathSpec& bath, double dt, int k_max, int n_steps,
                   double quad_tol = 1e-12);

/// exp( - sum_{k >= k'} (s_k^+ - s_k^-) (eta_{kk'} s_{k'}^+ - conj(eta_{kk'}) s_{k'}^-) )
/// over a contiguous path segment of coupling values (at most k_max + 1
/// points, so every pair in the segment has a materialized lag).  Multiple
/// baths multiply their weights independently; that product is the caller's.
Complex influence_weight(const EtaTable& etas, std::span<const double> s_fwd,
                         std::span<const double> s_bwd);

}  // namespace pild
