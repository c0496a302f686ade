// Transfer-tensor route for time-independent Hamiltonians: extract transfer
// tensors from bath-only dynamical maps, view them as a discretized memory
// kernel, and propagate with Lindblad terms Strang-split around the
// transfer-tensor update.  This route requires time-translational invariance
// and therefore rejects time-dependent fields; it serves as the independent
// cross-check of the direct path-integral propagation.

#pragma once

#include <vector>

#include "pild/path_integral.hpp"
#include "pild/types.hpp"

namespace pild {

struct TransferTensorSet {
  double dt = 0.0;
  std::vector<SuperOperator> tensors;  // T_1..T_L
};

/// T_n = E_n - sum_{m=1}^{n-1} T_m E_{n-m}  (with E_0 = I), which makes the
/// reconstruction E_n = sum_{m=1}^{n} T_m E_{n-m} exact on the supplied maps.
TransferTensorSet extract_transfer_tensors(const DynamicalMapSeries& maps, int l_mem);

/// Discretized memory kernel: K_k = (T_k - (1 - i L0 dt) delta_{k,1}) / dt^2.
/// Diagnostic output only.
std::vector<SuperOperator> memory_kernel_view(const TransferTensorSet& t,
                                              const SuperOperator& l0);

/// rho_n = G_half * sum_j T_j * G_half * rho_{n-j} with
/// G_half = exp(-i L_jump dt / 2) applied symmetrically around the
/// transfer-tensor update.  Reduces exactly to the source maps when the
/// Lindbladian vanishes and to Strang-split Lindblad propagation in the
/// Markovian (single-tensor) case.
std::vector<DensityMatrix> propagate_ttm_lindblad(const TransferTensorSet& t,
                                                  const SuperOperator& lindbladian,
                                                  const DensityMatrix& rho0, int n_steps);

}  // namespace pild
