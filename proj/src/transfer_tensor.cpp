#include "pild/transfer_tensor.hpp"

#include "pild/propagator.hpp"

namespace pild {

TransferTensorSet extract_transfer_tensors(const DynamicalMapSeries& maps, int l_mem) {
  if (l_mem < 1) throw ValidationError("extract_transfer_tensors: l_mem must be >= 1");
  if (static_cast<int>(maps.maps.size()) < l_mem)
    throw ValidationError("extract_transfer_tensors: need at least l_mem maps, have " +
                          std::to_string(maps.maps.size()));

  TransferTensorSet set;
  set.dt = maps.dt;
  set.tensors.reserve(static_cast<std::size_t>(l_mem));
  for (int n = 1; n <= l_mem; ++n) {
    Matrix t = maps.maps[static_cast<std::size_t>(n) - 1].m;
    for (int m = 1; m < n; ++m)
      t -= set.tensors[static_cast<std::size_t>(m) - 1].m *
           maps.maps[static_cast<std::size_t>(n - m) - 1].m;
    set.tensors.push_back(SuperOperator(std::move(t)));
  }
  return set;
}

std::vector<SuperOperator> memory_kernel_view(const TransferTensorSet& t,
                                              const SuperOperator& l0) {
  if (t.tensors.empty()) throw ValidationError("memory_kernel_view: empty tensor set");
  const int d = t.tensors.front().dim();
  if (l0.dim() != d) throw ValidationError("memory_kernel_view: L0 dimension mismatch");
  const double dt2 = t.dt * t.dt;
  std::vector<SuperOperator> kernels;
  kernels.reserve(t.tensors.size());
  for (std::size_t k = 0; k < t.tensors.size(); ++k) {
    Matrix m = t.tensors[k].m;
    if (k == 0)
      m -= Matrix::Identity(d * d, d * d) - Complex(0.0, 1.0) * t.dt * l0.m;
    kernels.push_back(SuperOperator(m / dt2));
  }
  return kernels;
}

std::vector<DensityMatrix> propagate_ttm_lindblad(const TransferTensorSet& t,
                                                  const SuperOperator& lindbladian,
                                                  const DensityMatrix& rho0, int n_steps) {
  if (t.tensors.empty()) throw ValidationError("propagate_ttm_lindblad: empty tensor set");
  const int d = t.tensors.front().dim();
  if (rho0.dim() != d) throw ValidationError("propagate_ttm_lindblad: rho0 dimension mismatch");
  if (lindbladian.dim() != d)
    throw ValidationError("propagate_ttm_lindblad: Lindbladian dimension mismatch");

  const SuperOperator g_half = propagator_static(lindbladian, 0.5 * t.dt);
  const int l_mem = static_cast<int>(t.tensors.size());

  // The lag-j memory term transports state across j steps, so it must carry
  // j dt worth of Lindblad evolution, split symmetrically around the bare
  // transfer tensor to keep the scheme second order:
  //   rho_n = sum_j G_half^j T_j G_half^j rho_{n-j}.
  // The dressing is folded into the tensors once, leaving the plain
  // recurrence over the raw history.
  std::vector<Matrix> dressed;
  dressed.reserve(static_cast<std::size_t>(l_mem));
  Matrix half_power = g_half.m;
  for (int j = 1; j <= l_mem; ++j) {
    dressed.push_back(half_power * t.tensors[static_cast<std::size_t>(j) - 1].m * half_power);
    if (j < l_mem) half_power = g_half.m * half_power;
  }

  std::vector<Vector> history;
  history.reserve(static_cast<std::size_t>(n_steps) + 1);
  history.push_back(rho0.vec());

  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(n_steps));
  for (int n = 1; n <= n_steps; ++n) {
    Vector rho = Vector::Zero(d * d);
    const int depth = std::min(n, l_mem);
    for (int j = 1; j <= depth; ++j)
      rho += dressed[static_cast<std::size_t>(j) - 1] * history[static_cast<std::size_t>(n - j)];
    history.push_back(rho);
    out.push_back(DensityMatrix::raw(unvectorize(rho)));
  }
  return out;
}

}  // namespace pild
