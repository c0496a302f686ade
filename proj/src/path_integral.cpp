#include "pild/path_integral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

namespace pild {

namespace {

// Pairwise influence exponents accumulated over all baths, indexed by fused
// Liouville indices.  The full weight of a path is
//   exp( -sum_k self[u_k] - sum_{k > k'} pair[k-k'-1](u_k, u_{k'}) )
// with k, k' >= 1.
struct InfluenceExponents {
  Vector self;                // size D
  std::vector<Matrix> pair;   // pair[l-1] is D x D, l = 1..max_lag
};

InfluenceExponents build_exponents(const std::vector<BathInfluence>& baths, int d, int max_lag) {
  const int D = d * d;
  InfluenceExponents ex;
  ex.self = Vector::Zero(D);
  ex.pair.assign(max_lag, Matrix::Zero(D, D));
  for (const auto& bath : baths) {
    if (bath.coupling.size() != d)
      throw ValidationError("path integral: bath coupling dimension mismatch");
    if (bath.etas.k_max < max_lag)
      throw ValidationError("path integral: eta table k_max smaller than required lag " +
                            std::to_string(max_lag));
    for (int u = 0; u < D; ++u) {
      const double sp = bath.coupling(u / d);
      const double sm = bath.coupling(u % d);
      const double ds = sp - sm;
      ex.self(u) += ds * (bath.etas.diag * sp - std::conj(bath.etas.diag) * sm);
      for (int l = 1; l <= max_lag; ++l) {
        const Complex eta = bath.etas.lag[static_cast<std::size_t>(l) - 1];
        for (int v = 0; v < D; ++v) {
          const double spv = bath.coupling(v / d);
          const double smv = bath.coupling(v % d);
          ex.pair[static_cast<std::size_t>(l) - 1](u, v) +=
              ds * (eta * spv - std::conj(eta) * smv);
        }
      }
    }
  }
  return ex;
}

// exp(-exponent) tables for the iterative engine.
struct InfluenceFactors {
  Vector self;
  std::vector<Matrix> pair;
};

InfluenceFactors exponentiate(const InfluenceExponents& ex) {
  InfluenceFactors f;
  f.self = (-ex.self).array().exp();
  f.pair.reserve(ex.pair.size());
  for (const auto& p : ex.pair) f.pair.push_back((-p).array().exp());
  return f;
}

void check_steps(const std::vector<SuperOperator>& steps, int n_steps, int d) {
  if (static_cast<int>(steps.size()) < n_steps)
    throw ValidationError("path integral: fewer step propagators than n_steps");
  for (const auto& k : steps)
    if (k.dim() != d) throw ValidationError("path integral: step propagator dimension mismatch");
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Core iterative propagation on raw Liouville vectors (dynamical maps feed
// matrix units through here, which are not valid density matrices).
std::vector<Vector> iterate_paths(const std::vector<SuperOperator>& steps,
                                  const std::vector<BathInfluence>& baths, const Vector& rho0,
                                  int n_steps, int k_max, std::uint64_t memory_budget) {
  const int D = static_cast<int>(rho0.size());
  const int d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(D))));
  check_steps(steps, n_steps, d);
  if (k_max < 1) throw ValidationError("iterative_pi: k_max must be >= 1");

  std::vector<Vector> out;
  out.reserve(n_steps);

  if (baths.empty()) {
    // No influence functional: plain Lindblad propagation.
    Vector rho = rho0;
    for (int n = 0; n < n_steps; ++n) {
      rho = steps[static_cast<std::size_t>(n)].m * rho;
      out.push_back(rho);
    }
    return out;
  }

  const int r = std::min(k_max, n_steps);  // maximum retained points
  const std::uint64_t tensor_size = checked_pow(static_cast<std::uint64_t>(D), r,
                                                std::uint64_t(1) << 62);
  const std::uint64_t bytes = 2 * tensor_size * sizeof(Complex);
  if (bytes > memory_budget) {
    int fit = 0;
    std::uint64_t size = 1;
    while (size <= memory_budget / (2 * sizeof(Complex) * static_cast<std::uint64_t>(D))) {
      size *= static_cast<std::uint64_t>(D);
      ++fit;
    }
    throw ResourceError("iterative_pi: augmented tensor for d = " + std::to_string(d) +
                        ", k_max = " + std::to_string(r) + " needs " + std::to_string(bytes) +
                        " bytes; largest k_max within budget is " + std::to_string(fit));
  }

  const InfluenceFactors f = exponentiate(build_exponents(baths, d, r));

  // Step 1: A_1(u_1) = sum_{u_0} K_1[u_1, u_0] rho0[u_0] * self(u_1).
  AugmentedTensor a;
  a.liouville_dim = D;
  a.rank = 1;
  {
    const Vector k1r = steps[0].m * rho0;
    a.entries.resize(static_cast<std::size_t>(D));
    for (int u = 0; u < D; ++u) a.entries[static_cast<std::size_t>(u)] = k1r(u) * f.self(u);
  }
  out.push_back(a.readout());

  std::vector<Complex> scratch;
  for (int k = 2; k <= n_steps; ++k) {
    const bool grow = k <= r;
    const int m_old = a.rank;  // = min(k-1, r)
    const std::size_t old_size = a.entries.size();
    const std::size_t new_size = grow ? old_size * static_cast<std::size_t>(D) : old_size;
    scratch.assign(new_size, Complex(0.0, 0.0));

    const Matrix& kk = steps[static_cast<std::size_t>(k) - 1].m;
    const std::size_t keep = grow ? old_size : old_size / static_cast<std::size_t>(D);

    for (int u = 0; u < D; ++u) {
      const Complex self_u = f.self(u);
      for (std::size_t o = 0; o < old_size; ++o) {
        // Digits of o, newest point first: o % D = u_{k-1}, next = u_{k-2}, ...
        std::size_t tmp = o;
        Complex factor = kk(u, static_cast<Eigen::Index>(tmp % static_cast<std::size_t>(D)));
        for (int l = 1; l <= m_old; ++l) {
          factor *= f.pair[static_cast<std::size_t>(l) - 1](
              u, static_cast<Eigen::Index>(tmp % static_cast<std::size_t>(D)));
          tmp /= static_cast<std::size_t>(D);
        }
        const std::size_t idx = (o % keep) * static_cast<std::size_t>(D) +
                                static_cast<std::size_t>(u);
        scratch[idx] += a.entries[o] * self_u * factor;
      }
    }
    a.entries.swap(scratch);
    a.rank = grow ? m_old + 1 : m_old;

    Vector rho = a.readout();
    if (!rho.allFinite())
      throw NumericalError("iterative_pi: non-finite intermediate at step " + std::to_string(k) +
                           " (eta blowup?)");
    out.push_back(std::move(rho));
  }
  return out;
}

}  // namespace

Vector AugmentedTensor::readout() const {
  const int D = liouville_dim;
  Vector rho = Vector::Zero(D);
  for (std::size_t idx = 0; idx < entries.size(); ++idx)
    rho(static_cast<Eigen::Index>(idx % static_cast<std::size_t>(D))) += entries[idx];
  return rho;
}

std::vector<DensityMatrix> brute_force_pi(const std::vector<SuperOperator>& steps,
                                          const std::vector<BathInfluence>& baths,
                                          const DensityMatrix& rho0, int n_steps,
                                          std::uint64_t max_paths) {
  const int d = rho0.dim();
  const int D = d * d;
  check_steps(steps, n_steps, d);
  if (n_steps < 1) throw ValidationError("brute_force_pi: n_steps must be >= 1");

  const std::uint64_t paths = checked_pow(static_cast<std::uint64_t>(D), n_steps + 1, max_paths);
  if (paths > max_paths)
    throw ResourceError("brute_force_pi: (d^2)^(N+1) = " + std::to_string(d * d) + "^" +
                        std::to_string(n_steps + 1) + " paths exceed the budget of " +
                        std::to_string(max_paths));

  const int max_lag = std::max(1, n_steps - 1);
  const InfluenceExponents ex = build_exponents(baths, d, max_lag);

  const Vector rho0v = rho0.vec();
  std::vector<DensityMatrix> out;
  out.reserve(n_steps);

  std::vector<int> u(static_cast<std::size_t>(n_steps) + 1, 0);
  for (int n = 1; n <= n_steps; ++n) {
    Vector rho = Vector::Zero(D);
    std::fill(u.begin(), u.end(), 0);
    const std::uint64_t count = checked_pow(static_cast<std::uint64_t>(D), n + 1, max_paths);
    for (std::uint64_t p = 0; p < count; ++p) {
      // Decode the path from the counter.
      std::uint64_t tmp = p;
      for (int j = 0; j <= n; ++j) {
        u[static_cast<std::size_t>(j)] = static_cast<int>(tmp % static_cast<std::uint64_t>(D));
        tmp /= static_cast<std::uint64_t>(D);
      }
      Complex amp = rho0v(u[0]);
      for (int j = 1; j <= n; ++j)
        amp *= steps[static_cast<std::size_t>(j) - 1].m(u[static_cast<std::size_t>(j)],
                                                        u[static_cast<std::size_t>(j) - 1]);
      if (amp == Complex(0.0, 0.0)) continue;
      Complex exponent(0.0, 0.0);
      for (int k = 1; k <= n; ++k) {
        exponent += ex.self(u[static_cast<std::size_t>(k)]);
        for (int kp = 1; kp < k; ++kp)
          exponent += ex.pair[static_cast<std::size_t>(k - kp) - 1](
              u[static_cast<std::size_t>(k)], u[static_cast<std::size_t>(kp)]);
      }
      rho(u[static_cast<std::size_t>(n)]) += amp * std::exp(-exponent);
    }
    out.push_back(DensityMatrix::raw(unvectorize(rho)));
  }
  return out;
}

std::vector<DensityMatrix> iterative_pi(const std::vector<SuperOperator>& steps,
                                        const std::vector<BathInfluence>& baths,
                                        const DensityMatrix& rho0, int n_steps, int k_max,
                                        std::uint64_t memory_budget) {
  if (n_steps < 1) throw ValidationError("iterative_pi: n_steps must be >= 1");
  const auto vecs = iterate_paths(steps, baths, rho0.vec(), n_steps, k_max, memory_budget);
  std::vector<DensityMatrix> out;
  out.reserve(vecs.size());
  for (const auto& v : vecs) out.push_back(DensityMatrix::raw(unvectorize(v)));
  return out;
}

DynamicalMapSeries dynamical_maps(const std::vector<SuperOperator>& steps,
                                  const std::vector<BathInfluence>& baths, int n_steps,
                                  int k_max, double dt, std::uint64_t memory_budget,
                                  int threads) {
  if (n_steps < 1) throw ValidationError("dynamical_maps: n_steps must be >= 1");
  if (steps.empty()) throw ValidationError("dynamical_maps: empty step series");
  const int d = steps.front().dim();
  const int D = d * d;

  DynamicalMapSeries series;
  series.dt = dt;
  series.maps.assign(static_cast<std::size_t>(n_steps), SuperOperator::zero(d));

  int n_workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::clamp(n_workers, 1, D);

  std::atomic<int> next_col{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int col = next_col.fetch_add(1);
      if (col >= D || failed.load()) return;
      try {
        Vector unit = Vector::Zero(D);
        unit(col) = 1.0;
        const auto states = iterate_paths(steps, baths, unit, n_steps, k_max, memory_budget);
        for (int n = 0; n < n_steps; ++n)
          series.maps[static_cast<std::size_t>(n)].m.col(col) = states[static_cast<std::size_t>(n)];
      } catch (const std::exception& e) {
        std::scoped_lock lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw NumericalError("dynamical_maps: " + error_message);
  return series;
}

}  // namespace pild
