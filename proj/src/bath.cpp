#include "pild/bath.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace pild {

namespace {

constexpr double kPi = 3.14159265358979323846;

double coth_half(double beta, double omega) {
  if (std::isinf(beta)) return 1.0;  // zero temperature
  return 1.0 / std::tanh(0.5 * beta * omega);
}

// Adaptive Gauss-Kronrod over [0, 50 omega_c].  Both the requested tolerance
// and the returned error estimate are checked; a miss signals pathological
// parameters rather than being papered over.
template <typename F>
Complex integrate_spectral(F&& f, double omega_c, double quad_tol, const char* what) {
  using boost::math::quadrature::gauss_kronrod;
  const double omega_max = 50.0 * omega_c;
  double err = 0.0;
  const Complex result =
      gauss_kronrod<double, 15>::integrate(f, 0.0, omega_max, 15, quad_tol, &err);
  if (!std::isfinite(err) || err > 1e-8)
    throw NumericalError(std::string(what) + ": quadrature did not converge (error estimate " +
                         std::to_string(err) + ")");
  return result;
}

}  // namespace

double SpectralDensity::value(double omega) const {
  return 0.5 * kPi * xi * omega * std::exp(-omega / omega_c);
}

Complex bath_correlation(const SpectralDensity& sd, double beta, double t, double quad_tol) {
  if (!(beta > 0.0)) throw ValidationError("bath_correlation: beta must be positive or inf");
  if (sd.xi == 0.0) return {0.0, 0.0};
  auto integrand = [&](double w) -> Complex {
    const double j = sd.value(w);
    return (1.0 / kPi) * j *
           Complex(coth_half(beta, w) * std::cos(w * t), -std::sin(w * t));
  };
  return integrate_spectral(integrand, sd.omega_c, quad_tol, "bath_correlation");
}

Complex EtaTable::at(int k, int kp) const {
  const int l = k - kp;
  if (l < 0 || l > k_max) throw ValidationError("EtaTable: lag out of range");
  return l == 0 ? diag : lag[static_cast<std::size_t>(l) - 1];
}

EtaTable eta_table(const BathSpec& bath, double dt, int k_max, int n_steps, double quad_tol) {
  if (!(dt > 0.0)) throw ValidationError("eta_table: dt must be > 0");
  if (k_max < 1 || k_max > n_steps)
    throw ValidationError("eta_table: require 1 <= k_max <= n_steps");
  if (!(bath.beta > 0.0)) throw ValidationError("eta_table: beta must be positive or inf");

  EtaTable table;
  table.dt = dt;
  table.k_max = k_max;
  table.lag.assign(k_max, Complex(0.0, 0.0));
  table.diag = Complex(0.0, 0.0);

  const auto& sd = bath.spectral_density;
  if (sd.xi == 0.0) return table;

  // Exact double-time integrals of C over grid cells, reduced to single
  // frequency integrals:
  //   eta_diag = (1/pi) Int J/w^2 [coth (1 - cos(w dt)) - i (w dt - sin(w dt))]
  //   eta_l    = (1/pi) Int J/w^2 4 sin^2(w dt/2) [coth cos(w l dt) - i sin(w l dt)]
  const double beta = bath.beta;

  table.diag = integrate_spectral(
      [&](double w) -> Complex {
        const double jw2 = sd.value(w) / (w * w);
        return (1.0 / kPi) * jw2 *
               Complex(coth_half(beta, w) * (1.0 - std::cos(w * dt)),
                       -(w * dt - std::sin(w * dt)));
      },
      sd.omega_c, quad_tol, "eta_table");

  for (int l = 1; l <= k_max; ++l) {
    table.lag[static_cast<std::size_t>(l) - 1] = integrate_spectral(
        [&](double w) -> Complex {
          const double s = std::sin(0.5 * w * dt);
          const double jw2 = sd.value(w) / (w * w);
          return (4.0 / kPi) * jw2 * s * s *
                 Complex(coth_half(beta, w) * std::cos(w * l * dt), -std::sin(w * l * dt));
        },
        sd.omega_c, quad_tol, "eta_table");
  }
  return table;
}

Complex influence_weight(const EtaTable& etas, std::span<const double> s_fwd,
                         std::span<const double> s_bwd) {
  if (s_fwd.size() != s_bwd.size())
    throw ValidationError("influence_weight: forward/backward lengths differ");
  if (s_fwd.size() > static_cast<std::size_t>(etas.k_max) + 1)
    throw ValidationError("influence_weight: segment longer than k_max + 1 points");
  Complex exponent(0.0, 0.0);
  const int n = static_cast<int>(s_fwd.size());
  for (int k = 0; k < n; ++k) {
    const double ds = s_fwd[k] - s_bwd[k];
    if (ds == 0.0) continue;
    for (int kp = 0; kp <= k; ++kp) {
      const Complex eta = etas.at(k, kp);
      exponent += ds * (eta * s_fwd[kp] - std::conj(eta) * s_bwd[kp]);
    }
  }
  return std::exp(-exponent);
}

}  // namespace pild
