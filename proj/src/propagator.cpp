#include "pild/propagator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace pild {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order embedded weights (include the FSAL stage).
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

SuperOperator propagator_static(const SuperOperator& liouvillian, double dt) {
  if (!liouvillian.m.allFinite())
    throw NumericalError("propagator_static: Liouvillian has non-finite entries");
  const Matrix a = Complex(0.0, -dt) * liouvillian.m;
  return SuperOperator(a.exp());
}

SuperOperator propagator_timedep(const PropagatorRequest& req) {
  if (!(req.dt > 0.0)) throw ValidationError("PropagatorRequest: dt must be > 0");
  if (!(req.tolerance > 0.0) || req.tolerance > 1e-2)
    throw ValidationError("PropagatorRequest: tolerance must lie in (0, 1e-2]");

  const auto& gen = req.generator;
  if (!gen.time_dependent()) return propagator_static(gen.liouvillian(req.t_start), req.dt);

  const int n = gen.dim() * gen.dim();
  const double t_end = req.t_start + req.dt;
  const double tol = req.tolerance;

  Matrix k = Matrix::Identity(n, n);
  double t = req.t_start;
  double h = req.dt;

  auto rhs = [&gen](double time, const Matrix& y) -> Matrix {
    Matrix g = gen.generator(time);
    if (!g.allFinite())
      throw NumericalError("propagator_timedep: generator has non-finite entries at t = " +
                           std::to_string(time));
    return g * y;
  };

  Matrix f1 = rhs(t, k);  // FSAL: reused across accepted steps
  const double h_min = 1e-14 * req.dt;

  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h < h_min)
      throw NumericalError("propagator_timedep: step-size underflow at t = " + std::to_string(t) +
                           " (pathological envelope?)");

    const Matrix f2 = rhs(t + c2 * h, k + h * (a21 * f1));
    const Matrix f3 = rhs(t + c3 * h, k + h * (a31 * f1 + a32 * f2));
    const Matrix f4 = rhs(t + c4 * h, k + h * (a41 * f1 + a42 * f2 + a43 * f3));
    const Matrix f5 = rhs(t + c5 * h, k + h * (a51 * f1 + a52 * f2 + a53 * f3 + a54 * f4));
    const Matrix f6 = rhs(t + h, k + h * (a61 * f1 + a62 * f2 + a63 * f3 + a64 * f4 + a65 * f5));
    const Matrix y5 = k + h * (b1 * f1 + b3 * f3 + b4 * f4 + b5 * f5 + b6 * f6);
    const Matrix f7 = rhs(t + h, y5);
    const Matrix y4 = k + h * (e1 * f1 + e3 * f3 + e4 * f4 + e5 * f5 + e6 * f6 + e7 * f7);

    const double scale = std::max(1.0, y5.cwiseAbs().maxCoeff());
    const double err = (y5 - y4).cwiseAbs().maxCoeff() / scale;

    if (err <= tol) {
      t += h;
      k = y5;
      f1 = f7;
    }
    const double growth = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    h *= std::clamp(growth, 0.2, 5.0);
  }
  return SuperOperator(std::move(k));
}

std::vector<SuperOperator> propagator_series(const LiouvillianGenerator& gen, double t0,
                                             double dt, int n_steps, double tolerance) {
  if (n_steps < 1) throw ValidationError("propagator_series: n_steps must be >= 1");
  std::vector<SuperOperator> out;
  out.reserve(n_steps);
  if (!gen.time_dependent()) {
    const SuperOperator k = propagator_static(gen.liouvillian(t0), dt);
    for (int j = 0; j < n_steps; ++j) out.push_back(k);
    return out;
  }
  for (int j = 0; j < n_steps; ++j) {
    PropagatorRequest req{gen, t0 + j * dt, dt, tolerance};
    out.push_back(propagator_timedep(req));
  }
  return out;
}

}  // namespace pild
