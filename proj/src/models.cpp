#include "pild/models.hpp"

#include <cmath>
#include <functional>

namespace pild {

namespace {

enum : int { kGG = 0, kGE = 1, kEG = 2, kEE = 3 };

// One named linear functional of rho.
using ObservableFn = std::function<double(const Matrix&)>;

ObservableFn resolve_observable(int d, const std::string& name) {
  auto population = [](int i) {
    return [i](const Matrix& rho) { return rho(i, i).real(); };
  };
  if (name.rfind("pop_", 0) == 0) {
    const std::string tail = name.substr(4);
    if (d == 4) {
      if (tail == "gg") return population(kGG);
      if (tail == "ge") return population(kGE);
      if (tail == "eg") return population(kEG);
      if (tail == "ee") return population(kEE);
    }
    try {
      const int i = std::stoi(tail);
      if (i >= 0 && i < d) return population(i);
    } catch (...) {
    }
  }
  if (d == 4 && name == "P1")
    return [](const Matrix& rho) { return (rho(kEG, kEG) + rho(kEE, kEE)).real(); };
  if (d == 4 && name == "P2")
    return [](const Matrix& rho) { return (rho(kGE, kGE) + rho(kEE, kEE)).real(); };
  if (d == 2 && name == "sigma_z")
    return [](const Matrix& rho) { return (rho(0, 0) - rho(1, 1)).real(); };
  throw ValidationError("unknown observable \"" + name + "\" for dimension " +
                        std::to_string(d));
}

}  // namespace

DimerModel build_dimer(const DimerSpec& spec) {
  Matrix h = Matrix::Zero(4, 4);
  h(kGE, kGE) = spec.eps2;
  h(kEG, kEG) = spec.eps1;
  h(kEE, kEE) = spec.eps1 + spec.eps2;
  h(kEG, kGE) = -spec.delta;
  h(kGE, kEG) = -spec.delta;

  std::vector<FieldTerm> field;
  if (spec.drive_amplitude != 0.0) {
    Matrix v = Matrix::Zero(4, 4);
    v(kEG, kEG) = 1.0;
    v(kGE, kGE) = -1.0;
    const double a = spec.drive_amplitude;
    const double omega = spec.drive_frequency;
    field.push_back({[a, omega](double t) { return a * std::cos(omega * t); }, std::move(v)});
  }

  DimerModel model{SystemHamiltonian(std::move(h), std::move(field)),
                   RealVector(4), RealVector(4), Matrix::Zero(4, 4), Matrix::Zero(4, 4)};
  model.coupling_monomer1 << 0, 0, 1, 1;
  model.coupling_monomer2 << 0, 1, 0, 1;
  model.pump_left(kEG, kGG) = 1.0;
  model.pump_left(kEE, kGE) = 1.0;
  model.drain_right(kGG, kGE) = 1.0;
  model.drain_right(kEG, kEE) = 1.0;
  return model;
}

SpinBosonModel build_spin_boson(double eps, double delta) {
  Matrix h(2, 2);
  h << eps, delta, delta, -eps;
  SpinBosonModel model{SystemHamiltonian(std::move(h)), RealVector(2)};
  model.coupling << 1, -1;
  return model;
}

ObservableTable evaluate_observables(const std::vector<DensityMatrix>& states,
                                     const std::vector<std::string>& names) {
  if (states.empty()) throw ValidationError("evaluate_observables: empty state series");
  const int d = states.front().dim();

  std::vector<ObservableFn> fns;
  fns.reserve(names.size());
  for (const auto& name : names) fns.push_back(resolve_observable(d, name));

  ObservableTable table;
  table.names = names;
  table.names.emplace_back("trace");
  table.names.emplace_back("min_eigenvalue");
  table.rows.reserve(states.size());

  for (const auto& state : states) {
    if (state.dim() != d)
      throw ValidationError("evaluate_observables: inconsistent state dimensions");
    const Matrix& rho = state.matrix();
    std::vector<double> row;
    row.reserve(fns.size() + 2);
    for (const auto& fn : fns) row.push_back(fn(rho));
    row.push_back(rho.trace().real());
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    row.push_back(es.eigenvalues().minCoeff());
    table.rows.push_back(std::move(row));
  }
  return table;
}

void check_observable_names(int dim, const std::vector<std::string>& names) {
  for (const auto& name : names) resolve_observable(dim, name);
}

}  // namespace pild
