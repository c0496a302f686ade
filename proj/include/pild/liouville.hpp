// Vectorized Liouvillian superoperators.
//
// With hbar = 1 the master equation reads
//   d vec(rho)/dt = -i (L0 + L_jump) vec(rho)
// where L0 = H (x) I - I (x) H^*  and
//   L_jump = i sum_n gamma_n(t) [ L_n (x) L_n^* - 1/2 (L_n^dag L_n (x) I + I (x) L_n^T L_n^*) ].
// Rates gamma_n(t) multiply the dissipator as prefactors, so negative rates
// are representable; complete positivity is then only monitored by callers,
// never enforced here.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pild/types.hpp"

namespace pild {

struct FieldTerm {
  std::function<double(double)> envelope;  // real scalar envelope of t
  Matrix op;                               // Hermitian operator it multiplies
};

/// H(t) = static_part + sum_i envelope_i(t) * op_i.  Every piece must be
/// Hermitian, which makes H(t) Hermitian for all t.
class SystemHamiltonian {
 public:
  explicit SystemHamiltonian(Matrix static_part, std::vector<FieldTerm> field_terms = {});

  int dim() const { return static_cast<int>(static_part_.rows()); }
  bool time_dependent() const { return !field_terms_.empty(); }
  const Matrix& static_part() const { return static_part_; }
  const std::vector<FieldTerm>& field_terms() const { return field_terms_; }

  Matrix at(double t) const;

 private:
  Matrix static_part_;
  std::vector<FieldTerm> field_terms_;
};

/// Lindblad jump operator with a (possibly time-dependent, possibly negative)
/// rate.  The rate enters the dissipator as a prefactor gamma_n(t).
struct JumpOperator {
  Matrix matrix;
  std::function<double(double)> rate = [](double) { return 1.0; };
  bool time_dependent_rate = false;

  static JumpOperator constant(Matrix m, double gamma = 1.0);
  static JumpOperator time_dependent(Matrix m, std::function<double(double)> gamma);
};

/// L0 = H (x) I - I (x) H^*.  Acting on vec(rho) this equals vec([H, rho]).
SuperOperator build_L0(const Matrix& h);

/// The jump-operator part of the Liouvillian at time t (see header comment
/// for the sign convention).  -i * result applied to vec(rho) is the usual
/// dissipator sum_n gamma_n(t) (L rho L^dag - 1/2 {L^dag L, rho}).
SuperOperator build_lindbladian(const std::vector<JumpOperator>& ops, double t, int dim);

/// Assembles L(t) = L0(t) + L_jump(t) for a system Hamiltonian plus jump
/// operators, caching every time-independent block.
class LiouvillianGenerator {
 public:
  LiouvillianGenerator(SystemHamiltonian h, std::vector<JumpOperator> jumps);

  int dim() const { return h_.dim(); }
  bool time_dependent() const { return time_dependent_; }

  /// L(t) = L0(t) + L_jump(t).
  SuperOperator liouvillian(double t) const;

  /// -i * L(t); the right-hand side matrix of d vec(rho)/dt = G(t) vec(rho).
  Matrix generator(double t) const;

  const SystemHamiltonian& hamiltonian() const { return h_; }
  const std::vector<JumpOperator>& jumps() const { return jumps_; }

 private:
  SystemHamiltonian h_;
  std::vector<JumpOperator> jumps_;
  bool time_dependent_ = false;
  Matrix static_liouvillian_;          // L0(static H) + constant-rate jump blocks
  std::vector<Matrix> field_blocks_;   // L0(op_i) per field term
  std::vector<Matrix> jump_blocks_;    // unit-rate dissipator block per time-dependent jump
  std::vector<std::size_t> jump_block_index_;  // indices into jumps_ for jump_blocks_
};

}  // namespace pild
