#include "pild/liouville.hpp"

namespace pild {

namespace {

const Complex kI(0.0, 1.0);

// i [ L (x) L^* - 1/2 (L^dag L (x) I + I (x) L^T L^*) ] at unit rate.
Matrix dissipator_block(const Matrix& l) {
  const auto d = l.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix ldl = l.adjoint() * l;
  return kI * (kron(l, l.conjugate()) -
               0.5 * (kron(ldl, id) + kron(id, ldl.transpose())));
}

}  // namespace

SystemHamiltonian::SystemHamiltonian(Matrix static_part, std::vector<FieldTerm> field_terms)
    : static_part_(std::move(static_part)), field_terms_(std::move(field_terms)) {
  if (static_part_.rows() != static_part_.cols())
    throw ValidationError("SystemHamiltonian: static part must be square");
  if (hermiticity_residual(static_part_) > kHermitianTol)
    throw ValidationError("SystemHamiltonian: static part is not Hermitian");
  for (const auto& term : field_terms_) {
    if (term.op.rows() != static_part_.rows() || term.op.cols() != static_part_.cols())
      throw ValidationError("SystemHamiltonian: field operator dimension mismatch");
    if (hermiticity_residual(term.op) > kHermitianTol)
      throw ValidationError("SystemHamiltonian: field operator is not Hermitian");
    if (!term.envelope) throw ValidationError("SystemHamiltonian: missing envelope function");
  }
}

Matrix SystemHamiltonian::at(double t) const {
  Matrix h = static_part_;
  for (const auto& term : field_terms_) h += term.envelope(t) * term.op;
  return h;
}

JumpOperator JumpOperator::constant(Matrix m, double gamma) {
  JumpOperator op;
  op.matrix = std::move(m);
  op.rate = [gamma](double) { return gamma; };
  op.time_dependent_rate = false;
  return op;
}

JumpOperator JumpOperator::time_dependent(Matrix m, std::function<double(double)> gamma) {
  JumpOperator op;
  op.matrix = std::move(m);
  op.rate = std::move(gamma);
  op.time_dependent_rate = true;
  return op;
}

SuperOperator build_L0(const Matrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("build_L0: Hamiltonian must be square");
  if (hermiticity_residual(h) > kHermitianTol)
    throw ValidationError("build_L0: Hamiltonian is not Hermitian");
  const Matrix id = Matrix::Identity(h.rows(), h.cols());
  return SuperOperator(kron(h, id) - kron(id, h.conjugate()));
}

SuperOperator build_lindbladian(const std::vector<JumpOperator>& ops, double t, int dim) {
  Matrix sum = Matrix::Zero(dim * dim, dim * dim);
  for (const auto& op : ops) {
    if (op.matrix.rows() != dim || op.matrix.cols() != dim)
      throw ValidationError("build_lindbladian: jump operator dimension mismatch");
    sum += op.rate(t) * dissipator_block(op.matrix);
  }
  return SuperOperator(std::move(sum));
}

LiouvillianGenerator::LiouvillianGenerator(SystemHamiltonian h, std::vector<JumpOperator> jumps)
    : h_(std::move(h)), jumps_(std::move(jumps)) {
  const int d = h_.dim();
  static_liouvillian_ = build_L0(h_.static_part()).m;
  for (std::size_t n = 0; n < jumps_.size(); ++n) {
    const auto& op = jumps_[n];
    if (op.matrix.rows() != d || op.matrix.cols() != d)
      throw ValidationError("LiouvillianGenerator: jump operator dimension mismatch");
    if (op.time_dependent_rate) {
      jump_blocks_.push_back(dissipator_block(op.matrix));
      jump_block_index_.push_back(n);
    } else {
      static_liouvillian_ += op.rate(0.0) * dissipator_block(op.matrix);
    }
  }
  for (const auto& term : h_.field_terms()) field_blocks_.push_back(build_L0(term.op).m);
  time_dependent_ = h_.time_dependent() || !jump_blocks_.empty();
}

SuperOperator LiouvillianGenerator::liouvillian(double t) const {
  if (!time_dependent_) return SuperOperator(static_liouvillian_);
  Matrix m = static_liouvillian_;
  const auto& terms = h_.field_terms();
  for (std::size_t i = 0; i < terms.size(); ++i) m += terms[i].envelope(t) * field_blocks_[i];
  for (std::size_t i = 0; i < jump_blocks_.size(); ++i)
    m += jumps_[jump_block_index_[i]].rate(t) * jump_blocks_[i];
  return SuperOperator(std::move(m));
}

Matrix LiouvillianGenerator::generator(double t) const {
  return Complex(0.0, -1.0) * liouvillian(t).m;
}

}  // namespace pild
