#include "fqess/dense.hpp"

namespace fqess {
namespace {

Eigen::Matrix2cd axis_matrix(PauliAxis axis) {
  const cplx i{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (axis) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, -i, i, 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd word_matrix(const PauliWord& word) {
  // Qubit 0 is the least significant index bit, so it sits rightmost in the
  // Kronecker chain.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = word.size(); q-- > 0;) {
    m = kron(m, axis_matrix(word.axis(q)));
  }
  return m;
}

Eigen::MatrixXcd to_dense(const PauliHamiltonian& h, std::size_t max_qubits) {
  if (h.qubits() > max_qubits) {
    throw ValidationError("dense form requested above the qubit limit");
  }
  const auto dim = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    m += t.coefficient * word_matrix(t.word);
  }
  return m;
}

ExactSpectrum exact_spectrum(const PauliHamiltonian& h,
                             std::size_t max_qubits) {
  const Eigen::MatrixXcd m = to_dense(h, max_qubits);
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw ValidationError("dense form is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigendecomposition failed");
  }
  return ExactSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace fqess
