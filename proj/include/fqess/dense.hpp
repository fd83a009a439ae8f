#pragma once

#include <Eigen/Dense>

#include "fqess/pauli.hpp"

namespace fqess {

// Dense forms are reference/oracle paths: they are built by explicit
// Kronecker products, independently of the bitmask kernels, so the two
// implementations check each other.

// 2^n x 2^n matrix of a single word (unit coefficient).
Eigen::MatrixXcd word_matrix(const PauliWord& word);

// Dense Hermitian matrix of the full Pauli sum.  Guarded by `max_qubits`
// because memory grows as 4^n.
Eigen::MatrixXcd to_dense(const PauliHamiltonian& h, std::size_t max_qubits = 12);

struct ExactSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // column i pairs with eigenvalues[i]
};

ExactSpectrum exact_spectrum(const PauliHamiltonian& h,
                             std::size_t max_qubits = 12);

}  // namespace fqess
