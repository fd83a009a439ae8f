#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fqess/dense.hpp"
#include "fqess/statevector.hpp"

// Shared randomized-test utilities.  Engines are always seeded by the caller
// so every failure is reproducible from the test source alone.
namespace testutil {

using fqess::cplx;

inline double urand(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}
inline double urand_pm(std::mt19937_64& eng) { return 2.0 * urand(eng) - 1.0; }

inline std::vector<cplx> random_amplitudes(std::size_t dim,
                                           std::mt19937_64& eng) {
  std::vector<cplx> amps(dim);
  for (auto& a : amps) a = cplx{urand_pm(eng), urand_pm(eng)};
  return amps;
}

inline fqess::StateVector random_state(std::size_t qubits,
                                       std::mt19937_64& eng) {
  return fqess::StateVector::from_amplitudes(
      random_amplitudes(std::size_t{1} << qubits, eng));
}

inline fqess::PauliWord random_word(std::size_t qubits, std::mt19937_64& eng) {
  std::vector<fqess::PauliAxis> axes(qubits);
  for (auto& a : axes) a = static_cast<fqess::PauliAxis>(eng() % 4);
  return fqess::PauliWord(std::move(axes));
}

inline fqess::PauliHamiltonian random_hamiltonian(std::size_t qubits,
                                                  std::size_t max_terms,
                                                  std::mt19937_64& eng) {
  std::vector<fqess::WeightedTerm> terms;
  const std::size_t count = 1 + eng() % max_terms;
  for (std::size_t i = 0; i < count; ++i) {
    terms.push_back({urand_pm(eng), random_word(qubits, eng)});
  }
  return fqess::PauliHamiltonian(qubits, std::move(terms));
}

inline Eigen::VectorXcd to_eigen(const fqess::StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t k = 0; k < s.dim(); ++k) {
    v(static_cast<Eigen::Index>(k)) = s[k];
  }
  return v;
}

inline fqess::StateVector from_eigen(const Eigen::VectorXcd& v) {
  std::vector<cplx> amps(static_cast<std::size_t>(v.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    amps[static_cast<std::size_t>(k)] = v(k);
  }
  return fqess::StateVector::from_amplitudes(std::move(amps));
}

// 0 when the normalized states agree up to a global phase.
inline double phase_distance(const fqess::StateVector& a,
                             const fqess::StateVector& b) {
  return std::abs(1.0 - std::abs(inner_product(a, b)));
}

inline double max_component_diff(const fqess::StateVector& a,
                                 const fqess::StateVector& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    m = std::max(m, std::abs(a[k] - b[k]));
  }
  return m;
}

}  // namespace testutil
