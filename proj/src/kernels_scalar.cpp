#include "fqess/kernels.hpp"

#include <bit>
#include <utility>

namespace fqess::kernels {
namespace {

inline double parity_sign(std::uint64_t bits) {
  return (std::popcount(bits) & 1u) ? -1.0 : 1.0;
}

double s_norm_squared(const cplx* psi, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    acc += psi[k].real() * psi[k].real() + psi[k].imag() * psi[k].imag();
  }
  return acc;
}

void s_scale(cplx* psi, std::size_t dim, double s) {
  for (std::size_t k = 0; k < dim; ++k) psi[k] *= s;
}

void s_axpy(cplx* dst, const cplx* src, std::size_t dim, cplx a) {
  for (std::size_t k = 0; k < dim; ++k) dst[k] += a * src[k];
}

void s_apply_1q_gate(cplx* psi, std::size_t dim, unsigned qubit,
                     const cplx m[4]) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = 0; i < stride; ++i) {
      const std::size_t lo = base + i;
      const std::size_t hi = lo + stride;
      const cplx a = psi[lo];
      const cplx b = psi[hi];
      psi[lo] = m[0] * a + m[1] * b;
      psi[hi] = m[2] * a + m[3] * b;
    }
  }
}

void s_pauli_apply(cplx* psi, std::size_t dim, std::uint64_t xmask,
                   std::uint64_t zmask, cplx factor) {
  if (xmask == 0) {
    for (std::size_t k = 0; k < dim; ++k) {
      psi[k] *= factor * parity_sign(k & zmask);
    }
    return;
  }
  // Visit each {k, k^xmask} pair once via the highest flipped bit.
  const std::size_t pivot = std::size_t{1} << (63 - std::countl_zero(xmask));
  for (std::size_t base = 0; base < dim; base += 2 * pivot) {
    for (std::size_t i = 0; i < pivot; ++i) {
      const std::size_t k = base + i;
      const std::size_t j = k ^ xmask;
      const cplx vk = psi[k];
      const cplx vj = psi[j];
      psi[k] = factor * parity_sign(k & zmask) * vj;
      psi[j] = factor * parity_sign(j & zmask) * vk;
    }
  }
}

void s_pauli_axpy(cplx* dst, const cplx* src, std::size_t dim,
                  std::uint64_t xmask, std::uint64_t zmask, cplx factor) {
  for (std::size_t k = 0; k < dim; ++k) {
    dst[k] += factor * parity_sign(k & zmask) * src[k ^ xmask];
  }
}

double s_pauli_expectation(const cplx* psi, std::size_t dim,
                           std::uint64_t xmask, std::uint64_t zmask,
                           cplx factor) {
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < dim; ++k) {
    acc += parity_sign(k & zmask) * std::conj(psi[k]) * psi[k ^ xmask];
  }
  return (factor * acc).real();
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet table{
      "scalar",        s_norm_squared, s_scale,
      s_axpy,          s_apply_1q_gate, s_pauli_apply,
      s_pauli_axpy,    s_pauli_expectation,
  };
  return table;
}

}  // namespace fqess::kernels
