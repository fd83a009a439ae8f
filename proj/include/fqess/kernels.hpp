#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace fqess::kernels {

using cplx = std::complex<double>;

// Hot inner loops of the statevector simulator, bundled as a function table so
// the implementation can be swapped at runtime.  Two implementations ship: a
// portable scalar reference and an AVX2+FMA variant.  Both must agree to
// floating-point accuracy on every entry point; the equivalence suite checks
// this on randomized inputs.
//
// Pauli words are passed in bitmask form: bit q of `xmask` is set when the
// word acts with X or Y on qubit q, bit q of `zmask` when it acts with Z or Y.
// Callers fold the word's scalar prefactor i^{#Y} * (-1)^parity(xmask & zmask)
// together with any coefficient into `factor`, so every kernel computes
//
//   (P psi)[k] = factor * (-1)^parity(k & zmask) * psi[k ^ xmask]
//
// with no further bookkeeping.
struct KernelSet {
  const char* name;

  // sum_k |psi[k]|^2
  double (*norm_squared)(const cplx* psi, std::size_t dim);

  // psi[k] *= s
  void (*scale)(cplx* psi, std::size_t dim, double s);

  // dst[k] += a * src[k]
  void (*axpy)(cplx* dst, const cplx* src, std::size_t dim, cplx a);

  // In-place 2x2 gate m = [[m00, m01], [m10, m11]] (row-major) on `qubit` of
  // a register of dimension `dim`.
  void (*apply_1q_gate)(cplx* psi, std::size_t dim, unsigned qubit,
                        const cplx m[4]);

  // psi <- P psi in place.
  void (*pauli_apply)(cplx* psi, std::size_t dim, std::uint64_t xmask,
                      std::uint64_t zmask, cplx factor);

  // dst += P src.
  void (*pauli_axpy)(cplx* dst, const cplx* src, std::size_t dim,
                     std::uint64_t xmask, std::uint64_t zmask, cplx factor);

  // Re <psi| P |psi>.  P is Hermitian for any Pauli word with a real
  // coefficient folded into `factor`, so the real part is the physical value.
  double (*pauli_expectation)(const cplx* psi, std::size_t dim,
                              std::uint64_t xmask, std::uint64_t zmask,
                              cplx factor);
};

const KernelSet& scalar_kernels();

// True when this build carries the AVX2 translation unit and the CPU reports
// AVX2+FMA at runtime.
bool avx2_available();

// Valid only when avx2_available().
const KernelSet& avx2_kernels();

// Runtime-selected table: AVX2 when available, scalar otherwise.  Setting the
// environment variable FQESS_KERNELS=scalar forces the reference path.
const KernelSet& active_kernels();

}  // namespace fqess::kernels
