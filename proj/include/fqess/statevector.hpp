#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fqess/pauli.hpp"
#include "fqess/rng.hpp"

namespace fqess {

enum class BasisState { Zero, One, Plus, Minus };

// Work register in qubits [0, work_qubits), ancilla register in
// [work_qubits, work_qubits + ancilla_qubits).  Fixing the ancilla value to j
// selects the contiguous amplitude block [j * 2^work, (j+1) * 2^work).
struct RegisterLayout {
  std::size_t work_qubits;
  std::size_t ancilla_qubits;
  std::size_t total() const { return work_qubits + ancilla_qubits; }
};

// Dense complex amplitude vector over 2^qubits basis states.  Qubit 0 is the
// least significant bit of the basis index.  All gate helpers are unitary and
// preserve the norm to roundoff; postselect() is the only renormalizing
// operation.
class StateVector {
 public:
  explicit StateVector(std::size_t qubits);  // |0...0>
  static StateVector from_amplitudes(std::vector<cplx> amps);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx* data() { return amps_.data(); }
  const cplx* data() const { return amps_.data(); }
  cplx operator[](std::size_t k) const { return amps_[k]; }

  double norm() const;
  void normalize();  // throws ValidationError on (near-)zero vectors

  void apply_gate(std::size_t qubit, const cplx m[4]);
  void apply_ry(std::size_t qubit, double theta);
  void apply_rz(std::size_t qubit, double theta);
  void apply_hadamard(std::size_t qubit);
  void apply_phase(std::size_t qubit, cplx factor);  // diag(1, factor)
  void apply_cz(std::size_t a, std::size_t b);
  void apply_controlled_gate(std::size_t control, std::size_t target,
                             const cplx m[4]);

  // P acting on the full register (word width must equal qubits()).
  void apply_pauli_word(const PauliWord& word);
  // P acting on the listed qubits (word width must equal targets.size()).
  void apply_pauli_word(const PauliWord& word,
                        std::span<const std::size_t> targets);

  // Applies `word` to the work register only on the amplitude block whose
  // ancilla value equals `branch` (the select step of an LCU circuit).
  void apply_selected_word(const RegisterLayout& layout, std::size_t branch,
                           const PauliWord& word);

 private:
  void check_qubit(std::size_t qubit) const;

  std::size_t qubits_;
  std::vector<cplx> amps_;
};

// Product state from per-qubit factors listed in tensor order: the first
// factor is the highest qubit.  init_product({Zero, Plus}) on two qubits is
// |0> on qubit 1 and |+> on qubit 0, i.e. amplitudes (1/sqrt2, 1/sqrt2, 0, 0).
StateVector init_product(const std::vector<BasisState>& factors);

cplx inner_product(const StateVector& a, const StateVector& b);  // <a|b>

struct PostselectResult {
  StateVector state;  // work register only, renormalized
  double probability;
};

// Projects the ancilla register onto `pattern` ('0'/'1' string, leftmost =
// highest ancilla qubit).  Throws KernelVanished (see lcu.hpp) when the
// pattern probability is below 1e-14.
PostselectResult postselect(const StateVector& state,
                            const RegisterLayout& layout,
                            const std::string& pattern);

struct ShotCounts {
  std::map<std::string, std::uint64_t> counts;  // key char j = qubits[j] value
  std::uint64_t shots = 0;
};

// Computational-basis sampling of the listed qubits (marginal over the rest).
ShotCounts sample_shots(const StateVector& state,
                        std::span<const std::size_t> qubits,
                        std::uint64_t shots, Rng& rng);

// <state| P |state>; real because Pauli words are Hermitian.
double word_expectation(const PauliWord& word, const StateVector& state);

// Shot-based estimate of word_expectation: rotates a copy into the word's
// eigenbasis, samples `shots` times, averages the parity signs.  shots == 0
// falls through to the exact value.
double sampled_word_expectation(const PauliWord& word, const StateVector& state,
                                std::uint64_t shots, Rng& rng);

// sum_j alpha_j <state| P_j |state>.
double energy(const PauliHamiltonian& h, const StateVector& state);

}  // namespace fqess
