#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fqess/kernels.hpp"
#include "fqess/rng.hpp"

namespace fqess {

using cplx = kernels::cplx;

// Malformed Hamiltonian text (bad coefficient, unknown axis letter,
// inconsistent word lengths, no terms).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally invalid arguments (size mismatches, out-of-range qubits,
// non-finite coefficients, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operator annihilated the state (or a postselection pattern carries
// ~zero probability): the iteration cannot continue from this state.
class KernelVanished : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iteration budget ran out before the requested accuracy was met.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(PauliAxis axis);
PauliAxis axis_from_char(char c);  // throws ParseError on anything but IXYZ

// An n-qubit Pauli word.  axis(q) is the single-qubit operator on qubit q,
// where qubit 0 is the least significant basis-index bit.  The string form
// reads in tensor notation: leftmost character = highest qubit.
class PauliWord {
 public:
  explicit PauliWord(std::vector<PauliAxis> axes);
  explicit PauliWord(std::string_view text);  // e.g. "ZI" = Z on qubit 1
  static PauliWord identity(std::size_t qubits);

  std::size_t size() const { return axes_.size(); }
  PauliAxis axis(std::size_t qubit) const { return axes_.at(qubit); }
  bool is_identity() const;
  std::string str() const;

  // Base-4 encoding with qubit q in digit q; unique per word for fixed size.
  std::uint64_t code() const;
  static PauliWord from_code(std::uint64_t code, std::size_t qubits);

  // Bitmask form consumed by the kernels: bit q of x set for X/Y on qubit q,
  // bit q of z set for Z/Y.  phase = i^{#Y} * (-1)^parity(x & z) so that
  // (P psi)[k] = phase * (-1)^parity(k & z) * psi[k ^ x].
  struct Masks {
    std::uint64_t x;
    std::uint64_t z;
    cplx phase;
  };
  Masks masks() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::vector<PauliAxis> axes_;
};

struct WeightedTerm {
  double coefficient;
  PauliWord word;
};

// Real-weighted Pauli sum H = sum_j alpha_j P_j.  Construction validates word
// lengths and finiteness and merges duplicate words (first-seen order), so
// the term list always holds distinct words.
class PauliHamiltonian {
 public:
  PauliHamiltonian(std::size_t qubits, std::vector<WeightedTerm> terms);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return std::size_t{1} << qubits_; }
  const std::vector<WeightedTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // 0.0 when the word does not appear.
  double coefficient_of(const PauliWord& word) const;

 private:
  std::size_t qubits_;
  std::vector<WeightedTerm> terms_;
};

// Text format: one "coefficient word" pair per line, '#' starts a comment,
// blank lines are skipped.  Example:
//   # minimal H2
//   -1.04235 I
//   0.1813   X
//   -0.78865 Z
PauliHamiltonian parse_hamiltonian(std::string_view text);
PauliHamiltonian load_hamiltonian(const std::string& path);
std::string serialize_hamiltonian(const PauliHamiltonian& h);

// H - lambda0 * Identity.  The identity term is created (at the front) when
// absent so downstream consumers always find an explicit identity slot.
PauliHamiltonian shift(const PauliHamiltonian& h, double lambda0);

// Bias that places lambda0 above the whole spectrum: alpha_I + sum |alpha_j|
// over non-identity terms, plus `margin`; falls back to `margin` alone when
// that bound is not positive.
double default_bias(const PauliHamiltonian& h, double margin = 0.1);

// Adds a coefficient perturbation delta_q * Z_q on every qubit, with
// delta_q = eta * u_q * max_j |alpha_j| and u_q uniform in [-1, 1].
// eta == 0 returns h unchanged without consuming randomness.
PauliHamiltonian add_noise(const PauliHamiltonian& h, double eta, Rng& rng);

struct ResourceEstimate {
  std::size_t work_qubits;
  std::size_t ancilla_qubits;
  std::size_t total_qubits;
  std::size_t live_terms;    // terms with nonzero coefficient
  std::size_t padded_terms;  // next power of two >= live_terms
  std::size_t gate_estimate; // n * L_pad * log2(L_pad); 0 for a single term
};
ResourceEstimate estimate_resources(const PauliHamiltonian& h);

}  // namespace fqess
