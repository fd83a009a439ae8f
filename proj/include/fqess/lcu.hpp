#pragma once

#include <json.hpp>

#include "fqess/statevector.hpp"

namespace fqess {

// Circuit plan for one application of U = sum_j c_j P_j as a linear
// combination of unitaries.  Slot 0 carries the identity term (the biased
// identity coefficient) when it is live; zero-coefficient terms are dropped
// before padding, and pad slots hold identity words with zero amplitude.
struct LcuPlan {
  std::size_t work_qubits = 0;
  std::size_t live_terms = 0;     // L: nonzero coefficients
  std::size_t padded_terms = 0;   // L_pad: next power of two >= L
  std::size_t ancilla_qubits = 0; // log2(L_pad)
  double normalization = 0.0;     // C = sqrt(sum_j c_j^2)
  double bias = 0.0;              // lambda0 recorded for reporting only
  std::vector<double> coefficients;       // per slot, pads are 0
  std::vector<double> ancilla_amplitudes; // coefficients / C
  std::vector<PauliWord> words;           // per slot
};

// Builds the plan for an already-shifted operator (its identity coefficient
// is alpha_1 - lambda0).  `bias` is carried through to reports; a nonzero
// `min_ancilla_qubits` forces extra padding.  Throws ValidationError when
// every coefficient is zero.
LcuPlan build_plan(const PauliHamiltonian& shifted, double bias = 0.0,
                   std::size_t min_ancilla_qubits = 0);

struct ApplyOutcome {
  StateVector state;          // U psi / ||U psi||
  double success_probability; // ||U psi||^2 / (C^2 * L_pad)
  double raw_norm;            // ||U psi||
};

// Simulates the full circuit: amplitude encode on the ancillas, the
// branch-selected words, a Hadamard decode layer, and postselection of the
// all-zeros ancilla pattern.  Throws KernelVanished when ||U psi|| < 1e-12.
ApplyOutcome lcu_apply(const LcuPlan& plan, const StateVector& psi);

// Same operator applied term by term without ancillas; reports the success
// probability the circuit would have had.  The two paths agree to 1e-10.
ApplyOutcome direct_apply(const PauliHamiltonian& shifted,
                          const StateVector& psi);

nlohmann::json plan_to_json(const LcuPlan& plan);

}  // namespace fqess
