#pragma once

#include <functional>

#include "fqess/statevector.hpp"

namespace fqess {

// Hardware-efficient variational circuit: per layer, Ry then Rz rotations on
// every qubit followed by a CZ chain on neighbouring pairs.  Parameters are
// layer-major: [ry q0..qn-1, rz q0..qn-1] repeated per layer.
struct HardwareEfficientAnsatz {
  std::size_t qubits = 1;
  std::size_t depth = 3;
  std::size_t parameter_count() const { return 2 * qubits * depth; }
};

StateVector ansatz_state(const HardwareEfficientAnsatz& ansatz,
                         std::span<const double> params,
                         const StateVector& initial);

// VQD objective: <H> plus beta * sum_i |<found_i|state>|^2.
double vqd_objective(std::span<const double> params,
                     const HardwareEfficientAnsatz& ansatz,
                     const PauliHamiltonian& h, const StateVector& initial,
                     std::span<const StateVector> found, double beta);

// Default overlap penalty: twice the coefficient 1-norm (an upper bound on
// the spectral range), so converged lower states always repel.
double default_vqd_penalty(const PauliHamiltonian& h);

// SSVQE objective: sum_i w_i <init_i| A(params)^dag H A(params) |init_i>
// over mutually orthogonal start states.
double ssvqe_objective(std::span<const double> params,
                       const HardwareEfficientAnsatz& ansatz,
                       const PauliHamiltonian& h,
                       std::span<const StateVector> initial_states,
                       std::span<const double> weights);

struct OptimizerSettings {
  double step_size = 0.2;
  std::size_t max_iterations = 500;
  double fd_step = 1e-4;        // central-difference probe
  double value_tolerance = 1e-9;  // stop when improvement stays below this
};

struct OptimizeResult {
  std::vector<double> params;       // best parameters seen
  double value = 0.0;               // best value seen
  std::vector<double> value_trace;  // objective after each iteration
  std::size_t iterations = 0;
  bool diverged = false;
};

// First-order descent with central finite-difference gradients.  The result
// reports the best visited point, so its value never exceeds the starting
// value; runaway steps set `diverged` and stop early.
OptimizeResult optimize(const std::function<double(std::span<const double>)>& f,
                        std::vector<double> params0,
                        const OptimizerSettings& settings);

}  // namespace fqess
