#include "fqess/baselines.hpp"

#include <cmath>

namespace fqess {

StateVector ansatz_state(const HardwareEfficientAnsatz& ansatz,
                         std::span<const double> params,
                         const StateVector& initial) {
  if (initial.qubits() != ansatz.qubits) {
    throw ValidationError("initial state width does not match ansatz");
  }
  if (params.size() != ansatz.parameter_count()) {
    throw ValidationError("parameter count does not match ansatz");
  }
  StateVector state = initial;
  const std::size_t n = ansatz.qubits;
  for (std::size_t layer = 0; layer < ansatz.depth; ++layer) {
    const std::size_t base = layer * 2 * n;
    for (std::size_t q = 0; q < n; ++q) state.apply_ry(q, params[base + q]);
    for (std::size_t q = 0; q < n; ++q) state.apply_rz(q, params[base + n + q]);
    for (std::size_t q = 0; q + 1 < n; ++q) state.apply_cz(q, q + 1);
  }
  return state;
}

double vqd_objective(std::span<const double> params,
                     const HardwareEfficientAnsatz& ansatz,
                     const PauliHamiltonian& h, const StateVector& initial,
                     std::span<const StateVector> found, double beta) {
  const StateVector state = ansatz_state(ansatz, params, initial);
  double value = energy(h, state);
  for (const auto& f : found) {
    value += beta * std::norm(inner_product(f, state));
  }
  return value;
}

double default_vqd_penalty(const PauliHamiltonian& h) {
  double bound = 0.0;
  for (const auto& t : h.terms()) bound += std::abs(t.coefficient);
  return 2.0 * bound;
}

double ssvqe_objective(std::span<const double> params,
                       const HardwareEfficientAnsatz& ansatz,
                       const PauliHamiltonian& h,
                       std::span<const StateVector> initial_states,
                       std::span<const double> weights) {
  if (initial_states.size() != weights.size() || initial_states.empty()) {
    throw ValidationError("SSVQE needs one weight per start state");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < initial_states.size(); ++i) {
    const StateVector state = ansatz_state(ansatz, params, initial_states[i]);
    value += weights[i] * energy(h, state);
  }
  return value;
}

OptimizeResult optimize(const std::function<double(std::span<const double>)>& f,
                        std::vector<double> params0,
                        const OptimizerSettings& settings) {
  if (params0.empty()) throw ValidationError("optimizer needs >= 1 parameter");
  if (!(settings.step_size > 0.0) || !(settings.fd_step > 0.0)) {
    throw ValidationError("optimizer steps must be positive");
  }
  OptimizeResult result;
  std::vector<double> x = std::move(params0);
  std::vector<double> grad(x.size());
  double value = f(x);
  const double initial_value = value;
  result.params = x;
  result.value = value;
  result.value_trace.push_back(value);

  const double runaway = 10.0 * (1.0 + std::abs(initial_value));
  for (std::size_t it = 1; it <= settings.max_iterations; ++it) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double keep = x[i];
      x[i] = keep + settings.fd_step;
      const double up = f(x);
      x[i] = keep - settings.fd_step;
      const double down = f(x);
      x[i] = keep;
      grad[i] = (up - down) / (2.0 * settings.fd_step);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] -= settings.step_size * grad[i];
    }
    const double prev = value;
    value = f(x);
    result.value_trace.push_back(value);
    result.iterations = it;
    if (value < result.value) {
      result.value = value;
      result.params = x;
    }
    if (value > initial_value + runaway) {
      result.diverged = true;
      break;
    }
    if (std::abs(value - prev) < settings.value_tolerance) break;
  }
  return result;
}

}  // namespace fqess
