#pragma once

#include <functional>
#include <optional>

#include "fqess/lcu.hpp"

namespace fqess {

enum class ApplyPath { Direct, Lcu };
enum class IterationMode { Tolerance, FixedK };
enum class NoiseResampling { OncePerSolve, EachIteration };

struct SolverConfig {
  // lambda0; solve_spectrum picks default_bias(H) when unset and reuses the
  // same value at every deflation level.
  std::optional<double> bias;

  IterationMode iteration_mode = IterationMode::Tolerance;
  std::size_t fixed_k = 600;    // applications per level in FixedK mode
  std::size_t k_max = 100000;   // cap in Tolerance mode
  // Tolerance-mode stop: |E_k - E_{k-1}| < energy_tolerance / 10.
  double energy_tolerance = 0.0016;

  ApplyPath apply_path = ApplyPath::Direct;

  // Coefficient noise: eta scales the per-qubit Z perturbations.
  double noise_eta = 0.0;
  NoiseResampling noise_resampling = NoiseResampling::OncePerSolve;

  // 0 = exact expectation values; otherwise shots per Pauli word.
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;

  // Start state per level; defaults to |+>^n.  When the choice has no
  // component left outside the already-found subspace, the solver falls back
  // to the projected computational basis state with the largest residual.
  std::optional<StateVector> initial_state;

  // Deflation measures the full 4^n word basis up to this qubit count; above
  // it, only words already present in the operator are tracked.
  std::size_t full_basis_limit = 8;
};

struct PowerIterationResult {
  StateVector state;
  std::size_t k_used = 0;
  // energy_trace[k] = energy after k applications (k = 0 is the start state),
  // always measured against the unshifted operator of this level.
  std::vector<double> energy_trace;
  std::vector<double> success_probabilities;  // one entry per application
  bool stagnated = false;  // Tolerance mode ran into k_max
};

// Repeated normalized application of the shifted operator.  States in
// `deflated` are projected out after every application (and from the start
// state); this keeps levels that were already extracted from re-dominating
// when the remaining spectrum sits below the deflated slots.
// `config.bias` must carry the lambda0 that produced `shifted` so the energy
// trace can report unshifted energies.
PowerIterationResult power_iterate(const PauliHamiltonian& shifted,
                                   const StateVector& psi0,
                                   const SolverConfig& config,
                                   std::span<const StateVector> deflated = {});

// Same loop with a caller-supplied application step (used internally for
// per-iteration noise resampling); `level_h` is the unshifted operator whose
// energy is traced.
using ApplyFn = std::function<ApplyOutcome(const StateVector&)>;
PowerIterationResult power_iterate_with(const ApplyFn& apply,
                                        const PauliHamiltonian& level_h,
                                        const StateVector& psi0,
                                        const SolverConfig& config,
                                        std::span<const StateVector> deflated);

struct MeasuredComponents {
  std::vector<PauliWord> words;  // measurement support
  std::vector<double> components;  // epsilon_j = <psi|P_j|psi>
  double energy = 0.0;             // sum over h's terms of alpha_j * eps_j
};

// Measures epsilon_j for every word in `support` (exactly, or from `shots`
// samples per word) and assembles the energy estimate from h's coefficients.
MeasuredComponents measure_components(const PauliHamiltonian& h,
                                      const StateVector& state,
                                      std::span<const PauliWord> support,
                                      std::uint64_t shots, Rng& rng);
// Support defaults to h's own term words.
MeasuredComponents measure_components(const PauliHamiltonian& h,
                                      const StateVector& state,
                                      std::uint64_t shots, Rng& rng);

// One deflation update: alpha_j <- alpha_j - energy * eps_j / 2^n for every
// word in the measured support (creating terms absent from `h`).  Exact
// zeros are dropped.
PauliHamiltonian deflate(const PauliHamiltonian& h, double energy,
                         std::span<const PauliWord> support,
                         std::span<const double> components);

struct DeflationStep {
  std::size_t level = 0;  // extraction order (dominance order, not ascending)
  double energy = 0.0;
  std::size_t k_used = 0;
  bool stagnated = false;
  std::vector<PauliWord> words;
  std::vector<double> components;
  std::vector<double> energy_trace;
  std::vector<double> success_probability_trace;
  std::vector<WeightedTerm> coefficients_next;
};

struct SpectrumResult {
  std::size_t qubits = 0;
  double bias = 0.0;
  std::vector<DeflationStep> levels;   // 2^n entries
  std::vector<StateVector> states;     // per level
  std::vector<std::size_t> ascending_order;  // level indices sorted by energy
  double residual_norm = 0.0;  // l2 norm of coefficients after the last level
  bool all_converged = true;
};

// Full spectrum extraction: 2^n rounds of power iteration + measurement +
// coefficient deflation, reusing the same bias throughout.
SpectrumResult solve_spectrum(const PauliHamiltonian& h,
                              const SolverConfig& config);

// Smallest k for which level `level` (0-based, ascending eigenvalue order)
// reaches |E_k - E_exact| < accuracy, with earlier levels replaced by their
// exact oracle eigenvectors so the count isolates this level.  Throws
// ConvergenceError when k_max is hit first.
std::size_t min_iterations_to_accuracy(const PauliHamiltonian& h,
                                       std::size_t level,
                                       const SolverConfig& config,
                                       double accuracy = 0.0016);

// lambda0 = 1 / (2 * gamma): the bias for which one biased application step
// equals one gradient-descent step psi - gamma * grad <H> (up to scale).
double bias_from_learning_rate(double gamma);

}  // namespace fqess
