#include "fqess/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fqess/dense.hpp"
#include "fqess/kernels.hpp"

namespace fqess {
namespace {

// Removes the components of `state` along each (orthonormal) found state.
// Returns the remaining norm; the caller decides whether it is usable.
double project_out(StateVector& state, std::span<const StateVector> found) {
  const auto& kset = kernels::active_kernels();
  for (const auto& f : found) {
    const cplx c = inner_product(f, state);
    kset.axpy(state.data(), f.data(), state.dim(), -c);
  }
  return state.norm();
}

StateVector default_start(std::size_t qubits) {
  return init_product(std::vector<BasisState>(qubits, BasisState::Plus));
}

// Start state for one level: the preferred state projected outside the found
// subspace, or (when that vanishes) the projected computational basis state
// with the largest residual norm.
StateVector select_start(const StateVector& preferred,
                         std::span<const StateVector> found) {
  StateVector cand = preferred;
  if (project_out(cand, found) >= 1e-6) {
    cand.normalize();
    return cand;
  }
  double best_norm = 0.0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < preferred.dim(); ++k) {
    std::vector<cplx> amps(preferred.dim(), cplx{0.0, 0.0});
    amps[k] = 1.0;
    StateVector basis = StateVector::from_amplitudes(std::move(amps));
    const double n = project_out(basis, found);
    if (n > best_norm) {
      best_norm = n;
      best_k = k;
    }
  }
  if (best_norm < 1e-9) {
    throw KernelVanished("found states already span the full space");
  }
  std::vector<cplx> amps(preferred.dim(), cplx{0.0, 0.0});
  amps[best_k] = 1.0;
  StateVector start = StateVector::from_amplitudes(std::move(amps));
  project_out(start, found);
  start.normalize();
  return start;
}

std::vector<PauliWord> measurement_support(const PauliHamiltonian& h,
                                           std::size_t full_basis_limit) {
  std::vector<PauliWord> support;
  if (h.qubits() <= full_basis_limit) {
    const std::uint64_t count = std::uint64_t{1} << (2 * h.qubits());
    support.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
      support.push_back(PauliWord::from_code(code, h.qubits()));
    }
  } else {
    support.reserve(h.size());
    for (const auto& t : h.terms()) support.push_back(t.word);
  }
  return support;
}

}  // namespace

PowerIterationResult power_iterate_with(const ApplyFn& apply,
                                        const PauliHamiltonian& level_h,
                                        const StateVector& psi0,
                                        const SolverConfig& config,
                                        std::span<const StateVector> deflated) {
  StateVector psi = psi0;
  if (project_out(psi, deflated) < 1e-12) {
    throw ValidationError("start state lies inside the deflated subspace");
  }
  psi.normalize();

  PowerIterationResult result{psi, 0, {}, {}, false};
  double prev_energy = energy(level_h, psi);
  result.energy_trace.push_back(prev_energy);

  const bool fixed = config.iteration_mode == IterationMode::FixedK;
  const std::size_t limit = fixed ? config.fixed_k : config.k_max;
  const double stop = config.energy_tolerance / 10.0;

  bool vanished = false;
  for (std::size_t k = 1; k <= limit; ++k) {
    ApplyOutcome out = apply(psi);
    psi = std::move(out.state);
    if (project_out(psi, deflated) < 1e-12) {
      // The application landed (numerically) inside the found subspace;
      // nothing new can be extracted from this start.
      vanished = true;
      break;
    }
    psi.normalize();
    result.success_probabilities.push_back(out.success_probability);
    const double e = energy(level_h, psi);
    result.energy_trace.push_back(e);
    result.k_used = k;
    if (!fixed && std::abs(e - prev_energy) < stop) {
      result.state = psi;
      return result;
    }
    prev_energy = e;
  }
  // Fixed mode finishing its budget is success; in Tolerance mode reaching
  // this point means k_max ran out before the energy settled.
  result.stagnated = vanished || !fixed;
  result.state = psi;
  return result;
}

PowerIterationResult power_iterate(const PauliHamiltonian& shifted,
                                   const StateVector& psi0,
                                   const SolverConfig& config,
                                   std::span<const StateVector> deflated) {
  const double lambda0 = config.bias.value_or(0.0);
  const PauliHamiltonian level_h = shift(shifted, -lambda0);
  ApplyFn apply;
  if (config.apply_path == ApplyPath::Lcu) {
    apply = [plan = build_plan(shifted, lambda0)](const StateVector& s) {
      return lcu_apply(plan, s);
    };
  } else {
    apply = [&shifted](const StateVector& s) {
      return direct_apply(shifted, s);
    };
  }
  return power_iterate_with(apply, level_h, psi0, config, deflated);
}

MeasuredComponents measure_components(const PauliHamiltonian& h,
                                      const StateVector& state,
                                      std::span<const PauliWord> support,
                                      std::uint64_t shots, Rng& rng) {
  MeasuredComponents out;
  out.words.assign(support.begin(), support.end());
  out.components.reserve(support.size());
  for (const auto& w : support) {
    out.components.push_back(shots == 0
                                 ? word_expectation(w, state)
                                 : sampled_word_expectation(w, state, shots,
                                                            rng));
  }
  // Energy from the same measured components the deflation will use.
  double e = 0.0;
  for (const auto& t : h.terms()) {
    const std::uint64_t code = t.word.code();
    bool matched = false;
    for (std::size_t j = 0; j < out.words.size(); ++j) {
      if (out.words[j].code() == code) {
        e += t.coefficient * out.components[j];
        matched = true;
        break;
      }
    }
    if (!matched) {
      e += t.coefficient *
           (shots == 0 ? word_expectation(t.word, state)
                       : sampled_word_expectation(t.word, state, shots, rng));
    }
  }
  out.energy = e;
  return out;
}

MeasuredComponents measure_components(const PauliHamiltonian& h,
                                      const StateVector& state,
                                      std::uint64_t shots, Rng& rng) {
  std::vector<PauliWord> support;
  support.reserve(h.size());
  for (const auto& t : h.terms()) support.push_back(t.word);
  return measure_components(h, state, support, shots, rng);
}

PauliHamiltonian deflate(const PauliHamiltonian& h, double energy,
                         std::span<const PauliWord> support,
                         std::span<const double> components) {
  if (support.size() != components.size()) {
    throw ValidationError("support and component counts differ");
  }
  const double scale =
      energy / static_cast<double>(std::size_t{1} << h.qubits());
  std::vector<WeightedTerm> terms = h.terms();
  for (std::size_t j = 0; j < support.size(); ++j) {
    terms.push_back({-scale * components[j], support[j]});
  }
  PauliHamiltonian merged(h.qubits(), std::move(terms));
  std::vector<WeightedTerm> kept;
  kept.reserve(merged.size());
  for (const auto& t : merged.terms()) {
    if (t.coefficient != 0.0) kept.push_back(t);
  }
  if (kept.empty()) {
    // Fully deflated operator; keep an explicit zero identity so the type
    // stays constructible.
    kept.push_back({0.0, PauliWord::identity(h.qubits())});
  }
  return PauliHamiltonian(h.qubits(), std::move(kept));
}

SpectrumResult solve_spectrum(const PauliHamiltonian& h,
                              const SolverConfig& config) {
  SpectrumResult result;
  result.qubits = h.qubits();
  const double lambda0 =
      config.bias ? *config.bias : default_bias(h);
  result.bias = lambda0;

  SolverConfig level_config = config;
  level_config.bias = lambda0;

  const std::size_t level_count = h.dim();
  const StateVector preferred =
      config.initial_state ? *config.initial_state : default_start(h.qubits());
  if (preferred.qubits() != h.qubits()) {
    throw ValidationError("initial state width does not match Hamiltonian");
  }

  // One noise draw shared by every level in OncePerSolve mode.
  std::vector<double> once_deltas;
  if (config.noise_eta > 0.0 &&
      config.noise_resampling == NoiseResampling::OncePerSolve) {
    Rng noise_rng(derive_seed(config.seed, 1));
    double max_abs = 0.0;
    for (const auto& t : h.terms()) {
      max_abs = std::max(max_abs, std::abs(t.coefficient));
    }
    once_deltas.resize(h.qubits());
    for (auto& d : once_deltas) {
      d = config.noise_eta * noise_rng.uniform_pm1() * max_abs;
    }
  }
  const auto with_z_offsets = [](const PauliHamiltonian& base,
                                 const std::vector<double>& deltas) {
    std::vector<WeightedTerm> terms = base.terms();
    for (std::size_t q = 0; q < base.qubits(); ++q) {
      std::vector<PauliAxis> axes(base.qubits(), PauliAxis::I);
      axes[q] = PauliAxis::Z;
      terms.push_back({deltas[q], PauliWord(std::move(axes))});
    }
    return PauliHamiltonian(base.qubits(), std::move(terms));
  };

  PauliHamiltonian current = h;
  for (std::size_t level = 0; level < level_count; ++level) {
    // Operator actually applied in the circuit; measurement and deflation
    // keep using the true coefficients of `current`.
    ApplyFn apply;
    if (config.noise_eta > 0.0 &&
        config.noise_resampling == NoiseResampling::EachIteration) {
      auto rng = std::make_shared<Rng>(derive_seed(config.seed, 100 + level));
      const PauliHamiltonian base = current;
      const ApplyPath path = config.apply_path;
      apply = [base, rng, eta = config.noise_eta, lambda0,
               path](const StateVector& s) {
        PauliHamiltonian noisy = add_noise(base, eta, *rng);
        const PauliHamiltonian shifted = shift(noisy, lambda0);
        return path == ApplyPath::Lcu ? lcu_apply(build_plan(shifted, lambda0), s)
                                      : direct_apply(shifted, s);
      };
    } else {
      PauliHamiltonian applied =
          once_deltas.empty() ? current : with_z_offsets(current, once_deltas);
      const PauliHamiltonian shifted = shift(applied, lambda0);
      if (config.apply_path == ApplyPath::Lcu) {
        apply = [plan = build_plan(shifted, lambda0)](const StateVector& s) {
          return lcu_apply(plan, s);
        };
      } else {
        apply = [shifted](const StateVector& s) {
          return direct_apply(shifted, s);
        };
      }
    }

    const StateVector start = select_start(preferred, result.states);
    PowerIterationResult it =
        power_iterate_with(apply, current, start, level_config, result.states);
    if (it.stagnated) result.all_converged = false;

    Rng meas_rng(derive_seed(config.seed, 200 + level));
    const std::vector<PauliWord> support =
        measurement_support(current, config.full_basis_limit);
    MeasuredComponents meas =
        measure_components(current, it.state, support, config.shots, meas_rng);

    PauliHamiltonian next =
        deflate(current, meas.energy, support, meas.components);

    DeflationStep step;
    step.level = level;
    step.energy = meas.energy;
    step.k_used = it.k_used;
    step.stagnated = it.stagnated;
    step.words = std::move(meas.words);
    step.components = std::move(meas.components);
    step.energy_trace = std::move(it.energy_trace);
    step.success_probability_trace = std::move(it.success_probabilities);
    step.coefficients_next = next.terms();
    result.levels.push_back(std::move(step));
    result.states.push_back(std::move(it.state));
    current = std::move(next);
  }

  double residual_sq = 0.0;
  for (const auto& t : current.terms()) {
    residual_sq += t.coefficient * t.coefficient;
  }
  result.residual_norm = std::sqrt(residual_sq);

  result.ascending_order.resize(result.levels.size());
  std::iota(result.ascending_order.begin(), result.ascending_order.end(),
            std::size_t{0});
  std::stable_sort(result.ascending_order.begin(),
                   result.ascending_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return result.levels[a].energy < result.levels[b].energy;
                   });
  return result;
}

std::size_t min_iterations_to_accuracy(const PauliHamiltonian& h,
                                       std::size_t level,
                                       const SolverConfig& config,
                                       double accuracy) {
  if (h.qubits() > 8) {
    throw ValidationError("iteration analysis is limited to 8 qubits");
  }
  if (level >= h.dim()) throw ValidationError("level index out of range");
  if (!(accuracy > 0.0)) throw ValidationError("accuracy must be positive");

  const ExactSpectrum oracle = exact_spectrum(h);
  const double lambda0 = config.bias ? *config.bias : default_bias(h);

  // Replace the first `level` extractions by their exact counterparts so the
  // returned count isolates the requested level.
  std::vector<PauliWord> support = measurement_support(h, 8);
  std::vector<StateVector> found;
  PauliHamiltonian current = h;
  Rng rng(derive_seed(config.seed, 777));
  for (std::size_t l = 0; l < level; ++l) {
    std::vector<cplx> amps(h.dim());
    for (std::size_t k = 0; k < h.dim(); ++k) {
      amps[k] = oracle.eigenvectors(static_cast<Eigen::Index>(k),
                                    static_cast<Eigen::Index>(l));
    }
    StateVector v = StateVector::from_amplitudes(std::move(amps));
    MeasuredComponents meas = measure_components(current, v, support, 0, rng);
    current = deflate(current, meas.energy, support, meas.components);
    found.push_back(std::move(v));
  }

  const double target = oracle.eigenvalues(static_cast<Eigen::Index>(level));
  const PauliHamiltonian shifted = shift(current, lambda0);
  const StateVector preferred =
      config.initial_state ? *config.initial_state : default_start(h.qubits());
  StateVector psi = select_start(preferred, found);

  for (std::size_t k = 1; k <= config.k_max; ++k) {
    ApplyOutcome out = config.apply_path == ApplyPath::Lcu
                           ? lcu_apply(build_plan(shifted, lambda0), psi)
                           : direct_apply(shifted, psi);
    psi = std::move(out.state);
    if (project_out(psi, found) < 1e-12) break;
    psi.normalize();
    if (std::abs(energy(current, psi) - target) < accuracy) return k;
  }
  throw ConvergenceError("level did not reach the requested accuracy");
}

double bias_from_learning_rate(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("learning rate must be positive and finite");
  }
  return 1.0 / (2.0 * gamma);
}

}  // namespace fqess
