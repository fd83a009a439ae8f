#include "fqess/lcu.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fqess/kernels.hpp"

namespace fqess {

LcuPlan build_plan(const PauliHamiltonian& shifted, double bias,
                   std::size_t min_ancilla_qubits) {
  LcuPlan plan;
  plan.work_qubits = shifted.qubits();
  plan.bias = bias;

  // Identity slot first when live, then the remaining nonzero terms in
  // Hamiltonian order.
  std::vector<const WeightedTerm*> live;
  const WeightedTerm* identity = nullptr;
  for (const auto& t : shifted.terms()) {
    if (t.coefficient == 0.0) continue;
    if (t.word.is_identity()) {
      identity = &t;
    } else {
      live.push_back(&t);
    }
  }
  if (identity != nullptr) live.insert(live.begin(), identity);
  if (live.empty()) {
    throw ValidationError("operator has no nonzero terms to apply");
  }

  plan.live_terms = live.size();
  plan.padded_terms = std::bit_ceil(live.size());
  if (min_ancilla_qubits > 0) {
    plan.padded_terms =
        std::max(plan.padded_terms, std::size_t{1} << min_ancilla_qubits);
  }
  plan.ancilla_qubits =
      static_cast<std::size_t>(std::countr_zero(plan.padded_terms));

  double sum_sq = 0.0;
  for (const auto* t : live) sum_sq += t->coefficient * t->coefficient;
  plan.normalization = std::sqrt(sum_sq);

  plan.coefficients.reserve(plan.padded_terms);
  plan.ancilla_amplitudes.reserve(plan.padded_terms);
  plan.words.reserve(plan.padded_terms);
  for (const auto* t : live) {
    plan.coefficients.push_back(t->coefficient);
    plan.ancilla_amplitudes.push_back(t->coefficient / plan.normalization);
    plan.words.push_back(t->word);
  }
  const auto pad_word = PauliWord::identity(plan.work_qubits);
  while (plan.words.size() < plan.padded_terms) {
    plan.coefficients.push_back(0.0);
    plan.ancilla_amplitudes.push_back(0.0);
    plan.words.push_back(pad_word);
  }
  return plan;
}

ApplyOutcome lcu_apply(const LcuPlan& plan, const StateVector& psi) {
  if (psi.qubits() != plan.work_qubits) {
    throw ValidationError("state width does not match plan");
  }
  const RegisterLayout layout{plan.work_qubits, plan.ancilla_qubits};
  const std::size_t block = psi.dim();

  // Amplitude-encode the signed coefficients on the ancilla register; block j
  // of the extended state becomes amp_j * psi.
  StateVector ext(layout.total());
  ext.data()[0] = 0.0;
  const auto& kset = kernels::active_kernels();
  for (std::size_t j = 0; j < plan.padded_terms; ++j) {
    const double amp = plan.ancilla_amplitudes[j];
    if (amp == 0.0) continue;
    kset.axpy(ext.data() + j * block, psi.data(), block, amp);
  }

  // Branch-selected Pauli words.
  for (std::size_t j = 0; j < plan.live_terms; ++j) {
    if (!plan.words[j].is_identity()) {
      ext.apply_selected_word(layout, j, plan.words[j]);
    }
  }

  // Hadamard decode layer and all-zeros postselection.
  for (std::size_t q = 0; q < plan.ancilla_qubits; ++q) {
    ext.apply_hadamard(plan.work_qubits + q);
  }
  auto post = postselect(ext, layout, std::string(plan.ancilla_qubits, '0'));

  const double lp = static_cast<double>(plan.padded_terms);
  const double raw_norm =
      plan.normalization * std::sqrt(post.probability * lp);
  if (raw_norm < 1e-12) {
    throw KernelVanished("operator annihilated the state");
  }
  return ApplyOutcome{std::move(post.state), post.probability, raw_norm};
}

ApplyOutcome direct_apply(const PauliHamiltonian& shifted,
                          const StateVector& psi) {
  const LcuPlan plan = build_plan(shifted);
  if (psi.qubits() != plan.work_qubits) {
    throw ValidationError("state width does not match operator");
  }
  const auto& kset = kernels::active_kernels();
  std::vector<cplx> acc(psi.dim(), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < plan.live_terms; ++j) {
    const auto mk = plan.words[j].masks();
    kset.pauli_axpy(acc.data(), psi.data(), psi.dim(), mk.x, mk.z,
                    plan.coefficients[j] * mk.phase);
  }
  const double raw_norm =
      std::sqrt(kset.norm_squared(acc.data(), acc.size()));
  if (raw_norm < 1e-12) {
    throw KernelVanished("operator annihilated the state");
  }
  kset.scale(acc.data(), acc.size(), 1.0 / raw_norm);
  const double c2 = plan.normalization * plan.normalization;
  const double prob =
      raw_norm * raw_norm / (c2 * static_cast<double>(plan.padded_terms));
  return ApplyOutcome{StateVector::from_amplitudes(std::move(acc)), prob,
                      raw_norm};
}

nlohmann::json plan_to_json(const LcuPlan& plan) {
  nlohmann::json slots = nlohmann::json::array();
  for (std::size_t j = 0; j < plan.padded_terms; ++j) {
    slots.push_back({
        {"index", j},
        {"coefficient", plan.coefficients[j]},
        {"amplitude", plan.ancilla_amplitudes[j]},
        {"word", plan.words[j].str()},
    });
  }
  return nlohmann::json{
      {"work_qubits", plan.work_qubits},
      {"ancilla_qubits", plan.ancilla_qubits},
      {"live_terms", plan.live_terms},
      {"padded_terms", plan.padded_terms},
      {"normalization", plan.normalization},
      {"bias", plan.bias},
      {"slots", slots},
  };
}

}  // namespace fqess
