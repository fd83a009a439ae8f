#include "fqess/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fqess/kernels.hpp"

namespace fqess {

namespace {
const kernels::KernelSet& kern() { return kernels::active_kernels(); }

constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

StateVector::StateVector(std::size_t qubits)
    : qubits_(qubits), amps_(std::size_t{1} << qubits) {
  if (qubits == 0 || qubits > 26) {
    throw ValidationError("qubit count must be in [1, 26]");
  }
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
  if (amps.empty() || !std::has_single_bit(amps.size())) {
    throw ValidationError("amplitude count must be a power of two");
  }
  StateVector sv(static_cast<std::size_t>(std::countr_zero(amps.size())));
  sv.amps_ = std::move(amps);
  sv.normalize();
  return sv;
}

double StateVector::norm() const {
  return std::sqrt(kern().norm_squared(amps_.data(), amps_.size()));
}

void StateVector::normalize() {
  const double n = norm();
  if (n < 1e-14) throw ValidationError("cannot normalize a zero state");
  kern().scale(amps_.data(), amps_.size(), 1.0 / n);
}

void StateVector::check_qubit(std::size_t qubit) const {
  if (qubit >= qubits_) throw ValidationError("qubit index out of range");
}

void StateVector::apply_gate(std::size_t qubit, const cplx m[4]) {
  check_qubit(qubit);
  kern().apply_1q_gate(amps_.data(), amps_.size(),
                       static_cast<unsigned>(qubit), m);
}

void StateVector::apply_ry(std::size_t qubit, double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx m[4] = {c, -s, s, c};
  apply_gate(qubit, m);
}

void StateVector::apply_rz(std::size_t qubit, double theta) {
  const cplx e{std::cos(theta / 2.0), std::sin(theta / 2.0)};
  const cplx m[4] = {std::conj(e), 0.0, 0.0, e};
  apply_gate(qubit, m);
}

void StateVector::apply_hadamard(std::size_t qubit) {
  const cplx m[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  apply_gate(qubit, m);
}

void StateVector::apply_phase(std::size_t qubit, cplx factor) {
  const cplx m[4] = {1.0, 0.0, 0.0, factor};
  apply_gate(qubit, m);
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw ValidationError("CZ needs two distinct qubits");
  const std::uint64_t mask =
      (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    if ((k & mask) == mask) amps_[k] = -amps_[k];
  }
}

void StateVector::apply_controlled_gate(std::size_t control,
                                        std::size_t target, const cplx m[4]) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    throw ValidationError("controlled gate needs distinct qubits");
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t k = 0; k < amps_.size(); ++k) {
    if ((k & cbit) != 0 && (k & tbit) == 0) {
      const cplx a = amps_[k];
      const cplx b = amps_[k | tbit];
      amps_[k] = m[0] * a + m[1] * b;
      amps_[k | tbit] = m[2] * a + m[3] * b;
    }
  }
}

void StateVector::apply_pauli_word(const PauliWord& word) {
  if (word.size() != qubits_) {
    throw ValidationError("word width does not match register");
  }
  const auto mk = word.masks();
  kern().pauli_apply(amps_.data(), amps_.size(), mk.x, mk.z, mk.phase);
}

void StateVector::apply_pauli_word(const PauliWord& word,
                                   std::span<const std::size_t> targets) {
  if (word.size() != targets.size()) {
    throw ValidationError("word width does not match target count");
  }
  std::uint64_t x = 0, z = 0;
  int ys = 0;
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_qubit(targets[i]);
    const std::uint64_t bit = std::uint64_t{1} << targets[i];
    if (seen & bit) throw ValidationError("duplicate target qubit");
    seen |= bit;
    switch (word.axis(i)) {
      case PauliAxis::I: break;
      case PauliAxis::X: x |= bit; break;
      case PauliAxis::Z: z |= bit; break;
      case PauliAxis::Y: x |= bit; z |= bit; ++ys; break;
    }
  }
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx phase = kIPow[ys & 3];
  if (std::popcount(x & z) & 1u) phase = -phase;
  kern().pauli_apply(amps_.data(), amps_.size(), x, z, phase);
}

void StateVector::apply_selected_word(const RegisterLayout& layout,
                                      std::size_t branch,
                                      const PauliWord& word) {
  if (layout.total() != qubits_) {
    throw ValidationError("layout does not match register width");
  }
  if (word.size() != layout.work_qubits) {
    throw ValidationError("word width does not match work register");
  }
  if (branch >= (std::size_t{1} << layout.ancilla_qubits)) {
    throw ValidationError("branch index exceeds ancilla range");
  }
  const std::size_t block = std::size_t{1} << layout.work_qubits;
  const auto mk = word.masks();
  kern().pauli_apply(amps_.data() + branch * block, block, mk.x, mk.z,
                     mk.phase);
}

StateVector init_product(const std::vector<BasisState>& factors) {
  if (factors.empty()) throw ValidationError("product state needs >= 1 factor");
  std::vector<cplx> amps{1.0};
  // Factors arrive highest-qubit first; building from the lowest qubit up
  // (reverse order) lets each new factor become the most significant bit.
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    cplx lo, hi;
    switch (*it) {
      case BasisState::Zero: lo = 1.0; hi = 0.0; break;
      case BasisState::One: lo = 0.0; hi = 1.0; break;
      case BasisState::Plus: lo = kInvSqrt2; hi = kInvSqrt2; break;
      case BasisState::Minus: lo = kInvSqrt2; hi = -kInvSqrt2; break;
    }
    std::vector<cplx> next(amps.size() * 2);
    for (std::size_t k = 0; k < amps.size(); ++k) {
      next[k] = lo * amps[k];
      next[k + amps.size()] = hi * amps[k];
    }
    amps = std::move(next);
  }
  return StateVector::from_amplitudes(std::move(amps));
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("state dimensions differ");
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.dim(); ++k) {
    acc += std::conj(a[k]) * b[k];
  }
  return acc;
}

PostselectResult postselect(const StateVector& state,
                            const RegisterLayout& layout,
                            const std::string& pattern) {
  if (layout.total() != state.qubits()) {
    throw ValidationError("layout does not match register width");
  }
  if (pattern.size() != layout.ancilla_qubits) {
    throw ValidationError("pattern length does not match ancilla count");
  }
  std::size_t branch = 0;
  for (const char c : pattern) {  // leftmost char = highest ancilla qubit
    if (c != '0' && c != '1') {
      throw ValidationError("pattern must contain only '0'/'1'");
    }
    branch = branch * 2 + static_cast<std::size_t>(c - '0');
  }
  const std::size_t block = std::size_t{1} << layout.work_qubits;
  const cplx* src = state.data() + branch * block;
  const double p = kernels::active_kernels().norm_squared(src, block);
  if (p < 1e-14) {
    throw KernelVanished("postselection probability below 1e-14");
  }
  std::vector<cplx> amps(src, src + block);
  StateVector out = StateVector::from_amplitudes(std::move(amps));
  return PostselectResult{std::move(out), p};
}

ShotCounts sample_shots(const StateVector& state,
                        std::span<const std::size_t> qubits,
                        std::uint64_t shots, Rng& rng) {
  if (qubits.empty() || qubits.size() > 20) {
    throw ValidationError("must sample between 1 and 20 qubits");
  }
  std::uint64_t seen = 0;
  for (const std::size_t q : qubits) {
    if (q >= state.qubits()) throw ValidationError("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit) throw ValidationError("duplicate sampled qubit");
    seen |= bit;
  }
  // Marginal outcome distribution over the listed qubits.
  std::vector<double> prob(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t k = 0; k < state.dim(); ++k) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      out |= ((k >> qubits[j]) & 1u) << j;
    }
    prob[out] += std::norm(state[k]);
  }
  std::vector<double> cdf(prob.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    acc += prob[i];
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);  // guard roundoff at the top end

  ShotCounts result;
  result.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto out =
        static_cast<std::size_t>(std::distance(cdf.begin(), it));
    std::string key(qubits.size(), '0');
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      key[j] = static_cast<char>('0' + ((out >> j) & 1u));
    }
    ++result.counts[key];
  }
  return result;
}

double word_expectation(const PauliWord& word, const StateVector& state) {
  if (word.size() != state.qubits()) {
    throw ValidationError("word width does not match register");
  }
  const auto mk = word.masks();
  return kern().pauli_expectation(state.data(), state.dim(), mk.x, mk.z,
                                  mk.phase);
}

double sampled_word_expectation(const PauliWord& word,
                                const StateVector& state, std::uint64_t shots,
                                Rng& rng) {
  if (shots == 0) return word_expectation(word, state);
  if (word.is_identity()) return 1.0;
  StateVector rotated = state;
  std::vector<std::size_t> support;
  for (std::size_t q = 0; q < word.size(); ++q) {
    switch (word.axis(q)) {
      case PauliAxis::I: continue;
      case PauliAxis::X:
        rotated.apply_hadamard(q);
        break;
      case PauliAxis::Y:
        rotated.apply_phase(q, cplx{0.0, -1.0});  // S^dagger, then H
        rotated.apply_hadamard(q);
        break;
      case PauliAxis::Z: break;
    }
    support.push_back(q);
  }
  const ShotCounts sc = sample_shots(rotated, support, shots, rng);
  std::int64_t signed_sum = 0;
  for (const auto& [key, count] : sc.counts) {
    const auto ones = std::count(key.begin(), key.end(), '1');
    signed_sum += (ones % 2 == 0) ? static_cast<std::int64_t>(count)
                                  : -static_cast<std::int64_t>(count);
  }
  return static_cast<double>(signed_sum) / static_cast<double>(shots);
}

double energy(const PauliHamiltonian& h, const StateVector& state) {
  if (h.qubits() != state.qubits()) {
    throw ValidationError("Hamiltonian width does not match register");
  }
  double total = 0.0;
  for (const auto& t : h.terms()) {
    const auto mk = t.word.masks();
    total += kern().pauli_expectation(state.data(), state.dim(), mk.x, mk.z,
                                      t.coefficient * mk.phase);
  }
  return total;
}

}  // namespace fqess
