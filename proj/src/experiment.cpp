#include "fqess/experiment.hpp"

#include <algorithm>
#include <cmath>

namespace fqess {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double TwoLevelHamiltonian::radius() const {
  return std::hypot(alpha_x, alpha_z);
}

PauliHamiltonian TwoLevelHamiltonian::to_hamiltonian() const {
  return PauliHamiltonian(
      1, {{alpha0, PauliWord("I")},
          {alpha_x, PauliWord("X")},
          {alpha_z, PauliWord("Z")}});
}

TwoLevelHamiltonian two_level_from(const PauliHamiltonian& h) {
  if (h.qubits() != 1) {
    throw ValidationError("two-level protocol needs a 1-qubit Hamiltonian");
  }
  if (h.coefficient_of(PauliWord("Y")) != 0.0) {
    throw ValidationError("two-level protocol requires a real (Y-free) H");
  }
  return TwoLevelHamiltonian{h.coefficient_of(PauliWord("I")),
                             h.coefficient_of(PauliWord("X")),
                             h.coefficient_of(PauliWord("Z"))};
}

TwoLevelHamiltonian default_two_level() {
  return TwoLevelHamiltonian{-1.04235, 0.1813, -0.78865};
}

double encode_angle(const TwoLevelHamiltonian& h, double lambda0) {
  const double r = h.radius();
  if (r == 0.0) return 0.0;
  double beta = 2.0 * std::atan2(r, h.alpha0 - lambda0);
  if (beta > kPi) beta -= 2.0 * kPi;
  return beta;
}

double recover_bias_from_angle(const TwoLevelHamiltonian& h, double beta) {
  const double t = std::tan(beta / 2.0);
  if (t == 0.0 || !std::isfinite(t)) {
    throw ValidationError("encode angle has no finite bias preimage");
  }
  return h.alpha0 - h.radius() / t;
}

double theta_update(double p1) {
  if (p1 < -1e-12 || p1 > 1.0 + 1e-12) {
    throw ValidationError("p1 must be a probability");
  }
  const double clamped = std::clamp(p1, 0.0, 1.0);
  return -2.0 * std::asin(std::sqrt(clamped));
}

namespace {

// Builds the decoded two-qubit state: work qubit 0, ancilla qubit 1.
StateVector protocol_state(const TwoLevelHamiltonian& h, double beta,
                           double theta) {
  StateVector state(2);
  state.apply_ry(0, theta);
  state.apply_ry(1, beta);
  const double r = h.radius();
  if (r > 0.0) {
    // Controlled (alpha_x X + alpha_z Z) / r: Hermitian and unitary.
    const cplx m[4] = {h.alpha_z / r, h.alpha_x / r, h.alpha_x / r,
                       -h.alpha_z / r};
    state.apply_controlled_gate(1, 0, m);
  }
  state.apply_hadamard(1);
  return state;
}

struct BasisStats {
  double p0 = 0.0, p1 = 0.0;
  std::uint64_t kept = 0;
};

BasisStats read_work_qubit(const StateVector& decoded, bool x_basis,
                           std::uint64_t shots, Rng& rng) {
  StateVector state = decoded;
  if (x_basis) state.apply_hadamard(0);
  BasisStats stats;
  if (shots == 0) {
    const auto post = postselect(state, RegisterLayout{1, 1}, "0");
    stats.p0 = std::norm(post.state[0]);
    stats.p1 = std::norm(post.state[1]);
    return stats;
  }
  const std::size_t qubits[2] = {0, 1};
  const ShotCounts counts = sample_shots(state, qubits, shots, rng);
  // Key layout: char 0 = work qubit, char 1 = ancilla; keep ancilla '0'.
  std::uint64_t n0 = 0, n1 = 0;
  for (const auto& [key, count] : counts.counts) {
    if (key[1] != '0') continue;
    (key[0] == '0' ? n0 : n1) += count;
  }
  stats.kept = n0 + n1;
  if (stats.kept == 0) {
    throw ShotStarvation("all samples failed ancilla postselection");
  }
  stats.p0 = static_cast<double>(n0) / static_cast<double>(stats.kept);
  stats.p1 = static_cast<double>(n1) / static_cast<double>(stats.kept);
  return stats;
}

}  // namespace

IterationRecord run_iteration(const TwoLevelHamiltonian& h, double lambda0,
                              double theta, std::uint64_t shots, Rng& rng) {
  const double beta = encode_angle(h, lambda0);
  const StateVector decoded = protocol_state(h, beta, theta);

  IterationRecord rec;
  rec.theta_in = theta;
  {
    // Exact keep probability for reporting regardless of shot mode.
    StateVector copy = decoded;
    rec.keep_probability =
        postselect(copy, RegisterLayout{1, 1}, "0").probability;
  }
  const BasisStats z = read_work_qubit(decoded, false, shots, rng);
  const BasisStats x = read_work_qubit(decoded, true, shots, rng);
  rec.p0 = z.p0;
  rec.p1 = z.p1;
  rec.p0h = x.p0;
  rec.p1h = x.p1;
  rec.kept_z = z.kept;
  rec.kept_x = x.kept;
  rec.eps_z = z.p0 - z.p1;
  rec.eps_x = x.p0 - x.p1;
  rec.energy = h.alpha0 + h.alpha_x * rec.eps_x + h.alpha_z * rec.eps_z;
  rec.theta_out = theta_update(z.p1);
  return rec;
}

ExperimentTrace run_experiment(const TwoLevelHamiltonian& h, double lambda0,
                               std::size_t iterations, std::uint64_t shots,
                               std::size_t replicas, std::uint64_t seed,
                               double theta0) {
  if (iterations == 0) throw ValidationError("need >= 1 iteration");
  if (replicas == 0) throw ValidationError("need >= 1 replica");
  ExperimentTrace trace;
  trace.lambda0 = lambda0;
  trace.beta = encode_angle(h, lambda0);

  trace.replicas.resize(replicas);
  for (std::size_t r = 0; r < replicas; ++r) {
    Rng rng(derive_seed(seed, r));
    double theta = theta0;
    trace.replicas[r].reserve(iterations);
    for (std::size_t it = 0; it < iterations; ++it) {
      IterationRecord rec = run_iteration(h, lambda0, theta, shots, rng);
      theta = rec.theta_out;
      trace.replicas[r].push_back(rec);
    }
  }

  trace.mean_energy.resize(iterations);
  trace.error_bar.resize(iterations);
  for (std::size_t it = 0; it < iterations; ++it) {
    // Centered accumulation: identical replicas give a bitwise-exact mean, so
    // exact-mode error bars are exactly zero as documented.
    const double base = trace.replicas[0][it].energy;
    double offset = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
      offset += trace.replicas[r][it].energy - base;
    }
    const double mean = base + offset / static_cast<double>(replicas);
    double dev = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
      dev = std::max(dev, std::abs(trace.replicas[r][it].energy - mean));
    }
    trace.mean_energy[it] = mean;
    trace.error_bar[it] = dev;
  }
  return trace;
}

}  // namespace fqess
