#pragma once

#include "fqess/statevector.hpp"

namespace fqess {

// Shot-mode postselection kept zero samples: the run cannot produce
// probabilities for this iteration.
class ShotStarvation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-qubit problem H = alpha0 I + alpha_x X + alpha_z Z, the form realized
// by the two-qubit (work + ancilla) circuit study.
struct TwoLevelHamiltonian {
  double alpha0 = 0.0;
  double alpha_x = 0.0;
  double alpha_z = 0.0;

  double radius() const;  // sqrt(alpha_x^2 + alpha_z^2)
  PauliHamiltonian to_hamiltonian() const;
};

// Requires a 1-qubit Hamiltonian with no Y component.
TwoLevelHamiltonian two_level_from(const PauliHamiltonian& h);

// The minimal-basis H2 coefficients the shipped experiment defaults to.
TwoLevelHamiltonian default_two_level();

// Ancilla encode angle: Ry(beta)|0> carries the two LCU amplitudes
// (alpha0 - lambda0, r) / C up to a global sign; beta is reported in the
// principal range (-pi, pi].  A pure-identity problem returns 0.
double encode_angle(const TwoLevelHamiltonian& h, double lambda0);

// Inverse of encode_angle: the lambda0 for which encode_angle returns beta.
double recover_bias_from_angle(const TwoLevelHamiltonian& h, double beta);

// Amplitude-profile recycling: theta_out = -2 asin(sqrt(p1)).
double theta_update(double p1);

struct IterationRecord {
  double theta_in = 0.0;
  double p0 = 0.0, p1 = 0.0;    // work-qubit Z-basis stats after postselection
  double p0h = 0.0, p1h = 0.0;  // same with a Hadamard before readout
  double eps_z = 0.0, eps_x = 0.0;
  double energy = 0.0;
  double theta_out = 0.0;
  double keep_probability = 0.0;      // ancilla |0> probability (exact)
  std::uint64_t kept_z = 0, kept_x = 0;  // retained samples (shot mode)
};

// One protocol iteration: prepare Ry(theta)|0> on the work qubit, Ry(beta)
// on the ancilla, apply the controlled unit-vector branch, Hadamard-decode,
// postselect ancilla |0>, then read the work qubit in the Z and X bases.
// shots == 0 uses exact probabilities; otherwise both bases are estimated
// from `shots` samples of the full two-qubit register, discarding ancilla=1
// rows (throws ShotStarvation when nothing survives).
IterationRecord run_iteration(const TwoLevelHamiltonian& h, double lambda0,
                              double theta, std::uint64_t shots, Rng& rng);

struct ExperimentTrace {
  double lambda0 = 0.0;
  double beta = 0.0;
  std::vector<std::vector<IterationRecord>> replicas;  // [replica][iteration]
  std::vector<double> mean_energy;  // per iteration
  std::vector<double> error_bar;    // max |replica - mean| per iteration
};

// Runs `replicas` independent chains of `iterations` protocol steps (child
// seeds derived from `seed`), starting each chain at theta0.  With shots == 0
// the replicas coincide and the error bars are exactly zero.
ExperimentTrace run_experiment(const TwoLevelHamiltonian& h, double lambda0,
                               std::size_t iterations, std::uint64_t shots,
                               std::size_t replicas, std::uint64_t seed,
                               double theta0 = 1.5707963267948966);

}  // namespace fqess
