#include <doctest.h>

#include <cmath>

#include "fqess/experiment.hpp"
#include "fqess/lcu.hpp"
#include "helpers.hpp"

using namespace fqess;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Dense single step of the biased operator on Ry(theta)|0>, giving the exact
// post-iteration state and energy for cross-checking the circuit.
struct DenseStep {
  double energy;     // <psi'| H |psi'>
  double p1;         // |<1|psi'>|^2
  Eigen::Vector2cd state;
};

DenseStep dense_step(const TwoLevelHamiltonian& h, double lambda0,
                     double theta) {
  Eigen::Matrix2cd m;
  m << h.alpha0 + h.alpha_z - lambda0, h.alpha_x, h.alpha_x,
      h.alpha0 - h.alpha_z - lambda0;
  Eigen::Vector2cd psi;
  psi << std::cos(theta / 2.0), std::sin(theta / 2.0);
  Eigen::Vector2cd out = m * psi;
  out.normalize();
  Eigen::Matrix2cd hm;
  hm << h.alpha0 + h.alpha_z, h.alpha_x, h.alpha_x, h.alpha0 - h.alpha_z;
  return {(out.adjoint() * hm * out)(0).real(), std::norm(out(1)), out};
}
}  // namespace

TEST_CASE("encode angles and bias recovery invert each other") {
  const TwoLevelHamiltonian h = default_two_level();
  CHECK(h.alpha0 == doctest::Approx(-1.04235));
  CHECK(h.radius() == doctest::Approx(0.80922093).epsilon(1e-7));

  // The shipped angle -2.6897 corresponds to lambda0 = -0.85633318...
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  CHECK(lambda0 == doctest::Approx(-0.85633318).epsilon(1e-7));
  CHECK(encode_angle(h, lambda0) == doctest::Approx(-2.6897).epsilon(1e-12));

  // Closed form: beta = wrap(2 atan2(r, alpha0 - lambda0)).
  const double direct = 2.0 * std::atan2(h.radius(), h.alpha0 - lambda0);
  const double wrapped = direct > kPi ? direct - 2.0 * kPi : direct;
  CHECK(encode_angle(h, lambda0) == doctest::Approx(wrapped).epsilon(1e-12));

  // lambda0 = alpha0 zeroes the identity slot: the angle lands exactly on pi,
  // while a bias far above the spectrum shrinks it toward zero.
  CHECK(encode_angle(h, h.alpha0) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::abs(encode_angle(h, 100.0)) < 0.02);

  // Round trip across a sweep of biases.
  for (const double l0 : {-2.0, -0.9, 0.5, 3.0}) {
    CHECK(recover_bias_from_angle(h, encode_angle(h, l0)) ==
          doctest::Approx(l0).epsilon(1e-9));
  }

  // Pure identity has no off-axis component to encode.
  CHECK(encode_angle(TwoLevelHamiltonian{2.0, 0.0, 0.0}, 1.0) == 0.0);
}

TEST_CASE("two-level extraction accepts exactly the XZ plane") {
  const auto h = parse_hamiltonian("-1.04235 I\n0.1813 X\n-0.78865 Z\n");
  const TwoLevelHamiltonian t = two_level_from(h);
  CHECK(t.alpha0 == doctest::Approx(-1.04235));
  CHECK(t.alpha_x == doctest::Approx(0.1813));
  CHECK(t.alpha_z == doctest::Approx(-0.78865));
  const auto back = t.to_hamiltonian();
  CHECK(back.coefficient_of(PauliWord("X")) == doctest::Approx(0.1813));

  CHECK_THROWS_AS(two_level_from(parse_hamiltonian("1 Y\n")),
                  ValidationError);
  CHECK_THROWS_AS(two_level_from(parse_hamiltonian("1 ZZ\n")),
                  ValidationError);
}

TEST_CASE("theta updates recycle the amplitude profile") {
  CHECK(theta_update(0.0) == doctest::Approx(0.0));
  CHECK(theta_update(1.0) == doctest::Approx(-kPi).epsilon(1e-12));
  CHECK(theta_update(0.5) == doctest::Approx(-kPi / 2.0).epsilon(1e-12));
  // |sin(theta_out / 2)| = sqrt(p1) round trip.
  for (const double p1 : {0.07, 0.3, 0.9}) {
    const double theta = theta_update(p1);
    CHECK(std::abs(std::sin(theta / 2.0)) ==
          doctest::Approx(std::sqrt(p1)).epsilon(1e-12));
  }
}

TEST_CASE("one exact iteration matches the dense single step") {
  const TwoLevelHamiltonian h = default_two_level();
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  Rng rng(1);
  const auto rec = run_iteration(h, lambda0, kPi / 2.0, 0, rng);
  const auto oracle = dense_step(h, lambda0, kPi / 2.0);

  CHECK(rec.theta_in == doctest::Approx(kPi / 2.0));
  CHECK(rec.energy == doctest::Approx(oracle.energy).epsilon(1e-10));
  CHECK(rec.energy == doctest::Approx(-1.23307033).epsilon(1e-7));
  CHECK(rec.p1 == doctest::Approx(oracle.p1).epsilon(1e-10));
  CHECK(rec.p0 + rec.p1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.p0h + rec.p1h == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.eps_z == doctest::Approx(rec.p0 - rec.p1).epsilon(1e-12));
  CHECK(rec.eps_x == doctest::Approx(rec.p0h - rec.p1h).epsilon(1e-12));
  CHECK(rec.energy ==
        doctest::Approx(h.alpha0 + h.alpha_x * rec.eps_x +
                        h.alpha_z * rec.eps_z)
            .epsilon(1e-12));
  CHECK(rec.theta_out == doctest::Approx(theta_update(rec.p1)));
  CHECK(rec.keep_probability > 0.0);
  CHECK(rec.keep_probability <= 1.0 + 1e-12);

  // Whole-trajectory agreement: stepping the record and the dense oracle in
  // lockstep stays in sync for ten iterations.
  double theta = kPi / 2.0;
  for (int it = 0; it < 10; ++it) {
    Rng r2(1);
    const auto step = run_iteration(h, lambda0, theta, 0, r2);
    const auto exact = dense_step(h, lambda0, theta);
    CHECK(step.energy == doctest::Approx(exact.energy).epsilon(1e-9));
    theta = step.theta_out;
  }
}

TEST_CASE("the circuit branch probabilities match the lcu formula") {
  // keep_probability must equal the generic plan success probability
  // ||U psi||^2 / (C^2 L_pad) for the equivalent two-term circuit.
  const TwoLevelHamiltonian h = default_two_level();
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  const auto shifted = shift(h.to_hamiltonian(), lambda0);
  for (const double theta : {0.3, 1.2, 2.5}) {
    Rng rng(2);
    const auto rec = run_iteration(h, lambda0, theta, 0, rng);
    StateVector psi(1);
    psi.apply_ry(0, theta);
    // The experiment packs {identity, r * unit-vector} into two slots.
    const double c2 = (h.alpha0 - lambda0) * (h.alpha0 - lambda0) +
                      h.radius() * h.radius();
    const auto direct = direct_apply(shifted, psi);
    const double expected =
        direct.raw_norm * direct.raw_norm / (c2 * 2.0);
    CHECK(rec.keep_probability == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("a ground-state theta is a fixed point of the iteration") {
  const TwoLevelHamiltonian h = default_two_level();
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  // Ground state of a0 + ax X + az Z has Bloch vector -(ax, az)/r in the XZ
  // plane, i.e. Ry(theta_g)|0> with sin = -ax/r and cos = -az/r.
  const double theta_g = std::atan2(-h.alpha_x, -h.alpha_z);
  Rng rng(3);
  const auto rec = run_iteration(h, lambda0, theta_g, 0, rng);
  CHECK(rec.energy == doctest::Approx(-1.85157093).epsilon(1e-7));
  CHECK(std::abs(std::abs(std::sin(rec.theta_out / 2.0)) -
                 std::abs(std::sin(theta_g / 2.0))) < 1e-9);
}

TEST_CASE("shot readout concentrates around the exact probabilities") {
  const TwoLevelHamiltonian h = default_two_level();
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  Rng exact_rng(4);
  const auto exact = run_iteration(h, lambda0, kPi / 2.0, 0, exact_rng);
  Rng rng(4);
  const auto sampled = run_iteration(h, lambda0, kPi / 2.0, 200000, rng);
  // Kept fraction ~ keep_probability * shots; 3 sigma on the kept subsample.
  CHECK(sampled.kept_z > 0);
  CHECK(sampled.kept_x > 0);
  const double sigma_z =
      3.0 / (2.0 * std::sqrt(static_cast<double>(sampled.kept_z)));
  CHECK(std::abs(sampled.p1 - exact.p1) < 3.0 * sigma_z + 1e-3);
  CHECK(std::abs(sampled.energy - exact.energy) < 0.02);
  CHECK(sampled.p0 + sampled.p1 == doctest::Approx(1.0).epsilon(1e-12));

  // Deterministic reproduction under the same seed.
  Rng again(4);
  const auto repeat = run_iteration(h, lambda0, kPi / 2.0, 200000, again);
  CHECK(repeat.p1 == sampled.p1);
  CHECK(repeat.energy == sampled.energy);
}

TEST_CASE("exact experiments converge monotonically to the ground energy") {
  const TwoLevelHamiltonian h = default_two_level();
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  const auto trace = run_experiment(h, lambda0, 10, 0, 3, 1);
  CHECK(trace.lambda0 == doctest::Approx(lambda0));
  CHECK(trace.beta == doctest::Approx(-2.6897).epsilon(1e-9));
  REQUIRE(trace.replicas.size() == 3);
  REQUIRE(trace.mean_energy.size() == 10);

  const double exact_ground = -1.85157093;
  double prev_err = std::abs(trace.mean_energy.front() - exact_ground);
  for (std::size_t it = 1; it < trace.mean_energy.size(); ++it) {
    const double err = std::abs(trace.mean_energy[it] - exact_ground);
    CHECK(err <= prev_err + 1e-12);
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);

  // Exact replicas coincide, so every error bar is exactly zero.
  for (const double bar : trace.error_bar) CHECK(bar == 0.0);
  for (std::size_t it = 0; it < 10; ++it) {
    CHECK(trace.replicas[0][it].energy == trace.replicas[2][it].energy);
  }
}

TEST_CASE("replica error bars cover the replica scatter by construction") {
  const TwoLevelHamiltonian h = default_two_level();
  const double lambda0 = recover_bias_from_angle(h, -2.6897);
  const auto trace = run_experiment(h, lambda0, 8, 30000, 3, 20260815);
  REQUIRE(trace.replicas.size() == 3);
  for (std::size_t it = 0; it < trace.mean_energy.size(); ++it) {
    double max_dev = 0.0;
    for (const auto& rep : trace.replicas) {
      max_dev = std::max(max_dev,
                         std::abs(rep[it].energy - trace.mean_energy[it]));
    }
    CHECK(trace.error_bar[it] == doctest::Approx(max_dev).epsilon(1e-12));
    // At 3e4 shots the scatter stays small in absolute terms.
    CHECK(trace.error_bar[it] < 0.05);
  }

  // Distinct seeds give distinct shot histories.
  const auto other = run_experiment(h, lambda0, 8, 30000, 3, 7);
  bool any_different = false;
  for (std::size_t it = 0; it < 8; ++it) {
    if (other.mean_energy[it] != trace.mean_energy[it]) any_different = true;
  }
  CHECK(any_different);
}

TEST_CASE("starved postselection raises instead of fabricating data") {
  // A state near the +1 eigenvector of Z with lambda0 just below +1 is almost
  // annihilated, so the keep probability collapses to ~1e-6: four shots will
  // essentially never survive the ancilla cut.
  TwoLevelHamiltonian h{0.0, 0.0, 1.0};  // plain Z
  const double lambda0 = 0.9999;
  Rng rng(5);
  CHECK_THROWS_AS((void)run_iteration(h, lambda0, 0.002, 4, rng),
                  ShotStarvation);
}
