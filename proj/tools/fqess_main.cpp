// Command-line front end: spectrum | compare | experiment | resources.
// All computation lives in the fqess libraries; this file only maps flags
// onto option structs and exceptions onto exit codes (0 success, 2
// convergence/kernel failure, 3 input error).

#include <iostream>

#include <CLI11.hpp>

#include "fqess/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pauli-sum eigenspectrum workbench"};
  app.require_subcommand(1);

  fqess::harness::SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "Extract the full spectrum by iterated deflation");
  spectrum_cmd->add_option("--hamiltonian", spectrum.hamiltonian,
                           "Hamiltonian text file");
  spectrum_cmd->add_option("--sweep", spectrum.sweep,
                           "Sweep manifest of 'label path' lines");
  spectrum_cmd->add_option("--bias", spectrum.bias,
                           "lambda0 value or 'auto'");
  spectrum_cmd->add_option("--k", spectrum.k,
                           "Iterations per level, or 'auto' for tolerance mode");
  spectrum_cmd->add_option("--tol", spectrum.tol, "Energy tolerance (Hartree)");
  spectrum_cmd->add_option("--path", spectrum.path,
                           "Application path: direct | lcu");
  spectrum_cmd->add_option("--noise", spectrum.noise,
                           "Coefficient noise strength eta");
  spectrum_cmd->add_option("--replicas", spectrum.replicas,
                           "Independent runs to aggregate");
  spectrum_cmd->add_option("--shots", spectrum.shots,
                           "Samples per expectation value (0 = exact)");
  spectrum_cmd->add_option("--seed", spectrum.seed, "Base RNG seed");
  spectrum_cmd->add_option("--out", spectrum.out, "Output directory");
  spectrum_cmd->add_flag("--dump-plan", spectrum.dump_plan,
                         "Also write the level-1 circuit plan JSON");

  fqess::harness::CompareOptions compare;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Run the solver against VQD and SSVQE baselines");
  compare_cmd->add_option("--hamiltonian", compare.hamiltonian,
                          "Hamiltonian text file")->required();
  compare_cmd->add_option("--bias", compare.bias, "lambda0 value or 'auto'");
  compare_cmd->add_option("--tol", compare.tol, "Accuracy target (Hartree)");
  compare_cmd->add_option("--noise", compare.noise,
                          "Coefficient noise for the noisy variant");
  compare_cmd->add_option("--seed", compare.seed, "Base RNG seed");
  compare_cmd->add_option("--levels", compare.levels, "Levels to compare");
  compare_cmd->add_option("--depth", compare.depth, "Ansatz layers");
  compare_cmd->add_option("--opt-iterations", compare.opt_iterations,
                          "Optimizer iteration budget");
  compare_cmd->add_option("--opt-step", compare.opt_step,
                          "Optimizer step size");
  compare_cmd->add_option("--out", compare.out, "Output directory");

  fqess::harness::ExperimentOptions experiment;
  auto* experiment_cmd = app.add_subcommand(
      "experiment", "Two-qubit encode/decode protocol with replicas");
  experiment_cmd->add_option("--hamiltonian", experiment.hamiltonian,
                             "1-qubit Hamiltonian file (default: shipped H2)");
  experiment_cmd->add_option("--bias", experiment.bias,
                             "lambda0 value or 'auto'");
  experiment_cmd->add_option("--iterations", experiment.iterations,
                             "Protocol iterations per replica");
  experiment_cmd->add_option("--shots", experiment.shots,
                             "Shots per readout (0 = exact)");
  experiment_cmd->add_option("--replicas", experiment.replicas,
                             "Independent replicas");
  experiment_cmd->add_option("--seed", experiment.seed, "Base RNG seed");
  experiment_cmd->add_option("--theta0", experiment.theta0,
                             "Initial work-qubit angle");
  experiment_cmd->add_option("--out", experiment.out, "Output directory");

  fqess::harness::ResourcesOptions resources;
  auto* resources_cmd = app.add_subcommand(
      "resources", "Qubit/gate estimates for the padded circuit");
  resources_cmd->add_option("--hamiltonian", resources.hamiltonian,
                            "Hamiltonian text file");
  resources_cmd->add_option("--sweep", resources.sweep,
                            "Sweep manifest of 'label path' lines");
  resources_cmd->add_option("--out", resources.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (spectrum_cmd->parsed()) {
      return fqess::harness::run_spectrum(spectrum, std::cout);
    }
    if (compare_cmd->parsed()) {
      return fqess::harness::run_compare(compare, std::cout);
    }
    if (experiment_cmd->parsed()) {
      return fqess::harness::run_experiment_command(experiment, std::cout);
    }
    return fqess::harness::run_resources(resources, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fqess::harness::exit_code_for(e);
  }
}
