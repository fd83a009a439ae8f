#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fqess/baselines.hpp"
#include "fqess/experiment.hpp"
#include "fqess/solver.hpp"

// Subcommand drivers shared by the CLI binary and the test-suite (tests call
// these directly so the full output pipeline is exercised in-process).
//
// Every run writes <out>/manifest.json recording the resolved options plus a
// 64-bit FNV-1a hash of that record; all other output files embed the same
// hash.  Identical manifests produce byte-identical outputs.
namespace fqess::harness {

struct SpectrumOptions {
  std::string hamiltonian;  // single input file...
  std::string sweep;        // ...or a sweep manifest ("label path" lines)
  std::string bias = "auto";
  std::string k = "auto";   // "auto" = tolerance mode; integer = fixed k
  double tol = 0.0016;
  std::string path = "direct";  // "direct" | "lcu"
  double noise = 0.0;
  std::size_t replicas = 1;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::string out = "out";
  bool dump_plan = false;
};

struct ExperimentOptions {
  std::string hamiltonian;  // empty = shipped minimal two-level problem
  std::string bias = "auto";
  std::size_t iterations = 10;
  std::uint64_t shots = 10000;
  std::size_t replicas = 3;
  std::uint64_t seed = 1;
  double theta0 = 1.5707963267948966;
  std::string out = "out";
};

struct CompareOptions {
  std::string hamiltonian;
  std::string bias = "auto";
  double tol = 0.0016;
  double noise = 0.1;
  std::uint64_t seed = 1;
  std::size_t levels = 2;
  std::size_t depth = 2;
  std::size_t opt_iterations = 800;
  double opt_step = 0.15;
  std::string out = "out";
};

struct ResourcesOptions {
  std::string hamiltonian;
  std::string sweep;
  std::string out = "out";
};

// Each driver returns 0 on success and throws on failure; exit_code_for maps
// exceptions to the CLI contract (2 = convergence/kernel failures, 3 = input
// errors).  `log` receives a short human-readable summary.
int run_spectrum(const SpectrumOptions& options, std::ostream& log);
int run_experiment_command(const ExperimentOptions& options, std::ostream& log);
int run_compare(const CompareOptions& options, std::ostream& log);
int run_resources(const ResourcesOptions& options, std::ostream& log);

int exit_code_for(const std::exception& error);

std::uint64_t fnv1a(std::string_view text);
std::string format_double(double value);  // fixed "%.12g" rendering

// "label path" lines (comments with '#', blank lines skipped); relative
// paths resolve against the manifest's directory.
struct SweepEntry {
  std::string label;
  std::string path;
};
std::vector<SweepEntry> parse_sweep(const std::string& manifest_path);

}  // namespace fqess::harness
