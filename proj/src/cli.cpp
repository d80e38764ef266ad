// Copyright 2026 The maxent-qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mqst/cli.hpp"

#include <chrono>
#include <charconv>
#include <ostream>

#include "CLI11.hpp"
#include "mqst/io.hpp"
#include "mqst/reconstruct.hpp"
#include "mqst/simulate.hpp"

namespace mqst::cli {

namespace {

struct SimulateArgs {
  std::string circuit;
  std::string out;
  std::string state_out;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::string measure = "all";
  std::string reference = "0";
};

struct ReconstructArgs {
  std::string measurements;
  std::string mode;
  bool no_scale = false;
  std::string out;
  std::string trace;
  double tolerance = maxent::kDefaultTolerance;
  double delta = maxent::kDefaultDelta;
  std::string reference = "0";
};

struct CompareArgs {
  std::string a;
  std::string b;
  std::string target;
};

struct SweepArgs {
  std::size_t min_qubits = 2;
  std::size_t max_qubits = 2;
  std::size_t per_size = 1;
  std::size_t depth = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shots;
  std::string out;
  bool no_timing = false;
  double tolerance = maxent::kDefaultTolerance;
  double delta = maxent::kDefaultDelta;
};

std::size_t argmax_population(const MeasurementSet& ms) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < ms.probabilities.size(); ++k) {
    if (ms.probabilities[k].value_or(-1.0) > ms.probabilities[best].value_or(-1.0)) best = k;
  }
  return best;
}

// Population measurements used to pick an automatic reference; sampled runs
// reuse the population stream of the main measurement.
std::size_t auto_reference(const StateVector& psi, const std::optional<std::uint64_t>& shots,
                           std::uint64_t seed) {
  const MeasurementSet p = shots ? sampled_measurements(psi, MeasureSpec::probabilities(), *shots, seed)
                                 : exact_measurements(psi, MeasureSpec::probabilities());
  return argmax_population(p);
}

void check_shots(const std::optional<std::uint64_t>& shots, std::size_t max_qubits) {
  if (!shots) return;
  if (*shots == 0) throw UsageError("--shots must be at least 1");
  if (max_qubits > kMaxSampledQubits) {
    throw UsageError("sampled measurements support at most 5 qubits");
  }
}

int cmd_simulate(const SimulateArgs& a) {
  const Circuit circuit = io::circuit_from_json(io::read_json(a.circuit));
  check_shots(a.shots, circuit.qubit_count);
  const StateVector psi = run(circuit);

  MeasureSpec spec;
  if (a.measure == "all") {
    spec = MeasureSpec::all();
  } else if (a.measure == "probabilities") {
    spec = MeasureSpec::probabilities();
  } else {
    const std::optional<std::size_t> r = parse_reference(a.reference);
    const std::size_t ref = r ? *r : auto_reference(psi, a.shots, a.seed);
    if (ref >= psi.dimension()) throw UsageError("--reference out of range");
    spec = MeasureSpec::first_row(ref);
  }
  const MeasurementSet ms = a.shots ? sampled_measurements(psi, spec, *a.shots, a.seed)
                                    : exact_measurements(psi, spec);
  io::write_file(a.out, io::dump(io::to_json(ms)));
  if (!a.state_out.empty()) io::write_file(a.state_out, io::dump(io::to_json(psi)));
  return kExitOk;
}

int cmd_reconstruct(const ReconstructArgs& a) {
  RunConfig rc;
  rc.tolerance = a.tolerance;
  rc.delta = a.delta;
  rc.scaled = !a.no_scale;
  rc.reference = parse_reference(a.reference);
  rc.mode = a.mode == "complex" ? RunConfig::Mode::kComplex : RunConfig::Mode::kReal;
  rc.validate();

  const MeasurementSet ms = io::measurements_from_json(io::read_json(a.measurements));
  ReconstructConfig config;
  config.tolerance = rc.tolerance;
  config.delta = rc.delta;
  config.scaled = rc.scaled;
  config.reference = rc.reference;
  config.record_trace = !a.trace.empty();
  const Reconstruction rec = rc.mode == RunConfig::Mode::kComplex
                                 ? reconstruct_complex(ms, config)
                                 : reconstruct_real(ms, config);
  io::write_file(a.out, io::dump(io::to_json(rec.rho)));
  if (!a.trace.empty()) io::write_file(a.trace, io::trace_csv(rec.trace));
  return kExitOk;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const DensityMatrix ra = io::density_from_json(io::read_json(a.a));
  const DensityMatrix rb = io::density_from_json(io::read_json(a.b));
  if (ra.dimension() != rb.dimension()) throw UsageError("--a and --b differ in dimension");
  io::Json j;
  j["trace_distance"] = trace_distance(ra, rb);
  if (a.target.empty()) {
    j["fidelity"] = nullptr;
  } else {
    const StateVector psi = io::state_from_json(io::read_json(a.target));
    if (psi.dimension() != ra.dimension()) throw UsageError("--target-state dimension mismatch");
    j["fidelity"] = fidelity_pure(psi, ra);
  }
  j["entropy"] = von_neumann_entropy(ra).value;
  j["purity"] = purity(ra);
  out << io::dump(j);
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a) {
  if (a.min_qubits < 1) throw UsageError("--min-qubits must be at least 1");
  if (a.min_qubits > a.max_qubits) throw UsageError("--min-qubits exceeds --max-qubits");
  if (a.max_qubits > kMaxCircuitQubits) throw UsageError("--max-qubits is at most 12");
  if (a.per_size < 1 || a.depth < 1) {
    throw UsageError("--circuits-per-size and --depth must be at least 1");
  }
  check_shots(a.shots, a.max_qubits);
  RunConfig rc;
  rc.tolerance = a.tolerance;
  rc.delta = a.delta;
  rc.validate();

  ReconstructConfig config;
  config.tolerance = rc.tolerance;
  config.delta = rc.delta;

  std::string csv = "n,seed,trace_distance,fidelity,wall_ms,pairs_solved\n";
  for (std::size_t n = a.min_qubits; n <= a.max_qubits; ++n) {
    for (std::size_t k = 0; k < a.per_size; ++k) {
      const std::uint64_t seed = sweep_circuit_seed(a.seed, n, k);
      const StateVector psi = run(random_circuit(n, a.depth, seed));
      const MeasureSpec spec = MeasureSpec::first_row(auto_reference(psi, a.shots, seed));
      const MeasurementSet ms = a.shots ? sampled_measurements(psi, spec, *a.shots, seed)
                                        : exact_measurements(psi, spec);
      const auto t0 = std::chrono::steady_clock::now();
      const Reconstruction rec = reconstruct_complex(ms, config);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms_elapsed =
          a.no_timing ? 0.0 : std::chrono::duration<double, std::milli>(t1 - t0).count();
      csv += std::to_string(n) + "," + std::to_string(seed) + "," +
             io::format_double(trace_distance(rec.rho, psi.density())) + "," +
             io::format_double(fidelity_pure(psi, rec.rho)) + "," + io::format_double(ms_elapsed) +
             "," + std::to_string(rec.pairs_solved) + "\n";
    }
  }
  io::write_file(a.out, csv);
  return kExitOk;
}

}  // namespace

void RunConfig::validate() const {
  if (!(delta > 0.0 && delta < 0.1)) throw UsageError("--delta must lie in (0, 0.1)");
  if (!(tolerance > 0.0 && tolerance < 1e-4)) throw UsageError("--tolerance must lie in (0, 1e-4)");
}

std::optional<std::size_t> parse_reference(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("--reference must be 'auto' or a basis index");
  }
  return value;
}

std::uint64_t sweep_circuit_seed(std::uint64_t master, std::size_t n, std::size_t k) {
  return splitmix64(splitmix64(master) + 1000003ULL * n + k);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise maximal-entropy reconstruction of pure-state density matrices",
               "maxent-qst"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run a circuit and write its measurement set");
  s->add_option("--circuit", sim.circuit, "Circuit JSON")->required();
  s->add_option("--out", sim.out, "MeasurementSet JSON to write")->required();
  s->add_option("--state-out", sim.state_out, "Also write the StateVector JSON");
  s->add_option("--shots", sim.shots, "Sample with this many shots per setting");
  s->add_option("--seed", sim.seed, "Sampling seed");
  s->add_option("--measure", sim.measure, "all | probabilities | first-row")
      ->check(CLI::IsMember({"all", "probabilities", "first-row"}));
  s->add_option("--reference", sim.reference, "Reference row for first-row: index or auto");

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Reconstruct a density matrix");
  r->add_option("--measurements", rec.measurements, "MeasurementSet JSON")->required();
  r->add_option("--mode", rec.mode, "real | complex")
      ->required()
      ->check(CLI::IsMember({"real", "complex"}));
  r->add_flag("--no-scale", rec.no_scale, "Solve pairs without the scaling technique");
  r->add_option("--out", rec.out, "DensityMatrix JSON to write")->required();
  r->add_option("--trace", rec.trace, "ConvergenceTrace CSV to write");
  r->add_option("--tolerance", rec.tolerance, "Pair solver residual tolerance");
  r->add_option("--delta", rec.delta, "Scaled pairs sum to 1 - delta");
  r->add_option("--reference", rec.reference, "Complex-mode reference row: index or auto");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Print metrics between two density matrices");
  c->add_option("--a", cmp.a, "DensityMatrix JSON")->required();
  c->add_option("--b", cmp.b, "DensityMatrix JSON")->required();
  c->add_option("--target-state", cmp.target, "StateVector JSON for fidelity against --a");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Random-circuit reconstruction sweep (CSV)");
  w->add_option("--min-qubits", sw.min_qubits)->required();
  w->add_option("--max-qubits", sw.max_qubits)->required();
  w->add_option("--circuits-per-size", sw.per_size)->required();
  w->add_option("--depth", sw.depth)->required();
  w->add_option("--seed", sw.seed)->required();
  w->add_option("--shots", sw.shots, "Sampled measurements (n <= 5)");
  w->add_option("--out", sw.out, "CSV to write")->required();
  w->add_flag("--no-timing", sw.no_timing, "Write wall_ms as 0 for byte-identical output");
  w->add_option("--tolerance", sw.tolerance);
  w->add_option("--delta", sw.delta);

  std::vector<const char*> argv{"maxent-qst"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_simulate(sim);
    if (r->parsed()) return cmd_reconstruct(rec);
    if (c->parsed()) return cmd_compare(cmp, out);
    return cmd_sweep(sw);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidMeasurementError& e) {
    err << "invalid measurements: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace mqst::cli
