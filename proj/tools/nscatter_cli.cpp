// Copyright 2026 The nscatter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: run, validate and oracle subcommands.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nscatter/config.hpp"
#include "nscatter/io.hpp"
#include "nscatter/oracle.hpp"
#include "nscatter/pipeline.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> mitigate;
  std::optional<std::uint64_t> shots;
  std::optional<std::size_t> t_reini;
  std::optional<std::size_t> threads;
  bool exact_measure = false;
};

nscatter::ExperimentConfig resolve(const Overrides& o) {
  nscatter::ExperimentConfig cfg = o.config_path.empty() ? nscatter::ExperimentConfig{} : nscatter::load_config(o.config_path);
  if (o.mode) cfg.mode = nscatter::mode_from_string(*o.mode);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  if (o.mitigate) cfg.mitigation = nscatter::mitigation_from_string(*o.mitigate);
  if (o.shots) cfg.shots = *o.shots;
  if (o.t_reini) cfg.t_reini = *o.t_reini;
  if (o.threads) cfg.threads = *o.threads;
  if (o.exact_measure) cfg.exact_measure = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-neutron spin scattering on a simulated noisy two-qubit processor"};
  app.require_subcommand(1);

  Overrides o;
  auto* run = app.add_subcommand("run", "Run the co-processing pipeline and write CSV/JSON outputs");
  run->add_option("--config", o.config_path, "JSON experiment configuration (defaults when omitted)");
  run->add_option("--mode", o.mode, "exact | sequence | compressed | reinitialized");
  run->add_option("--seed", o.seed, "Master seed");
  run->add_option("--out", o.out, "Output directory");
  run->add_option("--mitigate", o.mitigate, "Comma list of rcal, rc, purify (or none)");
  run->add_option("--shots", o.shots, "Shots per circuit");
  run->add_option("--t-reini", o.t_reini, "Coarse steps between reinitializations");
  run->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
  run->add_flag("--exact-measure", o.exact_measure, "Use exact probabilities instead of sampled shots");

  Overrides v;
  auto* validate = app.add_subcommand("validate", "Check a configuration without running it");
  validate->add_option("--config", v.config_path, "JSON experiment configuration")->required();

  std::uint64_t oracle_seed = 7;
  auto* oracle = app.add_subcommand("oracle", "Compare production routines against brute-force references");
  oracle->add_option("--seed", oracle_seed, "Seed for the random test inputs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const nscatter::ExperimentConfig cfg = resolve(o);
      const nscatter::RunResult result = nscatter::run(cfg);
      nscatter::emit(result, cfg.output_dir);
      const auto& last = result.steps.back();
      std::cout << "mode=" << nscatter::to_string(cfg.mode) << " steps=" << result.steps.size()
                << " mitigation=" << nscatter::to_string(cfg.mitigation) << " final tvd_raw=" << last.tvd_raw
                << " tvd_mit=" << last.tvd_mit << " -> " << cfg.output_dir << "\n";
      return 0;
    }
    if (*validate) {
      const nscatter::ExperimentConfig cfg = resolve(v);
      cfg.validate();
      std::cout << "config OK: mode=" << nscatter::to_string(cfg.mode) << " N=" << cfg.n_steps << " dt=" << cfg.dt
                << " coarse steps=" << cfg.coarse_steps() << "\n";
      return 0;
    }
    if (*oracle) return nscatter::oracle::run_suite(std::cout, oracle_seed) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
