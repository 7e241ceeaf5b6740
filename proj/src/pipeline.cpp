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

#include "nscatter/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nscatter/rng.hpp"
#include "nscatter/synthesis.hpp"

namespace nscatter {

double tvd(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tvd: distributions have different support sizes");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double tvd(const Distribution& p, const Distribution& q) { return tvd(p.probs, q.probs); }

double state_fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

using Domain = CounterRng::Domain;

std::uint64_t shot_key(std::uint64_t key, std::int64_t member) { return CounterRng::derive(key, Domain::Shots, {member}); }

Distribution average(const std::vector<Distribution>& parts) {
  Distribution out = Distribution::exact(std::vector<double>(parts.front().size(), 0.0));
  std::uint64_t total = 0;
  bool sampled = true;
  for (const auto& d : parts) {
    for (std::size_t i = 0; i < d.size(); ++i) out.probs[i] += d.probs[i] / static_cast<double>(parts.size());
    if (d.shots) total += *d.shots;
    else sampled = false;
  }
  if (sampled) out.shots = total;
  return out;
}

template <typename F>
auto with_step_context(std::size_t step, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw std::runtime_error("step " + std::to_string(step) + ": " + e.what());
  }
}

StepResult base_step(std::size_t k, const ExperimentConfig& cfg, const std::vector<StateVector>& exact) {
  StepResult s;
  s.step = k;
  s.t = static_cast<double>(k * cfg.steps_per_coarse) * cfg.dt;
  s.exact = Distribution::exact(exact[k].probabilities());
  return s;
}

void fill_from(StepResult& s, const Circuit& c, Execution ex) {
  s.raw = std::move(ex.raw);
  s.mitigated = std::move(ex.mitigated);
  s.trace = std::move(ex.trace);
  s.shot_seed = ex.shot_seed;
  s.tvd_raw = tvd(s.exact, s.raw);
  s.tvd_mit = tvd(s.exact, s.mitigated);
  s.entangling_gates = c.entangling_count();
  s.gate_count = c.gates.size();
  s.circuit = c;
}

struct Prepared {
  Trajectory trajectory;
  std::vector<CoarsePropagator> propagators;
  std::vector<StateVector> exact;
  std::optional<ConfusionEstimate> calibration;
};

Prepared prepare(const ExperimentConfig& cfg) {
  cfg.validate();
  Prepared p;
  p.trajectory = verlet_integrate(cfg.potential, cfg.r0, cfg.v0, cfg.dt, cfg.n_steps, cfg.reduced_mass());
  p.propagators = coarse_propagators(cfg.potential, p.trajectory, cfg.steps_per_coarse);
  p.exact = exact_spin_evolution(p.propagators, StateVector::basis(4, cfg.initial_spin));
  if (cfg.mitigation.rcal) p.calibration = rcal_calibrate(cfg.noise, 2, cfg.measurement_shots(), cfg.seed);
  return p;
}

std::uint64_t step_key(const ExperimentConfig& cfg, std::size_t k) {
  return CounterRng::derive(cfg.seed, Domain::Step, {static_cast<std::int64_t>(cfg.mode), static_cast<std::int64_t>(k)});
}

}  // namespace

Execution execute(const Circuit& circuit, const DensityMatrix& initial, const ExperimentConfig& cfg,
                  const std::optional<ConfusionEstimate>& calibration, std::uint64_t key) {
  if (cfg.mitigation.rcal && !calibration) throw std::invalid_argument("execute: rcal enabled without a calibration");
  const auto shots = cfg.measurement_shots();
  Execution ex;
  ex.shot_seed = shot_key(key, -1);
  ex.raw = measure(evolve(circuit, cfg.noise, initial), cfg.noise, shots, ex.shot_seed);
  ex.trace.raw = ex.raw.probs;

  Distribution current = ex.raw;
  if (cfg.mitigation.rcal) {
    current = rcal_correct(ex.raw, *calibration);
    ex.trace.rcal = current.probs;
  }
  if (cfg.mitigation.rc) {
    const TwirlSet set = randomized_compile(circuit, cfg.rc_randomizations, key);
    std::optional<std::uint64_t> member_shots;
    if (shots) member_shots = *shots / cfg.rc_randomizations;
    std::vector<Distribution> parts;
    for (std::size_t m = 0; m < set.size(); ++m) {
      Distribution d = measure(evolve(set.members[m], cfg.noise, initial), cfg.noise, member_shots,
                               shot_key(key, static_cast<std::int64_t>(m)));
      parts.push_back(cfg.mitigation.rcal ? rcal_correct(d, *calibration) : d);
    }
    current = average(parts);
    ex.trace.rc = current.probs;
  }
  if (cfg.mitigation.purify) {
    ex.trace.lambda = cfg.effective_purify_lambda();
    ex.trace.n_2q = circuit.entangling_count();
    ex.trace.purified_unclipped = purify_unclipped(current, ex.trace.lambda, ex.trace.n_2q);
    current = purify(current, ex.trace.lambda, ex.trace.n_2q);
    ex.trace.purified = current.probs;
  }
  current.counts.clear();
  ex.mitigated = std::move(current);
  return ex;
}

std::vector<Circuit> mode_circuits(const ExperimentConfig& cfg, const std::vector<CoarsePropagator>& propagators) {
  std::vector<Circuit> out{Circuit{}};
  std::vector<Circuit> tail;
  if (cfg.mode == Mode::Sequence) tail = sequence_circuits(propagators);
  else if (cfg.mode == Mode::Compressed) tail = compressed_circuits(propagators);
  else throw std::invalid_argument("mode_circuits: only sequence and compressed modes execute fixed circuits");
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

bool is_reinit_step(std::size_t step, std::size_t t_reini) { return t_reini > 0 && step > 0 && step % t_reini == 0; }

RunResult run(const ExperimentConfig& cfg) {
  if (cfg.mode == Mode::Reinitialized) return run_reinitialized(cfg);
  Prepared p = prepare(cfg);
  RunResult result{cfg, std::move(p.trajectory), std::move(p.propagators), std::move(p.exact), {}};
  const std::size_t n_steps = result.propagators.size() + 1;
  result.steps.resize(n_steps);

  if (cfg.mode == Mode::Exact) {
    for (std::size_t k = 0; k < n_steps; ++k) {
      StepResult s = base_step(k, cfg, result.exact_states);
      s.raw = s.exact;
      s.mitigated = s.exact;
      s.trace.raw = s.exact.probs;
      s.fidelity = 1.0;
      result.steps[k] = std::move(s);
    }
    return result;
  }

  const std::vector<Circuit> circuits = mode_circuits(cfg, result.propagators);
  const DensityMatrix initial = DensityMatrix::basis(2, cfg.initial_spin);
  parallel_for(n_steps, cfg.threads, [&](std::size_t k) {
    result.steps[k] = with_step_context(k, [&] {
      StepResult s = base_step(k, cfg, result.exact_states);
      fill_from(s, circuits[k], execute(circuits[k], initial, cfg, p.calibration, step_key(cfg, k)));
      return s;
    });
  });
  return result;
}

RunResult run_reinitialized(const ExperimentConfig& cfg) {
  if (cfg.mode != Mode::Reinitialized) throw std::invalid_argument("run_reinitialized: config mode is not reinitialized");
  Prepared p = prepare(cfg);
  RunResult result{cfg, std::move(p.trajectory), std::move(p.propagators), std::move(p.exact), {}};
  const std::size_t n_steps = result.propagators.size() + 1;

  Circuit current;
  DensityMatrix initial = DensityMatrix::basis(2, cfg.initial_spin);
  for (std::size_t k = 0; k < n_steps; ++k) {
    StepResult s = with_step_context(k, [&] {
      if (k > 0) current.append(synthesize(result.propagators[k - 1].unitary));
      StepResult s = base_step(k, cfg, result.exact_states);
      const std::uint64_t key = step_key(cfg, k);
      const std::vector<Circuit> settings = tomography_settings(current, 2);
      std::vector<Execution> runs(settings.size());
      parallel_for(settings.size(), cfg.threads, [&](std::size_t i) {
        const std::uint64_t setting_key = CounterRng::derive(key, Domain::Tomography, {static_cast<std::int64_t>(i)});
        runs[i] = execute(settings[i], initial, cfg, p.calibration, setting_key);
      });
      std::vector<Distribution> measured;
      for (const auto& r : runs) measured.push_back(r.mitigated);
      const ReconstructedState recon = reconstruct(make_record(measured, 2));
      s.fidelity = state_fidelity(recon.state(), result.exact_states[k]);
      s.tomography = recon;
      fill_from(s, current, std::move(runs[0]));
      if (is_reinit_step(k, cfg.t_reini)) {
        s.reinitialized = true;
        current = reinit_circuit(recon);
        initial = DensityMatrix::basis(2, 0);
      }
      return s;
    });
    result.steps.push_back(std::move(s));
  }
  return result;
}

}  // namespace nscatter
