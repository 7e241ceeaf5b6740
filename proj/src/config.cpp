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

#include "nscatter/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nscatter/mitigation.hpp"
#include "nscatter/spin.hpp"

namespace nscatter {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Exact: return "exact";
    case Mode::Sequence: return "sequence";
    case Mode::Compressed: return "compressed";
    case Mode::Reinitialized: return "reinitialized";
  }
  return "sequence";
}

Mode mode_from_string(const std::string& name) {
  if (name == "exact") return Mode::Exact;
  if (name == "sequence") return Mode::Sequence;
  if (name == "compressed") return Mode::Compressed;
  if (name == "reinitialized") return Mode::Reinitialized;
  throw std::invalid_argument("unknown mode '" + name + "' (expected exact, sequence, compressed or reinitialized)");
}

MitigationFlags mitigation_from_string(const std::string& list) {
  MitigationFlags f;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "rcal") f.rcal = true;
    else if (item == "rc") f.rc = true;
    else if (item == "purify") f.purify = true;
    else if (item == "none" || item.empty()) continue;
    else throw std::invalid_argument("unknown mitigation '" + item + "' (expected rcal, rc, purify or none)");
  }
  return f;
}

std::string to_string(const MitigationFlags& flags) {
  std::string s;
  auto add = [&](const char* name) { s += s.empty() ? name : std::string(",") + name; };
  if (flags.rcal) add("rcal");
  if (flags.rc) add("rc");
  if (flags.purify) add("purify");
  return s.empty() ? "none" : s;
}

NoiseModel ExperimentConfig::default_noise() {
  NoiseModel n;
  n.lambda2q = 0.97;
  n.lambda1q = 1.0;
  n.confusion = {symmetric_confusion(0.02), symmetric_confusion(0.02)};
  n.over_rotation = 0.05;
  return n;
}

double ExperimentConfig::effective_purify_lambda() const {
  if (purify_lambda) return *purify_lambda;
  return lambda_from_process_fidelity(entangling_process_fidelity(noise), 4);
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
  if (n_steps < 1) fail("n_steps must be at least 1");
  if (steps_per_coarse < 1) fail("steps_per_coarse must be at least 1");
  if (n_steps % steps_per_coarse != 0) {
    fail("n_steps (" + std::to_string(n_steps) + ") is not divisible by steps_per_coarse (" +
         std::to_string(steps_per_coarse) + ")");
  }
  if (!(neutron_mass > 0.0)) fail("neutron_mass must be positive");
  if (initial_spin > kSinglet) fail("initial_spin must be a coupled-basis index 0..3");
  if (mode == Mode::Reinitialized && t_reini < 1) fail("reinitialized mode requires t_reini >= 1");
  if (!exact_measure && shots < 1) fail("shots must be at least 1");
  if (mitigation.rc && rc_randomizations < 1) fail("rc needs at least one randomization");
  if (mitigation.rc && !exact_measure && shots < rc_randomizations) fail("shots must cover every randomization");
  if (purify_lambda && !(*purify_lambda > 0.0 && *purify_lambda <= 1.0)) fail("purify_lambda must lie in (0,1]");
  if (noise.confusion.size() != 2) fail("noise.confusion needs one matrix per qubit (2)");
  if (norm(r0) < potential.core_cutoff) fail("initial separation lies inside the core cutoff");
  try {
    noise.validate();
    potential.validate(asymptotic_radius);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

namespace {

nlohmann::ordered_json radial_to_json(const RadialFunction& f) {
  nlohmann::ordered_json j = {{"kind", to_string(f.kind)}, {"strength", f.strength}, {"range", f.range}};
  if (f.kind == RadialFunction::Kind::Yukawa) j["mu"] = f.mu;
  return j;
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

RadialFunction radial_from_json(const nlohmann::json& j, const std::string& where) {
  reject_unknown(j, {"kind", "strength", "range", "mu"}, where);
  RadialFunction f;
  f.kind = radial_kind_from_string(j.value("kind", std::string("zero")));
  f.strength = j.value("strength", 0.0);
  f.range = j.value("range", 1.0);
  f.mu = j.value("mu", 1.0);
  return f;
}

Vec3 vec_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("config: " + where + " must be a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Confusion confusion_from_json(const nlohmann::json& j) {
  if (j.is_number()) return symmetric_confusion(j.get<double>());
  if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
    throw std::invalid_argument("config: confusion entries must be a flip probability or a 2x2 matrix");
  return {{{j[0][0].get<double>(), j[0][1].get<double>()}, {j[1][0].get<double>(), j[1][1].get<double>()}}};
}

}  // namespace

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json confusion = nlohmann::ordered_json::array();
  for (const auto& m : c.noise.confusion) confusion.push_back({{m[0][0], m[0][1]}, {m[1][0], m[1][1]}});
  nlohmann::ordered_json j;
  j["potential"] = {{"name", c.potential.name},
                    {"spin_independent", radial_to_json(c.potential.spin_independent)},
                    {"spin_scalar", radial_to_json(c.potential.spin_scalar)},
                    {"spin_tensor", radial_to_json(c.potential.spin_tensor)},
                    {"core_cutoff", c.potential.core_cutoff}};
  j["neutron_mass"] = c.neutron_mass;
  j["r0"] = c.r0;
  j["v0"] = c.v0;
  j["dt"] = c.dt;
  j["n_steps"] = c.n_steps;
  j["steps_per_coarse"] = c.steps_per_coarse;
  j["initial_spin"] = c.initial_spin;
  j["asymptotic_radius"] = c.asymptotic_radius;
  j["mode"] = to_string(c.mode);
  j["t_reini"] = c.t_reini;
  j["noise"] = {{"lambda2q", c.noise.lambda2q},
                {"lambda1q", c.noise.lambda1q},
                {"confusion", confusion},
                {"over_rotation", c.noise.over_rotation}};
  j["shots"] = c.shots;
  j["exact_measure"] = c.exact_measure;
  j["rc_randomizations"] = c.rc_randomizations;
  j["mitigation"] = {{"rcal", c.mitigation.rcal}, {"rc", c.mitigation.rc}, {"purify", c.mitigation.purify}};
  j["purify_lambda"] = c.purify_lambda ? nlohmann::ordered_json(*c.purify_lambda) : nlohmann::ordered_json(nullptr);
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  reject_unknown(j,
                 {"potential", "neutron_mass", "r0", "v0", "dt", "n_steps", "steps_per_coarse", "initial_spin",
                  "asymptotic_radius", "mode", "t_reini", "noise", "shots", "exact_measure", "rc_randomizations",
                  "mitigation", "purify_lambda", "seed", "output_dir", "threads"},
                 "config");
  ExperimentConfig c;
  try {
    if (j.contains("potential")) {
      const auto& p = j["potential"];
      reject_unknown(p, {"name", "spin_independent", "spin_scalar", "spin_tensor", "core_cutoff"}, "potential");
      c.potential.name = p.value("name", c.potential.name);
      if (p.contains("spin_independent")) c.potential.spin_independent = radial_from_json(p["spin_independent"], "spin_independent");
      if (p.contains("spin_scalar")) c.potential.spin_scalar = radial_from_json(p["spin_scalar"], "spin_scalar");
      if (p.contains("spin_tensor")) c.potential.spin_tensor = radial_from_json(p["spin_tensor"], "spin_tensor");
      c.potential.core_cutoff = p.value("core_cutoff", c.potential.core_cutoff);
    }
    c.neutron_mass = j.value("neutron_mass", c.neutron_mass);
    if (j.contains("r0")) c.r0 = vec_from_json(j["r0"], "r0");
    if (j.contains("v0")) c.v0 = vec_from_json(j["v0"], "v0");
    c.dt = j.value("dt", c.dt);
    c.n_steps = j.value("n_steps", c.n_steps);
    c.steps_per_coarse = j.value("steps_per_coarse", c.steps_per_coarse);
    c.initial_spin = j.value("initial_spin", c.initial_spin);
    c.asymptotic_radius = j.value("asymptotic_radius", c.asymptotic_radius);
    if (j.contains("mode")) c.mode = mode_from_string(j["mode"].get<std::string>());
    c.t_reini = j.value("t_reini", c.t_reini);
    if (j.contains("noise")) {
      const auto& n = j["noise"];
      reject_unknown(n, {"lambda2q", "lambda1q", "confusion", "over_rotation"}, "noise");
      c.noise.lambda2q = n.value("lambda2q", c.noise.lambda2q);
      c.noise.lambda1q = n.value("lambda1q", c.noise.lambda1q);
      c.noise.over_rotation = n.value("over_rotation", c.noise.over_rotation);
      if (n.contains("confusion")) {
        c.noise.confusion.clear();
        for (const auto& m : n["confusion"]) c.noise.confusion.push_back(confusion_from_json(m));
      }
    }
    c.shots = j.value("shots", c.shots);
    c.exact_measure = j.value("exact_measure", c.exact_measure);
    c.rc_randomizations = j.value("rc_randomizations", c.rc_randomizations);
    if (j.contains("mitigation")) {
      const auto& m = j["mitigation"];
      if (m.is_string()) {
        c.mitigation = mitigation_from_string(m.get<std::string>());
      } else {
        reject_unknown(m, {"rcal", "rc", "purify"}, "mitigation");
        c.mitigation.rcal = m.value("rcal", false);
        c.mitigation.rc = m.value("rc", false);
        c.mitigation.purify = m.value("purify", false);
      }
    }
    if (j.contains("purify_lambda") && !j["purify_lambda"].is_null()) c.purify_lambda = j["purify_lambda"].get<double>();
    c.seed = j.value("seed", c.seed);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace nscatter
