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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "nscatter/backend.hpp"
#include "nscatter/trajectory.hpp"

namespace nscatter {

enum class Mode { Exact, Sequence, Compressed, Reinitialized };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct MitigationFlags {
  bool rcal = false;
  bool rc = false;
  bool purify = false;

  bool any() const { return rcal || rc || purify; }
};

/// Parses a comma list drawn from {rcal, rc, purify, none}.
MitigationFlags mitigation_from_string(const std::string& list);
std::string to_string(const MitigationFlags& flags);

struct ExperimentConfig {
  PotentialModel potential = default_potential();
  double neutron_mass = kNeutronMass;  // MeV; the relative motion uses half of it
  Vec3 r0{0.1, 0.0, -0.8};
  Vec3 v0{0.0, 0.0, 0.4};
  double dt = 0.005;
  std::size_t n_steps = 1000;
  std::size_t steps_per_coarse = 50;
  std::size_t initial_spin = 0;  // coupled-basis index
  double asymptotic_radius = 10.0;

  Mode mode = Mode::Sequence;
  std::size_t t_reini = 1;  // coarse steps between reinitializations

  NoiseModel noise = default_noise();
  std::uint64_t shots = 10000;
  bool exact_measure = false;
  std::size_t rc_randomizations = 20;
  MitigationFlags mitigation;
  /// Depolarizing parameter used by purification; derived from the
  /// backend's entangling-gate process fidelity when absent.
  std::optional<double> purify_lambda;

  std::uint64_t seed = 20240601;
  std::string output_dir = "out";
  std::size_t threads = 0;  // 0: hardware concurrency

  static NoiseModel default_noise();

  double reduced_mass() const { return neutron_mass / 2.0; }
  std::size_t coarse_steps() const { return n_steps / steps_per_coarse; }
  std::optional<std::uint64_t> measurement_shots() const {
    return exact_measure ? std::nullopt : std::optional<std::uint64_t>(shots);
  }
  double effective_purify_lambda() const;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace nscatter
