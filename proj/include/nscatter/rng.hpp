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
#include <initializer_list>
#include <span>
#include <vector>

namespace nscatter {

/// Counter-based generator: draw k of a stream is splitmix64(key + k * golden),
/// so any draw can be reproduced from (key, k) alone and streams never share state.
///
/// Stream keys are derived by hashing a parent key with a domain tag and an
/// index list. The pipeline uses
///   derive(master, Domain::Step, {mode, step})
///   derive(step_key, Domain::Twirl, {member})
///   derive(step_key, Domain::Shots, {member})      member = -1 when untwirled
///   derive(step_key, Domain::Tomography, {setting})
///   derive(master, Domain::Calibration, {circuit})
class CounterRng {
 public:
  enum class Domain : std::uint64_t { Step = 1, Twirl = 2, Shots = 3, Tomography = 4, Calibration = 5, Test = 6 };

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static std::uint64_t derive(std::uint64_t parent, Domain domain, std::initializer_list<std::int64_t> indices);
  static std::uint64_t mix(std::uint64_t x);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, n), rejection sampled so there is no modulo bias.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Multinomial sample of `shots` draws from the categorical distribution
/// `probs`, one inverse-CDF lookup per shot.
std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots, CounterRng& rng);

}  // namespace nscatter
