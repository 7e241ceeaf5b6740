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

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nscatter {

// Natural units throughout: lengths and times in MeV^-1, energies in MeV.
using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);

inline constexpr double kNeutronMass = 939.565;  // MeV

/// A radial profile V(r). Harmonic profiles do not decay and exist for
/// integrator tests only.
struct RadialFunction {
  enum class Kind { Zero, Gaussian, Yukawa, Harmonic };

  Kind kind = Kind::Zero;
  double strength = 0.0;   // C (MeV) or spring constant k (MeV^3) for Harmonic
  double range = 1.0;      // Gaussian width R, or Yukawa regulator radius
  double mu = 1.0;         // Yukawa inverse range

  static RadialFunction zero() { return {}; }
  /// C exp(-r^2/R^2)
  static RadialFunction gaussian(double strength, double range);
  /// C exp(-mu r)/(mu r) * (1 - exp(-r^2/R^2))
  static RadialFunction yukawa(double strength, double mu, double regulator);
  /// k r^2 / 2
  static RadialFunction harmonic(double k);

  double value(double r) const;
  double derivative(double r) const;
  bool decays() const { return kind != Kind::Harmonic; }
};

std::string to_string(RadialFunction::Kind kind);
RadialFunction::Kind radial_kind_from_string(const std::string& name);

struct PotentialModel {
  std::string name = "custom";
  RadialFunction spin_independent;
  RadialFunction spin_scalar;   // multiplies sigma1.sigma2
  RadialFunction spin_tensor;   // multiplies the rank-2 tensor operator
  double core_cutoff = 1e-3;

  /// Checks finiteness and decay of every profile on a radial grid out to
  /// asymptotic_radius. Throws std::invalid_argument on failure.
  void validate(double asymptotic_radius) const;

  /// Largest range scale among the decaying, non-zero profiles.
  double interaction_range() const;
};

/// Gaussian central and spin-dependent profiles used by the default
/// scattering setup. Parameters are illustrative, not fitted.
PotentialModel default_potential();

struct TrajectoryPoint {
  double t = 0.0;
  Vec3 r{};
  Vec3 v{};
};

struct Trajectory {
  double dt = 0.0;
  double reduced_mass = 0.0;
  std::vector<TrajectoryPoint> points;

  std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
};

class CoreCutoffError : public std::runtime_error {
 public:
  CoreCutoffError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  /// Integration step at which the cutoff was crossed; -1 for a direct force query.
  long step() const { return step_; }

 private:
  long step_;
};

/// -dV_SI/dr * r_hat, in MeV^2.
Vec3 force(const PotentialModel& model, const Vec3& r);

/// Velocity-Verlet integration of the relative coordinate.
Trajectory verlet_integrate(const PotentialModel& model, const Vec3& r0, const Vec3& v0, double dt,
                            std::size_t n_steps, double reduced_mass);

/// Relative-frame kinetic plus spin-independent potential energy.
double total_energy(const PotentialModel& model, const TrajectoryPoint& p, double reduced_mass);

/// CSV with header t,rx,ry,rz,vx,vy,vz and 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace nscatter
