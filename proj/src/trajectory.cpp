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

#include "nscatter/trajectory.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace nscatter {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

RadialFunction RadialFunction::gaussian(double strength, double range) {
  if (!(range > 0.0)) throw std::invalid_argument("gaussian profile needs range > 0");
  RadialFunction f;
  f.kind = Kind::Gaussian;
  f.strength = strength;
  f.range = range;
  return f;
}

RadialFunction RadialFunction::yukawa(double strength, double mu, double regulator) {
  if (!(mu > 0.0) || !(regulator > 0.0)) throw std::invalid_argument("yukawa profile needs mu > 0 and regulator > 0");
  RadialFunction f;
  f.kind = Kind::Yukawa;
  f.strength = strength;
  f.mu = mu;
  f.range = regulator;
  return f;
}

RadialFunction RadialFunction::harmonic(double k) {
  RadialFunction f;
  f.kind = Kind::Harmonic;
  f.strength = k;
  return f;
}

double RadialFunction::value(double r) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Gaussian:
      return strength * std::exp(-r * r / (range * range));
    case Kind::Yukawa: {
      const double x = mu * r;
      return strength * std::exp(-x) / x * -std::expm1(-r * r / (range * range));
    }
    case Kind::Harmonic:
      return 0.5 * strength * r * r;
  }
  return 0.0;
}

double RadialFunction::derivative(double r) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Gaussian:
      return -2.0 * r / (range * range) * value(r);
    case Kind::Yukawa: {
      const double x = mu * r;
      const double yuk = std::exp(-x) / x;
      const double dyuk = -std::exp(-x) * (x + 1.0) / (mu * r * r);
      const double g = std::exp(-r * r / (range * range));
      return strength * (dyuk * (1.0 - g) + yuk * (2.0 * r / (range * range)) * g);
    }
    case Kind::Harmonic:
      return strength * r;
  }
  return 0.0;
}

std::string to_string(RadialFunction::Kind kind) {
  switch (kind) {
    case RadialFunction::Kind::Zero: return "zero";
    case RadialFunction::Kind::Gaussian: return "gaussian";
    case RadialFunction::Kind::Yukawa: return "yukawa";
    case RadialFunction::Kind::Harmonic: return "harmonic";
  }
  return "zero";
}

RadialFunction::Kind radial_kind_from_string(const std::string& name) {
  if (name == "zero") return RadialFunction::Kind::Zero;
  if (name == "gaussian") return RadialFunction::Kind::Gaussian;
  if (name == "yukawa") return RadialFunction::Kind::Yukawa;
  if (name == "harmonic") return RadialFunction::Kind::Harmonic;
  throw std::invalid_argument("unknown radial profile kind '" + name + "'");
}

void PotentialModel::validate(double asymptotic_radius) const {
  if (!(core_cutoff > 0.0)) throw std::invalid_argument("potential: core_cutoff must be positive");
  if (!(asymptotic_radius > core_cutoff)) throw std::invalid_argument("potential: asymptotic radius below core cutoff");
  const std::pair<const char*, const RadialFunction*> profiles[] = {
      {"V_SI", &spin_independent}, {"V_s", &spin_scalar}, {"V_t", &spin_tensor}};
  constexpr int kSamples = 512;
  for (const auto& [label, f] : profiles) {
    if (!f->decays()) {
      throw std::invalid_argument(std::string("potential: ") + label + " does not decay (harmonic is test-only)");
    }
    double peak = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
      const double r = core_cutoff + (asymptotic_radius - core_cutoff) * i / kSamples;
      const double v = f->value(r);
      const double dv = f->derivative(r);
      if (!std::isfinite(v) || !std::isfinite(dv)) {
        std::ostringstream msg;
        msg << "potential: " << label << " not finite at r=" << r;
        throw std::invalid_argument(msg.str());
      }
      peak = std::max(peak, std::abs(v));
    }
    if (std::abs(f->value(asymptotic_radius)) > 1e-3 * peak) {
      std::ostringstream msg;
      msg << "potential: " << label << " has not decayed by r=" << asymptotic_radius;
      throw std::invalid_argument(msg.str());
    }
  }
}

double PotentialModel::interaction_range() const {
  double range = 0.0;
  for (const RadialFunction* f : {&spin_independent, &spin_scalar, &spin_tensor}) {
    switch (f->kind) {
      case RadialFunction::Kind::Gaussian: range = std::max(range, f->range); break;
      case RadialFunction::Kind::Yukawa: range = std::max(range, 1.0 / f->mu); break;
      default: break;
    }
  }
  return range;
}

PotentialModel default_potential() {
  PotentialModel m;
  m.name = "gaussian-default";
  m.spin_independent = RadialFunction::gaussian(-5.0, 0.15);
  m.spin_scalar = RadialFunction::gaussian(2.0, 0.15);
  m.spin_tensor = RadialFunction::gaussian(6.0, 0.15);
  return m;
}

Vec3 force(const PotentialModel& model, const Vec3& r) {
  const double d = norm(r);
  if (!(d >= model.core_cutoff)) {
    std::ostringstream msg;
    msg << "force: |r| = " << d << " below core cutoff " << model.core_cutoff;
    throw CoreCutoffError(msg.str(), -1);
  }
  const double scale = -model.spin_independent.derivative(d) / d;
  return {scale * r[0], scale * r[1], scale * r[2]};
}

Trajectory verlet_integrate(const PotentialModel& model, const Vec3& r0, const Vec3& v0, double dt,
                            std::size_t n_steps, double reduced_mass) {
  if (!(dt > 0.0)) throw std::invalid_argument("verlet_integrate: dt must be positive");
  if (n_steps < 1) throw std::invalid_argument("verlet_integrate: n_steps must be >= 1");
  if (!(reduced_mass > 0.0)) throw std::invalid_argument("verlet_integrate: reduced mass must be positive");

  Trajectory traj;
  traj.dt = dt;
  traj.reduced_mass = reduced_mass;
  traj.points.reserve(n_steps + 1);

  auto accel = [&](const Vec3& r, long step) {
    try {
      Vec3 f = force(model, r);
      for (double& c : f) c /= reduced_mass;
      return f;
    } catch (const CoreCutoffError& e) {
      throw CoreCutoffError(std::string(e.what()) + " at step " + std::to_string(step), step);
    }
  };

  Vec3 r = r0;
  Vec3 v = v0;
  Vec3 a = accel(r, 0);
  traj.points.push_back({0.0, r, v});
  for (std::size_t i = 1; i <= n_steps; ++i) {
    for (int k = 0; k < 3; ++k) {
      v[k] += 0.5 * dt * a[k];
      r[k] += dt * v[k];
    }
    a = accel(r, static_cast<long>(i));
    for (int k = 0; k < 3; ++k) v[k] += 0.5 * dt * a[k];
    traj.points.push_back({static_cast<double>(i) * dt, r, v});
  }
  return traj;
}

double total_energy(const PotentialModel& model, const TrajectoryPoint& p, double reduced_mass) {
  const double v2 = p.v[0] * p.v[0] + p.v[1] * p.v[1] + p.v[2] * p.v[2];
  return 0.5 * reduced_mass * v2 + model.spin_independent.value(norm(p.r));
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,rx,ry,rz,vx,vy,vz\n";
  out << std::setprecision(17);
  for (const auto& p : traj.points) {
    out << p.t << ',' << p.r[0] << ',' << p.r[1] << ',' << p.r[2] << ',' << p.v[0] << ',' << p.v[1] << ','
        << p.v[2] << '\n';
  }
  return out.str();
}

}  // namespace nscatter
