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

#include <gtest/gtest.h>

#include <cmath>

#include <json.hpp>

#include "nscatter/oracle.hpp"
#include "nscatter/spin.hpp"

namespace nscatter {
namespace {

PotentialModel scalar_only(double v) {
  PotentialModel m;
  m.spin_scalar = RadialFunction::gaussian(v, 1e6);  // constant over any test radius
  return m;
}

PotentialModel tensor_only(double v) {
  PotentialModel m;
  m.spin_tensor = RadialFunction::gaussian(v, 1e6);
  return m;
}

Vec3 random_direction(CounterRng& rng, double scale = 1.0) {
  Vec3 r{rng.normal(), rng.normal(), rng.normal()};
  const double d = norm(r);
  return {scale * r[0] / d, scale * r[1] / d, scale * r[2] / d};
}

ComplexMatrix diag4(double a, double b, double c, double d) {
  const Complex v[] = {a, b, c, d};
  return ComplexMatrix::diagonal(v);
}

TEST(BasisChange, IsUnitaryAndMapsProductStates) {
  const ComplexMatrix& w = coupled_basis_change();
  EXPECT_LE(unitarity_defect(w), 1e-14);
  EXPECT_EQ(w(3, 0), Complex(1.0, 0.0));  // |S=1,Sz=-1> = |dd>
  EXPECT_EQ(w(0, 2), Complex(1.0, 0.0));  // |S=1,Sz=+1> = |uu>
}

TEST(BuildVsd, ScalarTermSpectrum) {
  const ComplexMatrix v = build_vsd(scalar_only(1.5), {0.2, 0.4, -0.1});
  EXPECT_LE(max_abs_diff(v, diag4(1.5, 1.5, 1.5, -4.5)), 1e-12);
}

TEST(BuildVsd, TensorTermAlongZ) {
  const ComplexMatrix v = build_vsd(tensor_only(1.0), {0.0, 0.0, 0.7});
  EXPECT_LE(max_abs_diff(v, diag4(2.0 / 3.0, -4.0 / 3.0, 2.0 / 3.0, 0.0)), 1e-12);
}

TEST(BuildVsd, MatchesElementWiseOracle) {
  CounterRng rng(31);
  const PotentialModel m = default_potential();
  for (int t = 0; t < 100; ++t) {
    const Vec3 r = random_direction(rng, 0.05 + 0.5 * rng.uniform());
    EXPECT_LE(max_abs_diff(build_vsd(m, r), oracle::vsd_by_elements(m, r)), 1e-12);
  }
}

TEST(BuildVsd, SingletDecouplesAndIsHermitian) {
  CounterRng rng(32);
  const PotentialModel m = default_potential();
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix v = build_vsd(m, random_direction(rng, 0.05 + 0.5 * rng.uniform()));
    EXPECT_LE(hermiticity_defect(v), 1e-12);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(std::abs(v(i, kSinglet)), 1e-14);
      EXPECT_LE(std::abs(v(kSinglet, i)), 1e-14);
    }
  }
}

TEST(BuildVsd, TensorIsTracelessOnTriplet) {
  CounterRng rng(33);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix v = build_vsd(tensor_only(1.0), random_direction(rng));
    EXPECT_NEAR(std::abs(v(0, 0) + v(1, 1) + v(2, 2)), 0.0, 1e-12);
  }
}

TEST(BuildVsd, RotationalCovariance) {
  CounterRng rng(34);
  const PotentialModel m = default_potential();
  const ComplexMatrix& w = coupled_basis_change();
  for (int t = 0; t < 50; ++t) {
    const Vec3 axis = random_direction(rng);
    const double angle = 3.0 * rng.normal();
    const Vec3 r = random_direction(rng, 0.2);
    // Rodrigues rotation of r.
    const double c = std::cos(angle), s = std::sin(angle);
    const double dot = axis[0] * r[0] + axis[1] * r[1] + axis[2] * r[2];
    const Vec3 cross{axis[1] * r[2] - axis[2] * r[1], axis[2] * r[0] - axis[0] * r[2], axis[0] * r[1] - axis[1] * r[0]};
    Vec3 rr{};
    for (int a = 0; a < 3; ++a) rr[a] = r[a] * c + cross[a] * s + axis[a] * dot * (1.0 - c);

    const ComplexMatrix gen = pauli::X() * axis[0] + pauli::Y() * axis[1] + pauli::Z() * axis[2];
    const ComplexMatrix d1 = hermitian_exp(gen, angle / 2.0);
    const ComplexMatrix d = w.adjoint() * kron(d1, d1) * w;
    EXPECT_LE(max_abs_diff(build_vsd(m, rr), d * build_vsd(m, r) * d.adjoint()), 1e-10);
  }
}

TEST(BuildVsd, RejectsOrigin) { EXPECT_THROW(build_vsd(default_potential(), {0, 0, 0}), std::invalid_argument); }

TEST(ShortTimePropagator, ZeroStepIsIdentity) {
  EXPECT_LE(max_abs_diff(short_time_propagator(default_potential(), {0.1, 0.0, 0.1}, 0.0), ComplexMatrix::identity(4)),
            1e-15);
}

TEST(ShortTimePropagator, ScalarOnlyIsDiagonalPhase) {
  const double v = 2.0, dt = 0.01;
  const ComplexMatrix u = short_time_propagator(scalar_only(v), {0.3, 0.0, 0.0}, dt);
  const Complex p = std::polar(1.0, -dt * v), q = std::polar(1.0, 3.0 * dt * v);
  const Complex expect[] = {p, p, p, q};
  EXPECT_LE(max_abs_diff(u, ComplexMatrix::diagonal(expect)), 1e-14);
}

TEST(ShortTimePropagator, MatchesTaylorOracle) {
  CounterRng rng(35);
  const PotentialModel m = default_potential();
  for (int t = 0; t < 50; ++t) {
    const Vec3 r = random_direction(rng, 0.05 + 0.3 * rng.uniform());
    const ComplexMatrix u = short_time_propagator(m, r, 0.005);
    EXPECT_LE(max_abs_diff(u, oracle::taylor_exp(build_vsd(m, r), 0.005)), 1e-10);
    EXPECT_LE(unitarity_defect(u), 1e-12);
  }
  EXPECT_THROW(short_time_propagator(m, {0, 0, 1}, -1.0), std::invalid_argument);
}

Trajectory straight_line(std::size_t n, double dt, const Vec3& r0, const Vec3& v0) {
  return verlet_integrate(PotentialModel{}, r0, v0, dt, n, 1.0);
}

TEST(CoarsePropagators, ZeroPotentialGivesIdentities) {
  const auto props = coarse_propagators(PotentialModel{}, straight_line(100, 0.01, {0, 0, 1}, {0, 0, 0.1}), 50);
  ASSERT_EQ(props.size(), 2u);
  for (const auto& p : props) EXPECT_LE(max_abs_diff(p.unitary, ComplexMatrix::identity(4)), 1e-15);
  EXPECT_DOUBLE_EQ(props[1].t_start, 0.5);
  EXPECT_DOUBLE_EQ(props[1].t_end, 1.0);
}

TEST(CoarsePropagators, ConstantPotentialCollapsesToOneExponential) {
  const PotentialModel m = default_potential();
  const Vec3 r{0.05, 0.02, 0.1};
  const auto props = coarse_propagators(m, straight_line(50, 0.005, r, {0, 0, 0}), 50);
  EXPECT_LE(max_abs_diff(props[0].unitary, hermitian_exp(build_vsd(m, r), 50 * 0.005)), 1e-10);
}

TEST(CoarsePropagators, LaterTimesMultiplyOnTheLeft) {
  // Two fine steps along directions that are neither parallel nor orthogonal;
  // for spin 1 the tensor terms along orthogonal axes commute.
  PotentialModel m = tensor_only(40.0);
  Trajectory tr;
  tr.dt = 0.05;
  tr.points = {{0.0, {0.0, 0.0, 0.3}, {}}, {0.05, {0.2, 0.0, 0.2}, {}}, {0.1, {0.0, 0.3, 0.0}, {}}};
  const auto props = coarse_propagators(m, tr, 2);
  const ComplexMatrix u0 = short_time_propagator(m, tr.points[0].r, tr.dt);
  const ComplexMatrix u1 = short_time_propagator(m, tr.points[1].r, tr.dt);
  EXPECT_LE(max_abs_diff(props[0].unitary, oracle::ordered_product({u0, u1})), 1e-14);
  EXPECT_GT(operator_norm(props[0].unitary - u0 * u1), 1e-3);
}

TEST(CoarsePropagators, RejectsIndivisibleSplit) {
  EXPECT_THROW(coarse_propagators(PotentialModel{}, straight_line(100, 0.01, {0, 0, 1}, {0, 0, 0}), 30),
               std::invalid_argument);
}

TEST(CoarsePropagators, DefaultsGiveTwentyUnitaryBlocks) {
  const PotentialModel m = default_potential();
  const Trajectory tr = verlet_integrate(m, {0.1, 0.0, -0.8}, {0.0, 0.0, 0.4}, 0.005, 1000, kNeutronMass / 2.0);
  const auto props = coarse_propagators(m, tr, 50);
  ASSERT_EQ(props.size(), 20u);
  for (const auto& p : props) {
    EXPECT_LE(unitarity_defect(p.unitary), 1e-10);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(std::abs(p.unitary(i, kSinglet)), 1e-10);
  }
}

TEST(ExactEvolution, IdentityPropagatorsKeepState) {
  CounterRng rng(36);
  const StateVector psi = oracle::random_state(4, rng);
  std::vector<CoarsePropagator> props(5, {0, 0.0, 0.0, ComplexMatrix::identity(4)});
  for (const auto& s : exact_spin_evolution(props, psi)) EXPECT_NEAR(std::abs(inner(s, psi)), 1.0, 1e-15);
}

TEST(ExactEvolution, SingletStaysSinglet) {
  const PotentialModel m = default_potential();
  const Trajectory tr = verlet_integrate(m, {0.1, 0.0, -0.8}, {0.0, 0.0, 0.4}, 0.005, 1000, kNeutronMass / 2.0);
  const auto props = coarse_propagators(m, tr, 50);
  const auto states = exact_spin_evolution(props, StateVector::basis(4, kSinglet));
  std::vector<ComplexMatrix> us{ComplexMatrix::identity(4)};
  for (std::size_t k = 0; k < states.size(); ++k) {
    EXPECT_NEAR(states[k].probabilities()[kSinglet], 1.0, 1e-10);
    const StateVector dense = apply(oracle::ordered_product(us), StateVector::basis(4, kSinglet));
    EXPECT_NEAR(std::abs(inner(dense, states[k])), 1.0, 1e-10);
    if (k < props.size()) us.push_back(props[k].unitary);
  }
}

TEST(ExactEvolution, NormsStayOne) {
  CounterRng rng(37);
  std::vector<CoarsePropagator> props;
  for (int k = 0; k < 10; ++k) props.push_back({static_cast<std::size_t>(k), 0.0, 0.0, oracle::haar_unitary(4, rng)});
  for (const auto& s : exact_spin_evolution(props, oracle::random_state(4, rng))) EXPECT_NEAR(s.norm(), 1.0, 1e-10);
  EXPECT_THROW(exact_spin_evolution(props, StateVector(std::vector<Complex>(4, 1.0))), std::invalid_argument);
}

TEST(PropagatorsJson, CarriesRealAndImaginaryParts) {
  const auto props = coarse_propagators(PotentialModel{}, straight_line(4, 0.1, {0, 0, 1}, {0, 0, 0}), 2);
  const auto j = nlohmann::json::parse(propagators_json(props));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["re"][0][0].get<double>(), 1.0);
  EXPECT_EQ(j[1]["im"][3][3].get<double>(), 0.0);
  EXPECT_EQ(j[1]["index"].get<int>(), 1);
}

}  // namespace
}  // namespace nscatter
