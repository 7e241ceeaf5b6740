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

#include "nscatter/spin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nscatter {

const ComplexMatrix& coupled_basis_change() {
  static const ComplexMatrix w = [] {
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(4, 4);
    m(3, 0) = 1.0;   // |dd>
    m(1, 1) = h;     // (|ud> + |du>)/sqrt2
    m(2, 1) = h;
    m(0, 2) = 1.0;   // |uu>
    m(1, 3) = h;     // (|ud> - |du>)/sqrt2
    m(2, 3) = -h;
    return m;
  }();
  return w;
}

ComplexMatrix build_vsd_product(const PotentialModel& model, const Vec3& r) {
  const double d = norm(r);
  if (!(d > 0.0)) throw std::invalid_argument("build_vsd: |r| = 0 leaves the tensor direction undefined");
  const Vec3 rhat{r[0] / d, r[1] / d, r[2] / d};

  const ComplexMatrix sx = pauli::X(), sy = pauli::Y(), sz = pauli::Z();
  const ComplexMatrix sigma_dot = kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
  const ComplexMatrix sigma_r = sx * rhat[0] + sy * rhat[1] + sz * rhat[2];
  const ComplexMatrix tensor = kron(sigma_r, sigma_r) - sigma_dot * (1.0 / 3.0);

  return sigma_dot * model.spin_scalar.value(d) + tensor * model.spin_tensor.value(d);
}

ComplexMatrix build_vsd(const PotentialModel& model, const Vec3& r) {
  const ComplexMatrix& w = coupled_basis_change();
  return w.adjoint() * build_vsd_product(model, r) * w;
}

ComplexMatrix short_time_propagator(const PotentialModel& model, const Vec3& r, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("short_time_propagator: dt must be non-negative");
  return hermitian_exp(build_vsd(model, r), dt);
}

std::vector<CoarsePropagator> coarse_propagators(const PotentialModel& model, const Trajectory& traj,
                                                 std::size_t steps_per_coarse) {
  if (steps_per_coarse == 0) throw std::invalid_argument("coarse_propagators: steps_per_coarse must be >= 1");
  const std::size_t n = traj.steps();
  if (n == 0 || n % steps_per_coarse != 0) {
    std::ostringstream msg;
    msg << "coarse_propagators: " << n << " fine steps not divisible by steps_per_coarse=" << steps_per_coarse;
    throw std::invalid_argument(msg.str());
  }
  const std::size_t n_coarse = n / steps_per_coarse;
  std::vector<CoarsePropagator> out;
  out.reserve(n_coarse);
  for (std::size_t j = 0; j < n_coarse; ++j) {
    const std::size_t first = j * steps_per_coarse;
    ComplexMatrix u = ComplexMatrix::identity(4);
    for (std::size_t i = first; i < first + steps_per_coarse; ++i) {
      u = short_time_propagator(model, traj.points[i].r, traj.dt) * u;
    }
    out.push_back({j, traj.points[first].t, traj.points[first + steps_per_coarse].t, std::move(u)});
  }
  return out;
}

std::vector<StateVector> exact_spin_evolution(const std::vector<CoarsePropagator>& propagators,
                                              const StateVector& initial) {
  if (std::abs(initial.norm() - 1.0) > tol::kNormalized) {
    throw std::invalid_argument("exact_spin_evolution: initial state not normalized");
  }
  std::vector<StateVector> states;
  states.reserve(propagators.size() + 1);
  states.push_back(initial);
  for (const auto& p : propagators) states.push_back(apply(p.unitary, states.back()));
  return states;
}

std::string propagators_json(const std::vector<CoarsePropagator>& propagators) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : propagators) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (std::size_t r = 0; r < p.unitary.rows(); ++r) {
      nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
      for (std::size_t c = 0; c < p.unitary.cols(); ++c) {
        rr.push_back(p.unitary(r, c).real());
        ii.push_back(p.unitary(r, c).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    arr.push_back({{"index", p.index}, {"t_start", p.t_start}, {"t_end", p.t_end}, {"re", re}, {"im", im}});
  }
  return arr.dump(1);
}

}  // namespace nscatter
