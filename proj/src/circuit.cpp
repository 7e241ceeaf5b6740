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

#include "nscatter/circuit.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nscatter {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "rx";
    case GateKind::RZ: return "rz";
    case GateKind::U3: return "u3";
    case GateKind::CNOT: return "cnot";
    case GateKind::CZ: return "cz";
  }
  return "u3";
}

GateKind gate_kind_from_string(const std::string& name) {
  if (name == "rx") return GateKind::RX;
  if (name == "rz") return GateKind::RZ;
  if (name == "u3") return GateKind::U3;
  if (name == "cnot") return GateKind::CNOT;
  if (name == "cz") return GateKind::CZ;
  throw std::invalid_argument("unknown gate kind '" + name + "'");
}

bool operator==(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.qubits == b.qubits && a.angles == b.angles;
}

ComplexMatrix u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return ComplexMatrix{{c, -std::polar(s, lambda)}, {std::polar(s, phi), std::polar(c, phi + lambda)}};
}

ComplexMatrix Gate::local_matrix() const {
  const Complex i{0.0, 1.0};
  switch (kind) {
    case GateKind::RX: {
      const double c = std::cos(angles[0] / 2.0), s = std::sin(angles[0] / 2.0);
      return ComplexMatrix{{c, -i * s}, {-i * s, c}};
    }
    case GateKind::RZ:
      return ComplexMatrix{{std::polar(1.0, -angles[0] / 2.0), 0.0}, {0.0, std::polar(1.0, angles[0] / 2.0)}};
    case GateKind::U3:
      return u3_matrix(angles[0], angles[1], angles[2]);
    case GateKind::CNOT:
      return ComplexMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
    case GateKind::CZ:
      return ComplexMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, -1.0}};
  }
  throw std::logic_error("unreachable gate kind");
}

std::size_t Circuit::entangling_count() const {
  std::size_t n = 0;
  for (const auto& g : gates) n += g.is_entangling() ? 1 : 0;
  return n;
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits != num_qubits) throw std::invalid_argument("Circuit::append: qubit count mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  global_phase += other.global_phase;
  if (other.span.first >= 0) {
    if (span.first < 0) span.first = other.span.first;
    span.second = other.span.second;
  }
}

namespace {

void check_qubit(int q, int num_qubits) {
  if (q < 0 || q >= num_qubits) {
    std::ostringstream msg;
    msg << "gate qubit index " << q << " out of range for " << num_qubits << "-qubit circuit";
    throw std::out_of_range(msg.str());
  }
}

int bit_of(std::size_t index, int q, int num_qubits) { return static_cast<int>((index >> (num_qubits - 1 - q)) & 1U); }

}  // namespace

ComplexMatrix embed(const Gate& gate, int num_qubits) {
  check_qubit(gate.qubits[0], num_qubits);
  const ComplexMatrix local = gate.local_matrix();
  if (gate.arity() == 1) {
    const int q = gate.qubits[0];
    return kron(kron(ComplexMatrix::identity(std::size_t{1} << q), local),
                ComplexMatrix::identity(std::size_t{1} << (num_qubits - q - 1)));
  }
  check_qubit(gate.qubits[1], num_qubits);
  const int qa = gate.qubits[0], qb = gate.qubits[1];
  if (qa == qb) throw std::invalid_argument("entangling gate needs two distinct qubits");
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t mask_a = std::size_t{1} << (num_qubits - 1 - qa);
  const std::size_t mask_b = std::size_t{1} << (num_qubits - 1 - qb);
  ComplexMatrix out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t li = 2 * bit_of(col, qa, num_qubits) + bit_of(col, qb, num_qubits);
    const std::size_t base = col & ~(mask_a | mask_b);
    for (std::size_t lo = 0; lo < 4; ++lo) {
      const Complex v = local(lo, li);
      if (v == Complex{0.0, 0.0}) continue;
      const std::size_t row = base | ((lo & 2) ? mask_a : 0) | ((lo & 1) ? mask_b : 0);
      out(row, col) = v;
    }
  }
  return out;
}

ComplexMatrix unitary_of(const Circuit& circuit) {
  if (circuit.num_qubits < 1 || circuit.num_qubits > 4) {
    throw std::invalid_argument("unitary_of: supported register sizes are 1..4 qubits");
  }
  ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << circuit.num_qubits);
  for (const auto& g : circuit.gates) u = embed(g, circuit.num_qubits) * u;
  return u * std::polar(1.0, circuit.global_phase);
}

double trace_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

SingleQubitAngles u3_angles(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("u3_angles: expected a 2x2 matrix");
  const Complex s = std::sqrt(determinant(u));
  const Complex a = u(0, 0) / s;
  const Complex b = u(1, 0) / s;
  constexpr double kTiny = 1e-14;
  const double sum = std::abs(a) > kTiny ? -2.0 * std::arg(a) : 0.0;   // phi + lambda
  const double diff = std::abs(b) > kTiny ? 2.0 * std::arg(b) : 0.0;   // phi - lambda
  SingleQubitAngles out;
  out.theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  out.phi = 0.5 * (sum + diff);
  out.lambda = 0.5 * (sum - diff);
  out.global_phase = std::arg(s) - 0.5 * sum;
  return out;
}

Circuit layered(const Circuit& circuit) {
  Circuit out;
  out.num_qubits = circuit.num_qubits;
  out.global_phase = circuit.global_phase;
  out.span = circuit.span;
  if (circuit.gates.empty()) return out;

  std::vector<std::optional<ComplexMatrix>> pending(circuit.num_qubits);
  auto flush = [&](int q) {
    const ComplexMatrix m = pending[q].value_or(ComplexMatrix::identity(2));
    const auto ang = u3_angles(m);
    out.gates.push_back(Gate::u3(q, ang.theta, ang.phi, ang.lambda));
    out.global_phase += ang.global_phase;
    pending[q].reset();
  };
  for (const auto& g : circuit.gates) {
    check_qubit(g.qubits[0], circuit.num_qubits);
    if (g.arity() == 1) {
      const int q = g.qubits[0];
      pending[q] = g.local_matrix() * pending[q].value_or(ComplexMatrix::identity(2));
      continue;
    }
    flush(g.qubits[0]);
    flush(g.qubits[1]);
    out.gates.push_back(g);
  }
  for (int q = 0; q < circuit.num_qubits; ++q) flush(q);
  return out;
}

std::string circuit_to_jsonl(const Circuit& circuit) {
  std::ostringstream out;
  nlohmann::json header = {{"schema_version", kCircuitSchemaVersion},
                           {"num_qubits", circuit.num_qubits},
                           {"global_phase", circuit.global_phase},
                           {"span", {circuit.span.first, circuit.span.second}}};
  out << header.dump() << '\n';
  for (const auto& g : circuit.gates) {
    nlohmann::json qubits = nlohmann::json::array({g.qubits[0]});
    if (g.arity() == 2) qubits.push_back(g.qubits[1]);
    nlohmann::json angles = nlohmann::json::array();
    if (g.kind == GateKind::RX || g.kind == GateKind::RZ) angles.push_back(g.angles[0]);
    if (g.kind == GateKind::U3) angles = {g.angles[0], g.angles[1], g.angles[2]};
    out << nlohmann::json{{"kind", to_string(g.kind)}, {"qubits", qubits}, {"angles", angles}}.dump() << '\n';
  }
  return out.str();
}

Circuit circuit_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("circuit_from_jsonl: missing header line");
  const auto header = nlohmann::json::parse(line);
  if (header.at("schema_version").get<int>() != kCircuitSchemaVersion) {
    throw std::invalid_argument("circuit_from_jsonl: unsupported schema version");
  }
  Circuit c;
  c.num_qubits = header.at("num_qubits").get<int>();
  c.global_phase = header.at("global_phase").get<double>();
  c.span = {header.at("span")[0].get<int>(), header.at("span")[1].get<int>()};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    Gate g;
    g.kind = gate_kind_from_string(j.at("kind").get<std::string>());
    const auto& qs = j.at("qubits");
    g.qubits = {qs.at(0).get<int>(), qs.size() > 1 ? qs.at(1).get<int>() : -1};
    const auto& as = j.at("angles");
    for (std::size_t k = 0; k < as.size() && k < 3; ++k) g.angles[k] = as[k].get<double>();
    if (static_cast<int>(qs.size()) != g.arity()) throw std::invalid_argument("circuit_from_jsonl: qubit list does not match gate arity");
    c.gates.push_back(g);
  }
  return c;
}

}  // namespace nscatter
