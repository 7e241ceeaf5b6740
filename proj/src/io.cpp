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

#include "nscatter/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nscatter {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void append_probs(std::ostringstream& os, const std::vector<double>& p) {
  for (double x : p) os << ',' << format_double(x);
}

nlohmann::ordered_json opt_vec(const std::optional<std::vector<double>>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string occupations_csv(const RunResult& result) {
  std::ostringstream os;
  os << "step,t";
  for (const char* tag : {"exact", "raw", "mit"})
    for (const char* o : {"00", "01", "10", "11"}) os << ",P" << o << '_' << tag;
  os << '\n';
  for (const auto& s : result.steps) {
    os << s.step << ',' << format_double(s.t);
    append_probs(os, s.exact.probs);
    append_probs(os, s.raw.probs);
    append_probs(os, s.mitigated.probs);
    os << '\n';
  }
  return os.str();
}

std::string metrics_csv(const RunResult& result) {
  std::ostringstream os;
  os << "step,tvd_raw,tvd_mit,infidelity\n";
  for (const auto& s : result.steps) {
    os << s.step << ',' << format_double(s.tvd_raw) << ',' << format_double(s.tvd_mit) << ',';
    if (s.fidelity) os << format_double(1.0 - *s.fidelity);
    os << '\n';
  }
  return os.str();
}

std::string mitigation_report_json(const RunResult& result) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : result.steps) {
    arr.push_back({{"step", s.step},
                   {"raw", s.trace.raw},
                   {"rcal", opt_vec(s.trace.rcal)},
                   {"rc", opt_vec(s.trace.rc)},
                   {"purified", opt_vec(s.trace.purified)},
                   {"purified_unclipped", opt_vec(s.trace.purified_unclipped)},
                   {"lambda", s.trace.lambda},
                   {"n_2q", s.trace.n_2q}});
  }
  return arr.dump(2) + "\n";
}

std::string counts_report_json(const RunResult& result) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : result.steps) {
    if (!s.raw.shots) continue;
    auto entry = nlohmann::ordered_json::parse(counts_json(s.raw, s.shot_seed));
    nlohmann::ordered_json row = {{"step", s.step}};
    row.update(entry);
    arr.push_back(row);
  }
  return arr.dump(2) + "\n";
}

std::string tomography_report_json(const RunResult& result) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : result.steps) {
    if (!s.tomography) continue;
    arr.push_back({{"step", s.step},
                   {"reinitialized", s.reinitialized},
                   {"amplitudes", s.tomography->amplitudes},
                   {"phases", s.tomography->phases}});
  }
  return arr.dump(2) + "\n";
}

void emit(const RunResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "circuits", ec);
  if (ec) throw std::runtime_error("cannot create '" + (out_dir / "circuits").string() + "': " + ec.message());
  write_file(out_dir / "occupations.csv", occupations_csv(result));
  write_file(out_dir / "metrics.csv", metrics_csv(result));
  write_file(out_dir / "config.json", to_json(result.config).dump(2) + "\n");
  write_file(out_dir / "trajectory.csv", trajectory_csv(result.trajectory));
  write_file(out_dir / "propagators.json", propagators_json(result.propagators));
  write_file(out_dir / "mitigation.json", mitigation_report_json(result));
  write_file(out_dir / "counts.json", counts_report_json(result));
  if (result.config.mode == Mode::Reinitialized) write_file(out_dir / "tomography.json", tomography_report_json(result));
  if (result.config.mode != Mode::Exact) {
    for (const auto& s : result.steps) {
      char name[32];
      std::snprintf(name, sizeof name, "step_%02zu.jsonl", s.step);
      write_file(out_dir / "circuits" / name, circuit_to_jsonl(s.circuit));
    }
  }
}

}  // namespace nscatter
