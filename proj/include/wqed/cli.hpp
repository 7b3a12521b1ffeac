// Copyright 2026 The wqed Authors
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
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace wqed::cli {

enum class Command { spectrum, sweep, darkcount, pt, evolve };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

/// Inclusive `start:stop:count` grid, or a single value.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  static Range parse(const std::string& text);
  std::vector<double> values() const;
};

struct RunConfig {
  Command command = Command::spectrum;
  int n_qubits = 1;
  std::string d_over_lambda = "0.25";
  std::string omega_r = "0";  ///< units of gamma_1d
  double gamma = 1.0;         ///< scales reported rates only
  std::string out;            ///< empty writes to stdout
  unsigned jobs = 0;
  double zero_tol = 1e-8;
  double subradiant_threshold = 0.5;
  double tol_integrator = 1e-10;
  std::uint64_t seed = 0;
  std::string observable = "second_slowest_rate";
  std::string mode = "auto";  ///< darkcount: auto | kernel | subradiant
  std::string incidence = "left";
  double t_max = 10.0;
  std::size_t samples = 200;
  std::size_t k = 0;  ///< spectrum: > 0 requests the k eigenvalues nearest the shift
  double shift_re = 0.0;
  double shift_im = 0.0;
  std::string dump_liouvillian;
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Executes one run. Output goes to config.out or `out`; failures are reported
/// as a JSON object on `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and calls run().
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wqed::cli
