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

#include "wqed/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "wqed/dynamics.hpp"
#include "wqed/error.hpp"
#include "wqed/model.hpp"
#include "wqed/perturbation.hpp"
#include "wqed/spectra.hpp"

namespace wqed::cli {

namespace {

constexpr int kExitArgument = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitOther = 1;

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError("not a number: '" + s + "'");
  return v;
}

ArrayParams point(const RunConfig& c, double d_over_lambda, double omega_r) {
  ArrayParams p = ArrayParams::from_d_over_lambda(c.n_qubits, d_over_lambda, omega_r);
  if (c.incidence == "right") {
    p.incidence = DriveIncidence::right;
  } else if (c.incidence != "left") {
    throw ArgumentError("incidence must be 'left' or 'right'");
  }
  p.validate();
  return p;
}

double single(const std::string& text, const char* flag) {
  const auto r = Range::parse(text);
  if (r.count != 1) throw ArgumentError(std::string(flag) + " takes a single value for this command");
  return r.start;
}

void write_header(std::ostream& out, const RunConfig& c) {
  out << "# wqed " << to_string(c.command) << '\n';
  out << "# config: " << to_json(c).dump() << '\n';
}

void run_spectrum(const RunConfig& c, std::ostream& out) {
  const auto p = point(c, single(c.d_over_lambda, "--d-over-lambda"), single(c.omega_r, "--omega-r"));
  const auto l = build_liouvillian(p);
  if (!c.dump_liouvillian.empty()) {
    std::ofstream dump(c.dump_liouvillian, std::ios::binary);
    if (!dump) throw ArgumentError("cannot open " + c.dump_liouvillian);
    write_binary(dump, l.matrix);
  }
  SpectrumResult s;
  if (c.k > 0) {
    TargetedOptions opts;
    opts.seed = c.seed;
    s = targeted_spectrum(l, Complex(c.shift_re, c.shift_im), c.k, opts);
  } else {
    s = full_spectrum(l, false);
  }
  write_header(out, c);
  write_eigenvalues_csv(out, s, c.gamma);
}

void run_sweep(const RunConfig& c, std::ostream& out) {
  std::vector<ArrayParams> grid;
  for (double d : Range::parse(c.d_over_lambda).values()) {
    for (double om : Range::parse(c.omega_r).values()) grid.push_back(point(c, d, om));
  }
  SweepOptions opts;
  opts.jobs = c.jobs;
  opts.zero_tol = c.zero_tol;
  opts.subradiant_threshold = c.subradiant_threshold;
  const auto rows = sweep(grid, observable_from_string(c.observable), opts);
  write_header(out, c);
  write_sweep_csv(out, rows, c.gamma);
}

void run_darkcount(const RunConfig& c, std::ostream& out) {
  const double d = single(c.d_over_lambda, "--d-over-lambda");
  const auto p = point(c, d, single(c.omega_r, "--omega-r"));
  std::string mode = c.mode;
  if (mode == "auto") {
    const double half_periods = p.phi / std::numbers::pi;
    mode = std::abs(half_periods - std::round(half_periods)) < 1e-12 ? "kernel" : "subradiant";
  }
  int count = 0;
  int doubled = 0;
  std::string status = "ok";
  if (mode == "kernel") {
    count = kernel_dimension(build_liouvillian(p), c.zero_tol);
    doubled = count;
  } else if (mode == "subradiant") {
    const auto r = subradiant_count(p, c.subradiant_threshold);
    count = r.count;
    doubled = r.count_doubled;
    if (!r.stable) status = "unstable";
  } else {
    throw ArgumentError("mode must be auto, kernel or subradiant");
  }
  write_header(out, c);
  out << std::setprecision(17);
  out << "n_qubits,d_over_lambda,phi,omega_r,mode,count,count_doubled,status\n";
  out << p.n_qubits << ',' << p.d_over_lambda() << ',' << p.phi << ',' << p.omega_r << ',' << mode << ','
      << count << ',' << doubled << ',' << status << '\n';
}

void run_pt(const RunConfig& c, std::ostream& out) {
  const auto p = point(c, single(c.d_over_lambda, "--d-over-lambda"), single(c.omega_r, "--omega-r"));
  if (p.n_qubits > 5) throw ResourceError("perturbation theory is limited to N <= 5");
  const auto report = pt_report(p);
  std::ostringstream body;
  write_pt_json(body, report);
  auto j = nlohmann::ordered_json::parse(body.str());
  j["config"] = to_json(c);
  out << j.dump(2) << '\n';
}

void run_evolve(const RunConfig& c, std::ostream& out) {
  const auto p = point(c, single(c.d_over_lambda, "--d-over-lambda"), single(c.omega_r, "--omega-r"));
  EvolveOptions opts;
  opts.tolerance = c.tol_integrator;
  opts.keep_states = false;
  const auto traj = evolve(p, fully_excited_state(p.n_qubits), c.t_max, c.samples, opts);
  write_header(out, c);
  write_trajectory_csv(out, traj);
}

void report_error(std::ostream& err, const char* kind, const std::string& message,
                  const std::string& diagnostics = {}) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (!diagnostics.empty()) j["error"]["diagnostics"] = diagnostics;
  err << j.dump() << '\n';
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::sweep: return "sweep";
    case Command::darkcount: return "darkcount";
    case Command::pt: return "pt";
    case Command::evolve: return "evolve";
  }
  return "unknown";
}

Command command_from_string(const std::string& name) {
  for (auto c : {Command::spectrum, Command::sweep, Command::darkcount, Command::pt, Command::evolve}) {
    if (to_string(c) == name) return c;
  }
  throw ArgumentError("unknown command '" + name + "'");
}

Range Range::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  Range r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_double(parts[0]);
    r.count = 1;
  } else if (parts.size() == 3) {
    r.start = parse_double(parts[0]);
    r.stop = parse_double(parts[1]);
    const double count = parse_double(parts[2]);
    if (count < 1 || count != std::floor(count)) throw ArgumentError("range count must be a positive integer");
    r.count = static_cast<int>(count);
    if (r.count == 1 && r.start != r.stop) throw ArgumentError("a one-point range needs start == stop");
  } else {
    throw ArgumentError("range must be 'value' or 'start:stop:count', got '" + text + "'");
  }
  return r;
}

std::vector<double> Range::values() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1));
  }
  v.back() = stop;
  return v;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = to_string(c.command);
  j["n_qubits"] = c.n_qubits;
  j["d_over_lambda"] = c.d_over_lambda;
  j["omega_r"] = c.omega_r;
  j["gamma"] = c.gamma;
  j["out"] = c.out;
  j["jobs"] = c.jobs;
  j["zero_tol"] = c.zero_tol;
  j["subradiant_threshold"] = c.subradiant_threshold;
  j["tol_integrator"] = c.tol_integrator;
  j["seed"] = c.seed;
  j["observable"] = c.observable;
  j["mode"] = c.mode;
  j["incidence"] = c.incidence;
  j["t_max"] = c.t_max;
  j["samples"] = c.samples;
  j["k"] = c.k;
  j["shift_re"] = c.shift_re;
  j["shift_im"] = c.shift_im;
  j["dump_liouvillian"] = c.dump_liouvillian;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = command_from_string(j.at("command").get<std::string>());
  c.n_qubits = j.value("n_qubits", c.n_qubits);
  c.d_over_lambda = j.value("d_over_lambda", c.d_over_lambda);
  c.omega_r = j.value("omega_r", c.omega_r);
  c.gamma = j.value("gamma", c.gamma);
  c.out = j.value("out", c.out);
  c.jobs = j.value("jobs", c.jobs);
  c.zero_tol = j.value("zero_tol", c.zero_tol);
  c.subradiant_threshold = j.value("subradiant_threshold", c.subradiant_threshold);
  c.tol_integrator = j.value("tol_integrator", c.tol_integrator);
  c.seed = j.value("seed", c.seed);
  c.observable = j.value("observable", c.observable);
  c.mode = j.value("mode", c.mode);
  c.incidence = j.value("incidence", c.incidence);
  c.t_max = j.value("t_max", c.t_max);
  c.samples = j.value("samples", c.samples);
  c.k = j.value("k", c.k);
  c.shift_re = j.value("shift_re", c.shift_re);
  c.shift_im = j.value("shift_im", c.shift_im);
  c.dump_liouvillian = j.value("dump_liouvillian", c.dump_liouvillian);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.gamma > 0.0)) throw ArgumentError("--gamma must be positive");
    std::ostringstream buffer;
    switch (config.command) {
      case Command::spectrum: run_spectrum(config, buffer); break;
      case Command::sweep: run_sweep(config, buffer); break;
      case Command::darkcount: run_darkcount(config, buffer); break;
      case Command::pt: run_pt(config, buffer); break;
      case Command::evolve: run_evolve(config, buffer); break;
    }
    if (config.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw ArgumentError("cannot open output file " + config.out);
      file << buffer.str();
    }
    return 0;
  } catch (const ArgumentError& e) {
    report_error(err, "argument", e.what());
    return kExitArgument;
  } catch (const ResourceError& e) {
    report_error(err, "resource", e.what());
    return kExitResource;
  } catch (const NumericError& e) {
    report_error(err, "numeric", e.what(), e.diagnostics());
    return kExitNumeric;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kExitOther;
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven-dissipative waveguide QED qubit arrays: spectra, dark states, dynamics"};
  app.require_subcommand(1);

  RunConfig c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", c.n_qubits, "Number of qubits")->required();
    sub->add_option("--d-over-lambda", c.d_over_lambda, "Period d/lambda (value or start:stop:count)");
    sub->add_option("--omega-r", c.omega_r, "Rabi frequency / gamma_1d (value or start:stop:count)");
    sub->add_option("--gamma", c.gamma, "gamma_1d used to scale reported rates");
    sub->add_option("--out", c.out, "Output file (default stdout)");
    sub->add_option("--jobs", c.jobs, "Worker threads for sweeps (0 = all cores)");
    sub->add_option("--zero-tol", c.zero_tol, "Exact-zero tolerance in units of gamma_1d");
    sub->add_option("--subradiant-threshold", c.subradiant_threshold, "Subradiant rate threshold / gamma_1d");
    sub->add_option("--tol-integrator", c.tol_integrator, "Integrator local tolerance");
    sub->add_option("--seed", c.seed, "Seed for randomized start vectors");
    sub->add_option("--incidence", c.incidence, "Drive incidence: left or right");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Liouvillian eigenvalues as CSV");
  add_common(spectrum);
  spectrum->add_option("--k", c.k, "Targeted mode: number of eigenvalues nearest the shift");
  spectrum->add_option("--shift-re", c.shift_re, "Targeted mode shift, real part");
  spectrum->add_option("--shift-im", c.shift_im, "Targeted mode shift, imaginary part");
  spectrum->add_option("--dump-liouvillian", c.dump_liouvillian, "Write the sparse Liouvillian (binary)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Observable over a (d/lambda, Omega_R) grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--observable", c.observable, "second_slowest_rate or subradiant_count");

  auto* dark = app.add_subcommand("darkcount", "Count dark or subradiant eigenstates");
  add_common(dark);
  dark->add_option("--mode", c.mode, "auto, kernel or subradiant");

  auto* pt = app.add_subcommand("pt", "Strong-drive perturbation theory report (JSON)");
  add_common(pt);

  auto* evolve_cmd = app.add_subcommand("evolve", "Correlator dynamics from the fully excited state");
  add_common(evolve_cmd);
  evolve_cmd->add_option("--t-max", c.t_max, "Final time in units of 1/gamma_1d");
  evolve_cmd->add_option("--samples", c.samples, "Number of uniform output times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    report_error(err, "usage", e.what());
    return kExitArgument;
  }

  if (spectrum->parsed()) c.command = Command::spectrum;
  if (sweep_cmd->parsed()) c.command = Command::sweep;
  if (dark->parsed()) c.command = Command::darkcount;
  if (pt->parsed()) c.command = Command::pt;
  if (evolve_cmd->parsed()) c.command = Command::evolve;
  return run(c, out, err);
}

}  // namespace wqed::cli
