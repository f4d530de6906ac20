// Copyright 2026 The qmix Authors
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

#include "qmix/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmix/bipartite.hpp"
#include "qmix/density.hpp"
#include "qmix/dynamics.hpp"
#include "qmix/io.hpp"
#include "qmix/scenario.hpp"

namespace qmix::cli {

double RunConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<double, double> parse_pair(const std::string& text, const char* flag) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double a = 0.0;
  double b = 0.0;
  char comma = 0;
  if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError(std::string(flag) + " expects two comma-separated numbers, got '" + text + "'");
  }
  return {a, b};
}

void parse_tolerances(const std::vector<std::string>& specs, RunConfig& cfg) {
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    if (name != "validate" && name != "rank") throw UsageError("unknown tolerance '" + name + "'");
    std::istringstream in(spec.substr(eq + 1));
    in.imbue(std::locale::classic());
    double value = 0.0;
    if (!(in >> value) || !(in >> std::ws).eof() || !(value > 0.0)) {
      throw UsageError("tolerance '" + name + "' must be a strictly positive number");
    }
    cfg.tolerances[name] = value;
  }
}

CDensity complex_input(const QMatrix& m, double tol) {
  if (m.beta().size() > 0 && m.beta().cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorKind::InvalidArgument, "expected a complex density (beta must be zero or omitted)");
  }
  return CDensity::validate(m.alpha(), tol);
}

io::Json with_header(const char* command) {
  io::Json j;
  j["schema_version"] = io::kSchemaVersion;
  j["command"] = command;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qmix: quaternionic representation of proper and improper mixtures"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> tol_specs;
  std::string out_path;
  app.add_option("--tol", tol_specs, "Tolerance override name=value (validate, rank)");
  app.add_option("-o,--out", out_path, "Write the JSON result to this file");

  std::string file_a;
  std::string file_b;
  std::string gen_file;
  long long rank = 0;
  double t_final = 1.0;
  long long steps = 1000;
  std::string cplus = "1,0";
  std::string cminus = "0,0";
  std::string nhat = "0,0";
  long long nmax = 6;
  long long trials = 1000;
  std::uint64_t seed = 0;
  if (const char* env = std::getenv("QMIX_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "QMIX_SEED must be a non-negative integer\n";
      return kExitUsage;
    }
  }

  auto* validate_cmd = app.add_subcommand("validate", "Check that a matrix is a quaternionic density");
  validate_cmd->add_option("file", file_a)->required();
  auto* project_cmd = app.add_subcommand("project", "Complex projection P(rho) = rho_alpha");
  project_cmd->add_option("file", file_a)->required();
  auto* classify_cmd = app.add_subcommand("classify", "Proper (beta = 0) or Improper");
  classify_cmd->add_option("file", file_a)->required();
  auto* lift_cmd = app.add_subcommand("lift", "Quaternionic density of a given rank over a complex one");
  lift_cmd->add_option("file", file_a)->required();
  lift_cmd->add_option("--rank", rank, "Target quaternionic rank")->required();
  auto* purify_cmd = app.add_subcommand("purify", "Quaternionic pure state over a rank <= 2 complex density");
  purify_cmd->add_option("file", file_a)->required();
  auto* expect_cmd = app.add_subcommand("expect", "Expectation value Re Tr(A rho)");
  expect_cmd->add_option("observable", file_a)->required();
  expect_cmd->add_option("state", file_b)->required();
  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate drho/dt = -[H, rho]");
  evolve_cmd->add_option("state", file_a)->required();
  evolve_cmd->add_option("--gen", gen_file, "Generator file")->required();
  evolve_cmd->add_option("--t", t_final, "Final time");
  evolve_cmd->add_option("--steps", steps, "Integration steps")->check(CLI::PositiveNumber);
  auto* scenario_cmd = app.add_subcommand("scenario", "Measurement example: proper vs improper mixture");
  scenario_cmd->add_option("--cplus", cplus, "c+ as re,im");
  scenario_cmd->add_option("--cminus", cminus, "c- as re,im");
  scenario_cmd->add_option("--nhat", nhat, "Spin direction theta,phi in radians");
  auto* props_cmd = app.add_subcommand("check-props", "Randomized check of the projection propositions");
  props_cmd->add_option("--nmax", nmax, "Largest dimension")->check(CLI::Range(2LL, 64LL));
  props_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::NonNegativeNumber);
  props_cmd->add_option("--seed", seed, "Seed (default: $QMIX_SEED or 0)");

  std::vector<const char*> argv{"qmix"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    parse_tolerances(tol_specs, cfg);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  cfg.seed = seed;
  if (!out_path.empty()) cfg.output_path = out_path;

  const double vtol = cfg.tolerance("validate", 1e-10);
  std::optional<double> rtol;
  if (cfg.tolerances.count("rank")) rtol = cfg.tolerance("rank", 0.0);

  io::Json result;
  int code = kExitOk;
  try {
    if (*validate_cmd) {
      const QDensity rho = validate(io::load_matrix(file_a), vtol);
      result = with_header("validate");
      result["valid"] = true;
      result["dim"] = rho.dim();
      result["rank"] = rank_q(rho.mat(), rtol);
      result["classification"] = std::string(to_string(rho.classification()));
      result["beta_norm"] = rho.beta_norm();
      const RVector eig = eigvals_hermitian(rho.mat(), vtol);
      result["eigenvalues"] = std::vector<double>(eig.data(), eig.data() + eig.size());
    } else if (*project_cmd) {
      const QDensity rho = validate(io::load_matrix(file_a), vtol);
      result = io::to_json(complex_projection(rho).mat());
    } else if (*classify_cmd) {
      const QDensity rho = validate(io::load_matrix(file_a), vtol);
      result = with_header("classify");
      result["classification"] = std::string(to_string(rho.classification()));
      result["beta_norm"] = rho.beta_norm();
      result["proper_tolerance"] = proper_tolerance(rho.mat());
    } else if (*lift_cmd) {
      const CDensity base = complex_input(io::load_matrix(file_a), vtol);
      result = io::to_json(lift(base, static_cast<Index>(rank)).mat());
    } else if (*purify_cmd) {
      const CDensity base = complex_input(io::load_matrix(file_a), vtol);
      result = io::to_json(purify(base).mat());
    } else if (*expect_cmd) {
      const Observable a(io::load_matrix(file_a), vtol);
      const QDensity rho = validate(io::load_matrix(file_b), vtol);
      result = with_header("expect");
      result["expectation"] = expectation(a, rho);
      result["observable_is_complex"] = a.is_complex();
    } else if (*evolve_cmd) {
      const QDensity rho = validate(io::load_matrix(file_a), vtol);
      const Generator gen = io::load_generator(gen_file);
      const IntegrationResult res = integrate(rho, gen, t_final, static_cast<Index>(steps));
      const Propagator u = time_ordered(gen, t_final, static_cast<Index>(steps));
      result = with_header("evolve");
      result["t"] = t_final;
      result["steps"] = steps;
      result["state"] = io::to_json(res.state);
      result["max_hermiticity_correction"] = res.max_hermiticity_correction;
      result["max_trace_correction"] = res.max_trace_correction;
      result["propagator_distance"] = frobenius_norm(res.state.mat() - evolve(rho, u).mat());
    } else if (*scenario_cmd) {
      const auto [a, b] = parse_pair(cplus, "--cplus");
      const auto [c, d] = parse_pair(cminus, "--cminus");
      const auto [theta, phi] = parse_pair(nhat, "--nhat");
      const ScenarioReport report = run_scenario({a, b}, {c, d}, {theta, phi});
      result = io::to_json(report);
      if (!report.all_passed()) code = kExitInvalid;
    } else if (*props_cmd) {
      result = io::to_json(check_propositions(static_cast<Index>(nmax), static_cast<Index>(trials), cfg.seed));
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }

  const std::string text = result.dump(2) + "\n";
  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << *cfg.output_path << "\n";
      return kExitInvalid;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace qmix::cli
