// Copyright 2026 The photonxfer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "photonxfer/error.hpp"
#include "photonxfer/io.hpp"

namespace photonxfer::cli {

namespace {

struct Options {
  std::string system_path;
  std::string out_path;
  std::string construction = "xi-row-combination";
  std::string coeffs;
  std::string dump_trajectory;
  std::string samples_csv;
  std::string config_path;
  std::string scenario;
  double dt = 0.0;
  double fid_tol = Thresholds{}.fid_tol;
  double leak_tol = Thresholds{}.leak_tol;
  double cons_tol = Thresholds{}.cons_tol;
  double trunc_eps = kTruncationEps;
  int channel = 1;
  bool simulate = false;
  bool time_reversed = false;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma1;
  std::optional<double> gamma2;
  unsigned workers = 1;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  sink->set_pattern("photonxfer: %l: %v");
  auto logger = std::make_shared<spdlog::logger>("photonxfer", sink);
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("PHOTONXFER_LOG")) {
    const std::string level(env);
    if (level == "error" || level == "warn" || level == "info" ||
        level == "debug") {
      logger->set_level(spdlog::level::from_str(level));
    } else {
      logger->warn("ignoring PHOTONXFER_LOG={} (expected error, warn, info "
                   "or debug)",
                   level);
    }
  }
  return logger;
}

Thresholds thresholds(const Options& o) {
  return {o.fid_tol, o.leak_tol, o.cons_tol};
}

void emit(const Options& o, const io::Json& json, std::ostream& out) {
  const std::string text = io::dump(json);
  if (o.out_path.empty()) {
    out << text;
  } else {
    io::write_atomic(o.out_path, text);
  }
}

ComplexVector to_vector(const std::vector<Complex>& values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = values[i];
  }
  return v;
}

struct PlanChoice {
  std::optional<PulsePlan> plan;
  std::string justification;
};

PlanChoice choose_plan(const PassiveSystem& sys, const Options& o,
                       spdlog::logger& log) {
  const auto tag = construction_from_string(o.construction);
  const bool auto_separable = o.construction == "separable";
  if (!tag && !auto_separable) {
    throw InputError("--construction: unknown tag '" + o.construction +
                     "' (expected xi-row-combination, zero-mode, separable, "
                     "separable-blocking or separable-basis)");
  }
  PlanChoice choice;
  if (tag == Construction::kXiRowCombination ||
      tag == Construction::kZeroMode) {
    if (o.coeffs.empty()) {
      throw InputError("--coeffs: required for --construction " +
                       o.construction);
    }
    const std::vector<Complex> x = parse_coefficients(o.coeffs);
    if (static_cast<Eigen::Index>(x.size()) != sys.modes()) {
      std::ostringstream os;
      os << "--coeffs: expected " << sys.modes() << " entries, got "
         << x.size();
      throw InputError(os.str());
    }
    if (*tag == Construction::kXiRowCombination) {
      ComplexVector v = to_vector(x);
      if (!(v.norm() > 0.0)) throw InputError("--coeffs: all entries are zero");
      if (std::abs(v.norm() - 1.0) > kStructuralTol) {
        log.info("normalizing --coeffs (norm {})", v.norm());
        v.normalize();
      }
      choice.plan = pulse_for_target(sys, v, o.trunc_eps);
    } else {
      choice.plan =
          zero_mode_pulse(transmission_zeros(sys), x, false, o.trunc_eps)
              .normalized();
    }
    return choice;
  }
  if (auto_separable || tag == Construction::kSeparableBlocking ||
      tag == Construction::kSeparableBasis) {
    SeparableOptions sep;
    if (o.channel > sys.channels()) {
      std::ostringstream os;
      os << "--channel: " << o.channel << " out of range 1.."
         << sys.channels();
      throw InputError(os.str());
    }
    sep.channel = o.channel - 1;
    sep.eps_trunc = o.trunc_eps;
    SeparableResult found = separable_transfer_plan(sys, sep);
    choice.justification = found.justification;
    if (found.plan &&
        (auto_separable || found.plan->construction() == *tag)) {
      choice.plan = std::move(found.plan);
    }
    return choice;
  }
  throw InputError("--construction: '" + o.construction +
                   "' cannot be requested directly");
}

int cmd_validate(const Options& o, std::ostream& out, spdlog::logger& log) {
  const PassiveSystem sys = io::load_system(o.system_path);
  const ValidationReport rep = validate(sys);
  for (const auto& m : rep.messages) log.info("{}", m);
  emit(o, io::to_json(rep), out);
  return rep.passed ? kExitOk : kExitVerdictFail;
}

int cmd_zeros(const Options& o, std::ostream& out, spdlog::logger& log) {
  const PassiveSystem sys = io::load_system(o.system_path);
  const std::vector<ZeroRecord> zeros = transmission_zeros(sys);
  const auto blocking = std::count_if(
      zeros.begin(), zeros.end(),
      [](const ZeroRecord& r) { return r.is_blocking; });
  log.info("{} transmission zeros, {} blocking", zeros.size(), blocking);
  io::Json notes = io::Json::array();
  for (std::size_t i = 0; i < zeros.size();) {
    std::size_t j = i + 1;
    while (j < zeros.size() &&
           std::abs(zeros[j].z - zeros[i].z) <= kDegenerateGroupTol) {
      ++j;
    }
    if (j - i > 1) {
      std::ostringstream os;
      const double re = zeros[i].z.real() + 0.0, im = zeros[i].z.imag() + 0.0;
      os << "zero z = " << re;
      if (im != 0.0) os << (im < 0.0 ? " - " : " + ") << std::abs(im) << "i";
      os << " has multiplicity " << j - i
         << ": records " << i + 1 << ".." << j
         << " hold one orthonormal basis of its eigenspace; any unitary "
            "recombination of their u and v is equally valid";
      notes.push_back(os.str());
    }
    i = j;
  }
  io::Json json = io::Json::object();
  json["blocking_count"] = blocking;
  json["zeros"] = io::to_json(zeros);
  json["notes"] = std::move(notes);
  emit(o, json, out);
  return kExitOk;
}

int cmd_pulse(const Options& o, bool simulate, std::ostream& out,
              spdlog::logger& log) {
  const PassiveSystem sys = io::load_system(o.system_path);
  PlanChoice choice = choose_plan(sys, o, log);
  io::Json json = io::Json::object();
  if (!choice.justification.empty()) {
    json["justification"] = choice.justification;
  }
  if (!choice.plan) {
    log.warn("no {} plan: {}", o.construction, choice.justification);
    json["plan"] = io::Json();
    emit(o, json, out);
    return kExitVerdictFail;
  }
  PulsePlan plan = o.time_reversed ? choice.plan->time_reversed()
                                   : std::move(*choice.plan);
  json["plan"] = io::to_json(plan);

  const double dt = o.dt > 0.0 ? o.dt : default_dt(sys, plan);
  if (!o.samples_csv.empty()) {
    const auto count = static_cast<std::size_t>(
                           std::ceil(-plan.window_start() / dt)) + 1;
    io::write_atomic(o.samples_csv,
                     io::pulse_csv(plan, plan.window_start(), dt, count));
  }
  int code = kExitOk;
  if (simulate) {
    const ExcitationTrajectory traj = propagate(sys, plan, dt);
    const TransferReport rep = assess(traj, plan, thresholds(o));
    log.info("fidelity = {:.17g}, leakage = {:.3g}, conservation defect = "
             "{:.3g}",
             rep.fidelity, rep.leakage, rep.conservation_defect);
    json["report"] = io::to_json(rep);
    if (!o.dump_trajectory.empty()) {
      io::write_atomic(o.dump_trajectory, io::trajectory_csv(traj));
    }
    code = rep.pass ? kExitOk : kExitVerdictFail;
  }
  emit(o, json, out);
  return code;
}

void apply_overrides(ScenarioSpec& spec, const Options& o,
                     const std::vector<Complex>& x, bool strict) {
  auto set = [&](const char* key, const std::optional<double>& value,
                 bool applies) {
    if (!value) return;
    if (!applies && strict) {
      throw InputError(std::string("--") + key + ": not a parameter of " +
                       std::string(to_string(spec.name)));
    }
    if (applies) spec.parameters[key] = *value;
  };
  const bool ring = spec.name == ScenarioName::kExample4;
  set("alpha", o.alpha, true);
  set("beta", o.beta, true);
  set("gamma1", o.gamma1, ring);
  set("gamma2", o.gamma2, ring);
  if (!x.empty()) {
    const bool applies = spec.name == ScenarioName::kExample1 ||
                         spec.name == ScenarioName::kExample2;
    if (!applies && strict) {
      throw InputError("--coeffs: " + std::string(to_string(spec.name)) +
                       " takes no coefficients");
    }
    if (applies) {
      if (x.size() != 2) throw InputError("--coeffs: expected 2 entries");
      spec.parameters["x1"] = x[0];
      spec.parameters["x2"] = x[1];
    }
  }
}

int cmd_demo(const Options& o, std::ostream& out, spdlog::logger& log) {
  std::vector<ScenarioSpec> specs;
  const bool all = o.scenario == "all";
  if (!o.config_path.empty()) {
    if (all) throw InputError("--config: cannot be combined with 'all'");
    ScenarioSpec spec = io::load_scenario(o.config_path);
    if (!o.scenario.empty() &&
        scenario_from_string(o.scenario) != spec.name) {
      throw InputError("--config: names " + std::string(to_string(spec.name)) +
                       " but the command line names " + o.scenario);
    }
    specs.push_back(std::move(spec));
  } else if (all) {
    for (ScenarioName n : {ScenarioName::kExample1, ScenarioName::kExample2,
                           ScenarioName::kExample3, ScenarioName::kExample4}) {
      specs.push_back(default_spec(n));
    }
  } else if (auto name = scenario_from_string(o.scenario)) {
    specs.push_back(default_spec(*name));
  } else {
    throw InputError("demo: expected example1..example4 or all, got '" +
                     o.scenario + "'");
  }
  if (all && !o.dump_trajectory.empty()) {
    throw InputError("--dump-trajectory: needs a single scenario");
  }
  const std::vector<Complex> x =
      o.coeffs.empty() ? std::vector<Complex>{} : parse_coefficients(o.coeffs);
  for (auto& spec : specs) apply_overrides(spec, o, x, !all);

  RegressionOptions ropts;
  ropts.dt = o.dt;
  ropts.eps_trunc = o.trunc_eps;
  ropts.channel = o.channel - 1;
  ropts.thresholds = thresholds(o);

  // Each slot is written by exactly one worker, so the output order does not
  // depend on scheduling.
  std::vector<std::optional<RegressionResult>> results(specs.size());
  std::vector<std::exception_ptr> failures(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        results[i] = run_regression(specs[i], ropts, o.simulate);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned pool =
      std::min<unsigned>(o.workers, static_cast<unsigned>(specs.size()));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < pool; ++t) threads.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  bool pass = true;
  io::Json list = io::Json::array();
  for (const auto& r : results) {
    const bool ok = r->pass();
    pass = pass && ok;
    if (r->report) {
      log.info("{}: {}, fidelity = {:.12f}", to_string(r->spec.name),
               ok ? "pass" : "FAIL", r->report->fidelity);
    } else {
      log.info("{}: {}", to_string(r->spec.name), ok ? "pass" : "FAIL");
    }
    for (const auto& row : r->comparisons) {
      if (!row.ok) {
        log.warn("{}: {} = {:.3g} (limit {} {:.3g})", to_string(r->spec.name),
                 row.quantity, row.value, row.above ? ">" : "<=", row.limit);
      }
    }
    list.push_back(io::to_json(*r));
  }
  if (!o.dump_trajectory.empty() && results.front()->trajectory) {
    io::write_atomic(o.dump_trajectory,
                     io::trajectory_csv(*results.front()->trajectory));
  }
  if (all) {
    io::Json json = io::Json::object();
    json["pass"] = pass;
    json["results"] = std::move(list);
    emit(o, json, out);
  } else {
    emit(o, list.front(), out);
  }
  return pass ? kExitOk : kExitVerdictFail;
}

}  // namespace

std::vector<Complex> parse_coefficients(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream entries(text);
  std::string entry;
  std::size_t index = 0;
  while (std::getline(entries, entry, ';')) {
    ++index;
    const std::string where = "--coeffs: entry " + std::to_string(index);
    std::stringstream parts(entry);
    std::string part;
    std::vector<double> values;
    while (std::getline(parts, part, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(part, &used);
      } catch (const std::exception&) {
        throw InputError(where + ": '" + part + "' is not a number");
      }
      if (part.find_first_not_of(" \t", used) != std::string::npos ||
          !std::isfinite(value)) {
        throw InputError(where + ": '" + part + "' is not a finite number");
      }
      values.push_back(value);
    }
    if (values.empty() || values.size() > 2) {
      throw InputError(where + ": expected 're,im' or 're', got '" + entry +
                       "'");
    }
    out.emplace_back(values[0], values.size() == 2 ? values[1] : 0.0);
  }
  if (out.empty()) throw InputError("--coeffs: no entries");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  auto logger = make_logger(err);
  Options o;
  CLI::App app{"Transmission zeros, pulse synthesis and single-photon "
               "transfer checks for passive linear quantum networks",
               "photonxfer"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Write JSON here instead of stdout");
  };
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", o.system_path, "System JSON file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--dt", o.dt, "RK4 step (default dt_max / 10)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--fid-tol", o.fid_tol, "Allowed infidelity")
        ->check(CLI::PositiveNumber);
    sub->add_option("--leak-tol", o.leak_tol, "Allowed leakage")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cons-tol", o.cons_tol, "Allowed norm defect")
        ->check(CLI::PositiveNumber);
    sub->add_option("--trunc-eps", o.trunc_eps, "Pulse tail truncation level")
        ->check(CLI::Range(1e-300, 0.5));
    sub->add_option("--channel", o.channel, "Input channel (1-based)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--coeffs", o.coeffs, "Coefficients \"re,im;re,im;...\"");
    sub->add_option("--dump-trajectory", o.dump_trajectory,
                    "Write the trajectory CSV here");
  };
  auto add_plan = [&](CLI::App* sub) {
    sub->add_option("--construction", o.construction,
                    "xi-row-combination, zero-mode, separable, "
                    "separable-blocking or separable-basis")
        ->capture_default_str();
    sub->add_flag("--time-reversed", o.time_reversed,
                  "Mirror the pulse in time (negative control)");
    sub->add_option("--samples-csv", o.samples_csv,
                    "Write the sampled pulse CSV here");
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a system");
  add_common(validate_cmd);
  add_system(validate_cmd);

  CLI::App* zeros_cmd = app.add_subcommand("zeros", "List transmission zeros");
  add_common(zeros_cmd);
  add_system(zeros_cmd);

  CLI::App* pulse_cmd = app.add_subcommand("pulse", "Synthesize a pulse");
  add_common(pulse_cmd);
  add_system(pulse_cmd);
  add_numeric(pulse_cmd);
  add_plan(pulse_cmd);
  pulse_cmd->add_flag("--simulate", o.simulate, "Also propagate the pulse");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Synthesize and propagate a pulse");
  add_common(simulate_cmd);
  add_system(simulate_cmd);
  add_numeric(simulate_cmd);
  add_plan(simulate_cmd);

  CLI::App* demo_cmd = app.add_subcommand("demo", "Run a canned example");
  add_common(demo_cmd);
  add_numeric(demo_cmd);
  demo_cmd->add_option("scenario", o.scenario,
                       "example1, example2, example3, example4 or all");
  demo_cmd->add_option("--config", o.config_path, "Scenario JSON file")
      ->check(CLI::ExistingFile);
  demo_cmd->add_option("--alpha", o.alpha, "Beam splitter transmissivity");
  demo_cmd->add_option("--beta", o.beta, "Beam splitter reflectivity");
  demo_cmd->add_option("--gamma1", o.gamma1, "Ring coupling rate 1");
  demo_cmd->add_option("--gamma2", o.gamma2, "Ring coupling rate 2");
  demo_cmd->add_flag("--simulate", o.simulate, "Propagate the example pulse");
  demo_cmd->add_option("--workers", o.workers, "Worker threads for 'all'")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (demo_cmd->parsed() && o.scenario.empty() && o.config_path.empty()) {
    err << "demo: name a scenario or pass --config\n";
    return kExitInputError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out, *logger);
    if (zeros_cmd->parsed()) return cmd_zeros(o, out, *logger);
    if (pulse_cmd->parsed()) return cmd_pulse(o, o.simulate, out, *logger);
    if (simulate_cmd->parsed()) return cmd_pulse(o, true, out, *logger);
    if (demo_cmd->parsed()) return cmd_demo(o, out, *logger);
  } catch (const std::exception& e) {
    logger->error("{}", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace photonxfer::cli
