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

#include "photonxfer/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "photonxfer/error.hpp"

namespace photonxfer::io {

namespace {

std::string element(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

std::string describe(const Json& j) {
  return std::string(j.type_name());
}

double number_from_json(const Json& j, const std::string& field) {
  if (!j.is_number()) {
    throw InputError(field + ": expected a number, got " + describe(j));
  }
  const double value = j.get<double>();
  if (!std::isfinite(value)) throw InputError(field + ": must be finite");
  return value;
}

Eigen::Index size_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(field + ": expected a non-negative integer");
  }
  return static_cast<Eigen::Index>(j.get<long long>());
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(where + ": missing field '" + key + "'");
  }
  return *it;
}

// A JSON number printed with 17 significant digits; null when not finite,
// which JSON cannot represent.
void write_float(std::string& out, double value) {
  if (!std::isfinite(value)) {
    out += "null";
    return;
  }
  if (value == 0.0) value = 0.0;  // print -0 as 0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

bool is_scalar(const Json& j) { return !j.is_structured(); }

// Scalars and short numeric tuples such as [re, im] stay on one line.
bool is_inline(const Json& j) {
  return is_scalar(j) ||
         (j.is_array() && j.size() <= 2 && std::all_of(j.begin(), j.end(), is_scalar));
}

void write_value(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      write_float(out, j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(key).dump();
        out += ": ";
        write_value(out, value, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_inline);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write_value(out, value, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

Json strings_to_json(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& s : items) out.push_back(s);
  return out;
}

Json complexes_to_json(const std::vector<Complex>& items) {
  Json out = Json::array();
  for (const auto& c : items) out.push_back(to_json(c));
  return out;
}

void append_complex(std::ostringstream& os, Complex c) {
  std::string re, im;
  write_float(re, c.real());
  write_float(im, c.imag());
  os << ',' << re << ',' << im;
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return {number_from_json(j, field), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw InputError(field + ": expected [re, im] pair, got " + describe(j));
  }
  return {number_from_json(j[0], field + "[0]"),
          number_from_json(j[1], field + "[1]")};
}

ComplexVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) {
    throw InputError(field + ": expected an array, got " + describe(j));
  }
  ComplexVector out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], element(field, i));
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field,
                               Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) {
    throw InputError(field + ": expected an array of rows, got " + describe(j));
  }
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    std::ostringstream os;
    os << field << ": expected " << rows << " rows, got " << j.size();
    throw InputError(os.str());
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_field = element(field, static_cast<std::size_t>(r));
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      std::ostringstream os;
      os << row_field << ": expected a row of " << cols << " entries";
      throw InputError(os.str());
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                    element(row_field, static_cast<std::size_t>(c)));
    }
  }
  return out;
}

Json system_to_json(const PassiveSystem& sys) {
  Json out = Json::object();
  out["schema"] = kSystemSchema;
  out["n"] = sys.modes();
  out["m"] = sys.channels();
  out["omega"] = to_json(sys.omega());
  out["coupling"] = to_json(sys.coupling());
  out["scattering"] = to_json(sys.scattering());
  return out;
}

PassiveSystem system_from_json(const Json& j) {
  if (!j.is_object()) {
    throw InputError("system: expected a JSON object, got " + describe(j));
  }
  const Json& schema = member(j, "schema", "system");
  if (!schema.is_string() || schema.get<std::string>() != kSystemSchema) {
    throw InputError(std::string("schema: expected \"") + kSystemSchema + "\"");
  }
  const Eigen::Index n = size_from_json(member(j, "n", "system"), "n");
  const Eigen::Index m = size_from_json(member(j, "m", "system"), "m");
  if (m == 0) throw InputError("m: a system needs at least one channel");
  ComplexMatrix omega = matrix_from_json(member(j, "omega", "system"), "omega", n, n);
  ComplexMatrix coupling =
      matrix_from_json(member(j, "coupling", "system"), "coupling", m, n);
  ComplexMatrix scattering =
      matrix_from_json(member(j, "scattering", "system"), "scattering", m, m);
  return PassiveSystem(std::move(omega), std::move(coupling),
                       std::move(scattering));
}

PassiveSystem load_system(const std::filesystem::path& path) {
  try {
    return system_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json to_json(const ValidationReport& rep) {
  Json out = Json::object();
  out["passed"] = rep.passed;
  out["hermiticity_defect"] = rep.hermiticity_defect;
  out["unitarity_defect"] = rep.unitarity_defect;
  out["hurwitz_margin"] = rep.hurwitz_margin_found;
  out["messages"] = strings_to_json(rep.messages);
  return out;
}

Json to_json(const ZeroRecord& rec) {
  Json out = Json::object();
  out["z"] = to_json(rec.z);
  out["is_blocking"] = rec.is_blocking;
  out["u"] = to_json(rec.u);
  out["u_raw"] = to_json(rec.u_raw);
  out["v"] = to_json(rec.v);
  out["residual"] = rec.residual;
  return out;
}

Json to_json(const std::vector<ZeroRecord>& zeros) {
  Json out = Json::array();
  for (const auto& rec : zeros) out.push_back(to_json(rec));
  return out;
}

Json to_json(const PulsePlan& plan) {
  Json out = Json::object();
  out["construction"] = std::string(to_string(plan.construction()));
  out["channels"] = plan.channels();
  out["rates"] = complexes_to_json(plan.rates());
  out["coefficients"] = complexes_to_json(plan.coefficients());
  out["window_start"] = plan.window_start();
  out["anchor"] = plan.anchor();
  out["infinite_tail"] = plan.infinite_tail();
  out["l2_norm"] = plan.l2_norm();
  out["truncated_mass"] = plan.truncated_mass();
  out["predicted_target"] = to_json(plan.predicted_target());
  out["directions"] = to_json(plan.directions());
  out["generator"] = to_json(plan.generator());
  out["weights"] = to_json(plan.weights());
  return out;
}

Json to_json(const TransferReport& rep) {
  Json out = Json::object();
  out["pass"] = rep.pass;
  out["fidelity"] = rep.fidelity;
  out["transfer_fidelity"] = rep.transfer_fidelity;
  out["leakage"] = rep.leakage;
  out["conservation_defect"] = rep.conservation_defect;
  out["input_norm_sq"] = rep.input_norm_sq;
  out["output_norm_sq"] = rep.output_norm_sq;
  out["final_norm_sq"] = rep.final_norm_sq;
  out["truncated_mass"] = rep.truncated_mass;
  out["window_start"] = rep.window_start;
  out["dt"] = rep.dt;
  Json thresholds = Json::object();
  thresholds["fid_tol"] = rep.thresholds.fid_tol;
  thresholds["leak_tol"] = rep.thresholds.leak_tol;
  thresholds["cons_tol"] = rep.thresholds.cons_tol;
  out["thresholds"] = std::move(thresholds);
  out["predicted_target"] = to_json(rep.predicted_target);
  out["achieved_target"] = to_json(rep.achieved_target);
  out["messages"] = strings_to_json(rep.messages);
  return out;
}

Json to_json(const ComparisonRow& row) {
  Json out = Json::object();
  out["quantity"] = row.quantity;
  out["value"] = row.value;
  out["relation"] = row.above ? ">" : "<=";
  out["limit"] = row.limit;
  out["ok"] = row.ok;
  return out;
}

Json to_json(const RegressionResult& res) {
  Json out = Json::object();
  out["scenario"] = scenario_to_json(res.spec);
  out["pass"] = res.pass();
  out["entangled_input_required"] = res.entangled_input_required;
  Json rows = Json::array();
  for (const auto& row : res.comparisons) rows.push_back(to_json(row));
  out["comparisons"] = std::move(rows);
  out["zeros"] = to_json(res.zeros);
  out["plan"] = res.plan ? to_json(*res.plan) : Json();
  out["report"] = res.report ? to_json(*res.report) : Json();
  out["notes"] = strings_to_json(res.notes);
  return out;
}

Json scenario_to_json(const ScenarioSpec& spec) {
  Json out = Json::object();
  out["name"] = std::string(to_string(spec.name));
  // Effective values, defaults included, in a fixed order.
  Json params = Json::object();
  ScenarioSpec full = default_spec(spec.name);
  for (const auto& [key, value] : spec.parameters) full.parameters[key] = value;
  for (const char* j : {"1", "2"}) {
    const std::string a_key = std::string("A") + j;
    if (spec.parameters.count(std::string("Omega") + j) != 0 &&
        spec.parameters.count(a_key) == 0) {
      full.parameters.erase(a_key);
    }
  }
  for (const auto& [key, value] : full.parameters) {
    params[key] = value.imag() == 0.0 ? Json(value.real()) : to_json(value);
  }
  out["parameters"] = std::move(params);
  return out;
}

ScenarioSpec scenario_from_json(const Json& j) {
  if (!j.is_object()) {
    throw InputError("scenario: expected a JSON object, got " + describe(j));
  }
  const Json& name = member(j, "name", "scenario");
  if (!name.is_string()) throw InputError("name: expected a string");
  const auto parsed = scenario_from_string(name.get<std::string>());
  if (!parsed) {
    throw InputError("name: unknown scenario '" + name.get<std::string>() +
                     "' (expected example1..example4)");
  }
  ScenarioSpec spec;
  spec.name = *parsed;
  if (auto it = j.find("parameters"); it != j.end()) {
    if (!it->is_object()) throw InputError("parameters: expected an object");
    for (const auto& [key, value] : it->items()) {
      spec.parameters[key] = complex_from_json(value, "parameters." + key);
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "parameters") {
      throw InputError("scenario: unknown field '" + key + "'");
    }
  }
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  try {
    return scenario_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << path.string() << ":" << line << ":" << column
       << ": JSON syntax error: " << e.what();
    throw InputError(os.str());
  }
}

std::string dump(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  out += '\n';
  return out;
}

std::string trajectory_csv(const ExcitationTrajectory& traj) {
  std::ostringstream os;
  os << 't';
  for (Eigen::Index i = 0; i < traj.modes(); ++i) {
    os << ",psi" << i + 1 << "_re,psi" << i + 1 << "_im";
  }
  for (Eigen::Index i = 0; i < traj.channels(); ++i) {
    os << ",eta" << i + 1 << "_re,eta" << i + 1 << "_im";
  }
  os << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::string t;
    write_float(t, traj.times[k]);
    os << t;
    for (Eigen::Index i = 0; i < traj.psi[k].size(); ++i) {
      append_complex(os, traj.psi[k](i));
    }
    for (Eigen::Index i = 0; i < traj.eta[k].size(); ++i) {
      append_complex(os, traj.eta[k](i));
    }
    os << '\n';
  }
  return os.str();
}

std::string pulse_csv(const PulsePlan& plan, double t_start, double step,
                      std::size_t count) {
  const ComplexMatrix table = plan.sample(t_start, step, count);
  std::ostringstream os;
  os << 't';
  for (Eigen::Index i = 0; i < plan.channels(); ++i) {
    os << ",phi" << i + 1 << "_re,phi" << i + 1 << "_im";
  }
  os << '\n';
  for (std::size_t k = 0; k < count; ++k) {
    std::string t;
    write_float(t, t_start + static_cast<double>(k) * step);
    os << t;
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
      append_complex(os, table(i, static_cast<Eigen::Index>(k)));
    }
    os << '\n';
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(path.string() + ": cannot open for writing");
    out << data;
    out.flush();
    if (!out) throw InputError(path.string() + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError(path.string() + ": rename failed");
  }
}

}  // namespace photonxfer::io
