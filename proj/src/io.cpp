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

#include "qmix/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qmix::io {

namespace {

Json complex_block(const CMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Index read_dimension(const Json& j, const char* key) {
  const std::string ptr = std::string("/") + key;
  if (!j.contains(key)) throw SchemaError(ptr, "missing");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw SchemaError(ptr, "expected a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

double read_number(const Json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(ptr, "non-finite entry");
  return x;
}

CMatrix read_block(const Json& j, const char* key, Index rows, Index cols) {
  const std::string ptr = std::string("/") + key;
  const Json& block = j.at(key);
  if (!block.is_array() || static_cast<Index>(block.size()) != rows) {
    throw SchemaError(ptr, "expected " + std::to_string(rows) + " rows");
  }
  CMatrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const std::string rptr = ptr + "/" + std::to_string(r);
    const Json& row = block[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw SchemaError(rptr, "expected " + std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) {
      const std::string eptr = rptr + "/" + std::to_string(c);
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) throw SchemaError(eptr, "expected [re, im]");
      out(r, c) = complex(read_number(e[0], eptr + "/0"), read_number(e[1], eptr + "/1"));
    }
  }
  return out;
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

}  // namespace

Json to_json(const QMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["alpha"] = complex_block(m.alpha());
  j["beta"] = complex_block(m.beta());
  return j;
}

Json to_json(const CMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["alpha"] = complex_block(m);
  return j;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  const Index rows = read_dimension(j, "rows");
  const Index cols = read_dimension(j, "cols");
  if (!j.contains("alpha")) throw SchemaError("/alpha", "missing");
  CMatrix alpha = read_block(j, "alpha", rows, cols);
  CMatrix beta = j.contains("beta") ? read_block(j, "beta", rows, cols) : CMatrix::Zero(rows, cols);
  return QMatrix(std::move(alpha), std::move(beta));
}

std::string serialize_matrix(const QMatrix& m) { return to_json(m).dump(2); }

QMatrix parse_matrix(std::string_view text) { return matrix_from_json(parse_text(text)); }

QMatrix load_matrix(const std::filesystem::path& path) { return matrix_from_json(read_file(path)); }

Generator generator_from_json(const Json& j) {
  if (j.is_object() && j.contains("samples")) {
    const Json& samples = j.at("samples");
    if (!samples.is_array() || samples.empty()) throw SchemaError("/samples", "expected a non-empty array");
    if (!j.contains("span")) throw SchemaError("/span", "missing");
    const double span = read_number(j.at("span"), "/span");
    std::vector<QMatrix> mats;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      try {
        mats.push_back(matrix_from_json(samples[k]));
      } catch (const SchemaError& e) {
        throw SchemaError("/samples/" + std::to_string(k) + e.pointer(), e.detail());
      }
    }
    return Generator(std::move(mats), span);
  }
  return Generator(matrix_from_json(j));
}

Generator load_generator(const std::filesystem::path& path) { return generator_from_json(read_file(path)); }

Json to_json(const QDensity& rho) {
  Json j;
  j["classification"] = std::string(to_string(rho.classification()));
  j["beta_norm"] = rho.beta_norm();
  j["matrix"] = to_json(rho.mat());
  return j;
}

Json to_json(const ScenarioReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["inputs"] = {
      {"c_plus", Json::array({report.c_plus.real(), report.c_plus.imag()})},
      {"c_minus", Json::array({report.c_minus.real(), report.c_minus.imag()})},
      {"n_hat", {{"theta", report.direction.theta}, {"phi", report.direction.phi}}},
  };
  j["partial_trace_mixture"] = to_json(report.partial_trace_mixture);
  j["lueders_mixture"] = to_json(report.lueders_mixture);
  j["rho_improper"] = to_json(report.rho_improper);
  j["rho_proper"] = to_json(report.rho_proper);
  j["representative"] = "purified";
  Json table = Json::array();
  for (const ExpectationRow& row : report.complex_expectations) {
    table.push_back({{"observable", row.label},
                     {"proper", row.proper},
                     {"improper", row.improper},
                     {"difference", row.difference}});
  }
  j["complex_expectations"] = std::move(table);
  j["quaternionic_discriminator"] = {
      {"observable", to_json(report.discriminator.observable)},
      {"proper", report.discriminator.proper},
      {"improper", report.discriminator.improper},
      {"expected_improper", report.discriminator.expected},
  };
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"tolerance", c.tolerance}});
  }
  j["checks"] = std::move(checks);
  j["all_passed"] = report.all_passed();
  return j;
}

Json to_json(const PropositionSummary& summary) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = summary.seed;
  j["n_max"] = summary.n_max;
  j["trials"] = summary.trials;
  Json rows = Json::array();
  for (const PropositionRow& row : summary.rows) {
    rows.push_back({{"proposition", row.name},
                    {"trials", row.trials},
                    {"passed", row.passed},
                    {"worst_residual", row.worst_residual}});
  }
  j["results"] = std::move(rows);
  j["all_passed"] = true;
  return j;
}

}  // namespace qmix::io
