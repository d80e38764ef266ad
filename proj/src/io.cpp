// Copyright 2026 The maxent-qst Authors
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

#include "mqst/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mqst::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) schema_error(what + " must be a number");
  return j.get<double>();
}

std::uint64_t unsigned_integer(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned()) schema_error(what + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::vector<double> number_array(const Json& j, const std::string& what) {
  if (!j.is_array()) schema_error(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(number(j[k], what + "[" + std::to_string(k) + "]"));
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ParseError("write failed for '" + path + "'");
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": invalid JSON";
    throw ParseError(msg.str());
  }
}

Json read_json(const std::string& path) { return parse_json(read_file(path), path); }

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

Json to_json(const DensityMatrix& rho) {
  const std::size_t n = rho.dimension();
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      rr.push_back(rho(i, j).real() + 0.0);  // + 0.0 turns -0 into 0
      ri.push_back(rho(i, j).imag() + 0.0);
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dimension", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const Json& j) {
  const auto n = static_cast<std::size_t>(unsigned_integer(field(j, "dimension"), "dimension"));
  if (n == 0) schema_error("dimension must be positive");
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n) {
    schema_error("'re' and 'im' must be N x N arrays");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_re = number_array(re[i], "re[" + std::to_string(i) + "]");
    const auto row_im = number_array(im[i], "im[" + std::to_string(i) + "]");
    if (row_re.size() != n || row_im.size() != n) schema_error("'re' and 'im' must be N x N arrays");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = Complex(row_re[k], row_im[k]);
  }
  try {
    return DensityMatrix(std::move(m));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what());
  }
}

Json to_json(const StateVector& psi) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t k = 0; k < psi.dimension(); ++k) {
    re.push_back(psi[k].real());
    im.push_back(psi[k].imag());
  }
  return {{"qubits", psi.qubit_count()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

StateVector state_from_json(const Json& j) {
  const auto n = static_cast<std::size_t>(unsigned_integer(field(j, "qubits"), "qubits"));
  const auto re = number_array(field(j, "re"), "re");
  const auto im = number_array(field(j, "im"), "im");
  if (re.size() != im.size()) schema_error("'re' and 'im' differ in length");
  ComplexVector amps(static_cast<Eigen::Index>(re.size()));
  for (std::size_t k = 0; k < re.size(); ++k) amps(k) = Complex(re[k], im[k]);
  try {
    return StateVector(n, std::move(amps));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid state vector: ") + e.what());
  }
}

Json to_json(const MeasurementSet& ms) {
  Json j;
  j["dimension"] = ms.dimension;
  if (ms.probabilities.empty()) {
    j["probabilities"] = nullptr;
  } else {
    Json p = Json::array();
    for (const auto& x : ms.probabilities) {
      if (x) {
        p.push_back(*x);
      } else {
        p.push_back(nullptr);
      }
    }
    j["probabilities"] = std::move(p);
  }
  Json c = Json::array();
  for (const auto& x : ms.coherences) {
    c.push_back({{"i", x.i}, {"j", x.j}, {"re", x.value.real()}, {"im", x.value.imag()}});
  }
  j["coherences"] = std::move(c);
  if (ms.provenance.kind == Provenance::Kind::kExact) {
    j["provenance"] = {{"kind", "exact"}};
  } else {
    j["provenance"] = {
        {"kind", "sampled"}, {"shots", ms.provenance.shots}, {"seed", ms.provenance.seed}};
  }
  return j;
}

MeasurementSet measurements_from_json(const Json& j) {
  MeasurementSet ms;
  ms.dimension = static_cast<std::size_t>(unsigned_integer(field(j, "dimension"), "dimension"));
  const Json& p = field(j, "probabilities");
  if (!p.is_null()) {
    if (!p.is_array()) schema_error("'probabilities' must be an array or null");
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k].is_null()) {
        ms.probabilities.emplace_back();
      } else {
        ms.probabilities.emplace_back(number(p[k], "probabilities[" + std::to_string(k) + "]"));
      }
    }
  }
  const Json& c = field(j, "coherences");
  if (!c.is_array()) schema_error("'coherences' must be an array");
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::string where = "coherences[" + std::to_string(k) + "]";
    Coherence x;
    x.i = static_cast<std::size_t>(unsigned_integer(field(c[k], "i"), where + ".i"));
    x.j = static_cast<std::size_t>(unsigned_integer(field(c[k], "j"), where + ".j"));
    x.value = Complex(number(field(c[k], "re"), where + ".re"),
                      number(field(c[k], "im"), where + ".im"));
    ms.coherences.push_back(x);
  }
  const Json& prov = field(j, "provenance");
  const Json& kind = field(prov, "kind");
  if (kind == "exact") {
    ms.provenance = Provenance::exact();
  } else if (kind == "sampled") {
    ms.provenance = Provenance::sampled(unsigned_integer(field(prov, "shots"), "shots"),
                                        unsigned_integer(field(prov, "seed"), "seed"));
  } else {
    schema_error("provenance kind must be 'exact' or 'sampled'");
  }
  try {
    ms.validate();
  } catch (const InvalidMeasurementError& e) {
    throw ParseError(std::string("invalid measurement set: ") + e.what());
  }
  return ms;
}

Json to_json(const Circuit& circuit) {
  Json gates = Json::array();
  for (const Gate& g : circuit.gates) {
    Json jg{{"name", g.name}, {"targets", g.targets}};
    if (g.angle) jg["angle"] = *g.angle;
    gates.push_back(std::move(jg));
  }
  return {{"qubits", circuit.qubit_count}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c;
  c.qubit_count = static_cast<std::size_t>(unsigned_integer(field(j, "qubits"), "qubits"));
  const Json& gates = field(j, "gates");
  if (!gates.is_array()) schema_error("'gates' must be an array");
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const std::string where = "gates[" + std::to_string(k) + "]";
    Gate g;
    const Json& name = field(gates[k], "name");
    if (!name.is_string()) schema_error(where + ".name must be a string");
    g.name = name.get<std::string>();
    const Json& targets = field(gates[k], "targets");
    if (!targets.is_array()) schema_error(where + ".targets must be an array");
    for (std::size_t t = 0; t < targets.size(); ++t) {
      g.targets.push_back(static_cast<std::size_t>(
          unsigned_integer(targets[t], where + ".targets[" + std::to_string(t) + "]")));
    }
    if (auto it = gates[k].find("angle"); it != gates[k].end()) {
      g.angle = number(*it, where + ".angle");
    }
    c.gates.push_back(std::move(g));
  }
  try {
    c.validate();
  } catch (const CircuitError& e) {
    throw ParseError(std::string("invalid circuit: ") + e.what());
  }
  return c;
}

std::string trace_csv(const ConvergenceTrace& trace) {
  std::string out = "step,entropy,purity\n";
  for (const TraceStep& s : trace.steps) {
    out += std::to_string(s.step) + "," + format_double(s.entropy) + "," +
           format_double(s.purity) + "\n";
  }
  return out;
}

}  // namespace mqst::io
