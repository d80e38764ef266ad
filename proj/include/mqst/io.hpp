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

// JSON and CSV formats.
//
//   DensityMatrix   {"dimension": N, "re": [[...]], "im": [[...]]}
//   StateVector     {"qubits": n, "re": [...], "im": [...]}
//   MeasurementSet  {"dimension": N, "probabilities": [p | null, ...] | null,
//                    "coherences": [{"i":0,"j":3,"re":0.5,"im":0.0}],
//                    "provenance": {"kind":"exact"} |
//                                  {"kind":"sampled","shots":8192,"seed":42}}
//   Circuit         {"qubits": 2, "gates": [{"name":"rx","targets":[0],"angle":1.57}]}
//   trace CSV       step,entropy,purity

#ifndef MQST_IO_HPP
#define MQST_IO_HPP

#include <string>

#include "json.hpp"
#include "mqst/measurement.hpp"
#include "mqst/qmath.hpp"
#include "mqst/reconstruct.hpp"
#include "mqst/simulate.hpp"

namespace mqst::io {

using Json = nlohmann::json;

/// Unreadable file, malformed JSON (message carries line and column) or a
/// document that does not match the expected schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Parses text; `source` names the origin in error messages.
Json parse_json(const std::string& text, const std::string& source);
Json read_json(const std::string& path);

/// Single-line JSON with a trailing newline.
std::string dump(const Json& j);

Json to_json(const DensityMatrix& rho);
Json to_json(const StateVector& psi);
Json to_json(const MeasurementSet& ms);
Json to_json(const Circuit& circuit);

DensityMatrix density_from_json(const Json& j);
StateVector state_from_json(const Json& j);
MeasurementSet measurements_from_json(const Json& j);
Circuit circuit_from_json(const Json& j);

std::string trace_csv(const ConvergenceTrace& trace);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace mqst::io

#endif  // MQST_IO_HPP
