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

// maxent-qst command line: simulate, reconstruct, compare, sweep.
//
// Exit codes: 0 success, 2 usage or parse error, 3 numerical failure.

#ifndef MQST_CLI_HPP
#define MQST_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mqst/maxent_pair.hpp"

namespace mqst::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  enum class Mode { kReal, kComplex };
  double tolerance = maxent::kDefaultTolerance;
  double delta = maxent::kDefaultDelta;
  Mode mode = Mode::kReal;
  bool scaled = true;
  /// nullopt means "auto": the largest population.
  std::optional<std::size_t> reference = 0;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;

  /// delta in (0, 0.1), tolerance in (0, 1e-4); throws UsageError.
  void validate() const;
};

/// Parses "auto" or a non-negative index; throws UsageError.
std::optional<std::size_t> parse_reference(const std::string& text);

/// Seed of circuit k at size n in a sweep with master seed s:
/// splitmix64(splitmix64(s) + 1000003 n + k).
std::uint64_t sweep_circuit_seed(std::uint64_t master, std::size_t n, std::size_t k);

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mqst::cli

#endif  // MQST_CLI_HPP
