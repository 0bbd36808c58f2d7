// Copyright 2026 The probtele Authors
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

// Experiment runner behind the `probtele` CLI and the Python module.
// Report and input schemas are documented in docs/report_schema.md.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "probtele/channel.hpp"
#include "probtele/protocol.hpp"

namespace probtele {

/// Bad user input. field() is a JSON-style path such as "channel.y[2]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Mode { Exact, Sample };

struct ExperimentConfig {
  std::size_t n = 1;
  std::optional<ChannelSpec> channel;  // nullopt: random from channel_seed
  std::optional<MessageSpec> message;  // nullopt: random from message_seed
  std::optional<std::uint64_t> channel_seed;  // defaults to `seed`
  std::optional<std::uint64_t> message_seed;  // defaults to `seed`
  Mode mode = Mode::Exact;
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  UnPath un_path = UnPath::Matrix;
  bool include_states = false;  // add receiver states to the branch table
  bool include_timing = false;  // add wall_time_seconds to the JSON
  unsigned threads = 0;         // sample mode workers; 0 = hardware
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

ChannelSpec resolve_channel(const ExperimentConfig& cfg);
MessageSpec resolve_message(const ExperimentConfig& cfg);

/// {"n": 2, "y": [...]}
ChannelSpec channel_from_json(const nlohmann::json& j);
/// {"n": 2, "x_re": [...], "x_im": [...]}; x_im may be omitted (all zero).
MessageSpec message_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChannelSpec& ch);
nlohmann::json to_json(const MessageSpec& msg);

struct ShotTally {
  std::uint64_t shots = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / shots) at the theoretical p
  double mean_success_fidelity = 0.0;
  double min_success_fidelity = 1.0;
};

struct Report {
  ExperimentConfig config;
  ChannelSpec channel;
  MessageSpec message;
  double success_probability_theoretical = 0.0;
  double success_probability_observed = 0.0;
  double mean_success_fidelity = 0.0;
  std::vector<OutcomeRecord> branches{};  // exact mode
  std::optional<ShotTally> tally{};       // sample mode
  double wall_time_seconds = 0.0;
  std::vector<std::pair<std::string, bool>> checks{};

  bool all_checks_passed() const;
  nlohmann::json to_json() const;
  /// m,n,ancilla,probability,fidelity rows (exact mode).
  void write_branch_csv(std::ostream& os) const;
};

Report run_exact(const ExperimentConfig& cfg);
Report run_sampled(const ExperimentConfig& cfg);
/// Dispatches on cfg.mode.
Report run(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::size_t max_n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Runs the library's invariant suites for N = 1..max_n with `trials` random
/// channels/messages each. Throws ConfigError for max_n outside [1, 4] or
/// trials == 0.
VerifyReport run_verify(std::size_t max_n, std::size_t trials,
                        std::uint64_t seed);

/// JSON text with a trailing newline; identical inputs give identical bytes.
std::string dump(const nlohmann::json& j);

}  // namespace probtele
