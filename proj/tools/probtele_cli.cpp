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

// probtele: run, verify and synthesize probabilistic teleportation circuits.
//
// Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "probtele/harness.hpp"
#include "probtele/netlist_io.hpp"

namespace {

using probtele::ConfigError;
using nlohmann::json;

constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, "'" + path + "' is not valid JSON: " + e.what());
  }
}

/// "random" or "random:<seed>" selects a generated input; anything else is a
/// JSON file path. Returns the explicit seed, if any, through `seed`.
bool is_random(const std::string& source, std::optional<std::uint64_t>& seed,
               const std::string& field) {
  if (source == "random") return true;
  if (source.rfind("random:", 0) == 0) {
    try {
      std::size_t used = 0;
      seed = std::stoull(source.substr(7), &used);
      if (used != source.size() - 7) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(field, "expected random:<unsigned seed>, got '" + source + "'");
    }
    return true;
  }
  return false;
}

void load_inputs(probtele::ExperimentConfig& cfg, const std::string& channel,
                 const std::string& message) {
  if (!is_random(channel, cfg.channel_seed, "channel")) {
    cfg.channel = probtele::channel_from_json(read_json_file(channel, "channel"));
  }
  if (!is_random(message, cfg.message_seed, "message")) {
    cfg.message = probtele::message_from_json(read_json_file(message, "message"));
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("out", "cannot write '" + path + "'");
  out << text;
}

struct TeleportArgs {
  std::size_t n = 1;
  std::string channel = "random";
  std::string message = "random";
  std::string mode = "exact";
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  std::string un_path = "matrix";
  std::string out;
  std::string csv;
  bool include_states = false;
  bool timing = false;
  unsigned threads = 0;
};

int run_teleport(const TeleportArgs& a) {
  probtele::ExperimentConfig cfg;
  cfg.n = a.n;
  cfg.seed = a.seed;
  cfg.shots = a.shots;
  cfg.include_states = a.include_states;
  cfg.include_timing = a.timing;
  cfg.threads = a.threads;
  if (a.mode == "exact") {
    cfg.mode = probtele::Mode::Exact;
  } else if (a.mode == "sample") {
    cfg.mode = probtele::Mode::Sample;
  } else {
    throw ConfigError("mode", "must be exact or sample");
  }
  try {
    cfg.un_path = probtele::parse_un_path(a.un_path);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("un_path", e.what());
  }
  load_inputs(cfg, a.channel, a.message);

  const probtele::Report rep = probtele::run(cfg);
  write_output(a.out, probtele::dump(rep.to_json()));
  if (!a.csv.empty()) {
    if (cfg.mode != probtele::Mode::Exact) {
      throw ConfigError("csv", "branch tables exist only in exact mode");
    }
    std::ostringstream os;
    rep.write_branch_csv(os);
    write_output(a.csv, os.str());
  }
  std::fprintf(stderr, "wall time %.3f s\n", rep.wall_time_seconds);
  return rep.all_checks_passed() ? 0 : kExitCheckFailed;
}

int run_verify_cmd(std::size_t max_n, std::size_t trials, std::uint64_t seed,
                   const std::string& out) {
  const probtele::VerifyReport rep = probtele::run_verify(max_n, trials, seed);
  write_output(out, probtele::dump(rep.to_json()));
  for (const probtele::CheckResult& c : rep.checks) {
    std::fprintf(stderr, "[%s] %s (worst %.3e, tol %.1e) %s\n",
                 c.passed ? "PASS" : "FAIL", c.name.c_str(), c.worst_residual,
                 c.tolerance, c.detail.c_str());
  }
  return rep.all_passed() ? 0 : kExitCheckFailed;
}

int run_synthesize(std::size_t n, const std::string& channel, std::uint64_t seed,
                   const std::string& what, const std::string& out) {
  probtele::ExperimentConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  load_inputs(cfg, channel, "random");
  probtele::validate(cfg);
  const probtele::ChannelSpec ch = probtele::resolve_channel(cfg);

  probtele::Netlist nl(1);
  if (what == "un") {
    nl = probtele::un_netlist(ch);
  } else if (what == "un-ascending") {
    nl = probtele::un_netlist(ch, probtele::FactorOrder::Ascending);
  } else if (what == "cnot") {
    if (n != 2) throw ConfigError("circuit", "cnot expansion needs --n 2");
    nl = probtele::expand_u2_full(ch);
  } else if (what == "channel") {
    nl = probtele::prepare_channel_circuit(ch);
  } else {
    throw ConfigError("circuit", "must be un, un-ascending, cnot or channel");
  }
  std::string text = "# " + what + " circuit, channel y =";
  for (double y : ch.y()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.17g", y);
    text += buf;
  }
  write_output(out, text + "\n" + probtele::to_text(nl));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic teleportation of N-qubit states: simulate, verify, synthesize"};
  app.require_subcommand(1);

  TeleportArgs ta;
  auto* teleport = app.add_subcommand("teleport", "Run the protocol exactly or by sampling");
  teleport->add_option("--n", ta.n, "Number of message qubits (1-4)");
  teleport->add_option("--channel", ta.channel,
                       "Channel JSON file, 'random' or 'random:<seed>'");
  teleport->add_option("--message", ta.message,
                       "Message JSON file, 'random' or 'random:<seed>'");
  teleport->add_option("--mode", ta.mode, "exact | sample");
  teleport->add_option("--shots", ta.shots, "Shots in sample mode");
  teleport->add_option("--seed", ta.seed, "Master seed");
  teleport->add_option("--un-path", ta.un_path, "matrix | netlist | cnot (n=2 only)");
  teleport->add_option("--out", ta.out, "Report file (default stdout)");
  teleport->add_option("--csv", ta.csv, "Also write the branch table as CSV");
  teleport->add_flag("--include-states", ta.include_states,
                     "Add receiver states to the branch table");
  teleport->add_flag("--timing", ta.timing, "Add wall_time_seconds to the report");
  teleport->add_option("--threads", ta.threads, "Sampling threads (0 = all cores)");

  std::size_t max_n = 4, trials = 10;
  std::uint64_t vseed = 0;
  std::string vout;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--max-n", max_n, "Largest message size to check (1-4)");
  verify->add_option("--trials", trials, "Random instances per N");
  verify->add_option("--seed", vseed, "Master seed");
  verify->add_option("--out", vout, "Report file (default stdout)");

  std::size_t sn = 2;
  std::string schannel = "random", swhat = "un", sout;
  std::uint64_t sseed = 0;
  auto* synth = app.add_subcommand("synthesize", "Emit a circuit in netlist text form");
  synth->add_option("--n", sn, "Number of message qubits (1-4)");
  synth->add_option("--channel", schannel, "Channel JSON file, 'random' or 'random:<seed>'");
  synth->add_option("--seed", sseed, "Master seed for a random channel");
  synth->add_option("--circuit", swhat, "un | un-ascending | cnot | channel");
  synth->add_option("--out", sout, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*teleport) return run_teleport(ta);
    if (*verify) return run_verify_cmd(max_n, trials, vseed, vout);
    if (*synth) return run_synthesize(sn, schannel, sseed, swhat, sout);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  }
  return 0;
}
