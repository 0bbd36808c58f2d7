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

#include "probtele/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "probtele/random.hpp"

namespace probtele {

using nlohmann::json;

namespace {

constexpr double kExactTolerance = 1e-10;

std::vector<double> number_array(const json& j, const std::string& prefix,
                                 const std::string& key) {
  const std::string field = prefix + "." + key;
  if (!j.contains(key)) throw ConfigError(field, "missing");
  const json& arr = j.at(key);
  if (!arr.is_array()) throw ConfigError(field, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ConfigError(field + "[" + std::to_string(i) + "]",
                        "must be a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::size_t read_n(const json& j, const std::string& prefix) {
  if (!j.is_object()) throw ConfigError(prefix, "must be a JSON object");
  if (!j.contains("n")) throw ConfigError(prefix + ".n", "missing");
  const json& n = j.at("n");
  if (!n.is_number_integer() || n.get<long long>() < 1 ||
      n.get<long long>() > static_cast<long long>(kMaxMessageQubits)) {
    throw ConfigError(prefix + ".n", "must be an integer in [1, " +
                                         std::to_string(kMaxMessageQubits) + "]");
  }
  return n.get<std::size_t>();
}

json state_json(const StateVector& sv) {
  json re = json::array();
  json im = json::array();
  for (const Complex& a : sv.amplitudes()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return {{"re", re}, {"im", im}};
}

const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "sample"; }

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 4) {
    throw ConfigError("n", "must be an integer in [1, 4]");
  }
  if (cfg.channel && cfg.channel->n() != cfg.n) {
    throw ConfigError("channel.n", "is " + std::to_string(cfg.channel->n()) +
                                       " but n is " + std::to_string(cfg.n));
  }
  if (cfg.message && cfg.message->n() != cfg.n) {
    throw ConfigError("message.n", "is " + std::to_string(cfg.message->n()) +
                                       " but n is " + std::to_string(cfg.n));
  }
  if (cfg.mode == Mode::Sample && cfg.shots == 0) {
    throw ConfigError("shots", "must be positive in sample mode");
  }
  if (cfg.un_path == UnPath::Cnot && cfg.n != 2) {
    throw ConfigError("un_path", "cnot is only available for n = 2");
  }
}

ChannelSpec resolve_channel(const ExperimentConfig& cfg) {
  if (cfg.channel) return *cfg.channel;
  Rng rng(derive_seed(cfg.channel_seed.value_or(cfg.seed), kChannelStream));
  return random_channel(cfg.n, rng);
}

MessageSpec resolve_message(const ExperimentConfig& cfg) {
  if (cfg.message) return *cfg.message;
  Rng rng(derive_seed(cfg.message_seed.value_or(cfg.seed), kMessageStream));
  return random_message(cfg.n, rng);
}

ChannelSpec channel_from_json(const json& j) {
  const std::size_t n = read_n(j, "channel");
  std::vector<double> y = number_array(j, "channel", "y");
  try {
    return ChannelSpec(n, std::move(y));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("channel.y", e.what());
  }
}

MessageSpec message_from_json(const json& j) {
  const std::size_t n = read_n(j, "message");
  const std::vector<double> re = number_array(j, "message", "x_re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("x_im")) im = number_array(j, "message", "x_im");
  if (im.size() != re.size()) {
    throw ConfigError("message.x_im", "must have the same length as x_re");
  }
  std::vector<Complex> x;
  for (std::size_t i = 0; i < re.size(); ++i) x.emplace_back(re[i], im[i]);
  try {
    return MessageSpec(n, std::move(x));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("message.x_re", e.what());
  }
}

json to_json(const ChannelSpec& ch) { return {{"n", ch.n()}, {"y", ch.y()}}; }

json to_json(const MessageSpec& msg) {
  json re = json::array();
  json im = json::array();
  for (const Complex& c : msg.x()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"n", msg.n()}, {"x_re", re}, {"x_im", im}};
}

bool Report::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const auto& c) { return c.second; });
}

json Report::to_json() const {
  json cfg = {
      {"n", config.n},
      {"mode", mode_name(config.mode)},
      {"seed", config.seed},
      {"un_path", to_string(config.un_path)},
      {"channel_source", config.channel ? "input" : "random"},
      {"message_source", config.message ? "input" : "random"},
      {"channel", probtele::to_json(channel)},
      {"message", probtele::to_json(message)},
  };
  if (config.mode == Mode::Sample) cfg["shots"] = config.shots;
  if (!config.channel) cfg["channel_seed"] = config.channel_seed.value_or(config.seed);
  if (!config.message) cfg["message_seed"] = config.message_seed.value_or(config.seed);

  json out = {
      {"config", cfg},
      {"success_probability_theoretical", success_probability_theoretical},
      {"success_probability_observed", success_probability_observed},
      {"mean_success_fidelity", mean_success_fidelity},
  };
  if (config.mode == Mode::Exact) {
    json rows = json::array();
    for (const OutcomeRecord& r : branches) {
      json row = {{"m", r.outcome.m_string()},
                  {"n", r.outcome.n_string()},
                  {"ancilla", r.outcome.ancilla.value_or(-1)},
                  {"probability", r.probability},
                  {"fidelity", r.fidelity}};
      if (config.include_states) row["bob_state"] = state_json(r.bob_state);
      rows.push_back(std::move(row));
    }
    out["branches"] = std::move(rows);
  }
  if (tally) {
    out["shots"] = {{"total", tally->shots},
                    {"successes", tally->successes},
                    {"rate", tally->rate},
                    {"standard_error", tally->standard_error},
                    {"mean_success_fidelity", tally->mean_success_fidelity},
                    {"min_success_fidelity", tally->min_success_fidelity}};
  }
  json cj = json::object();
  for (const auto& [name, ok] : checks) cj[name] = ok;
  out["checks"] = std::move(cj);
  out["passed"] = all_checks_passed();
  if (config.include_timing) out["wall_time_seconds"] = wall_time_seconds;
  return out;
}

void Report::write_branch_csv(std::ostream& os) const {
  os << "m,n,ancilla,probability,fidelity\n";
  char buf[64];
  for (const OutcomeRecord& r : branches) {
    os << r.outcome.m_string() << ',' << r.outcome.n_string() << ','
       << r.outcome.ancilla.value_or(-1) << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.probability, r.fidelity);
    os << buf << '\n';
  }
}

Report run_exact(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.mode != Mode::Exact) throw ConfigError("mode", "run_exact needs mode=exact");
  const auto start = std::chrono::steady_clock::now();
  Report rep{.config = cfg, .channel = resolve_channel(cfg), .message = resolve_message(cfg)};
  rep.branches = enumerate_branches(rep.message, rep.channel, cfg.un_path);
  rep.success_probability_theoretical = success_probability(rep.channel);

  double total = 0.0, success = 0.0, weighted_fid = 0.0, worst_fid = 1.0;
  for (const OutcomeRecord& r : rep.branches) {
    total += r.probability;
    if (r.outcome.ancilla != 0) continue;
    success += r.probability;
    weighted_fid += r.probability * r.fidelity;
    worst_fid = std::min(worst_fid, r.fidelity);
  }
  rep.success_probability_observed = success;
  rep.mean_success_fidelity = success > 0.0 ? weighted_fid / success : 0.0;
  rep.checks = {
      {"probability_sum", std::abs(total - 1.0) <= kExactTolerance},
      {"success_law", std::abs(success - rep.success_probability_theoretical) <=
                          kExactTolerance},
      {"success_fidelity", worst_fid >= 1.0 - kExactTolerance},
  };
  rep.wall_time_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return rep;
}

Report run_sampled(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.mode != Mode::Sample) throw ConfigError("mode", "run_sampled needs mode=sample");
  const auto start = std::chrono::steady_clock::now();
  Report rep{.config = cfg, .channel = resolve_channel(cfg), .message = resolve_message(cfg)};
  const Receiver receiver(rep.channel, cfg.un_path);

  struct Shot {
    bool success = false;
    double fidelity = 0.0;
  };
  std::vector<Shot> shots(cfg.shots);
  unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, 64);
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, (cfg.shots + 1023) / 1024));
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const OutcomeRecord r = sample_shot(rep.message, receiver, cfg.seed, i);
      shots[i] = {r.outcome.ancilla == 0, r.fidelity};
    }
  };
  if (workers <= 1) {
    run_range(0, cfg.shots);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (cfg.shots + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t b = std::min<std::uint64_t>(cfg.shots, w * chunk);
      const std::uint64_t e = std::min<std::uint64_t>(cfg.shots, b + chunk);
      pool.emplace_back(run_range, b, e);
    }
  }

  ShotTally t;
  t.shots = cfg.shots;
  double fid_sum = 0.0;
  for (const Shot& s : shots) {
    if (!s.success) continue;
    ++t.successes;
    fid_sum += s.fidelity;
    t.min_success_fidelity = std::min(t.min_success_fidelity, s.fidelity);
  }
  const double p = success_probability(rep.channel);
  t.rate = static_cast<double>(t.successes) / static_cast<double>(t.shots);
  t.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(t.shots));
  t.mean_success_fidelity = t.successes ? fid_sum / static_cast<double>(t.successes) : 0.0;
  if (t.successes == 0) t.min_success_fidelity = 0.0;

  rep.success_probability_theoretical = p;
  rep.success_probability_observed = t.rate;
  rep.mean_success_fidelity = t.mean_success_fidelity;
  rep.checks = {
      {"rate_within_3_sigma", std::abs(t.rate - p) <= 3.0 * t.standard_error},
      {"success_fidelity",
       t.successes == 0 || t.min_success_fidelity >= 1.0 - kExactTolerance},
  };
  rep.tally = t;
  rep.wall_time_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return rep;
}

Report run(const ExperimentConfig& cfg) {
  return cfg.mode == Mode::Exact ? run_exact(cfg) : run_sampled(cfg);
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

json VerifyReport::to_json() const {
  json arr = json::array();
  for (const CheckResult& c : checks) {
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"worst_residual", c.worst_residual},
                   {"tolerance", c.tolerance},
                   {"detail", c.detail}});
  }
  return {{"max_n", max_n},   {"trials", trials},     {"seed", seed},
          {"checks", arr},    {"passed", all_passed()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace probtele
