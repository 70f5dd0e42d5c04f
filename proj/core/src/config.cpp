// Copyright 2026 The uaslab Authors
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

#include "uaslab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uaslab/errors.hpp"
#include "uaslab/stability.hpp"

namespace uaslab {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::stability:
      return "stability";
    case ExperimentKind::lower_bound:
      return "lower-bound";
    case ExperimentKind::risk:
      return "risk";
    case ExperimentKind::multipass:
      return "multipass";
    case ExperimentKind::dp:
      return "dp";
  }
  return "unknown";
}

namespace {

const std::set<std::string> kKnownKeys = {
    "name",      "experiment", "algorithm",  "variant",     "n",
    "T",         "K",          "d",          "R",           "L",
    "eta",       "eta_list",   "loss",       "active_dim",  "nu",
    "kappa",     "pair",       "dist",       "dist_p",      "alpha",
    "beta",      "sigma",      "seed",       "trials",      "fresh_sample",
    "erm_steps", "out",        "bound_overlay"};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw config_error("config line " + std::to_string(lineno) +
                           ": expected key = value");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        throw config_error("config line " + std::to_string(lineno) + ": empty key");
      }
      if (kKnownKeys.find(key) == kKnownKeys.end()) {
        throw config_error("unknown config key: " + key);
      }
      if (values_.count(key) != 0) {
        throw config_error("duplicate config key: " + key);
      }
      if (value.empty()) {
        throw config_error("config key '" + key + "' has an empty value");
      }
      values_[key] = value;
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      throw config_error("missing required config key: " + key);
    }
    return it->second;
  }

  std::string get_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  const std::map<std::string, std::string>& all() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': expected a finite number, got '" +
                       value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw config_error("config key '" + key +
                       "': expected a nonnegative integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw config_error("config key '" + key + "': expected a boolean, got '" + value + "'");
}

Algorithm parse_algorithm(const std::string& value) {
  if (value == "gd") return Algorithm::gd;
  if (value == "rsgd") return Algorithm::rsgd;
  if (value == "persgd") return Algorithm::persgd;
  if (value == "nsgd") return Algorithm::nsgd;
  throw config_error("config key 'algorithm': expected gd|rsgd|persgd|nsgd, got '" +
                     value + "'");
}

LossFamily parse_loss(const std::string& value) {
  if (value == "hinge") return LossFamily::hinge;
  if (value == "absolute-deviation") return LossFamily::absolute_deviation;
  if (value == "adversarial-max") return LossFamily::adversarial_max;
  if (value == "linear") return LossFamily::linear;
  throw config_error(
      "config key 'loss': expected hinge|absolute-deviation|adversarial-max|linear, got '" +
      value + "'");
}

ExperimentKind parse_kind(const std::string& value) {
  if (value == "stability") return ExperimentKind::stability;
  if (value == "lower-bound") return ExperimentKind::lower_bound;
  if (value == "risk") return ExperimentKind::risk;
  if (value == "multipass") return ExperimentKind::multipass;
  if (value == "dp") return ExperimentKind::dp;
  throw config_error(
      "config key 'experiment': expected stability|lower-bound|risk|multipass|dp, got '" +
      value + "'");
}

StepSchedule parse_schedule(const KeyValues& kv, bool* tuned,
                            bool tuned_allowed) {
  *tuned = false;
  if (kv.has("eta") && kv.has("eta_list")) {
    throw config_error("config keys 'eta' and 'eta_list' are mutually exclusive");
  }
  if (kv.has("eta_list")) {
    std::vector<double> etas;
    std::istringstream in(kv.require("eta_list"));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      etas.push_back(parse_double("eta_list", tok));
    }
    if (etas.empty()) throw config_error("config key 'eta_list' is empty");
    try {
      return StepSchedule::explicit_list(std::move(etas));
    } catch (const std::exception& e) {
      throw config_error(std::string("config key 'eta_list': ") + e.what());
    }
  }
  const std::string eta = kv.require("eta");
  if (eta == "tuned") {
    if (!tuned_allowed) {
      throw config_error("config key 'eta': 'tuned' is only valid for risk and dp experiments");
    }
    *tuned = true;
    return StepSchedule::constant(0.1);  // placeholder; resolved by the driver
  }
  try {
    return StepSchedule::constant(parse_double("eta", eta));
  } catch (const std::exception& e) {
    throw config_error(std::string("config key 'eta': ") + e.what());
  }
}

bool kvHasAlphaBeta(const ExperimentConfig& cfg) {
  return cfg.raw.count("alpha") != 0 && cfg.raw.count("beta") != 0;
}

void validate_stability(ExperimentConfig& cfg) {
  if (cfg.n == 0) throw config_error("stability: n must be >= 1");
  if (cfg.T == 0) throw config_error("stability: T must be >= 1");
  if (cfg.d == 0) cfg.d = std::max<std::size_t>(cfg.loss_active_dim, 2);
  if (cfg.algorithm == Algorithm::persgd) {
    if (cfg.T % cfg.n != 0) {
      throw config_error(
          "stability: fixed-permutation SGD walks whole epochs, so T must be a multiple of n");
    }
    if (!cfg.schedule.non_increasing(cfg.T)) {
      throw config_error(
          "stability: fixed-permutation SGD requires a non-increasing step sequence");
    }
  }
  if (cfg.algorithm == Algorithm::nsgd) {
    if (cfg.T != cfg.n * cfg.n) {
      throw config_error("stability: noisy SGD runs for exactly T = n^2 iterates");
    }
    if (!cfg.schedule.is_constant()) {
      throw config_error("stability: noisy SGD uses a constant step size");
    }
    if (cfg.sigma < 0.0 && !(kvHasAlphaBeta(cfg))) {
      throw config_error(
          "stability: noisy SGD needs 'sigma', or 'alpha'/'beta' for calibration");
    }
  }
  if (cfg.loss == LossFamily::adversarial_max || cfg.loss == LossFamily::linear) {
    if (cfg.loss_active_dim == 0) {
      throw config_error("stability: this loss family needs 'active_dim'");
    }
    if (cfg.loss_active_dim > cfg.d) {
      throw config_error("stability: active_dim must be <= d");
    }
    if (cfg.loss_kappa <= 0.0) {
      throw config_error("stability: this loss family needs 'kappa' > 0");
    }
    if (cfg.loss == LossFamily::adversarial_max && cfg.loss_nu <= 0.0) {
      throw config_error("stability: adversarial-max needs 'nu' > 0");
    }
  }
  if (cfg.pair_kind != "random" && cfg.pair_kind != "canonical" &&
      cfg.pair_kind != "degenerate") {
    throw config_error("stability: 'pair' must be random, canonical or degenerate");
  }
  if (cfg.pair_kind == "canonical" && cfg.loss != LossFamily::adversarial_max) {
    throw config_error("stability: the canonical pair belongs to the adversarial-max family");
  }
}

void validate_lower_bound(ExperimentConfig& cfg) {
  if (cfg.variant != "gd" && cfg.variant != "rsgd" && cfg.variant != "persgd") {
    throw config_error("lower-bound: 'variant' must be gd, rsgd or persgd");
  }
  if (cfg.n == 0) throw config_error("lower-bound: n must be >= 1");
  if (cfg.T < 2) throw config_error("lower-bound: T must be >= 2");
  if (!cfg.schedule.is_constant()) {
    throw config_error("lower-bound: the constructions use a constant step size");
  }
  const double eta = cfg.schedule.constant_eta();
  if (!(eta > 0.0)) throw config_error("lower-bound: eta must be > 0");
  const double D = std::min(static_cast<double>(cfg.T),
                            std::floor(1.0 / (eta * eta)));
  if (cfg.d != 0 && static_cast<double>(cfg.d) < D) {
    throw config_error(
        "lower-bound: the construction requires ambient dimension d >= min{T, 1/eta^2}");
  }
  if (cfg.variant == "persgd" && cfg.T % cfg.n != 0) {
    throw config_error("lower-bound: fixed-permutation SGD requires T = n*K");
  }
  if (cfg.variant == "gd") cfg.trials = 1;  // deterministic run
}

void validate_dist(const ExperimentConfig& cfg, const char* kind) {
  if (cfg.dist != "absolute-deviation" && cfg.dist != "hinge-mixture") {
    throw config_error(std::string(kind) +
                       ": 'dist' must be absolute-deviation or hinge-mixture");
  }
  if (!(cfg.dist_p >= 0.0 && cfg.dist_p <= 1.0)) {
    throw config_error(std::string(kind) + ": 'dist_p' must lie in [0, 1]");
  }
}

void validate_risk(ExperimentConfig& cfg) {
  validate_dist(cfg, "risk");
  if (cfg.n == 0) throw config_error("risk: n must be >= 1");
  if (cfg.T == 0) cfg.T = cfg.n * cfg.n;
  if (cfg.d == 0) cfg.d = 5;
  if (cfg.algorithm == Algorithm::nsgd) {
    throw config_error("risk: use the dp experiment for noisy SGD");
  }
  if (cfg.algorithm == Algorithm::persgd && cfg.T % cfg.n != 0) {
    throw config_error("risk: fixed-permutation SGD requires T = n*K");
  }
}

void validate_multipass(ExperimentConfig& cfg) {
  validate_dist(cfg, "multipass");
  if (cfg.K == 0) throw config_error("multipass: K must be >= 1");
  if (cfg.n == 0) throw config_error("multipass: n must be >= 1");
  if (cfg.d == 0) cfg.d = 5;
  if (!cfg.schedule.is_constant()) {
    throw config_error("multipass: the generalization bound uses a constant step size");
  }
  cfg.T = cfg.K * cfg.n;
}

void validate_dp(ExperimentConfig& cfg) {
  validate_dist(cfg, "dp");
  if (cfg.n == 0) throw config_error("dp: n must be >= 1");
  if (cfg.d == 0) cfg.d = 5;
  if (!cfg.schedule.is_constant()) {
    throw config_error("dp: noisy SGD uses a constant step size");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
    throw config_error("dp: alpha must lie in (0, 1]");
  }
  if (cfg.beta == 0.0) {
    cfg.beta = 1.0 / (static_cast<double>(cfg.n) * static_cast<double>(cfg.n));
  }
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0 / static_cast<double>(cfg.n))) {
    throw config_error("dp: beta must lie in (0, 1/n)");
  }
  cfg.T = cfg.n * cfg.n;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  KeyValues kv(text);
  ExperimentConfig cfg;
  cfg.raw = kv.all();
  cfg.kind = parse_kind(kv.require("experiment"));
  cfg.name = kv.get_or("name", to_string(cfg.kind));

  if (kv.has("algorithm")) cfg.algorithm = parse_algorithm(kv.require("algorithm"));
  cfg.variant = kv.get_or("variant", "");
  if (kv.has("n")) cfg.n = static_cast<std::size_t>(parse_u64("n", kv.require("n")));
  if (kv.has("T")) cfg.T = static_cast<std::size_t>(parse_u64("T", kv.require("T")));
  if (kv.has("K")) cfg.K = static_cast<std::size_t>(parse_u64("K", kv.require("K")));
  if (kv.has("d")) cfg.d = static_cast<std::size_t>(parse_u64("d", kv.require("d")));
  if (kv.has("R")) cfg.R = parse_double("R", kv.require("R"));
  if (kv.has("L")) cfg.L = parse_double("L", kv.require("L"));
  if (!(cfg.R > 0.0)) throw config_error("config key 'R' must be > 0");
  if (cfg.L < 0.0) throw config_error("config key 'L' must be >= 0");

  const bool tuned_allowed =
      cfg.kind == ExperimentKind::risk || cfg.kind == ExperimentKind::dp;
  if (kv.has("eta") || kv.has("eta_list")) {
    cfg.schedule = parse_schedule(kv, &cfg.eta_tuned, tuned_allowed);
  } else if (cfg.kind == ExperimentKind::dp) {
    cfg.eta_tuned = true;  // dp defaults to the tuned rule
  } else {
    throw config_error("missing required config key: eta (or eta_list)");
  }

  if (kv.has("loss")) cfg.loss = parse_loss(kv.require("loss"));
  if (kv.has("active_dim")) {
    cfg.loss_active_dim =
        static_cast<std::size_t>(parse_u64("active_dim", kv.require("active_dim")));
  }
  if (kv.has("nu")) cfg.loss_nu = parse_double("nu", kv.require("nu"));
  if (kv.has("kappa")) cfg.loss_kappa = parse_double("kappa", kv.require("kappa"));
  cfg.pair_kind = kv.get_or("pair", "random");

  cfg.dist = kv.get_or("dist", "");
  if (kv.has("dist_p")) cfg.dist_p = parse_double("dist_p", kv.require("dist_p"));
  if (kv.has("alpha")) cfg.alpha = parse_double("alpha", kv.require("alpha"));
  if (kv.has("beta")) cfg.beta = parse_double("beta", kv.require("beta"));
  if (kv.has("sigma")) {
    cfg.sigma = parse_double("sigma", kv.require("sigma"));
    if (cfg.sigma < 0.0) throw config_error("config key 'sigma' must be >= 0");
  }

  if (kv.has("seed")) {
    cfg.seed = parse_u64("seed", kv.require("seed"));
    cfg.has_seed = true;
  }
  if (kv.has("trials")) {
    cfg.trials = static_cast<std::size_t>(parse_u64("trials", kv.require("trials")));
    if (cfg.trials == 0) throw config_error("config key 'trials' must be >= 1");
  }
  if (kv.has("fresh_sample")) {
    cfg.fresh_sample =
        static_cast<std::size_t>(parse_u64("fresh_sample", kv.require("fresh_sample")));
  }
  if (kv.has("erm_steps")) {
    cfg.erm_steps =
        static_cast<std::size_t>(parse_u64("erm_steps", kv.require("erm_steps")));
    if (cfg.erm_steps < 2) throw config_error("config key 'erm_steps' must be >= 2");
  }
  cfg.out = kv.get_or("out", "");
  if (kv.has("bound_overlay")) {
    cfg.bound_overlay = parse_bool("bound_overlay", kv.require("bound_overlay"));
  }

  switch (cfg.kind) {
    case ExperimentKind::stability:
      validate_stability(cfg);
      break;
    case ExperimentKind::lower_bound:
      validate_lower_bound(cfg);
      break;
    case ExperimentKind::risk:
      validate_risk(cfg);
      break;
    case ExperimentKind::multipass:
      validate_multipass(cfg);
      break;
    case ExperimentKind::dp:
      validate_dp(cfg);
      break;
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) throw io_error("failed reading config file: " + path);
  return parse_config(buffer.str());
}

}  // namespace uaslab
