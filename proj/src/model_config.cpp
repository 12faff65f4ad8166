#include "tau2/model_config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace tau2 {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

Complex parse_complex(const json& v, const std::string& field) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  bad(field, "expected a number or [re, im] pair");
}

std::vector<Complex> parse_complex_array(const json& v, const std::string& field,
                                         std::size_t want) {
  if (!v.is_array()) bad(field, "expected an array");
  if (v.size() != want)
    bad(field, "expected " + std::to_string(want) + " entries, got " +
                   std::to_string(v.size()));
  std::vector<Complex> out;
  out.reserve(want);
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_complex(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::string mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::Explicit: return "explicit";
    case RunMode::Random: return "random";
    case RunMode::Clock: return "clock";
  }
  return "unknown";
}

ModelParams random_params(int n, int l, std::uint64_t seed) {
  Lcg64 rng(seed);
  auto draw_array = [&]() {
    std::vector<Complex> v(2 * l);
    for (Complex& z : v) {
      const double modulus = 0.5 + rng.uniform01();
      const double phase = 2.0 * kPi * rng.uniform01();
      z = std::polar(modulus, phase);
    }
    return v;
  };
  ModelParams p;
  p.N = n;
  p.L = l;
  p.a = draw_array();
  p.b = draw_array();
  p.c = draw_array();
  p.d = draw_array();
  p.validate();
  return p;
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "N", "L", "mode", "seed", "couplings", "clock", "checks", "tolerances"};
  for (const auto& item : root.items())
    if (!known.count(item.key()))
      throw ConfigError("unknown config field '" + item.key() + "'");

  RunConfig cfg;

  if (!root.contains("N") || !root["N"].is_number_integer())
    bad("N", "required integer");
  cfg.N = root["N"].get<int>();
  if (cfg.N < 2) bad("N", "must be at least 2");

  if (!root.contains("L") || !root["L"].is_number_integer())
    bad("L", "required integer");
  cfg.L = root["L"].get<int>();
  if (cfg.L < 1) bad("L", "must be at least 1");

  double dim = 1.0;
  for (int i = 0; i < cfg.L; ++i) dim *= cfg.N;
  if (dim > 4096.0)
    throw SizeError("state space N^L exceeds 4096; this laboratory is for desk-scale models");

  if (root.contains("mode")) {
    const json& m = root["mode"];
    if (!m.is_string()) bad("mode", "expected a string");
    const std::string s = m.get<std::string>();
    if (s == "explicit") cfg.mode = RunMode::Explicit;
    else if (s == "random") cfg.mode = RunMode::Random;
    else if (s == "clock") cfg.mode = RunMode::Clock;
    else bad("mode", "must be one of explicit, random, clock");
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
      bad("seed", "expected a non-negative integer");
    if (root["seed"].is_number_integer() && root["seed"].get<long long>() < 0)
      bad("seed", "expected a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }

  switch (cfg.mode) {
    case RunMode::Explicit: {
      if (root.contains("clock")) bad("clock", "not allowed in explicit mode");
      if (!root.contains("couplings") || !root["couplings"].is_object())
        bad("couplings", "required object in explicit mode");
      const json& c = root["couplings"];
      for (const auto& item : c.items())
        if (item.key() != "a" && item.key() != "b" && item.key() != "c" &&
            item.key() != "d")
          bad("couplings." + item.key(), "unknown coupling array");
      const std::size_t want = static_cast<std::size_t>(2 * cfg.L);
      for (const char* name : {"a", "b", "c", "d"})
        if (!c.contains(name))
          bad(std::string("couplings.") + name, "required array");
      cfg.params.N = cfg.N;
      cfg.params.L = cfg.L;
      cfg.params.a = parse_complex_array(c["a"], "couplings.a", want);
      cfg.params.b = parse_complex_array(c["b"], "couplings.b", want);
      cfg.params.c = parse_complex_array(c["c"], "couplings.c", want);
      cfg.params.d = parse_complex_array(c["d"], "couplings.d", want);
      break;
    }
    case RunMode::Random: {
      if (root.contains("couplings"))
        bad("couplings", "not allowed in random mode");
      if (root.contains("clock")) bad("clock", "not allowed in random mode");
      cfg.params = random_params(cfg.N, cfg.L, cfg.seed);
      break;
    }
    case RunMode::Clock: {
      if (root.contains("couplings"))
        bad("couplings", "not allowed in clock mode");
      if (!root.contains("clock") || !root["clock"].is_object())
        bad("clock", "required object in clock mode");
      const json& c = root["clock"];
      for (const auto& item : c.items())
        if (item.key() != "alpha" && item.key() != "gamma")
          bad("clock." + item.key(), "unknown clock field");
      if (!c.contains("alpha")) bad("clock.alpha", "required array");
      if (!c.contains("gamma")) bad("clock.gamma", "required array");
      cfg.clock.alpha = parse_complex_array(
          c["alpha"], "clock.alpha", static_cast<std::size_t>(cfg.L));
      cfg.clock.gamma = parse_complex_array(
          c["gamma"], "clock.gamma", static_cast<std::size_t>(cfg.L - 1));
      cfg.params = clock_limit(cfg.N, cfg.clock);
      break;
    }
  }

  if (root.contains("checks")) {
    if (!root["checks"].is_array()) bad("checks", "expected an array of names");
    for (const json& v : root["checks"]) {
      if (!v.is_string()) bad("checks", "entries must be strings");
      cfg.checks.push_back(v.get<std::string>());
    }
  }

  if (root.contains("tolerances")) {
    if (!root["tolerances"].is_object())
      bad("tolerances", "expected an object of name -> value");
    for (const auto& item : root["tolerances"].items()) {
      if (!item.value().is_number())
        bad("tolerances." + item.key(), "expected a number");
      const double v = item.value().get<double>();
      if (!(v > 0.0) || !std::isfinite(v))
        bad("tolerances." + item.key(), "must be a positive finite number");
      cfg.tolerances[item.key()] = v;
    }
  }

  try {
    cfg.params.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("resolved couplings invalid: ") + e.what());
  }
  return cfg;
}

}  // namespace tau2
