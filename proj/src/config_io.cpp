#include "isac/config_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "isac/channel.hpp"
#include "json.hpp"

namespace isac::io {

namespace {

using nlohmann::json;

double asNumber(const std::string& key, const json& v) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

long long asInteger(const std::string& key, const json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::fabs(d) < 9.0e15) return static_cast<long long>(d);
  }
  throw ConfigError(key, "expected an integer");
}

int asInt(const std::string& key, const json& v) {
  const long long i = asInteger(key, v);
  if (i < -2147483647LL || i > 2147483647LL) throw ConfigError(key, "integer out of range");
  return static_cast<int>(i);
}

std::vector<double> asNumbers(const std::string& key, const json& v, std::size_t n) {
  if (!v.is_array() || v.size() != n) {
    throw ConfigError(key, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& e : v) out.push_back(asNumber(key, e));
  return out;
}

Vec2 asVec2(const std::string& key, const json& v) {
  const auto a = asNumbers(key, v, 2);
  return {a[0], a[1]};
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const char* key, double ScenarioConfig::*field) {
      t[key] = [field](ScenarioConfig& c, const std::string& k, const json& v) {
        c.*field = asNumber(k, v);
      };
    };
    auto integer = [&t](const char* key, int ScenarioConfig::*field) {
      t[key] = [field](ScenarioConfig& c, const std::string& k, const json& v) {
        c.*field = asInt(k, v);
      };
    };
    auto converted = [&t](const char* key, double ScenarioConfig::*field, double (*conv)(double)) {
      t[key] = [field, conv](ScenarioConfig& c, const std::string& k, const json& v) {
        c.*field = conv(asNumber(k, v));
      };
    };
    auto identity = +[](double x) { return x; };

    integer("n_slots", &ScenarioConfig::n_slots);
    num("dt_s", &ScenarioConfig::dt_s);
    integer("feedback_period_slots", &ScenarioConfig::feedback_period);
    num("h_m", &ScenarioConfig::h_m);
    num("vmax_mps", &ScenarioConfig::vmax_mps);
    t["lx_m"] = [](ScenarioConfig& c, const std::string& k, const json& v) { c.region.lx = asNumber(k, v); };
    t["ly_m"] = [](ScenarioConfig& c, const std::string& k, const json& v) { c.region.ly = asNumber(k, v); };
    converted("rho0_db", &ScenarioConfig::rho0, &dbToLinear);
    converted("rho0_lin", &ScenarioConfig::rho0, identity);
    converted("p0_dbm", &ScenarioConfig::p0_w, &dbmToWatts);
    converted("p0_w", &ScenarioConfig::p0_w, identity);
    converted("noise_dbm", &ScenarioConfig::noise_w, &dbmToWatts);
    converted("noise_w", &ScenarioConfig::noise_w, identity);
    converted("eve_noise_dbm", &ScenarioConfig::eve_noise_w, &dbmToWatts);
    converted("eve_noise_w", &ScenarioConfig::eve_noise_w, identity);
    num("bandwidth_hz", &ScenarioConfig::bandwidth_hz);
    num("sigma_x_m", &ScenarioConfig::sigma_x_m);
    num("sigma_y_m", &ScenarioConfig::sigma_y_m);
    num("sigma_vx_mps", &ScenarioConfig::sigma_vx_mps);
    num("sigma_vy_mps", &ScenarioConfig::sigma_vy_mps);
    num("sigma_d_m", &ScenarioConfig::sigma_d_m);
    t["velocity_prior_mps"] = [](ScenarioConfig& c, const std::string& k, const json& v) {
      c.velocity_prior_mps = asVec2(k, v);
    };
    num("feedback_sigma_m", &ScenarioConfig::feedback_sigma_m);
    num("feedback_vel_sigma_mps", &ScenarioConfig::feedback_vel_sigma_mps);
    num("alpha", &ScenarioConfig::alpha);
    num("sca_eps_bps", &ScenarioConfig::sca_eps_bps);
    integer("sca_max_iters", &ScenarioConfig::sca_max_iters);
    t["sca_trace"] = [](ScenarioConfig& c, const std::string& k, const json& v) {
      if (!v.is_boolean()) throw ConfigError(k, "expected true or false");
      c.sca_trace = v.get<bool>();
    };
    t["rng_seed"] = [](ScenarioConfig& c, const std::string& k, const json& v) {
      if (!v.is_number_unsigned()) {
        throw ConfigError(k, "expected a non-negative integer");
      }
      c.rng_seed = v.get<std::uint64_t>();
    };
    integer("mc_runs", &ScenarioConfig::mc_runs);
    t["bob_init"] = [](ScenarioConfig& c, const std::string& k, const json& v) {
      const auto a = asNumbers(k, v, 4);
      c.bob_init = {a[0], a[1], a[2], a[3]};
    };
    t["eve_waypoints"] = [](ScenarioConfig& c, const std::string& k, const json& v) {
      if (!v.is_array()) throw ConfigError(k, "expected an array of [t_s, x, y] triples");
      c.eve_waypoints.clear();
      for (const auto& e : v) {
        const auto a = asNumbers(k, e, 3);
        c.eve_waypoints.push_back({a[0], {a[1], a[2]}});
      }
    };
    t["uav_init"] = [](ScenarioConfig& c, const std::string& k, const json& v) { c.uav_init = asVec2(k, v); };
    t["code_version"] = [](ScenarioConfig&, const std::string& k, const json& v) {
      if (!v.is_string()) throw ConfigError(k, "expected a string");
    };
    return t;
  }();
  return table;
}

const std::pair<const char*, const char*> kExclusive[] = {
    {"rho0_db", "rho0_lin"},
    {"p0_dbm", "p0_w"},
    {"noise_dbm", "noise_w"},
    {"eve_noise_dbm", "eve_noise_w"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Outside of string literals only.
std::string stripComment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string dump(const json& v) { return v.dump(); }

}  // namespace

LoadedConfig parse_config(std::string_view text) {
  LoadedConfig out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(stripComment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError("", where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("", where + ": missing key");

    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown key (" + where + ")");
    if (!out.keys.insert(key).second) throw ConfigError(key, "duplicate key (" + where + ")");

    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      throw ConfigError(key, "cannot parse value '" + value + "' (" + where + ")");
    }
    it->second(out.config, key, parsed);
  }

  for (const auto& [a, b] : kExclusive) {
    if (out.keys.count(a) && out.keys.count(b)) {
      throw ConfigError(b, std::string("conflicts with ") + a);
    }
  }
  if (!out.keys.count("uav_init") && !out.config.eve_waypoints.empty()) {
    const Vec2 eve0 = eve_position(1, out.config.eve_waypoints, out.config.dt_s);
    out.config.uav_init = (out.config.bob_init.position() + eve0) * 0.5;
  }
  out.config.validate();
  return out;
}

LoadedConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ScenarioConfig load_config(const std::filesystem::path& path) { return load_config_file(path).config; }

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  auto kv = [&o](const char* key, const json& v) { o << key << " = " << dump(v) << '\n'; };
  kv("n_slots", c.n_slots);
  kv("dt_s", c.dt_s);
  kv("feedback_period_slots", c.feedback_period);
  kv("h_m", c.h_m);
  kv("vmax_mps", c.vmax_mps);
  kv("lx_m", c.region.lx);
  kv("ly_m", c.region.ly);
  kv("rho0_lin", c.rho0);
  kv("p0_w", c.p0_w);
  kv("noise_w", c.noise_w);
  kv("eve_noise_w", c.eve_noise_w);
  kv("bandwidth_hz", c.bandwidth_hz);
  kv("sigma_x_m", c.sigma_x_m);
  kv("sigma_y_m", c.sigma_y_m);
  kv("sigma_vx_mps", c.sigma_vx_mps);
  kv("sigma_vy_mps", c.sigma_vy_mps);
  kv("sigma_d_m", c.sigma_d_m);
  kv("velocity_prior_mps", json::array({c.velocity_prior_mps.x, c.velocity_prior_mps.y}));
  kv("feedback_sigma_m", c.feedback_sigma_m);
  kv("feedback_vel_sigma_mps", c.feedback_vel_sigma_mps);
  kv("alpha", c.alpha);
  kv("sca_eps_bps", c.sca_eps_bps);
  kv("sca_max_iters", c.sca_max_iters);
  kv("sca_trace", c.sca_trace);
  kv("rng_seed", c.rng_seed);
  kv("mc_runs", c.mc_runs);
  kv("bob_init", json::array({c.bob_init.x, c.bob_init.vx, c.bob_init.y, c.bob_init.vy}));
  json wps = json::array();
  for (const auto& wp : c.eve_waypoints) wps.push_back({wp.t_s, wp.position.x, wp.position.y});
  kv("eve_waypoints", wps);
  kv("uav_init", json::array({c.uav_init.x, c.uav_init.y}));
  return o.str();
}

}  // namespace isac::io
