#include "isac/output.hpp"

#include <charconv>
#include <fstream>

#include "isac/config_io.hpp"

namespace isac::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string cellText(const json& v) {
  switch (v.type()) {
    case json::value_t::number_float:
      return format_double(v.get<double>());
    case json::value_t::number_integer:
      return std::to_string(v.get<long long>());
    case json::value_t::number_unsigned:
      return std::to_string(v.get<unsigned long long>());
    case json::value_t::boolean:
      return v.get<bool>() ? "1" : "0";
    case json::value_t::string:
      return csv_field(v.get<std::string>());
    default:
      return csv_field(v.dump());
  }
}

json state(const TargetState& s) { return {s.x, s.vx, s.y, s.vy}; }
json vec(const Vec2& v) { return {v.x, v.y}; }

void writeFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw OutputError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string Table::toCsv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(columns[i]);
  }
  out += "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cellText(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

json Table::toJson() const {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

Table trajectory_table(std::span<const SlotRecord> records) {
  Table t;
  t.columns = {"slot",  "x_true", "y_true",   "x_est", "y_est",       "x_uav",
               "y_uav", "x_eve",  "y_eve",    "range_meas", "r_bob", "r_eve",
               "secrecy_raw", "secrecy_realized", "sca_iters"};
  for (const auto& r : records) {
    t.rows.push_back({r.n, r.bob_true.x, r.bob_true.y, r.bob_est.x, r.bob_est.y, r.uav.x, r.uav.y,
                      r.eve.x, r.eve.y, r.range_meas, r.r_bob, r.r_eve, r.secrecy_raw,
                      r.secrecy_realized, r.sca_iterations});
  }
  return t;
}

Table rates_table(const MonteCarloSummary& mc) {
  Table t;
  t.columns = {"run", "slot", "r_bob", "r_eve", "secrecy_raw", "secrecy_realized",
               "sca_iters", "feedback", "degraded"};
  for (std::size_t k = 0; k < mc.runs.size(); ++k) {
    for (const auto& r : mc.runs[k].records) {
      t.rows.push_back({k, r.n, r.r_bob, r.r_eve, r.secrecy_raw, r.secrecy_realized,
                        r.sca_iterations, r.feedback, r.degraded});
    }
  }
  return t;
}

Table rmse_table(const MonteCarloSummary& mc, int feedback_period) {
  Table t;
  t.columns = {"slot", "rmse_m", "period_offset", "feedback"};
  for (std::size_t i = 0; i < mc.rmse_series.size(); ++i) {
    const int n = static_cast<int>(i) + 2;
    const int offset = (n - 1) % feedback_period;
    t.rows.push_back({n, mc.rmse_series[i], offset, offset == 0});
  }
  return t;
}

Table cdf_table(const MonteCarloSummary& mc) {
  Table t;
  t.columns = {"series", "value", "probability"};
  for (const auto& p : mc.secrecy_cdf) t.rows.push_back({"secrecy_realized", p.value, p.probability});
  for (const auto& p : mc.bob_rate_cdf) t.rows.push_back({"r_bob", p.value, p.probability});
  return t;
}

Table trace_table(const MonteCarloSummary& mc) {
  Table t;
  t.columns = {"run", "slot", "iteration", "x", "y", "surrogate_objective", "true_objective",
               "inner_iterations"};
  for (std::size_t k = 0; k < mc.runs.size(); ++k) {
    for (const auto& slot : mc.runs[k].traces) {
      for (const auto& it : slot.iterations) {
        t.rows.push_back({k, slot.n, it.r, it.q.x, it.q.y, it.surrogate_objective,
                          it.true_objective, it.inner_iterations});
      }
    }
  }
  return t;
}

std::string manifest_text(const ScenarioConfig& cfg, int runs) {
  ScenarioConfig echo = cfg;
  echo.mc_runs = runs;
  std::string out = "# isac-sim run manifest; re-run with: isac_sim run --config <this file>\n";
  out += "code_version = \"" + std::string(kCodeVersion) + "\"\n";
  out += serialize_config(echo);
  return out;
}

std::vector<std::filesystem::path> write_bundle(const std::filesystem::path& dir,
                                                const MonteCarloSummary& mc,
                                                const ScenarioConfig& cfg, EmitFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw OutputError("cannot create output directory '" + dir.string() + "'");
  }
  const std::pair<const char*, Table> tables[] = {
      {"trajectory", trajectory_table(mc.runs.front().records)},
      {"rates", rates_table(mc)},
      {"rmse", rmse_table(mc, cfg.feedback_period)},
      {"cdf", cdf_table(mc)},
      {"trace", trace_table(mc)},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, table] : tables) {
    if (format != EmitFormat::kJson) {
      written.push_back(dir / (std::string(name) + ".csv"));
      writeFile(written.back(), table.toCsv());
    }
    if (format != EmitFormat::kCsv) {
      written.push_back(dir / (std::string(name) + ".json"));
      writeFile(written.back(), table.toJson().dump(1) + "\n");
    }
  }
  written.push_back(dir / "manifest.txt");
  writeFile(written.back(), manifest_text(cfg, static_cast<int>(mc.runs.size())));
  return written;
}

json to_json(const RunSummary& s) {
  json records = json::array();
  for (const auto& r : s.records) {
    records.push_back({{"n", r.n},
                       {"bob_true", state(r.bob_true)},
                       {"bob_pred", state(r.bob_pred)},
                       {"bob_est", state(r.bob_est)},
                       {"eve", vec(r.eve)},
                       {"uav", vec(r.uav)},
                       {"range_meas", r.range_meas},
                       {"r_bob", r.r_bob},
                       {"r_eve", r.r_eve},
                       {"secrecy_raw", r.secrecy_raw},
                       {"secrecy_realized", r.secrecy_realized},
                       {"sca_iterations", r.sca_iterations},
                       {"rmse_contrib", r.rmse_contrib},
                       {"feedback", r.feedback},
                       {"degraded", r.degraded}});
  }
  json cdf = json::array();
  for (const auto& p : s.secrecy_cdf) cdf.push_back({p.value, p.probability});
  return {{"records", records},
          {"rmse_series", s.rmse_series},
          {"secrecy_cdf", cdf},
          {"mean_secrecy", s.mean_secrecy},
          {"config_echo", serialize_config(s.config_echo)},
          {"seed", s.seed},
          {"feedback_events", s.feedback_events},
          {"degraded", s.degraded}};
}

}  // namespace isac::io
