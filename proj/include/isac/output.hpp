#ifndef ISAC_OUTPUT_HPP
#define ISAC_OUTPUT_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isac/runner.hpp"
#include "json.hpp"

namespace isac::io {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EmitFormat { kCsv, kJson, kBoth };

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

/// Column-major schema with JSON-typed cells, rendered to CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  std::string toCsv() const;
  nlohmann::json toJson() const;
};

/// slot, x_true, y_true, x_est, y_est, x_uav, y_uav, x_eve, y_eve,
/// range_meas, r_bob, r_eve, secrecy_raw, secrecy_realized, sca_iters
Table trajectory_table(std::span<const SlotRecord> records);
Table rates_table(const MonteCarloSummary& mc);
Table rmse_table(const MonteCarloSummary& mc, int feedback_period);
Table cdf_table(const MonteCarloSummary& mc);
Table trace_table(const MonteCarloSummary& mc);

/// Config echo plus code version; loadable as a config file.
std::string manifest_text(const ScenarioConfig& cfg, int runs);

/// Writes trajectory, rates, rmse, cdf and trace tables in the requested
/// format(s) plus manifest.txt. Returns the paths written.
std::vector<std::filesystem::path> write_bundle(const std::filesystem::path& dir,
                                                const MonteCarloSummary& mc,
                                                const ScenarioConfig& cfg, EmitFormat format);

/// Full-precision serialization of one run.
nlohmann::json to_json(const RunSummary& summary);

}  // namespace isac::io

#endif  // ISAC_OUTPUT_HPP
