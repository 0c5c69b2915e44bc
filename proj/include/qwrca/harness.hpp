#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qwrca/qw.hpp"
#include "qwrca/rca.hpp"
#include "qwrca/types.hpp"

namespace qwrca {

/// Configuration problems map to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class RunMode { qw, rca, classify, norms, limits, verify };
enum class OutputFormat { csv, json };

struct QubitSpec {
  std::complex<double> left;
  std::complex<double> right;
};

/// Initial condition: a walk qubit or a lattice triple. A qubit plus a
/// chirality converts to a triple for the lattice-side modes.
using InitialSpec = std::variant<QubitSpec, InitialTriple<double>>;

struct RunConfig {
  RunMode mode = RunMode::qw;
  std::optional<double> theta;
  std::optional<std::array<std::complex<double>, 4>> coin;    // (a, b, c, d)
  std::optional<std::array<std::complex<double>, 3>> coeffs;  // (a, d, delta)
  std::optional<InitialSpec> initial;
  std::optional<Chirality> chirality;
  std::int64_t steps = 100;
  std::optional<double> c;
  std::uint64_t seed = 42;
  bool quick = false;
  std::string output_path;  // empty writes to stdout (json only)
  OutputFormat format = OutputFormat::json;
};

struct SweepConfig {
  RunMode mode = RunMode::limits;  // qw, rca, norms or limits
  std::vector<double> thetas;
  std::vector<InitialSpec> initials;
  std::optional<Chirality> chirality;
  std::int64_t steps = 100;
  std::optional<double> c;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
};

RunMode parse_mode(const std::string& name);
OutputFormat parse_format(const std::string& name);

/// Builds a RunConfig from the documented JSON schema
/// (docs/config.schema.json). Throws ConfigError on malformed input.
RunConfig parse_run_config(const nlohmann::json& doc);
SweepConfig parse_sweep_config(const nlohmann::json& doc);

/// Full report document for one run; the json/csv writers both consume it.
nlohmann::json run_to_json(const RunConfig& config);
nlohmann::json sweep_to_json(const SweepConfig& config);

/// Executes the run and emits the report in the configured format.
/// Returns the process exit status: 0 on success, 1 when verification
/// fails. Configuration errors surface as ConfigError.
int run(const RunConfig& config);
int sweep(const SweepConfig& config);

/// Argument parsing plus dispatch; returns the process exit status
/// (0 success, 1 verification failure, 2 usage or config error).
int cli_main(int argc, const char* const* argv);

/// Trajectory records parsed back from a report document, used to confirm
/// emitted JSON round-trips losslessly.
struct TrajectoryRecord {
  std::int64_t n;
  std::int64_t k;
  std::string component;
  double re;
  double im;
  double sq;

  bool operator==(const TrajectoryRecord&) const = default;
};
std::vector<TrajectoryRecord> records_from_json(const nlohmann::json& report);

}  // namespace qwrca
