#pragma once

#include "hqr/rates.hpp"
#include "hqr/states.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqr::cli {

enum class Command { constants, entangle, negativity_scan, homodyne, usd, purify, rate, mc, table };
enum class Format { csv, json };

// Malformed command line or config file. Maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string usage = {})
      : std::runtime_error(message), usage_(std::move(usage)) {}
  const std::string& usage() const { return usage_; }

 private:
  std::string usage_;
};

// Values a config file may override.
struct Defaults {
  double l_att_km = kDefaultAttenuationLengthKm;
  double fiber_speed_km_s = kDefaultFiberSpeedKmPerS;
  double positivity_tol = 1e-9;
  double quadrature_tol = 1e-10;
};

struct AlphaRange {
  double lo;
  double hi;
  int points;
};

struct RunSpec {
  Command command = Command::constants;
  std::map<std::string, std::string> parameters;  // flags as given, for provenance
  std::optional<std::string> output;              // nullopt = standard output
  Format format = Format::csv;
  Defaults defaults;

  int d = 3;
  double segment_km = 5.0;
  double alpha = 1.0;
  std::optional<double> span_km;
  int rounds = 0;
  Scheme scheme = Scheme::usd;
  double delta_frac = kDefaultDeltaFrac;
  WeightModel weights = WeightModel::gram;
  AlphaRange alpha_range{0.0, 2.5, 100};
  std::vector<double> mixture;  // purify --mixture
  int nesting = 0;              // mc --n
  double probability = 1.0;     // mc --p
  std::vector<double> purification_success;  // mc --purify-success
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned shards = 1;
  TableId table = TableId::I;
};

// Line-oriented `key = value` file with `#` comments. Unknown keys and
// malformed lines raise UsageError naming the line number.
Defaults load_config(const std::string& path, Defaults base = {});

// Parses and validates argv (without the program name). Throws UsageError.
RunSpec parse(const std::vector<std::string>& args);

struct Document {
  std::string text;
};

// Runs the analysis and renders the whole document in memory. Library
// exceptions propagate.
Document render(const RunSpec& spec);

// Full pipeline with exit codes: 0 ok, 1 numerical failure, 2 bad input.
// Output is written only after the document is complete; files are
// replaced atomically.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Six significant digits, trailing zeros kept.
std::string format_number(double v);

}  // namespace hqr::cli
