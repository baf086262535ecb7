#include "hqr_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace hqr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError(what + ": expected a finite number, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

void require(bool ok, const std::string& flag, const std::string& what) {
  if (!ok) throw UsageError(flag + ": " + what);
}

void check_dimension(const RunSpec& s) { require(s.d >= 2 && s.d <= 16, "--d", "must lie in 2..16"); }
void check_segment(const RunSpec& s, bool strictly_positive) {
  require(strictly_positive ? s.segment_km > 0.0 : s.segment_km >= 0.0, "--L0",
          strictly_positive ? "must be > 0" : "must be >= 0");
}
void check_alpha(const RunSpec& s, bool strictly_positive) {
  require(strictly_positive ? s.alpha > 0.0 : s.alpha >= 0.0, "--alpha",
          strictly_positive ? "must be > 0" : "must be >= 0");
  require(s.alpha <= 30.0, "--alpha", "must be <= 30");
}

void check_physics(const RunSpec& s) {
  require(s.defaults.l_att_km > 0.0, "--L-att", "must be > 0");
  require(s.defaults.fiber_speed_km_s > 0.0, "--fiber-speed", "must be > 0");
  require(s.defaults.positivity_tol >= 0.0, "positivity_tol", "must be >= 0");
  require(s.defaults.quadrature_tol > 0.0, "quadrature_tol", "must be > 0");
}

void check_repeater(const RunSpec& s) {
  check_dimension(s);
  check_segment(s, true);
  check_alpha(s, true);
  require(s.rounds >= 0 && s.rounds <= 10, "--rounds", "must lie in 0..10");
  require(s.delta_frac > 0.0 && s.delta_frac <= 1.0, "--delta-frac", "must lie in (0, 1]");
  if (s.scheme == Scheme::homodyne) require(s.d >= 2 && s.d <= 4, "--d", "homodyne scheme requires d in {2, 3, 4}");
  if (s.span_km) {
    const double ratio = *s.span_km / s.segment_km;
    const int n = ratio >= 1.0 ? static_cast<int>(std::lround(std::log2(ratio))) : -1;
    require(n >= 0 && n <= 30 && std::abs(ratio - std::ldexp(1.0, n)) <= 1e-9 * ratio, "--span",
            "must equal L0 times a power of two");
  }
}

void validate(RunSpec& s) {
  check_physics(s);
  switch (s.command) {
    case Command::constants:
      check_dimension(s);
      check_alpha(s, false);
      break;
    case Command::entangle:
      check_dimension(s);
      check_segment(s, false);
      check_alpha(s, false);
      break;
    case Command::negativity_scan:
      check_dimension(s);
      check_segment(s, false);
      require(s.alpha_range.lo >= 0.0 && s.alpha_range.hi >= s.alpha_range.lo && s.alpha_range.hi <= 30.0,
              "--alpha-range", "needs 0 <= lo <= hi <= 30");
      require(s.alpha_range.points >= 1 && s.alpha_range.points <= 100000, "--alpha-range",
              "point count must lie in 1..100000");
      break;
    case Command::homodyne:
      require(s.d >= 2 && s.d <= 4, "--d", "homodyne windows exist only for d in {2, 3, 4}");
      check_segment(s, false);
      check_alpha(s, true);
      require(s.delta_frac > 0.0 && s.delta_frac <= 1.0, "--delta-frac", "must lie in (0, 1]");
      break;
    case Command::usd:
      check_dimension(s);
      check_segment(s, false);
      check_alpha(s, false);
      break;
    case Command::purify:
      require(s.rounds >= 0 && s.rounds <= 10, "--rounds", "must lie in 0..10");
      if (!s.mixture.empty()) {
        require(s.mixture.size() >= 2 && s.mixture.size() <= 16, "--mixture", "needs 2..16 weights");
        double sum = 0.0;
        for (double w : s.mixture) {
          require(w >= 0.0, "--mixture", "weights must be >= 0");
          sum += w;
        }
        require(std::abs(sum - 1.0) <= 1e-10, "--mixture", "weights must sum to 1");
        s.d = static_cast<int>(s.mixture.size());
      } else {
        check_repeater(s);
      }
      break;
    case Command::rate:
      check_repeater(s);
      break;
    case Command::mc:
      require(s.nesting >= 0 && s.nesting <= 20, "--n", "must lie in 0..20");
      require(s.probability > 0.0 && s.probability <= 1.0, "--p", "must lie in (0, 1]");
      require(s.trials >= 1 && s.trials <= 1000000000ULL, "--trials", "must lie in 1..1e9");
      require(s.shards >= 1 && s.shards <= 256, "--shards", "must lie in 1..256");
      for (double p : s.purification_success) require(p > 0.0 && p <= 1.0, "--purify-success", "entries must lie in (0, 1]");
      break;
    case Command::table:
      break;
  }
}

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::constants, "constants", "norm constants of the orthonormal ring basis"},
    {Command::entangle, "entangle", "matter-light loss mixture: weights and negativity"},
    {Command::negativity_scan, "negativity-scan", "negativity of the matter-light mixture over an alpha grid"},
    {Command::homodyne, "homodyne", "windowed homodyne success probabilities and fidelities"},
    {Command::usd, "usd", "optimal unambiguous discrimination probability"},
    {Command::purify, "purify", "purification rounds on the initial link or on explicit weights"},
    {Command::rate, "rate", "repeater rate and fidelity per purification round"},
    {Command::mc, "mc", "Monte Carlo estimate of the expected number of attempts"},
    {Command::table, "table", "reproduce a published rate table with per-cell status"},
};

}  // namespace

Defaults load_config(const std::string& path, Defaults base) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(number);
    if (eq == std::string::npos) throw UsageError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw UsageError(where + ": missing value for '" + key + "'");
    const double v = parse_double(value, where);
    if (key == "l_att_km") {
      base.l_att_km = v;
    } else if (key == "fiber_speed_km_s") {
      base.fiber_speed_km_s = v;
    } else if (key == "positivity_tol") {
      base.positivity_tol = v;
    } else if (key == "quadrature_tol") {
      base.quadrature_tol = v;
    } else {
      throw UsageError(where + ": unknown key '" + key + "'");
    }
  }
  return base;
}

RunSpec parse(const std::vector<std::string>& args) {
  RunSpec spec;
  CLI::App app{"Qudit hybrid quantum repeater analysis", "hqr"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::string format = "csv";
  std::string out_path;
  std::string config_path;
  std::string scheme = "usd";
  std::string weights = "gram";
  std::string alpha_range;
  std::string mixture;
  std::string purify_success;
  std::string table_id = "I";
  double l_att = spec.defaults.l_att_km;
  double fiber = spec.defaults.fiber_speed_km_s;
  double span = 0.0;

  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    subs.emplace_back(sub, info.command);
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "write to PATH instead of standard output");
    sub->add_option("--config", config_path, "key = value defaults file")->check(CLI::ExistingFile);
    const Command c = info.command;
    if (c != Command::mc && c != Command::table) {
      sub->add_option("--d", spec.d, "qudit dimension");
      sub->add_option("--weights", weights, "norm-constant model: gram or published")
          ->check(CLI::IsMember({"gram", "published"}));
      sub->add_option("--L-att", l_att, "attenuation length [km]");
    }
    if (c != Command::mc && c != Command::table && c != Command::constants) {
      sub->add_option("--L0", spec.segment_km, "segment length [km]");
    }
    if (c == Command::constants || c == Command::entangle || c == Command::homodyne || c == Command::usd ||
        c == Command::purify || c == Command::rate) {
      sub->add_option("--alpha", spec.alpha, "coherent amplitude");
    }
    if (c == Command::homodyne || c == Command::purify || c == Command::rate) {
      sub->add_option("--delta-frac", spec.delta_frac, "window half-width as a fraction of its maximum");
    }
    if (c == Command::purify || c == Command::rate) {
      sub->add_option("--rounds", spec.rounds, "purification rounds");
      sub->add_option("--scheme", scheme, "usd or homodyne")->check(CLI::IsMember({"usd", "homodyne"}));
    }
    if (c == Command::rate) {
      sub->add_option("--span", span, "total distance [km], L0 times a power of two");
      sub->add_option("--fiber-speed", fiber, "light speed in fiber [km/s]");
    }
    if (c == Command::negativity_scan) {
      sub->add_option("--alpha-range", alpha_range, "lo:hi:points");
    }
    if (c == Command::purify) {
      sub->add_option("--mixture", mixture, "comma-separated phase weights; overrides the initial link");
    }
    if (c == Command::mc) {
      sub->add_option("--n", spec.nesting, "nesting level (2^n segments)")->required();
      sub->add_option("--p", spec.probability, "per-attempt success probability")->required();
      sub->add_option("--trials", spec.trials, "number of trials");
      sub->add_option("--seed", spec.seed, "64-bit seed");
      sub->add_option("--shards", spec.shards, "parallel deterministic streams");
      sub->add_option("--purify-success", purify_success, "comma-separated purification success per round");
    }
    if (c == Command::table) {
      sub->add_option("--id", table_id, "I, II, III, IV or V")
          ->check(CLI::IsMember({"I", "II", "III", "IV", "V", "1", "2", "3", "4", "5"}));
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError("", app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError("", app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    std::string usage = app.help();
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) usage = sub->help();
    }
    throw UsageError(e.what(), usage);
  }

  CLI::App* chosen = nullptr;
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) {
      chosen = sub;
      spec.command = cmd;
    }
  }
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string joined;
    for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
    spec.parameters[opt->get_name()] = joined;
  }
  auto given = [&](const char* name) { return spec.parameters.count(name) > 0; };

  auto missing = [&](const char* flag) {
    if (!given(flag)) throw UsageError(std::string(flag) + ": required for '" + chosen->get_name() + "'", chosen->help());
  };
  switch (spec.command) {
    case Command::constants:
    case Command::usd:
      missing("--alpha");
      if (spec.command == Command::usd) missing("--L0");
      break;
    case Command::entangle:
    case Command::homodyne:
      missing("--L0");
      missing("--alpha");
      break;
    case Command::negativity_scan:
      missing("--L0");
      break;
    case Command::purify:
      if (mixture.empty()) {
        missing("--L0");
        missing("--alpha");
      }
      break;
    case Command::rate:
      missing("--L0");
      missing("--alpha");
      break;
    case Command::mc:
    case Command::table:
      break;
  }

  spec.format = format == "json" ? Format::json : Format::csv;
  if (!out_path.empty()) spec.output = out_path;
  spec.scheme = scheme == "homodyne" ? Scheme::homodyne : Scheme::usd;
  spec.weights = weights == "published" ? WeightModel::published : WeightModel::gram;
  if (given("--span")) spec.span_km = span;
  spec.table = *parse_table_id(table_id);

  if (!alpha_range.empty()) {
    const auto parts = split(alpha_range, ':');
    if (parts.size() != 3) throw UsageError("--alpha-range: expected lo:hi:points, got '" + alpha_range + "'");
    spec.alpha_range.lo = parse_double(parts[0], "--alpha-range");
    spec.alpha_range.hi = parse_double(parts[1], "--alpha-range");
    const double pts = parse_double(parts[2], "--alpha-range");
    if (pts != std::floor(pts) || pts < 1 || pts > 1e6) throw UsageError("--alpha-range: point count must be a positive integer");
    spec.alpha_range.points = static_cast<int>(pts);
  }
  if (!mixture.empty()) {
    for (const auto& w : split(mixture, ',')) spec.mixture.push_back(parse_double(w, "--mixture"));
  }
  if (!purify_success.empty()) {
    for (const auto& w : split(purify_success, ',')) spec.purification_success.push_back(parse_double(w, "--purify-success"));
  }

  // Precedence: flag, then config file, then built-in default.
  if (!config_path.empty()) spec.defaults = load_config(config_path, spec.defaults);
  if (given("--L-att")) spec.defaults.l_att_km = l_att;
  if (given("--fiber-speed")) spec.defaults.fiber_speed_km_s = fiber;

  validate(spec);
  return spec;
}

}  // namespace hqr::cli
