#include "hqr_cli/cli.hpp"

#include "hqr/detection.hpp"
#include "hqr/logic.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <variant>

namespace hqr::cli {

namespace {

using Value = std::variant<std::monostate, double, long long, std::string>;

struct Sheet {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  std::vector<std::string> notes;  // JSON only
};

const char* command_name(Command c) {
  switch (c) {
    case Command::constants: return "constants";
    case Command::entangle: return "entangle";
    case Command::negativity_scan: return "negativity-scan";
    case Command::homodyne: return "homodyne";
    case Command::usd: return "usd";
    case Command::purify: return "purify";
    case Command::rate: return "rate";
    case Command::mc: return "mc";
    case Command::table: return "table";
  }
  return "?";
}

std::vector<std::string> weight_columns(int d) {
  std::vector<std::string> c;
  for (int j = 0; j < d; ++j) c.push_back("w" + std::to_string(j));
  return c;
}

void append(std::vector<Value>& row, const PhaseMixtureWeights& w) {
  for (double p : w.p()) row.emplace_back(p);
}

RepeaterConfig repeater_config(const RunSpec& s) {
  RepeaterConfig c;
  c.d = s.d;
  c.segment_km = s.segment_km;
  c.total_span_km = s.span_km.value_or(s.segment_km);
  c.alpha = s.alpha;
  c.scheme = s.scheme;
  c.delta_frac = s.delta_frac;
  c.purification_rounds = s.rounds;
  c.attenuation_length_km = s.defaults.l_att_km;
  c.fiber_speed_km_s = s.defaults.fiber_speed_km_s;
  c.weights = s.weights;
  c.validate();
  return c;
}

DensityTolerances density_tolerances(const RunSpec& s) {
  DensityTolerances tol;
  tol.positivity = s.defaults.positivity_tol;
  return tol;
}

Sheet constants_sheet(const RunSpec& s) {
  const auto n = norm_constants(s.d, s.alpha, s.weights);
  Sheet out{{"m", "N_m", "weight"}, {}, {}};
  const double dd = static_cast<double>(s.d) * s.d;
  for (int m = 0; m < s.d; ++m) out.rows.push_back({Value{static_cast<long long>(m)}, n.values[m], n.values[m] / dd});
  return out;
}

Sheet entangle_sheet(const RunSpec& s) {
  const ChannelParams ch(s.segment_km, s.defaults.l_att_km);
  const auto mix = matter_light_mixture(s.d, s.alpha, ch, s.weights, density_tolerances(s));
  Sheet out{{"L0_km", "alpha", "transmittance", "negativity", "min_eigenvalue"}, {}, {}};
  for (auto& c : weight_columns(s.d)) out.columns.push_back(c);
  std::vector<Value> row{s.segment_km, s.alpha, ch.transmittance(), negativity(mix.rho), mix.rho.min_eigenvalue()};
  append(row, mix.weights);
  out.rows.push_back(std::move(row));
  return out;
}

Sheet negativity_sheet(const RunSpec& s) {
  const ChannelParams ch(s.segment_km, s.defaults.l_att_km);
  const auto& r = s.alpha_range;
  std::vector<double> alphas(static_cast<std::size_t>(r.points));
  for (int i = 0; i < r.points; ++i) alphas[i] = r.points == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (r.points - 1);
  Sheet out{{"alpha", "negativity"}, {}, {}};
  for (const auto& p : negativity_scan(s.d, ch, alphas, s.weights, density_tolerances(s))) {
    out.rows.push_back({p.alpha, p.negativity});
  }
  return out;
}

Sheet homodyne_sheet(const RunSpec& s) {
  const ChannelParams ch(s.segment_km, s.defaults.l_att_km);
  const auto r = homodyne_report(s.d, s.alpha, ch, s.delta_frac, s.defaults.quadrature_tol);
  Sheet out{{"window", "center", "lower", "upper", "probability", "fidelity", "offdiag_weight"}, {}, {}};
  for (std::size_t i = 0; i < r.window_probability.size(); ++i) {
    Value off;
    if (s.d == 3) {
      off = offdiag_weight(s.d, s.alpha, ch, s.delta_frac, static_cast<int>(i), s.defaults.quadrature_tol);
    }
    out.rows.push_back({Value{std::to_string(i)}, r.windows.centers[i], r.windows.bounds[i].lower,
                        r.windows.bounds[i].upper, r.window_probability[i], r.window_fidelity[i], off});
  }
  Value bound;
  if (r.offdiag_bound) bound = *r.offdiag_bound;
  out.rows.push_back({Value{std::string("total")}, Value{}, Value{}, Value{}, r.success_probability,
                      r.average_fidelity, bound});
  out.notes.push_back(std::string("quadrature: ") + (r.windows.quadrature == Quadrature::x ? "x" : "p"));
  return out;
}

Sheet usd_sheet(const RunSpec& s) {
  const ChannelParams ch(s.segment_km, s.defaults.l_att_km);
  Sheet out{{"d", "L0_km", "alpha", "transmittance", "usd_probability", "initial_fidelity"}, {}, {}};
  out.rows.push_back({Value{static_cast<long long>(s.d)}, s.segment_km, s.alpha, ch.transmittance(),
                      usd_bound(s.d, s.alpha, ch.transmittance()),
                      loss_mixture_weights(s.d, s.alpha, ch, s.weights).fidelity()});
  return out;
}

Sheet purify_sheet(const RunSpec& s) {
  PhaseMixtureWeights w = s.mixture.empty() ? initial_link(repeater_config(s)).weights : PhaseMixtureWeights(s.mixture);
  Sheet out{{"round", "fidelity", "success_probability"}, {}, {}};
  for (auto& c : weight_columns(w.d())) out.columns.push_back(c);
  std::vector<Value> row{Value{0LL}, w.fidelity(), 1.0};
  append(row, w);
  out.rows.push_back(std::move(row));
  for (int r = 1; r <= s.rounds; ++r) {
    const auto step = purify_step(w);
    w = step.weights;
    std::vector<Value> next{Value{static_cast<long long>(r)}, w.fidelity(), step.success};
    append(next, w);
    out.rows.push_back(std::move(next));
  }
  return out;
}

Sheet rate_sheet(const RunSpec& s) {
  const auto config = repeater_config(s);
  const auto result = predict(config);
  Sheet out{{"round", "span_km", "nesting", "fidelity", "purification_success", "effective_probability", "attempts",
             "rate_hz", "final_fidelity_bound"},
            {},
            {}};
  for (std::size_t r = 0; r < result.rounds.size(); ++r) {
    const auto& round = result.rounds[r];
    const auto& po = result.per_round[r];
    out.rows.push_back({Value{static_cast<long long>(round.round)}, config.total_span_km,
                        Value{static_cast<long long>(po.nesting)}, round.fidelity, round.purification_success,
                        round.effective_probability, po.attempts, po.rate_hz, po.final_fidelity_bound});
  }
  out.notes.push_back("attempt_time_s = " + format_number(config.attempt_time_s()));
  return out;
}

Sheet mc_sheet(const RunSpec& s) {
  const AttemptModel model{s.nesting, s.probability, s.purification_success};
  const auto est = monte_carlo_attempts(model, s.trials, s.seed, s.shards);
  Sheet out{{"n", "p", "trials", "seed", "shards", "mean_attempts", "standard_error", "analytic_attempts"}, {}, {}};
  // The closed form covers the unpurified model only.
  Value analytic;
  if (s.purification_success.empty()) analytic = z_attempts(s.nesting, s.probability);
  out.rows.push_back({Value{static_cast<long long>(s.nesting)}, s.probability, Value{std::to_string(s.trials)},
                      Value{std::to_string(s.seed)}, Value{static_cast<long long>(s.shards)}, est.mean,
                      est.standard_error, analytic});
  return out;
}

Sheet table_sheet(const RunSpec& s) {
  const auto t = reproduce_table(s.table);
  Sheet out{{"quantity", "rounds", "span_km", "computed", "printed", "status", "note"}, {}, t.notes};
  for (const auto& c : t.cells) {
    Value span;
    if (c.span_km) span = *c.span_km;
    out.rows.push_back({Value{c.quantity}, Value{static_cast<long long>(c.rounds)}, span, c.computed, c.printed,
                        Value{std::string(to_string(c.status))}, Value{c.note}});
  }
  return out;
}

Sheet build(const RunSpec& s) {
  switch (s.command) {
    case Command::constants: return constants_sheet(s);
    case Command::entangle: return entangle_sheet(s);
    case Command::negativity_scan: return negativity_sheet(s);
    case Command::homodyne: return homodyne_sheet(s);
    case Command::usd: return usd_sheet(s);
    case Command::purify: return purify_sheet(s);
    case Command::rate: return rate_sheet(s);
    case Command::mc: return mc_sheet(s);
    case Command::table: return table_sheet(s);
  }
  throw std::invalid_argument("unknown command");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&v)) return csv_field(*s);
  return {};
}

std::string to_csv(const Sheet& sheet) {
  std::string text;
  for (std::size_t i = 0; i < sheet.columns.size(); ++i) text += (i ? "," : "") + csv_field(sheet.columns[i]);
  text += '\n';
  for (const auto& row : sheet.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_value(row[i]);
    text += '\n';
  }
  return text;
}

nlohmann::json json_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(format_number(*d));
  }
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return nullptr;
}

std::string to_json(const RunSpec& spec, const Sheet& sheet) {
  nlohmann::json doc;
  doc["command"] = command_name(spec.command);
  doc["parameters"] = spec.parameters;
  doc["columns"] = sheet.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : sheet.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[sheet.columns[i]] = json_value(row[i]);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["notes"] = sheet.notes;
  return doc.dump(2) + "\n";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  return buf;
}

Document render(const RunSpec& spec) {
  const Sheet sheet = build(spec);
  return Document{spec.format == Format::json ? to_json(spec, sheet) : to_csv(sheet)};
}

}  // namespace hqr::cli
