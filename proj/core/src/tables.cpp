#include "hqr/detection.hpp"
#include "hqr/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string_view>

namespace hqr {

namespace {

// Printed reference tables: one row per quantity, one column per number of
// purification rounds. Cells are kept as text to retain their precision.
struct PrintedTable {
  TableId id;
  double segment_km;
  double alpha;  // used directly for USD; homodyne tables scan around it
  Scheme scheme;
  int max_rounds;
  std::vector<std::string_view> initial_fidelity;
  std::vector<std::string_view> effective_probability;
  std::vector<double> rate_spans;
  std::vector<std::vector<std::string_view>> rates;
  std::vector<double> fidelity_spans;
  std::vector<std::vector<std::string_view>> fidelities;
};

const std::vector<PrintedTable>& printed_tables() {
  static const std::vector<PrintedTable> tables = {
      {TableId::I, 5.0, 1.2, Scheme::usd, 3,
       {"0.75", "0.94393", "0.997854", "0.999996"},
       {"0.64", "0.302641", "0.19154", "0.1318"},
       {10, 20, 40, 80, 160, 320, 640},
       {{"10175", "4290", "2647", "900"},
        {"7936", "3185", "1942", "656"},
        {"6366", "2488", "1506", "507"},
        {"5285", "2024", "1220", "409"},
        {"4501", "1701", "1021", "342"},
        {"3914", "1464", "877", "294"},
        {"3461", "1284", "768", "257"}},
       {10, 20, 40, 80, 160, 320, 640},
       {{"0.56", "0.891", "0.9957", "0.99999265"},
        {"0.315", "0.793", "0.9914", "0.999998531"},
        {"0.09", "0.63", "0.983", "0.99997061"},
        {"0", "0.397", "0.966", "0.99994123"},
        {"0", "0.158", "0.934", "0.99988246"},
        {"0", "0.02", "0.872", "0.99976494"},
        {"0", "0", "0.761", "0.99952994"}}},
      {TableId::II, 10.0, 1.1, Scheme::usd, 3,
       {"0.652", "0.87", "0.987", "0.999"},
       {"0.414", "0.147", "0.078", "0.05"},
       {20, 40, 80, 160, 320, 640, 1280},
       {{"3020", "1010", "524", "343"},
        {"2271", "738", "380", "248"},
        {"1788", "570", "293", "191"},
        {"1463", "461", "236", "156"},
        {"1234", "385", "197", "128"},
        {"1065", "331", "169", "110"},
        {"936", "289", "147", "96"}},
       {20, 40, 80, 160, 320, 640, 1280},
       {{"0.420", "0.76", "0.974", "0.999"},
        {"0.18", "0.57", "0.95", "0.999"},
        {"0.03", "0.33", "0.9", "0,999"},
        {"0.001", "0.1", "0.814", "0.998"},
        {"0", "0.01", "0.66", "0.996"},
        {"0", "0", "0.436", "0.992"},
        {"0", "0", "0.19", "0.984"}}},
      {TableId::III, 5.0, 1.0, Scheme::homodyne, 3,
       {"0.73", "0.93", "0.997", "0.999997"},
       {"0.38", "0.15", "0.09", "0.0619534"},
       {10, 20, 40, 80, 160, 320, 640},
       {{"5496", "2056", "1219", "835"},
        {"4117", "1502", "885", "605"},
        {"3233", "1161", "682", "465"},
        {"2641", "939", "550", "375"},
        {"2225", "785", "459", "313"},
        {"1919", "674", "394", "267"},
        {"1686", "589", "344", "234"}},
       {10, 20, 40, 80, 160, 320, 640},
       {{"0.53", "0.86", "0.995", "0.999994"},
        {"0.28", "0.75", "0.990", "0.999987"},
        {"0.08", "0.56", "0.980", "0.999975"},
        {"0.01", "0.31", "0.961", "0.99995"},
        {"0.00", "0.10", "0.923", "0.9999"},
        {"0.00", "0.01", "0.852", "0.9998"},
        {"0.00", "0.00", "0.726", "0.9996"}}},
      {TableId::IV, 10.0, 1.0, Scheme::homodyne, 3,
       {"0.6", "0.81", "0.974", "0.9996"},
       {"0.39", "0.12", "0.057", "0.037"},
       {20, 40, 80, 160, 320, 640, 1280},
       {{"2828", "817", "384", "246"},
        {"2121", "595", "278", "178"},
        {"1667", "460", "214", "137"},
        {"1362", "371", "172", "110"},
        {"1148", "310", "144", "92"},
        {"990", "266", "123", "79"},
        {"870", "233", "107", "69"}},
       {20, 40, 80, 160, 320, 640, 1280},
       {{"0.360", "0.656", "0.949", "0.999"},
        {"0.130", "0.430", "0.900", "0.999"},
        {"0.017", "0.185", "0.810", "0.997"},
        {"0.000", "0.034", "0.656", "0.994"},
        {"0.000", "0.001", "0.430", "0.989"},
        {"0", "0", "0.184", "0.978"},
        {"0", "0", "0.03", "0.957"}}},
      {TableId::V, 20.0, 0.5, Scheme::usd, 2,
       {"0.861808", "0.986275", "0.999876"},
       {"0.0137597", "0.0069238", "0.0044958"},
       {40, 80, 160, 320, 640, 1280},
       {{"92", "46", "30"},
        {"33", "17", "11"},
        {"26", "13", "9"},
        {"21", "11", "7"},
        {"17", "9", "6"},
        {"15", "8", "5"}},
       {20, 40, 80, 160, 320, 640, 1280},
       {{"0.360", "0.656", "0.949"},
        {"0.130", "0.973", "0.9997"},
        {"0.017", "0.946", "0.9995"},
        {"0.000", "0.895", "0.9990"},
        {"0.09", "0.802", "0.9980"},
        {"0", "0", "0.9960"},
        {"0", "0", "0.9921"}}},
  };
  return tables;
}

double parse_printed(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', '.');
  return std::strtod(s.c_str(), nullptr);
}

int printed_decimals(std::string_view text) {
  const auto pos = text.find_first_of(".,");
  return pos == std::string_view::npos ? 0 : static_cast<int>(text.size() - pos - 1);
}

// Within one unit of the last printed digit, since the tables mix rounding
// and truncation. Rates may also differ by 1%; fidelities are resolved to
// at least 0.01 because zeros are printed without decimals.
bool agrees(double computed, std::string_view printed, std::string_view quantity) {
  const double p = parse_printed(printed);
  int decimals = printed_decimals(printed);
  if (quantity == "fidelity") decimals = std::max(decimals, 2);
  double tol = std::pow(10.0, -decimals);
  if (quantity == "rate_hz") tol = std::max(tol, 0.01 * std::abs(p));
  return std::abs(computed - p) <= tol + 1e-12;
}

struct TypoRule {
  TableId id;
  std::string_view quantity;
  int rounds;     // -1 = any
  double span;    // < 0 = any
  std::string_view note;
};

const std::vector<TypoRule>& typo_rules() {
  static const std::vector<TypoRule> rules = {
      {TableId::I, "rate_hz", 3, -1.0, "three-round rate column is half the value implied by its own row data"},
      {TableId::I, "fidelity", 3, 20.0, "inconsistent with the neighbouring three-round fidelity cells"},
      {TableId::V, "fidelity", 0, -1.0, "no-purification column duplicates values from the L0 = 10 km homodyne table"},
      {TableId::V, "fidelity", -1, 20.0, "20 km row duplicates values from the L0 = 10 km homodyne table"},
  };
  return rules;
}

const TypoRule* find_typo(TableId id, std::string_view quantity, int rounds, std::optional<double> span) {
  for (const auto& r : typo_rules()) {
    if (r.id != id || r.quantity != quantity) continue;
    if (r.rounds >= 0 && r.rounds != rounds) continue;
    if (r.span >= 0.0 && (!span || *span != r.span)) continue;
    return &r;
  }
  return nullptr;
}

// Homodyne tables quote only "alpha about 1": pick the amplitude in
// [0.9, 1.1] whose average fidelity is closest to the printed one.
double fit_homodyne_alpha(const PrintedTable& t) {
  const ChannelParams ch(t.segment_km);
  const double target = parse_printed(t.initial_fidelity.front());
  double best_alpha = t.alpha;
  double best_gap = 1e300;
  constexpr int kSteps = 200;
  for (int i = 0; i <= kSteps; ++i) {
    const double a = 0.9 + 0.2 * i / kSteps;
    const double f = homodyne_report(3, a, ch, kDefaultDeltaFrac).average_fidelity;
    if (std::abs(f - target) < best_gap) {
      best_gap = std::abs(f - target);
      best_alpha = a;
    }
  }
  return best_alpha;
}

}  // namespace

TableReproduction reproduce_table(TableId id) {
  const auto& tables = printed_tables();
  const auto it = std::find_if(tables.begin(), tables.end(), [&](const PrintedTable& t) { return t.id == id; });
  const PrintedTable& t = *it;

  RepeaterConfig base;
  base.d = 3;
  base.segment_km = t.segment_km;
  base.total_span_km = t.segment_km;
  base.scheme = t.scheme;
  base.purification_rounds = t.max_rounds;
  base.weights = WeightModel::published;
  base.alpha = t.scheme == Scheme::homodyne ? fit_homodyne_alpha(t) : t.alpha;

  TableReproduction out{id, base, {}, {}};
  if (id == TableId::II) out.notes.push_back("computed with alpha = 1.1; the caption states 1.2 but every printed cell matches 1.1");
  if (t.scheme == Scheme::homodyne) {
    out.notes.push_back("alpha fitted in [0.9, 1.1] to the printed initial fidelity");
  }
  out.notes.push_back("qutrit norm constants use the published closed forms");

  auto add = [&](std::string quantity, int rounds, std::optional<double> span, double computed,
                 std::string_view printed) {
    TableCell c{std::move(quantity), rounds, span, computed, parse_printed(printed), std::string(printed),
                CellStatus::unresolved, ""};
    if (const TypoRule* typo = find_typo(id, c.quantity, rounds, span)) {
      c.status = CellStatus::known_typo;
      c.note = std::string(typo->note);
    } else if (agrees(computed, printed, c.quantity)) {
      c.status = CellStatus::match;
    } else if (c.quantity == "rate_hz" && std::ceil(computed) == c.printed) {
      c.note = "printed value equals the computed rate rounded up";
    } else if (id == TableId::V && c.quantity == "rate_hz" && span && *span == 40.0) {
      c.note = "consistent with an attempt time of L0 / c instead of 2 L0 / c";
    }
    out.cells.push_back(std::move(c));
  };

  RepeaterConfig cfg = base;
  const RateResult one_segment = predict(cfg);
  for (int r = 0; r <= t.max_rounds; ++r) {
    add("initial_fidelity", r, std::nullopt, one_segment.rounds[r].fidelity, t.initial_fidelity[r]);
  }
  for (int r = 0; r <= t.max_rounds; ++r) {
    add("effective_probability", r, std::nullopt, one_segment.rounds[r].effective_probability,
        t.effective_probability[r]);
  }
  for (std::size_t s = 0; s < t.rate_spans.size(); ++s) {
    cfg.total_span_km = t.rate_spans[s];
    const RateResult res = predict(cfg);
    for (int r = 0; r <= t.max_rounds; ++r) add("rate_hz", r, t.rate_spans[s], res.per_round[r].rate_hz, t.rates[s][r]);
  }
  for (std::size_t s = 0; s < t.fidelity_spans.size(); ++s) {
    cfg.total_span_km = t.fidelity_spans[s];
    const RateResult res = predict(cfg);
    for (int r = 0; r <= t.max_rounds; ++r) {
      add("fidelity", r, t.fidelity_spans[s], res.per_round[r].final_fidelity_bound, t.fidelities[s][r]);
    }
  }
  return out;
}

}  // namespace hqr
