#include "hypharm/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace hypharm {

namespace {

json rationals(const auto& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

// nlohmann's flatten() collapses empty containers to null; tag them first so
// the CSV encoding can restore them.
json tag_empty(const json& v) {
  if (v.is_array()) {
    if (v.empty()) return "[]";
    json out = json::array();
    for (const auto& x : v) out.push_back(tag_empty(x));
    return out;
  }
  if (v.is_object()) {
    if (v.empty()) return "{}";
    json out = json::object();
    for (const auto& [k, x] : v.items()) out[k] = tag_empty(x);
    return out;
  }
  return v;
}

json untag_empty(const json& v) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "[]") return json::array();
    if (s == "{}") return json::object();
    return v;
  }
  if (v.is_array()) {
    json out = json::array();
    for (const auto& x : v) out.push_back(untag_empty(x));
    return out;
  }
  if (v.is_object()) {
    json out = json::object();
    for (const auto& [k, x] : v.items()) out[k] = untag_empty(x);
    return out;
  }
  return v;
}

std::string csv_cell(const json& v) {
  std::string text;
  if (v.is_string()) text = v.get<std::string>();
  else if (v.is_null()) text = "";
  else text = v.dump();
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

json csv_value(const std::string& cell) {
  if (cell == "true") return true;
  if (cell == "false") return false;
  const bool negative = !cell.empty() && cell[0] == '-';
  const std::size_t digits_from = negative ? 1 : 0;
  if (cell.size() > digits_from && cell.find_first_not_of("0123456789", digits_from) == std::string::npos) {
    if (negative) return std::stoll(cell);
    return std::stoull(cell);
  }
  return cell;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
      any = true;
    }
  }
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

void text_lines(std::ostringstream& os, const json& v, const std::string& indent) {
  for (const auto& [key, x] : v.items()) {
    if (x.is_object() && !x.empty()) {
      os << indent << key << ":\n";
      text_lines(os, x, indent + "  ");
    } else if (x.is_array() && !x.empty() && (x.front().is_object() || x.front().is_array())) {
      os << indent << key << ": " << x.size() << " item(s)\n";
      std::size_t i = 0;
      for (const auto& item : x) {
        os << indent << "  [" << i++ << "]\n";
        if (item.is_object()) text_lines(os, item, indent + "    ");
        else os << indent << "    " << item.dump() << "\n";
      }
    } else if (x.is_string()) {
      os << indent << key << ": " << x.get<std::string>() << "\n";
    } else {
      os << indent << key << ": " << x.dump() << "\n";
    }
  }
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

void to_json(json& j, const Interval& iv) { j = json{{"a", iv.a}, {"r", iv.r}}; }

void from_json(const json& j, Interval& iv) {
  iv = Interval(j.at("a").get<std::uint64_t>(), j.at("r").get<std::uint64_t>());
}

void to_json(json& j, const IntervalPair& p) { j = json{{"first", p.first}, {"second", p.second}}; }

void from_json(const json& j, IntervalPair& p) {
  p.first = j.at("first").get<Interval>();
  p.second = j.at("second").get<Interval>();
}

void to_json(json& j, const Enclosure& e) { j = json{{"lo", to_string(e.lo())}, {"hi", to_string(e.hi())}}; }

void from_json(const json& j, Enclosure& e) {
  e = Enclosure(parse_dyadic(j.at("lo").get<std::string>()), parse_dyadic(j.at("hi").get<std::string>()));
}

void to_json(json& j, const WitnessReport& w) {
  j = json{{"claim", w.claim}, {"parameters", w.parameters}, {"holds", w.holds}};
  if (w.element) j["element"] = *w.element;
  if (w.prime) j["prime"] = *w.prime;
  if (!w.values.empty()) j["values"] = w.values;
}

void from_json(const json& j, WitnessReport& w) {
  w = WitnessReport{};
  w.claim = j.at("claim").get<std::string>();
  w.parameters = j.at("parameters").get<std::map<std::string, std::int64_t>>();
  w.holds = j.at("holds").get<bool>();
  if (j.contains("element")) w.element = j["element"].get<std::uint64_t>();
  if (j.contains("prime")) w.prime = j["prime"].get<std::uint64_t>();
  if (j.contains("values")) w.values = j["values"].get<std::map<std::string, std::string>>();
}

void to_json(json& j, const RewriteChecks& c) {
  j = json{{"r1", c.r1}, {"r1_r2", c.r1_r2}, {"r1_r3", c.r1_r3}, {"r1_r5", c.r1_r5}};
}

void from_json(const json& j, RewriteChecks& c) {
  c.r1 = j.at("r1").get<bool>();
  c.r1_r2 = j.at("r1_r2").get<bool>();
  c.r1_r3 = j.at("r1_r3").get<bool>();
  c.r1_r5 = j.at("r1_r5").get<bool>();
}

void to_json(json& j, const DecompositionReport& d) {
  j = json{{"pair", d.pair},
           {"L", to_json(d.L)},
           {"R", rationals(d.R)},
           {"difference", to_json(d.difference)},
           {"identity_holds", d.identity_holds},
           {"moment_forms_hold", d.moment_forms_hold},
           {"e11", d.e11}};
  if (d.rewrites) j["rewrites"] = *d.rewrites;
}

void from_json(const json& j, DecompositionReport& d) {
  d = DecompositionReport{};
  d.pair = j.at("pair").get<IntervalPair>();
  d.L = rational_from_json(j.at("L"));
  const auto& R = j.at("R");
  if (R.size() != d.R.size()) throw std::invalid_argument("decomposition needs seven R terms");
  for (std::size_t i = 0; i < d.R.size(); ++i) d.R[i] = rational_from_json(R[i]);
  d.difference = rational_from_json(j.at("difference"));
  d.identity_holds = j.at("identity_holds").get<bool>();
  d.moment_forms_hold = j.at("moment_forms_hold").get<bool>();
  d.e11 = j.at("e11").get<bool>();
  if (j.contains("rewrites")) d.rewrites = j["rewrites"].get<RewriteChecks>();
}

void to_json(json& j, const NamedCheck& c) { j = json{{"name", c.name}, {"holds", c.holds}}; }

void from_json(const json& j, NamedCheck& c) {
  c.name = j.at("name").get<std::string>();
  c.holds = j.at("holds").get<bool>();
}

void to_json(json& j, const PositivityReport& p) {
  j = json{{"pair", p.pair}, {"failed_hypotheses", p.failed_hypotheses}, {"bounds", p.bounds}, {"holds", p.holds()}};
  if (p.decomposition) j["decomposition"] = *p.decomposition;
  if (p.fallback_distinct) j["fallback_distinct"] = *p.fallback_distinct;
}

void to_json(json& j, const SearchConfig& c) {
  j = json{{"max_n", c.max_n},
           {"exponent", c.exponent},
           {"modulus_count", c.modulus_count},
           {"seed", c.seed},
           {"modulus_bits", c.modulus_bits}};
}

void from_json(const json& j, SearchConfig& c) {
  c = SearchConfig{};
  if (j.contains("max_n")) c.max_n = j["max_n"].get<std::uint64_t>();
  if (j.contains("exponent")) c.exponent = j["exponent"].get<unsigned>();
  if (j.contains("modulus_count")) c.modulus_count = j["modulus_count"].get<unsigned>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("modulus_bits")) c.modulus_bits = j["modulus_bits"].get<unsigned>();
}

void to_json(json& j, const CollisionReport& r) {
  j = json{{"config", r.config},
           {"moduli", r.moduli},
           {"interval_count", r.interval_count},
           {"screen_collision_pairs", r.screen_collision_pairs},
           {"exact_collision_pairs", r.exact_collision_pairs}};
}

void from_json(const json& j, CollisionReport& r) {
  r = CollisionReport{};
  r.config = j.at("config").get<SearchConfig>();
  r.moduli = j.at("moduli").get<std::vector<std::uint64_t>>();
  r.interval_count = j.at("interval_count").get<std::uint64_t>();
  r.screen_collision_pairs = j.at("screen_collision_pairs").get<std::vector<IntervalPair>>();
  r.exact_collision_pairs = j.at("exact_collision_pairs").get<std::vector<IntervalPair>>();
}

void to_json(json& j, const EtaSolution& s) {
  j = json{{"interval", s.interval},
           {"eta", s.eta},
           {"eta_width", to_json(s.eta.width())},
           {"quadratic", rationals(s.quadratic)},
           {"eps_start", s.eps_start},
           {"eps_end", s.eps_end},
           {"sign_at_lo", s.sign_at_lo},
           {"sign_at_hi", s.sign_at_hi},
           {"precision_bits", s.precision_bits},
           {"status", to_string(s.status)}};
}

void to_json(json& j, const EtaBands& b) {
  j = json{{"one_minus_two_eta", b.one_minus_two_eta},
           {"band_lower", to_string(b.band_lower)},
           {"band_upper", to_string(b.band_upper)},
           {"bracket", b.bracket},
           {"bracket_exact", to_json(b.bracket_exact)},
           {"bracket_bound", to_json(b.bracket_bound)},
           {"bracket_lower", to_string(b.bracket_lower)},
           {"bracket_upper", to_string(b.bracket_upper)}};
}

void to_json(json& j, const TelescopeCheck& t) {
  j = json{{"n", t.n},
           {"precision_bits", t.precision_bits},
           {"lhs", t.lhs},
           {"rhs", to_json(t.rhs)},
           {"status", to_string(t.status)}};
}

void to_json(json& j, const BracketIdentityCheck& b) {
  j = json{{"pair", b.pair},
           {"precision_bits", b.precision_bits},
           {"lhs", b.lhs},
           {"rhs", to_json(b.rhs)},
           {"status", to_string(b.status)}};
}

void to_json(json& j, const LValue& l) {
  j = json{{"value", to_json(l.value)},
           {"alternate_form", l.alternate_form},
           {"below_bound", l.below_bound},
           {"sign_matches", l.sign_matches}};
}

void to_json(json& j, const Eq11Check& e) {
  j = json{{"e11", e.e11}, {"eq11", e.eq11}, {"eq12", e.eq12}, {"agree", e.agree()}};
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  throw std::invalid_argument("unknown format: " + std::string(name));
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_json(const RunManifest& m) {
  return json{{"subcommand", m.subcommand},
              {"parameters", m.parameters},
              {"tool_version", std::string(kToolVersion)},
              {"seed", m.seed},
              {"started_at", m.started_at},
              {"finished_at", m.finished_at},
              {"wall_time_seconds", m.wall_time_seconds},
              {"outcome", json{{"exit_code", m.exit_code}, {"summary", m.outcome}}}};
}

json flatten(const json& value) { return tag_empty(value).flatten(); }

json unflatten(const json& flat) { return untag_empty(flat.unflatten()); }

std::string render_results(const json& results, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::json:
      os << results.dump(2) << "\n";
      break;
    case Format::csv: {
      std::vector<json> rows;
      std::map<std::string, bool> columns;
      for (const auto& item : results) {
        rows.push_back(flatten(item));
        for (const auto& [key, v] : rows.back().items()) columns[key] = true;
      }
      bool first = true;
      for (const auto& [key, unused] : columns) {
        os << (first ? "" : ",") << csv_cell(key);
        first = false;
      }
      os << "\n";
      for (const auto& row : rows) {
        first = true;
        for (const auto& [key, unused] : columns) {
          os << (first ? "" : ",");
          if (row.contains(key)) os << csv_cell(row[key]);
          first = false;
        }
        os << "\n";
      }
      break;
    }
    case Format::text: {
      std::size_t i = 0;
      for (const auto& item : results) {
        os << "result " << i++ << "\n";
        if (item.is_object()) text_lines(os, item, "  ");
        else os << "  " << item.dump() << "\n";
      }
      break;
    }
  }
  return os.str();
}

std::string render_report(const RunManifest& manifest, const json& results, Format format) {
  const json m = manifest_json(manifest);
  switch (format) {
    case Format::json:
      return json{{"manifest", m}, {"results", results}}.dump(2) + "\n";
    case Format::csv:
      return "# manifest: " + m.dump() + "\n" + render_results(results, format);
    case Format::text: {
      std::ostringstream os;
      os << "manifest\n";
      text_lines(os, m, "  ");
      return os.str() + render_results(results, format);
    }
  }
  return {};
}

json results_from_csv(std::string_view csv) {
  while (csv.starts_with("#")) {
    const auto nl = csv.find('\n');
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
  }
  const auto rows = parse_csv(csv);
  json results = json::array();
  if (rows.empty()) return results;
  const auto& header = rows.front();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) throw std::invalid_argument("ragged CSV row");
    json flat = json::object();
    for (std::size_t c = 0; c < header.size(); ++c)
      if (!rows[r][c].empty()) flat[header[c]] = csv_value(rows[r][c]);
    results.push_back(unflatten(flat));
  }
  return results;
}

}  // namespace hypharm
