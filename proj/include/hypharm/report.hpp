#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hypharm/enclosure.hpp"
#include "hypharm/lemmas.hpp"
#include "hypharm/partial_sums.hpp"
#include "hypharm/search.hpp"

namespace hypharm {

using json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "0.1.0";

// Report schema: {"manifest": {...}, "results": [...]}. Rationals are "num/den"
// strings and enclosure endpoints are "m*2^e" strings, so the encoding is lossless.

json to_json(const Rational& q);
Rational rational_from_json(const json& j);

void to_json(json& j, const Interval& iv);
void from_json(const json& j, Interval& iv);
void to_json(json& j, const IntervalPair& p);
void from_json(const json& j, IntervalPair& p);
void to_json(json& j, const Enclosure& e);
void from_json(const json& j, Enclosure& e);
void to_json(json& j, const WitnessReport& w);
void from_json(const json& j, WitnessReport& w);
void to_json(json& j, const RewriteChecks& c);
void from_json(const json& j, RewriteChecks& c);
void to_json(json& j, const DecompositionReport& d);
void from_json(const json& j, DecompositionReport& d);
void to_json(json& j, const NamedCheck& c);
void from_json(const json& j, NamedCheck& c);
void to_json(json& j, const PositivityReport& p);
void to_json(json& j, const SearchConfig& c);
void from_json(const json& j, SearchConfig& c);
/// Wall time is run metadata and goes in the manifest, not here.
void to_json(json& j, const CollisionReport& r);
void from_json(const json& j, CollisionReport& r);
void to_json(json& j, const EtaSolution& s);
void to_json(json& j, const EtaBands& b);
void to_json(json& j, const TelescopeCheck& t);
void to_json(json& j, const BracketIdentityCheck& b);
void to_json(json& j, const LValue& l);
void to_json(json& j, const Eq11Check& e);

enum class Format { json, csv, text };

Format parse_format(std::string_view name);

/// Run metadata wrapped around every report.
struct RunManifest {
  std::string subcommand;
  json parameters = json::object();
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  double wall_time_seconds = 0;
  int exit_code = 0;
  std::string outcome;
};

std::string utc_timestamp();

json manifest_json(const RunManifest& m);

/// Renders {manifest, results}. The results part depends only on the results.
std::string render_report(const RunManifest& manifest, const json& results, Format format);

/// Results block alone in the given encoding (the byte-stable part of a report).
std::string render_results(const json& results, Format format);

/// Dotted-path flattening used by the CSV encoding; empty containers map to "[]" / "{}".
json flatten(const json& value);
json unflatten(const json& flat);

/// Parses a CSV document produced by render_report back into its results array.
json results_from_csv(std::string_view csv);

}  // namespace hypharm
