#include "hypharm/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "hypharm/report.hpp"
#include "hypharm/verify.hpp"

namespace hypharm {

namespace {

struct Outcome {
  json parameters = json::object();
  json results = json::array();
  int exit_code = kExitVerified;
  std::string summary;
};

struct Globals {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  unsigned precision_bits = kDefaultPrecisionBits;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Outcome cmd_search(SearchConfig config) {
  const CollisionReport report = search(config);
  Outcome out;
  out.parameters = config;
  out.results.push_back(report);
  out.exit_code = report.exact_collision_pairs.empty() ? kExitVerified : kExitFalsified;
  out.summary = std::to_string(report.interval_count) + " intervals, " +
                std::to_string(report.screen_collision_pairs.size()) + " screen collisions, " +
                std::to_string(report.exact_collision_pairs.size()) + " exact collisions";
  return out;
}

Outcome cmd_verify(const VerifyOptions& options) {
  const VerifyOutcome v = run_verification(options);
  Outcome out;
  out.parameters = v.parameters;
  out.parameters["lemma"] = v.lemma;
  out.results.push_back(to_json(v));
  out.exit_code = v.holds() ? kExitVerified : kExitFalsified;
  out.summary = v.lemma + ": " + std::to_string(v.checked) + " checks, " + std::to_string(v.failures.size()) +
                " failures";
  return out;
}

Outcome cmd_eta(std::uint64_t a, std::uint64_t r, unsigned bits) {
  const Interval iv(a, r);
  const EtaSolution sol = with_precision_ladder(bits, [&](unsigned b) { return solve_eta(iv, b); });
  const EtaBands bands = check_eta_bands(sol);
  Outcome out;
  out.parameters = {{"a", a}, {"r", r}, {"precision_bits", bits}};
  out.results.push_back({{"solution", sol}, {"bands", bands}});
  bool refuted = sol.status == Certainty::refuted;
  bool certified = sol.status == Certainty::certified;
  for (const Certainty c : {bands.band_lower, bands.band_upper, bands.bracket_lower, bands.bracket_upper}) {
    refuted = refuted || c == Certainty::refuted;
    certified = certified && c == Certainty::certified;
  }
  out.exit_code = certified ? kExitVerified : kExitFalsified;
  out.summary = std::string("eta ") + std::string(to_string(sol.status)) +
                (refuted ? ", a band is refuted" : certified ? ", all bands certified" : ", inconclusive");
  return out;
}

Outcome cmd_decompose(const IntervalPair& pair) {
  if (!pair.disjoint())
    throw UsageError("decompose needs a1 + r < a2; for overlapping windows run `reduce` first");
  const DecompositionReport d = taylor_decompose(pair);
  Outcome out;
  out.parameters = {{"a1", pair.first.a}, {"r", pair.first.r}, {"a2", pair.second.a}, {"s", pair.second.r}};
  out.results.push_back(d);
  const bool ok = d.identity_holds && d.moment_forms_hold && (!d.rewrites || d.rewrites->all());
  out.exit_code = ok ? kExitVerified : kExitFalsified;
  out.summary = std::string("difference ") + to_string(d.difference) +
                (d.identity_holds ? ", identity holds" : ", identity fails");
  return out;
}

Outcome cmd_reduce(const IntervalPair& pair) {
  Outcome out;
  out.parameters = {{"a1", pair.first.a}, {"r", pair.first.r}, {"a2", pair.second.a}, {"s", pair.second.r}};
  IntervalPair reduced = pair;
  if (pair.overlapping()) {
    if (pair.second.last() <= pair.first.last())
      throw UsageError("second window lies inside the first; the sums cannot be equal");
    reduced = reduce_overlap(pair);
  } else if (!pair.disjoint()) {
    throw UsageError("reduce needs a1 < a2");
  }
  const Rational before = g_exact(pair.first) - g_exact(pair.second);
  const Rational after = g_exact(reduced.first) - g_exact(reduced.second);
  out.results.push_back({{"input", pair},
                         {"reduced", reduced},
                         {"changed", !(reduced == pair)},
                         {"difference", to_json(after)},
                         {"difference_preserved", before == after}});
  out.exit_code = before == after ? kExitVerified : kExitFalsified;
  out.summary = "reduced to " + to_string(reduced.first) + ", " + to_string(reduced.second);
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of partial sums of reciprocal squares", "hypharm"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Report encoding")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", g.output, "Write the report to this path");
  app.add_option("--seed", g.seed, "Seed for modulus selection and sampling");
  app.add_option("--precision-bits", g.precision_bits, "Enclosure precision")
      ->check(CLI::Range(1u, kMaxPrecisionBits));

  SearchConfig config;
  std::string config_path;
  auto* search_cmd = app.add_subcommand("search", "Collision search over all intervals in [1, N]");
  search_cmd->add_option("--config", config_path, "JSON file with SearchConfig fields; flags override it");
  auto* max_n = search_cmd->add_option("--max-n", config.max_n, "Upper bound N on a + r");
  auto* exponent = search_cmd->add_option("--exponent", config.exponent, "2 for squares, 1 for the harmonic case");
  auto* moduli = search_cmd->add_option("--moduli", config.modulus_count, "Number of screening moduli");
  auto* modulus_bits = search_cmd->add_option("--modulus-bits", config.modulus_bits, "Size of screening moduli");

  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a lemma over a range");
  verify_cmd->add_option("--lemma", vopt.lemma, "Lemma id")->required();
  verify_cmd->add_option("--n-min", vopt.n_min);
  verify_cmd->add_option("--n-max", vopt.n_max);
  verify_cmd->add_option("--k-max", vopt.k_max);
  verify_cmd->add_option("--window", vopt.window);
  verify_cmd->add_option("--a-max", vopt.a_max);
  verify_cmd->add_option("--b-max", vopt.b_max);
  verify_cmd->add_option("--r-max", vopt.r_max);
  verify_cmd->add_option("--s-max", vopt.s_max);
  verify_cmd->add_option("--count", vopt.count);
  verify_cmd->add_option("--max-end", vopt.max_end);

  std::uint64_t a = 0, r = 0;
  auto* eta_cmd = app.add_subcommand("eta", "Solve for eta on one interval");
  eta_cmd->add_option("--a", a)->required();
  eta_cmd->add_option("--r", r)->required();

  std::uint64_t a1 = 0, a2 = 0, s = 0;
  auto* decompose_cmd = app.add_subcommand("decompose", "Exact R1..R7 decomposition of a disjoint pair");
  auto* reduce_cmd = app.add_subcommand("reduce", "Remove the shared terms of an overlapping pair");
  for (auto* cmd : {decompose_cmd, reduce_cmd}) {
    cmd->add_option("--a1", a1)->required();
    cmd->add_option("--r", r)->required();
    cmd->add_option("--a2", a2)->required();
    cmd->add_option("--s", s)->required();
  }

  std::vector<const char*> argv{"hypharm"};
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.seed = g.seed;
  manifest.started_at = utc_timestamp();
  const auto start = std::chrono::steady_clock::now();
  Outcome result;
  try {
    if (*search_cmd) {
      manifest.subcommand = "search";
      SearchConfig merged;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot read config file " + config_path);
        json file;
        try {
          file = json::parse(in);
        } catch (const json::exception& e) {
          throw UsageError(std::string("bad config file: ") + e.what());
        }
        merged = file.get<SearchConfig>();
      } else if (max_n->count() == 0) {
        throw UsageError("search needs --max-n or --config");
      }
      if (max_n->count()) merged.max_n = config.max_n;
      if (exponent->count()) merged.exponent = config.exponent;
      if (moduli->count()) merged.modulus_count = config.modulus_count;
      if (modulus_bits->count()) merged.modulus_bits = config.modulus_bits;
      if (app.get_option("--seed")->count() || config_path.empty()) merged.seed = g.seed;
      manifest.seed = merged.seed;
      result = cmd_search(merged);
    } else if (*verify_cmd) {
      manifest.subcommand = "verify";
      vopt.seed = g.seed;
      vopt.precision_bits = g.precision_bits;
      result = cmd_verify(vopt);
    } else if (*eta_cmd) {
      manifest.subcommand = "eta";
      result = cmd_eta(a, r, g.precision_bits);
    } else if (*decompose_cmd) {
      manifest.subcommand = "decompose";
      result = cmd_decompose(IntervalPair{Interval(a1, r), Interval(a2, s)});
    } else {
      manifest.subcommand = "reduce";
      result = cmd_reduce(IntervalPair{Interval(a1, r), Interval(a2, s)});
    }
  } catch (const VerificationFailure& e) {
    err << "falsified: " << e.what() << "\n";
    return kExitFalsified;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  manifest.parameters = result.parameters;
  manifest.parameters["format"] = g.format;
  manifest.parameters["precision_bits"] = g.precision_bits;
  manifest.finished_at = utc_timestamp();
  manifest.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.exit_code = result.exit_code;
  manifest.outcome = result.summary;

  const std::string text = render_report(manifest, result.results, parse_format(g.format));
  if (g.output.empty()) {
    out << text;
  } else {
    std::ofstream file(g.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << g.output << "\n";
      return kExitUsage;
    }
    file << text;
    err << manifest.outcome << "\n";
  }
  return result.exit_code;
}

}  // namespace hypharm
