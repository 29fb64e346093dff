// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include "hypharm/cli.hpp"
#include "hypharm/lemmas.hpp"
#include "hypharm/report.hpp"
#include "hypharm/search.hpp"
#include "hypharm/verify.hpp"
#include "oracles.hpp"

using namespace hypharm;

namespace {

constexpr double kSearchWallLimitSeconds = 60.0;
constexpr std::uint64_t kSearchN = 2000;
constexpr std::uint64_t kBruteForceN = 300;
constexpr unsigned kEtaBits = 64;
constexpr std::uint64_t kPairCount = 1000;
constexpr std::uint64_t kPairMaxEnd = 500;
constexpr std::uint64_t kPairSeed = 0;
constexpr std::uint64_t kBoxA = 300, kBoxR = 30;

int failures = 0;

void line(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << detail << std::endl;
  if (!ok) ++failures;
}

struct CliRun {
  int code;
  json doc;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  json doc;
  if (!out.str().empty()) doc = json::parse(out.str());
  return {code, doc};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void criterion_1_and_2() {
  for (const unsigned exponent : {2u, 1u}) {
    const auto run = cli({"search", "--max-n", std::to_string(kSearchN), "--exponent", std::to_string(exponent),
                          "--moduli", "3", "--seed", "0"});
    const auto& r = run.doc["results"][0];
    const double wall = run.doc["manifest"]["wall_time_seconds"].get<double>();
    const std::uint64_t count = r["interval_count"].get<std::uint64_t>();
    const bool ok = run.code == 0 && count == kSearchN * (kSearchN + 1) / 2 && r["exact_collision_pairs"].empty() &&
                    (exponent == 1 || wall <= kSearchWallLimitSeconds);
    line(exponent == 2 ? "1a" : "2",
         ok,
         "search N=2000 exponent=" + std::to_string(exponent) + ": " + std::to_string(count) + " intervals, " +
             std::to_string(r["screen_collision_pairs"].size()) + " screen / " +
             std::to_string(r["exact_collision_pairs"].size()) + " exact collisions, exit " +
             std::to_string(run.code) + ", " + fmt(wall) + " s (limit " + fmt(kSearchWallLimitSeconds) + " s)");
  }

  // All-exact brute force at N = 300: group every interval by its exact sum.
  std::map<Rational, std::vector<Interval>> groups;
  for (std::uint64_t a = 1; a <= kBruteForceN; ++a) {
    Rational sum = 0;
    for (std::uint64_t r = 0; a + r <= kBruteForceN; ++r) {
      const BigInt t = static_cast<unsigned long>(a + r);
      sum += oracle::frac(BigInt(1), t * t);
      groups[sum].push_back({a, r});
    }
  }
  std::vector<IntervalPair> brute;
  for (const auto& [v, ivs] : groups)
    for (std::size_t i = 0; i < ivs.size(); ++i)
      for (std::size_t j = i + 1; j < ivs.size(); ++j) brute.push_back(IntervalPair::canonical(ivs[i], ivs[j]));
  std::sort(brute.begin(), brute.end());

  SearchConfig c;
  c.max_n = kBruteForceN;
  const CollisionReport screened = search(c);
  bool screen_pairs_confirmed = true;
  for (const auto& p : screened.screen_collision_pairs)
    screen_pairs_confirmed = screen_pairs_confirmed && (confirm_exact(p) == std::binary_search(brute.begin(), brute.end(), p));
  bool exact_covered = true;
  for (const auto& p : brute)
    exact_covered = exact_covered && std::binary_search(screened.screen_collision_pairs.begin(),
                                                        screened.screen_collision_pairs.end(), p);
  const bool ok = brute.empty() && screened.exact_collision_pairs == brute && screen_pairs_confirmed &&
                  exact_covered && groups.size() == kBruteForceN * (kBruteForceN + 1) / 2;
  line("1b", ok,
       "N=300 all-exact brute force: " + std::to_string(groups.size()) + " distinct sums, " +
           std::to_string(brute.size()) + " exact collisions; screen found " +
           std::to_string(screened.screen_collision_pairs.size()) + " groups-pairs, all resolved identically");
}

void criterion_3() {
  struct Suite {
    const char* id;
    VerifyOptions options;
    const char* label;
  };
  std::vector<Suite> suites;
  auto add = [&](const char* id, const char* lemma, const char* label, auto&& set) {
    VerifyOptions o;
    o.lemma = lemma;
    set(o);
    suites.push_back({id, o, label});
  };
  add("3a", "bertrand", "Bertrand n <= 10^6 (and remark mode 2 <= n <= 10^6)", [](VerifyOptions& o) {
    o.n_max = 1'000'000;
  });
  add("3b", "prime-window", "prime factor >= k+1 in {n..n+k-1}, k <= 50, k < n <= k+2000", [](VerifyOptions& o) {
    o.k_max = 50, o.window = 2000;
  });
  add("3c", "large-prime-window", "prime factor >= 2(k+1) in {n..n+k}, k <= 20, (k+1)^2 <= n <= (k+1)^2+1000",
      [](VerifyOptions& o) { o.k_max = 20, o.window = 1000; });
  add("3d", "lcm-bound", "lcm lower bound, coprime a, b <= 20, n <= 12", [](VerifyOptions& o) {
    o.a_max = 20, o.b_max = 20, o.n_max = 12;
  });
  add("3e", "power-sums", "power-sum closed forms r <= 2000, exponents 2, 4, 6", [](VerifyOptions& o) {
    o.r_max = 2000;
  });
  for (const auto& s : suites) {
    const VerifyOutcome v = run_verification(s.options);
    std::string detail = std::string(s.label) + ": " + std::to_string(v.checked) + " exact checks, " +
                         std::to_string(v.failures.size()) + " failures";
    if (!v.failures.empty()) detail += "; first " + v.failures.front()["parameters"].dump();
    line(s.id, v.holds(), detail);
  }
}

void criterion_4() {
  VerifyOptions o;
  o.lemma = "eta-band";
  o.a_max = 100, o.r_max = 50, o.n_max = 10'000, o.precision_bits = kEtaBits;
  const VerifyOutcome v = run_verification(o);
  const auto& s = v.summary;
  auto certified = [&](const char* k) { return s[k]["certified"].get<std::uint64_t>(); };
  auto refuted = [&](const char* k) { return s[k]["refuted"].get<std::uint64_t>(); };
  constexpr std::uint64_t grid = 100 * 51;

  line("4a", certified("eta_inside_eps") == grid,
       "eta enclosure width <= 2^-64 and inside (eps_a, eps_{a+r}) on a <= 100, r <= 50: " +
           std::to_string(certified("eta_inside_eps")) + "/" + std::to_string(grid));

  std::uint64_t telescope_fail = 0, monotone_fail = 0;
  for (const auto& f : v.failures) {
    if (f["check"] == "telescope") ++telescope_fail;
    if (f["check"] == "epsilon_increasing") ++monotone_fail;
  }
  line("4b", telescope_fail == 0 && monotone_fail == 0,
       "telescoping identity certified for n <= 10^4 (" + std::to_string(telescope_fail) +
           " failures); eps_n strictly increasing (" + std::to_string(monotone_fail) + " failures)");

  line("4c", certified("band_lower") == grid && certified("band_upper") == grid,
       "1/(4(a+r)+1) < 1-2eta < 2/(4a+1): lower " + std::to_string(certified("band_lower")) + "/" +
           std::to_string(grid) + ", upper " + std::to_string(certified("band_upper")) + "/" + std::to_string(grid));

  std::string first;
  for (const auto& f : v.failures)
    if (f["check"] == "bracket_upper") {
      first = " e.g. (a,r)=(" + f["interval"]["a"].dump() + "," + f["interval"]["r"].dump() + ") A=" +
              f["bracket_exact"].get<std::string>() + " vs bound " + f["bracket_bound"].get<std::string>();
      break;
    }
  line("4d", certified("bracket_lower") == grid && certified("bracket_upper") == grid,
       "|(4a+2r)(1-2eta) - 1 + (1-2eta)^2| < (2r+1)/(4(a+r)): lower side " +
           std::to_string(certified("bracket_lower")) + "/" + std::to_string(grid) + ", upper side " +
           std::to_string(certified("bracket_upper")) + "/" + std::to_string(grid) + " (" +
           std::to_string(refuted("bracket_upper")) + " refuted exactly)" + first);
}

void criterion_5() {
  const auto pairs = random_disjoint_pairs(kPairCount, kPairMaxEnd, kPairSeed);
  std::uint64_t identity = 0, certified = 0;
  for (const auto& p : pairs) {
    const auto d = taylor_decompose(p);
    Rational sum = 0;
    for (const auto& t : d.R) sum += t;
    const auto expect = oracle::r_terms(p.first.a, p.first.r, p.second.a, p.second.r);
    bool terms = true;
    for (std::size_t i = 0; i < 6; ++i) terms = terms && d.R[i] == expect[i];
    if (terms && sum == g_exact(p.first) - g_exact(p.second)) ++identity;
    if (check_bracket_identity(p, kEtaBits).status == Certainty::certified) ++certified;
  }
  line("5a", identity == pairs.size(),
       "R1+...+R7 = G(a1,r) - G(a2,s) exactly: " + std::to_string(identity) + "/" + std::to_string(pairs.size()) +
           " seeded pairs with a2+s <= 500");
  line("5b", certified == pairs.size(),
       "bracket identity certified at 64 bits: " + std::to_string(certified) + "/" + std::to_string(pairs.size()));
}

void criterion_6() {
  std::vector<std::array<std::uint64_t, 4>> got;
  const auto sols = e11_search(kBoxA, kBoxR);
  for (const auto& p : sols) got.push_back({p.first.a, p.first.r, p.second.a, p.second.r});
  auto expect = oracle::e11_box(kBoxA, kBoxR);
  std::sort(expect.begin(), expect.end());
  line("6a", got == expect,
       "e11 search over a1, a2 <= 300, r, s <= 30: " + std::to_string(got.size()) + " solutions, oracle " +
           std::to_string(expect.size()));

  std::uint64_t disjoint = 0, distinct = 0, qualifying = 0, chain_ok = 0;
  for (const auto& p : sols) {
    if (!p.disjoint()) continue;
    ++disjoint;
    if (g_exact(p.first) != g_exact(p.second)) ++distinct;
    const auto chain = check_positivity_chain(p);
    if (chain.failed_hypotheses.empty()) {
      ++qualifying;
      const bool positive = g_exact(p.first) > g_exact(p.second);
      if (positive && chain.holds()) ++chain_ok;
    }
  }
  line("6b", distinct == disjoint,
       "G(a1,r) != G(a2,s) on every solution with a1+r < a2: " + std::to_string(distinct) + "/" +
           std::to_string(disjoint));
  line("6c", chain_ok == qualifying,
       "positivity chain where s > r and a2 >= 4(s+1)^3 also hold: " + std::to_string(chain_ok) + "/" +
           std::to_string(qualifying) + " (no solution in the box meets both hypotheses)");
}

void criterion_7() {
  const std::vector<std::vector<std::string>> commands = {
      {"search", "--max-n", "300", "--seed", "3"},
      {"search", "--max-n", "150", "--moduli", "1", "--modulus-bits", "14"},
      {"verify", "--lemma", "bertrand", "--n-max", "20000"},
      {"verify", "--lemma", "prime-window", "--k-max", "10", "--window", "200"},
      {"verify", "--lemma", "large-prime-window", "--k-max", "5", "--window", "100"},
      {"verify", "--lemma", "lcm-bound", "--a-max", "8", "--b-max", "8", "--n-max", "6"},
      {"verify", "--lemma", "power-sums", "--r-max", "200"},
      {"verify", "--lemma", "eta-band", "--a-max", "10", "--r-max", "10", "--n-max", "300"},
      {"verify", "--lemma", "bracket-identity", "--count", "50"},
      {"verify", "--lemma", "e11-search", "--a-max", "100", "--r-max", "12"},
      {"verify", "--lemma", "decompose", "--count", "50", "--a-max", "100", "--r-max", "12"},
      {"verify", "--lemma", "positivity-chain", "--a-max", "100", "--r-max", "12", "--s-max", "50"},
      {"eta", "--a", "3", "--r", "7"},
      {"decompose", "--a1", "5", "--r", "1", "--a2", "11", "--s", "25"},
      {"reduce", "--a1", "2", "--r", "3", "--a2", "4", "--s", "5"},
  };
  std::uint64_t stable = 0;
  std::string unstable;
  for (const auto& cmd : commands) {
    std::vector<std::string> bodies;
    for (const char* threads : {"1", "4", "1", "7"}) {
      setenv("HYPHARM_THREADS", threads, 1);
      for (const char* format : {"json", "csv"}) {
        auto args = cmd;
        args.insert(args.begin(), {"--format", format});
        std::ostringstream out, err;
        run_cli(args, out, err);
        const std::string text = out.str();
        const auto body = text.find('\n', format == std::string("csv") ? 0 : text.find("\"results\""));
        bodies.push_back(format == std::string("csv") ? text.substr(body + 1) : json::parse(text)["results"].dump());
      }
    }
    unsetenv("HYPHARM_THREADS");
    bool same = true;
    for (std::size_t i = 2; i < bodies.size(); ++i) same = same && bodies[i] == bodies[i % 2];
    if (same) ++stable;
    else unstable += " " + cmd[0] + (cmd.size() > 2 ? ":" + cmd[2] : "");
  }
  line("7", stable == commands.size(),
       "byte-identical result bodies across HYPHARM_THREADS in {1, 4, 7}, json and csv: " + std::to_string(stable) +
           "/" + std::to_string(commands.size()) + " commands" + unstable);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "  (" << fmt(total)
            << " s)" << std::endl;
  return failures == 0 ? 0 : 1;
}
