#include "hypharm/verify.hpp"

#include <numeric>
#include <stdexcept>

#include "hypharm/lemmas.hpp"
#include "hypharm/parallel.hpp"
#include "hypharm/report.hpp"

namespace hypharm {

namespace {

// check(i, out) appends failures for instance i; per-worker lists are
// concatenated in chunk order, which is range order.
template <typename Fn>
std::vector<json> scan(std::size_t n, Fn&& check) {
  const unsigned workers = worker_count();
  std::vector<std::vector<json>> per(workers);
  parallel_chunks(
      n,
      [&](unsigned w, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) check(i, per[w]);
      },
      workers);
  std::vector<json> out;
  for (auto& part : per)
    for (auto& f : part) out.push_back(std::move(f));
  return out;
}

void append(std::vector<json>& into, std::vector<json> more) {
  for (auto& f : more) into.push_back(std::move(f));
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

VerifyOutcome verify_bertrand(const VerifyOptions& o) {
  const std::uint64_t lo = o.n_min.value_or(1), hi = o.n_max.value_or(1'000'000);
  require(lo >= 1 && lo <= hi, "bertrand needs 1 <= n-min <= n-max");
  require(hi <= (std::uint64_t{1} << 32), "bertrand n-max above 2^32");
  const PrimeSieve sieve(2 * hi);
  const std::size_t count = hi - lo + 1;
  VerifyOutcome out;
  out.parameters = {{"n_min", lo}, {"n_max", hi}};
  out.failures = scan(count, [&](std::size_t i, std::vector<json>& f) {
    const std::uint64_t n = lo + i;
    if (auto w = check_bertrand(n, sieve, false); !w.holds) f.push_back(w);
    if (n >= 2)
      if (auto w = check_bertrand(n, sieve, true); !w.holds) f.push_back(w);
  });
  const std::uint64_t remark = hi >= 2 ? hi - std::max<std::uint64_t>(lo, 2) + 1 : 0;
  out.checked = count + remark;
  out.summary = {{"standard_checks", count}, {"remark_checks", remark}};
  return out;
}

VerifyOutcome verify_prime_window(const VerifyOptions& o) {
  const std::uint64_t k_max = o.k_max.value_or(50), window = o.window.value_or(2000);
  require(k_max >= 1 && window >= 1, "prime-window needs k-max, window >= 1");
  VerifyOutcome out;
  out.parameters = {{"k_max", k_max}, {"window", window}};
  out.checked = k_max * window;
  out.failures = scan(out.checked, [&](std::size_t i, std::vector<json>& f) {
    const std::uint64_t k = 1 + i / window, n = k + 1 + i % window;
    if (auto w = check_prime_window(n, k); !w.holds) f.push_back(w);
  });
  return out;
}

VerifyOutcome verify_large_prime_window(const VerifyOptions& o) {
  const std::uint64_t k_max = o.k_max.value_or(20), window = o.window.value_or(1000);
  require(k_max >= 1, "large-prime-window needs k-max >= 1");
  const std::uint64_t per_k = window + 1;
  VerifyOutcome out;
  out.parameters = {{"k_max", k_max}, {"window", window}};
  out.checked = k_max * per_k;
  out.failures = scan(out.checked, [&](std::size_t i, std::vector<json>& f) {
    const std::uint64_t k = 1 + i / per_k, n = (k + 1) * (k + 1) + i % per_k;
    if (auto w = check_large_prime_window(n, k); !w.holds) f.push_back(w);
  });
  return out;
}

VerifyOutcome verify_lcm_bound(const VerifyOptions& o) {
  const std::uint64_t a_max = o.a_max.value_or(20), b_max = o.b_max.value_or(20), n_max = o.n_max.value_or(12);
  require(a_max >= 1 && b_max >= 1, "lcm-bound needs a-max, b-max >= 1");
  std::vector<std::array<std::uint64_t, 3>> cases;
  for (std::uint64_t a = 1; a <= a_max; ++a)
    for (std::uint64_t b = 1; b <= b_max; ++b)
      if (std::gcd(a, b) == 1)
        for (std::uint64_t n = 0; n <= n_max; ++n) cases.push_back({a, b, n});
  VerifyOutcome out;
  out.parameters = {{"a_max", a_max}, {"b_max", b_max}, {"n_max", n_max}};
  out.checked = cases.size();
  out.failures = scan(cases.size(), [&](std::size_t i, std::vector<json>& f) {
    const auto [a, b, n] = cases[i];
    if (auto w = check_lcm_bound(a, b, n); !w.holds) f.push_back(w);
  });
  return out;
}

VerifyOutcome verify_power_sums(const VerifyOptions& o) {
  const std::uint64_t r_max = o.r_max.value_or(2000);
  require(r_max >= 1, "power-sums needs r-max >= 1");
  constexpr unsigned kExponents[] = {2, 4, 6};
  VerifyOutcome out;
  out.parameters = {{"r_max", r_max}, {"exponents", {2, 4, 6}}};
  out.checked = 3 * r_max;
  out.failures = scan(out.checked, [&](std::size_t i, std::vector<json>& f) {
    const std::uint64_t r = 1 + i / 3;
    if (auto w = check_power_sum(r, kExponents[i % 3]); !w.holds) f.push_back(w);
  });
  out.summary = {{"even_r", r_max / 2}, {"odd_r", (r_max + 1) / 2}};
  return out;
}

struct EtaPoint {
  std::vector<json> failures;
  std::array<Certainty, 5> status{};
};

VerifyOutcome verify_eta_band(const VerifyOptions& o) {
  const std::uint64_t a_max = o.a_max.value_or(100), r_max = o.r_max.value_or(50), n_max = o.n_max.value_or(10'000);
  const unsigned bits = o.precision_bits;
  require(a_max >= 1 && n_max >= 1, "eta-band needs a-max, n-max >= 1");
  const std::size_t per_a = r_max + 1;
  const std::size_t grid = a_max * per_a;

  const auto points = parallel_map<EtaPoint>(grid, [&](std::size_t i) {
    const Interval iv(1 + i / per_a, i % per_a);
    EtaPoint p;
    const EtaSolution sol = with_precision_ladder(bits, [&](unsigned b) { return solve_eta(iv, b); });
    const bool narrow = sol.eta.width() <= Rational(1) / pow(Rational(2), bits);
    p.status[0] = narrow ? sol.status : Certainty::inconclusive;
    const EtaBands bands = check_eta_bands(sol);
    p.status[1] = bands.band_lower;
    p.status[2] = bands.band_upper;
    p.status[3] = bands.bracket_lower;
    p.status[4] = bands.bracket_upper;
    static constexpr const char* kNames[] = {"eta_inside_eps", "band_lower", "band_upper", "bracket_lower",
                                             "bracket_upper"};
    for (std::size_t c = 0; c < p.status.size(); ++c) {
      if (p.status[c] == Certainty::certified) continue;
      json f = {{"check", kNames[c]}, {"interval", iv}, {"status", to_string(p.status[c])}};
      if (c == 0) f["eta"] = sol;
      else if (c <= 2) f["one_minus_two_eta"] = bands.one_minus_two_eta;
      else f["bracket_exact"] = to_json(bands.bracket_exact), f["bracket_bound"] = to_json(bands.bracket_bound);
      p.failures.push_back(std::move(f));
    }
    return p;
  });

  VerifyOutcome out;
  out.parameters = {{"a_max", a_max}, {"r_max", r_max}, {"n_max", n_max}, {"precision_bits", bits}};
  json counts = json::object();
  static constexpr const char* kNames[] = {"eta_inside_eps", "band_lower", "band_upper", "bracket_lower",
                                           "bracket_upper"};
  for (std::size_t c = 0; c < 5; ++c) {
    std::uint64_t certified = 0, refuted = 0, inconclusive = 0;
    for (const auto& p : points) {
      if (p.status[c] == Certainty::certified) ++certified;
      else if (p.status[c] == Certainty::refuted) ++refuted;
      else ++inconclusive;
    }
    counts[kNames[c]] = {{"certified", certified}, {"refuted", refuted}, {"inconclusive", inconclusive}};
  }
  for (const auto& p : points)
    for (const auto& f : p.failures) out.failures.push_back(f);

  append(out.failures, scan(n_max, [&](std::size_t i, std::vector<json>& f) {
           const std::uint64_t n = i + 1;
           const auto t = with_precision_ladder(bits, [&](unsigned b) { return telescope_check(n, b); });
           if (t.status != Certainty::certified) f.push_back({{"check", "telescope"}, {"n", n}, {"result", t}});
         }));
  append(out.failures, scan(n_max, [&](std::size_t i, std::vector<json>& f) {
           const std::uint64_t n = i + 1;
           const Enclosure e = epsilon(n, bits), next = epsilon(n + 1, bits);
           if (!e.below(next)) f.push_back({{"check", "epsilon_increasing"}, {"n", n}, {"eps_n", e}, {"eps_next", next}});
         }));
  counts["telescope_checks"] = n_max;
  counts["epsilon_monotonicity_checks"] = n_max;
  out.summary = counts;
  out.checked = 5 * grid + 2 * n_max;
  return out;
}

VerifyOutcome verify_bracket_identity(const VerifyOptions& o) {
  const std::uint64_t count = o.count.value_or(1000), max_end = o.max_end.value_or(500);
  const unsigned bits = o.precision_bits;
  const auto pairs = random_disjoint_pairs(count, max_end, o.seed);
  VerifyOutcome out;
  out.parameters = {{"count", count}, {"max_end", max_end}, {"seed", o.seed}, {"precision_bits", bits}};
  out.checked = pairs.size();
  out.failures = scan(pairs.size(), [&](std::size_t i, std::vector<json>& f) {
    const auto c = with_precision_ladder(bits, [&](unsigned b) { return check_bracket_identity(pairs[i], b); });
    if (c.status != Certainty::certified) f.push_back(c);
  });
  return out;
}

std::vector<IntervalPair> disjoint_only(const std::vector<IntervalPair>& sols) {
  std::vector<IntervalPair> out;
  for (const auto& p : sols)
    if (p.disjoint()) out.push_back(p);
  return out;
}

VerifyOutcome verify_e11_search(const VerifyOptions& o) {
  const std::uint64_t a_max = o.a_max.value_or(300), r_max = o.r_max.value_or(30);
  const auto sols = e11_search(a_max, r_max);
  VerifyOutcome out;
  out.parameters = {{"a_max", a_max}, {"r_max", r_max}};
  out.failures = scan(sols.size(), [&](std::size_t i, std::vector<json>& f) {
    const auto& p = sols[i];
    if (const auto e = check_eq11_equivalence(p); !e.agree() || !e.e11)
      f.push_back({{"check", "equivalence"}, {"pair", p}, {"result", e}});
    if (p.disjoint()) {
      const auto chain = check_positivity_chain(p);
      if (!chain.holds()) f.push_back({{"check", "positivity_chain"}, {"result", chain}});
    }
  });
  std::uint64_t evaluated = 0;
  const auto disjoint = disjoint_only(sols);
  for (const auto& p : disjoint)
    if (check_positivity_chain(p).failed_hypotheses.empty()) ++evaluated;
  out.checked = sols.size() + disjoint.size();
  out.summary = {{"solutions", sols}, {"disjoint_solutions", disjoint.size()}, {"chain_evaluated", evaluated}};
  return out;
}

VerifyOutcome verify_decompose(const VerifyOptions& o) {
  const std::uint64_t count = o.count.value_or(1000), max_end = o.max_end.value_or(500);
  const std::uint64_t a_max = o.a_max.value_or(300), r_max = o.r_max.value_or(30);
  const auto pairs = random_disjoint_pairs(count, max_end, o.seed);
  const auto e11 = disjoint_only(e11_search(a_max, r_max));
  VerifyOutcome out;
  out.parameters = {{"count", count}, {"max_end", max_end}, {"seed", o.seed}, {"a_max", a_max}, {"r_max", r_max}};
  out.failures = scan(pairs.size(), [&](std::size_t i, std::vector<json>& f) {
    const auto d = taylor_decompose(pairs[i]);
    if (!d.identity_holds || !d.moment_forms_hold) f.push_back(d);
  });
  append(out.failures, scan(e11.size(), [&](std::size_t i, std::vector<json>& f) {
           const auto d = taylor_decompose(e11[i]);
           if (!d.identity_holds || !d.moment_forms_hold || !d.e11 || !d.rewrites || !d.rewrites->all())
             f.push_back(d);
         }));
  out.checked = pairs.size() + e11.size();
  out.summary = {{"random_pairs", pairs.size()}, {"e11_pairs", e11.size()}};
  return out;
}

VerifyOutcome verify_positivity_chain(const VerifyOptions& o) {
  const std::uint64_t a_max = o.a_max.value_or(300), r_max = o.r_max.value_or(30);
  const std::uint64_t s_max = o.s_max.value_or(1000);
  const auto e11 = disjoint_only(e11_search(a_max, r_max));
  VerifyOutcome out;
  out.parameters = {{"a_max", a_max}, {"r_max", r_max}, {"s_max", s_max}};
  std::uint64_t evaluated = 0;
  json hypotheses = json::object();
  for (const auto& p : e11) {
    const auto chain = check_positivity_chain(p);
    if (chain.failed_hypotheses.empty()) ++evaluated;
    for (const auto& h : chain.failed_hypotheses) hypotheses[h] = hypotheses.value(h, 0) + 1;
    if (!chain.holds()) out.failures.push_back(chain);
  }

  // Sign facts on [0, s_max]^2: failures with r, s >= 1 falsify; the r = 0 or
  // s = 0 edge is reported as the boundary of each fact's domain.
  const std::size_t side = s_max + 1;
  std::vector<std::vector<json>> boundary(3);
  const auto grid = parallel_map<std::array<bool, 3>>(side * side, [&](std::size_t i) {
    return sign_facts(i / side, i % side);
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::uint64_t r = i / side, s = i % side;
    for (std::size_t k = 0; k < 3; ++k) {
      if (grid[i][k]) continue;
      const json where = {{"fact", k + 1}, {"r", r}, {"s", s}};
      if (r >= 1 && s >= 1) out.failures.push_back({{"check", "sign_fact"}, {"at", where}});
      else boundary[k].push_back(where);
    }
  }
  out.checked = e11.size() + 3 * side * side;
  out.summary = {{"e11_disjoint_pairs", e11.size()},
                 {"chain_evaluated", evaluated},
                 {"failed_hypotheses", hypotheses},
                 {"sign_fact_boundary", {{"fact_1", boundary[0].size()}, {"fact_2", boundary[1].size()},
                                         {"fact_3", boundary[2].size()}}},
                 {"sign_fact_1_boundary_points", boundary[0]}};
  return out;
}

}  // namespace

const std::vector<std::string_view>& lemma_ids() {
  static const std::vector<std::string_view> ids = {"bertrand",   "prime-window",     "lcm-bound",  "large-prime-window",
                                                    "power-sums", "eta-band",         "bracket-identity",
                                                    "e11-search", "decompose",        "positivity-chain"};
  return ids;
}

VerifyOutcome run_verification(const VerifyOptions& o) {
  VerifyOutcome out;
  const auto& id = o.lemma;
  if (id == "bertrand") out = verify_bertrand(o);
  else if (id == "prime-window") out = verify_prime_window(o);
  else if (id == "lcm-bound") out = verify_lcm_bound(o);
  else if (id == "large-prime-window") out = verify_large_prime_window(o);
  else if (id == "power-sums") out = verify_power_sums(o);
  else if (id == "eta-band") out = verify_eta_band(o);
  else if (id == "bracket-identity") out = verify_bracket_identity(o);
  else if (id == "e11-search") out = verify_e11_search(o);
  else if (id == "decompose") out = verify_decompose(o);
  else if (id == "positivity-chain") out = verify_positivity_chain(o);
  else throw std::invalid_argument("unknown lemma id: " + id);
  out.lemma = id;
  return out;
}

json to_json(const VerifyOutcome& v) {
  return json{{"lemma", v.lemma},      {"parameters", v.parameters}, {"checked", v.checked},
              {"failed", v.failures.size()}, {"holds", v.holds()},   {"failures", v.failures},
              {"summary", v.summary}};
}

}  // namespace hypharm
