#include <map>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypharm/cli.hpp"
#include "hypharm/lemmas.hpp"
#include "hypharm/report.hpp"
#include "hypharm/verify.hpp"

namespace py = pybind11;
using namespace hypharm;

namespace {

IntervalPair pair_of(std::uint64_t a1, std::uint64_t r, std::uint64_t a2, std::uint64_t s) {
  return {Interval(a1, r), Interval(a2, s)};
}

std::string verify(const std::string& lemma, const py::kwargs& kwargs) {
  VerifyOptions o;
  o.lemma = lemma;
  std::map<std::string, std::optional<std::uint64_t>*> ranges = {
      {"n_min", &o.n_min}, {"n_max", &o.n_max},   {"k_max", &o.k_max}, {"window", &o.window},
      {"a_max", &o.a_max}, {"b_max", &o.b_max},   {"r_max", &o.r_max}, {"s_max", &o.s_max},
      {"count", &o.count}, {"max_end", &o.max_end}};
  for (const auto& [key, value] : kwargs) {
    const auto name = key.cast<std::string>();
    if (name == "seed") o.seed = value.cast<std::uint64_t>();
    else if (name == "precision_bits") o.precision_bits = value.cast<unsigned>();
    else if (auto it = ranges.find(name); it != ranges.end()) *it->second = value.cast<std::uint64_t>();
    else throw py::type_error("unknown option " + name);
  }
  py::gil_scoped_release release;
  return to_json(run_verification(o)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = std::string(kToolVersion);

  m.def("g_exact", [](std::uint64_t a, std::uint64_t r, unsigned exponent) {
    return to_string(g_exact(Interval(a, r), exponent));
  }, py::arg("a"), py::arg("r"), py::arg("exponent") = 2);

  m.def("g_mod", [](std::uint64_t a, std::uint64_t r, std::uint64_t p, unsigned exponent) {
    return g_mod(Interval(a, r), p, exponent);
  }, py::arg("a"), py::arg("r"), py::arg("p"), py::arg("exponent") = 2);

  m.def("search", [](std::uint64_t max_n, unsigned exponent, unsigned moduli, std::uint64_t seed,
                     unsigned modulus_bits) {
    SearchConfig c;
    c.max_n = max_n, c.exponent = exponent, c.modulus_count = moduli, c.seed = seed, c.modulus_bits = modulus_bits;
    py::gil_scoped_release release;
    return json(search(c)).dump();
  }, py::arg("max_n"), py::arg("exponent") = 2, py::arg("moduli") = 3, py::arg("seed") = 0,
        py::arg("modulus_bits") = 62);

  m.def("verify", &verify, py::arg("lemma"));
  m.def("lemma_ids", [] { return std::vector<std::string>(lemma_ids().begin(), lemma_ids().end()); });

  m.def("solve_eta", [](std::uint64_t a, std::uint64_t r, unsigned bits) {
    const EtaSolution sol = with_precision_ladder(bits, [&](unsigned b) { return solve_eta(Interval(a, r), b); });
    return json{{"solution", sol}, {"bands", check_eta_bands(sol)}}.dump();
  }, py::arg("a"), py::arg("r"), py::arg("precision_bits") = 64);

  m.def("decompose", [](std::uint64_t a1, std::uint64_t r, std::uint64_t a2, std::uint64_t s) {
    return json(taylor_decompose(pair_of(a1, r, a2, s))).dump();
  }, py::arg("a1"), py::arg("r"), py::arg("a2"), py::arg("s"));

  m.def("reduce_overlap", [](std::uint64_t a1, std::uint64_t r, std::uint64_t a2, std::uint64_t s) {
    return json(reduce_overlap(pair_of(a1, r, a2, s))).dump();
  }, py::arg("a1"), py::arg("r"), py::arg("a2"), py::arg("s"));

  m.def("e11_search", [](std::uint64_t a_max, std::uint64_t r_max) {
    return json(e11_search(a_max, r_max)).dump();
  }, py::arg("a_max"), py::arg("r_max"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
