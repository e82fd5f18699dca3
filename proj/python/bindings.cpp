#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dfl/abc.hpp"
#include "dfl/arith.hpp"
#include "dfl/block.hpp"
#include "dfl/bounds.hpp"
#include "dfl/equation.hpp"
#include "dfl/errors.hpp"
#include "dfl/prime_sums.hpp"
#include "dfl/prime_table.hpp"

namespace py = pybind11;

namespace {

py::int_ to_py(const dfl::BigInt& v) {
  return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(dfl::to_string(v).c_str(), nullptr, 10)));
}

py::dict factorization_dict(const dfl::Factorization& f) {
  py::dict d;
  for (const auto& e : f.entries()) d[py::int_(e.prime)] = e.exponent;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Double factorial equations, explicit prime bounds and abc triples";

  auto base = py::register_exception<dfl::Error>(m, "DflError", PyExc_RuntimeError);
  py::register_exception<dfl::InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<dfl::OutOfRange>(m, "OutOfRange", base.ptr());
  py::register_exception<dfl::NotASolution>(m, "NotASolution", base.ptr());
  py::register_exception<dfl::ResourceLimit>(m, "ResourceLimit", base.ptr());
  py::register_exception<dfl::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<dfl::ParityError>(m, "ParityError", base.ptr());
  py::register_exception<dfl::HypothesisViolation>(m, "HypothesisViolation", base.ptr());

  py::class_<dfl::PrimeTable>(m, "PrimeTable")
      .def(py::init<std::uint64_t>(), py::arg("limit"))
      .def_property_readonly("limit", &dfl::PrimeTable::limit)
      .def("is_prime", &dfl::PrimeTable::is_prime)
      .def("smallest_prime_factor", &dfl::PrimeTable::smallest_prime_factor)
      .def("prime_count", [](const dfl::PrimeTable& t) { return t.primes().size(); });
  m.def("sieve_primes", &dfl::sieve_primes, py::arg("limit"));

  m.def("factorize", [](std::uint64_t n, const dfl::PrimeTable& t) { return factorization_dict(dfl::factorize(n, t)); },
        py::arg("n"), py::arg("table"));
  m.def("largest_prime_factor", &dfl::largest_prime_factor, py::arg("n"), py::arg("table"));
  m.def("radical", &dfl::radical, py::arg("n"), py::arg("table"));
  m.def("double_factorial", [](std::uint64_t v) { return to_py(dfl::double_factorial(v)); }, py::arg("m"));
  m.def("theta", &dfl::theta, py::arg("nu"), py::arg("table"));

  py::class_<dfl::BlockReport>(m, "BlockReport")
      .def_readonly("x", &dfl::BlockReport::x)
      .def_readonly("k", &dfl::BlockReport::k)
      .def_readonly("lpf", &dfl::BlockReport::lpf)
      .def_readonly("val2", &dfl::BlockReport::val2)
      .def_readonly("all_composite", &dfl::BlockReport::all_composite)
      .def_readonly("term_radicals", &dfl::BlockReport::term_radicals);
  m.def("analyze_block", &dfl::analyze_block, py::arg("x"), py::arg("k"), py::arg("table"));

  py::class_<dfl::EquationInstance>(m, "EquationInstance")
      .def(py::init<std::uint64_t, std::vector<std::uint64_t>>(), py::arg("n"), py::arg("a"))
      .def_property_readonly("n", &dfl::EquationInstance::n)
      .def_property_readonly("a", &dfl::EquationInstance::a)
      .def_property_readonly("t", &dfl::EquationInstance::t)
      .def_property_readonly("r", &dfl::EquationInstance::r)
      .def("__eq__", [](const dfl::EquationInstance& a, const dfl::EquationInstance& b) { return a == b; })
      .def("__repr__", [](const dfl::EquationInstance& e) {
        std::string s = "EquationInstance(n=" + std::to_string(e.n()) + ", a=[";
        for (std::size_t i = 0; i < e.a().size(); ++i) s += (i ? ", " : "") + std::to_string(e.a()[i]);
        return s + "])";
      });

  py::enum_<dfl::Classification>(m, "Classification")
      .value("trivial_even", dfl::Classification::trivial_even)
      .value("trivial_odd", dfl::Classification::trivial_odd)
      .value("nontrivial", dfl::Classification::nontrivial);
  py::enum_<dfl::ParityMode>(m, "ParityMode").value("r0", dfl::ParityMode::r0).value("r1", dfl::ParityMode::r1);

  py::class_<dfl::SolutionRecord>(m, "SolutionRecord")
      .def_readonly("instance", &dfl::SolutionRecord::instance)
      .def_readonly("classification", &dfl::SolutionRecord::classification)
      .def_readonly("witness", &dfl::SolutionRecord::witness);

  m.def("check_identity", &dfl::check_identity, py::arg("instance"), py::arg("table"));
  m.def("classify", &dfl::classify, py::arg("instance"), py::arg("table"));
  m.def("generate_trivial_even",
        [](std::vector<std::uint64_t> evens) { return dfl::generate_trivial_even(evens); }, py::arg("evens"));
  m.def("generate_trivial_odd",
        [](std::uint64_t a1, std::vector<std::uint64_t> evens) { return dfl::generate_trivial_odd(a1, evens); },
        py::arg("a1"), py::arg("evens") = std::vector<std::uint64_t>{});
  m.def(
      "search",
      [](std::uint64_t n_max, std::size_t t_max, dfl::ParityMode mode, const dfl::PrimeTable& t, unsigned threads,
         std::uint64_t node_budget) {
        dfl::SearchOptions o{.n_max = n_max, .t_max = t_max, .mode = mode, .threads = threads, .node_budget = node_budget};
        py::gil_scoped_release release;
        return dfl::search(o, t);
      },
      py::arg("n_max"), py::arg("t_max"), py::arg("mode"), py::arg("table"), py::arg("threads") = 1,
      py::arg("node_budget") = 100'000'000);

  py::class_<dfl::BoundCheckResult>(m, "BoundCheckResult")
      .def_readonly("name", &dfl::BoundCheckResult::name)
      .def_readonly("domain_checked", &dfl::BoundCheckResult::domain_checked)
      .def_readonly("failures", &dfl::BoundCheckResult::failures)
      .def_readonly("checked", &dfl::BoundCheckResult::checked)
      .def_readonly("margin", &dfl::BoundCheckResult::margin)
      .def_readonly("notes", &dfl::BoundCheckResult::notes)
      .def_property_readonly("passed", &dfl::BoundCheckResult::passed)
      .def_property_readonly("counterexamples", [](const dfl::BoundCheckResult& r) {
        py::list out;
        for (const auto& c : r.counterexamples) out.append(py::make_tuple(c.at, c.slack));
        return out;
      });
  m.def("verify_theta_bound", &dfl::verify_theta_bound, py::arg("nu_max"), py::arg("table"));
  m.def(
      "theorem24_scan",
      [](std::uint64_t k_lo, std::uint64_t k_hi, std::uint64_t x_max, const dfl::PrimeTable& t) {
        auto s = dfl::theorem24_scan(k_lo, k_hi, x_max, t);
        return py::make_tuple(s.exceptions, s.result);
      },
      py::arg("k_lo"), py::arg("k_hi"), py::arg("x_max"), py::arg("table"));

  py::class_<dfl::AbcTriple>(m, "AbcTriple")
      .def_readonly("a", &dfl::AbcTriple::a)
      .def_readonly("b", &dfl::AbcTriple::b)
      .def_readonly("c", &dfl::AbcTriple::c)
      .def_readonly("rad", &dfl::AbcTriple::rad)
      .def_readonly("quality", &dfl::AbcTriple::quality)
      .def_readonly("explicit_ok", &dfl::AbcTriple::explicit_ok);
  m.def("make_triple", &dfl::make_triple, py::arg("a"), py::arg("b"), py::arg("table"));
  m.def(
      "proof_triple",
      [](std::uint64_t x, std::uint64_t j1, std::uint64_t j2, const dfl::PrimeTable& t) {
        auto p = dfl::proof_triple(x, j1, j2, t);
        return py::make_tuple(p.triple, p.rhs, p.holds);
      },
      py::arg("x"), py::arg("j1"), py::arg("j2"), py::arg("table"));
}
