#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeta/compositions.hpp"
#include "zeta/defect2.hpp"
#include "zeta/errors.hpp"
#include "zeta/lpoly.hpp"
#include "zeta/parapermanent.hpp"
#include "zeta/report.hpp"

namespace py = pybind11;
using namespace zeta;

namespace {

// Python ints cross the boundary as decimal strings so nothing is truncated.
BigInt to_big(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw InvalidArgument("expected an int, got " + std::string(py::str(py::type::handle_of(h))));
  return parse_bigint(std::string(py::str(h)));
}

std::vector<BigInt> to_big_list(const py::sequence& seq) {
  std::vector<BigInt> out;
  out.reserve(seq.size());
  for (const auto& item : seq) out.push_back(to_big(item));
  return out;
}

py::int_ to_py(const BigInt& x) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10))); }

py::list to_py_list(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::object to_fraction(const BigRational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(r.numerator()), to_py(r.denominator()));
}

BigRational from_entry(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return BigRational(to_big(h));
  if (py::isinstance<py::str>(h)) return BigRational::parse(std::string(py::str(h)));
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
    return BigRational(to_big(h.attr("numerator")), to_big(h.attr("denominator")));
  }
  throw InvalidArgument("matrix entries must be int, Fraction or 'p/q' strings");
}

Theta parse_theta(const std::string& s) {
  if (s == "pi4") return Theta::pi_4;
  if (s == "3pi4") return Theta::three_pi_4;
  throw InvalidArgument("theta must be 'pi4' or '3pi4', got '" + s + "'");
}

SSequence sequence(const py::object& q, const py::object& counts, const py::object& traces) {
  const BigInt qq = to_big(q);
  if (counts.is_none() == traces.is_none()) throw InvalidArgument("give exactly one of counts= or traces=");
  if (!counts.is_none()) return s_from_counts(qq, to_big_list(counts));
  return s_from_traces(TraceData(qq, to_big_list(traces)));
}

py::object json_to_py(const report::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact L-polynomial coefficients over finite fields";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("is_prime_power", [](const py::object& q) { return is_prime_power(to_big(q)); });

  m.def(
      "lpoly",
      [](const py::object& q, const py::object& counts, const py::object& traces) {
        const SSequence s = sequence(q, counts, traces);
        return to_py_list(complete(coeffs_by_recurrence(s), s.q(), s.genus()).coeffs);
      },
      py::arg("q"), py::kw_only(), py::arg("counts") = py::none(), py::arg("traces") = py::none(),
      "Coefficients a_0..a_2g of L(t).");

  m.def(
      "coefficients",
      [](const py::object& q, const py::object& counts, const py::object& traces, const std::string& method,
         unsigned threads) {
        const SSequence s = sequence(q, counts, traces);
        std::vector<BigRational> a;
        if (method == "recurrence") a = recurrence_rational(s);
        else if (method == "pper") a = coeffs_by_parapermanent(s);
        else if (method == "compositions") a = coeffs_by_compositions(s, threads);
        else throw InvalidArgument("method must be recurrence, pper or compositions");
        py::list out;
        for (const auto& x : a) out.append(to_fraction(x));
        return out;
      },
      py::arg("q"), py::kw_only(), py::arg("counts") = py::none(), py::arg("traces") = py::none(),
      py::arg("method") = "recurrence", py::arg("threads") = 1, "a_0..a_g as Fractions by the chosen method.");

  m.def(
      "class_number",
      [](const py::object& q, const py::object& counts, const py::object& traces) {
        const SSequence s = sequence(q, counts, traces);
        return to_py(class_number(complete(coeffs_by_recurrence(s), s.q(), s.genus())));
      },
      py::arg("q"), py::kw_only(), py::arg("counts") = py::none(), py::arg("traces") = py::none());

  m.def(
      "class_number_formula",
      [](const py::object& q, const py::object& counts, const py::object& traces, unsigned threads) {
        return to_py(class_number_formula(sequence(q, counts, traces), threads));
      },
      py::arg("q"), py::kw_only(), py::arg("counts") = py::none(), py::arg("traces") = py::none(),
      py::arg("threads") = 1);

  m.def("expand_traces", [](const py::object& q, const py::sequence& traces) {
    return to_py_list(oracle_expand(TraceData(to_big(q), to_big_list(traces))).coeffs);
  });

  m.def("composition_count", &composition_count);
  m.def("decode", [](int n, std::uint64_t index) { return decode(n, index).parts(); });
  m.def("encode", [](const std::vector<int>& parts) { return encode(Composition(parts)); });
  m.def("compositions", [](int n) {
    std::vector<std::vector<int>> out;
    for (const auto& c : enumerate(n)) out.push_back(c.parts());
    return out;
  });

  m.def(
      "pper",
      [](const std::vector<py::sequence>& rows, const std::string& method, unsigned threads) {
        std::vector<std::vector<BigRational>> r;
        for (const auto& row : rows) {
          std::vector<BigRational> v;
          for (const auto& e : row) v.push_back(from_entry(e));
          r.push_back(std::move(v));
        }
        const auto b = TriangularMatrix<BigRational>::from_rows(r);
        if (method == "last_row") return to_fraction(pper_by_last_row(b));
        if (method == "compositions") return to_fraction(pper_by_compositions(b, threads));
        throw InvalidArgument("method must be last_row or compositions");
      },
      py::arg("rows"), py::arg("method") = "last_row", py::arg("threads") = 1,
      "Parapermanent of a lower-triangular matrix given row by row.");

  m.def(
      "a_n_theta",
      [](int n, int g, const std::string& theta, const std::string& method, unsigned threads) {
        const Theta t = parse_theta(theta);
        if (method == "recurrence") return to_py(a_n_theta_recurrence(n, g, t));
        if (method == "compositions") return to_py(a_n_theta(n, g, t, threads));
        throw InvalidArgument("method must be recurrence or compositions");
      },
      py::arg("n"), py::arg("g"), py::arg("theta"), py::arg("method") = "recurrence", py::arg("threads") = 1);

  m.def("count_signs", [](int n, int g, const std::string& theta, unsigned threads) {
    const SignCounts c = count_signs(n, g, parse_theta(theta), threads);
    return py::make_tuple(c.plus, c.minus);
  }, py::arg("n"), py::arg("g"), py::arg("theta"), py::arg("threads") = 1);

  m.def(
      "defect2_analyze",
      [](int g, py::object max_n, const std::string& theta, unsigned threads) {
        const ThetaSelection sel = theta == "pi4"    ? ThetaSelection::pi_4
                                   : theta == "3pi4" ? ThetaSelection::three_pi_4
                                   : theta == "both" ? ThetaSelection::both
                                                     : throw InvalidArgument("theta must be pi4, 3pi4 or both");
        const int n = max_n.is_none() ? g : max_n.cast<int>();
        return json_to_py(report::to_json(analyze(g, n, sel, threads)));
      },
      py::arg("g"), py::arg("max_n") = py::none(), py::arg("theta") = "both", py::arg("threads") = 1,
      "Defect-2 report as a dict (same layout as the CLI JSON).");
}
