#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qch/parallel.hpp"
#include "qch/reports.hpp"

namespace py = pybind11;

namespace {

qch::ElementSet to_element_set(const qch::FiniteGroup& g,
                               const std::vector<std::vector<int64_t>>& rows) {
  qch::ElementSet out;
  out.reserve(rows.size());
  for (const std::vector<int64_t>& r : rows) out.push_back(qch::make_element(g, r));
  return qch::normalize_set(g, out);
}

std::vector<std::vector<int64_t>> element_rows(const qch::ElementSet& e) {
  std::vector<std::vector<int64_t>> out;
  out.reserve(e.size());
  for (const qch::GroupElement& x : e) out.push_back(x.v);
  return out;
}

std::vector<std::vector<int64_t>> character_rows(const qch::CharacterSet& a) {
  std::vector<std::vector<int64_t>> out;
  out.reserve(a.size());
  for (const qch::CharacterVec& chi : a) out.push_back(chi.a);
  return out;
}

int pick_workers(int workers) {
  return workers >= 1 ? workers : qch::default_worker_count();
}

}  // namespace

PYBIND11_MODULE(_qch, m) {
  m.doc() =
      "exact quasi-convexity toolkit: polars and hulls in finite products of "
      "cyclic groups, separating-character sweeps on the circle and the p-adic "
      "integers, first-digit checks, and an LCA descriptor classifier";
  m.attr("__version__") = "1.0.0";

  m.def(
      "hull",
      [](const std::string& group, const std::vector<std::vector<int64_t>>& elements) {
        qch::FiniteGroup g = qch::parse_group(group);
        return element_rows(qch::hull(g, to_element_set(g, elements)));
      },
      py::arg("group"), py::arg("elements"),
      "quasi-convex hull of a finite set, as sorted coordinate rows");

  m.def(
      "polar",
      [](const std::string& group, const std::vector<std::vector<int64_t>>& elements) {
        qch::FiniteGroup g = qch::parse_group(group);
        return character_rows(qch::polar(g, to_element_set(g, elements)));
      },
      py::arg("group"), py::arg("elements"),
      "characters sending the whole set into T_+, as coefficient rows");

  m.def(
      "prepolar",
      [](const std::string& group, const std::vector<std::vector<int64_t>>& coeffs) {
        qch::FiniteGroup g = qch::parse_group(group);
        qch::CharacterSet a;
        a.reserve(coeffs.size());
        for (const std::vector<int64_t>& r : coeffs) a.push_back(qch::make_character(g, r));
        return element_rows(qch::prepolar(g, a));
      },
      py::arg("group"), py::arg("coeffs"),
      "group elements sent into T_+ by every listed character");

  m.def(
      "is_quasi_convex",
      [](const std::string& group, const std::vector<std::vector<int64_t>>& elements) {
        qch::FiniteGroup g = qch::parse_group(group);
        return qch::is_quasi_convex(g, to_element_set(g, elements)).quasi_convex;
      },
      py::arg("group"), py::arg("elements"));

  m.def(
      "standard_null_set",
      [](const std::string& group) {
        qch::FiniteGroup g = qch::parse_group(group);
        return element_rows(qch::standard_null_set(g));
      },
      py::arg("group"), "{0} together with +-e_k for every factor of order > 1");

  m.def(
      "hull_report",
      [](const std::string& group, const std::vector<std::vector<int64_t>>& elements) {
        qch::FiniteGroup g = qch::parse_group(group);
        qch::ElementSet e = to_element_set(g, elements);
        return qch::reports::hull_report(g, e, qch::is_quasi_convex(g, e)).dump();
      },
      py::arg("group"), py::arg("elements"),
      "full hull report with per-point exclusion certificates, as JSON text");

  m.def(
      "verify_torus",
      [](int64_t p, std::vector<int64_t> a, int64_t depth, int64_t budget, int workers) {
        qch::SequenceSpec spec{p, std::move(a), qch::SeqMode::exact};
        qch::validate_spec(spec);
        qch::Int b = budget > 0 ? qch::Int(budget) : qch::torus::default_budget(spec, depth);
        qch::torus::VerificationReport rep =
            qch::torus::verify_quasi_convex(spec, depth, b, pick_workers(workers));
        return qch::reports::torus_verify_report(rep).dump();
      },
      py::arg("p"), py::arg("a"), py::arg("depth"), py::arg("budget") = 0,
      py::arg("workers") = 0,
      "separate every denominator-p^depth circle point outside the null set; JSON text");

  m.def(
      "verify_padic",
      [](int64_t p, std::vector<int64_t> a, int64_t depth, int64_t level_budget,
         int workers) {
        qch::SequenceSpec spec{p, std::move(a), qch::SeqMode::exact};
        qch::validate_spec(spec);
        int64_t lb = level_budget >= 0 ? level_budget : qch::padic::default_level_budget(depth);
        qch::padic::VerificationReport rep =
            qch::padic::verify_quasi_convex(spec, depth, lb, pick_workers(workers));
        return qch::reports::padic_verify_report(rep).dump();
      },
      py::arg("p"), py::arg("a"), py::arg("depth"), py::arg("level_budget") = -1,
      py::arg("workers") = 0,
      "separate every depth-N residue coset that misses the null set; JSON text");

  m.def(
      "digit_theorems",
      [](int64_t p, int64_t depth, const std::string& variant) {
        qch::ExhaustiveReport rep =
            qch::verify_first_digit_theorem(p, depth, qch::parse_variant(variant));
        return qch::reports::digit_report(rep).dump();
      },
      py::arg("p"), py::arg("depth"), py::arg("variant"),
      "exhaustive first-digit check over balanced expansions; JSON text");

  m.def(
      "classify",
      [](const std::string& descriptor) {
        qch::classify::GroupDescriptor d = qch::classify::parse_descriptor(descriptor);
        return qch::reports::classify_report(descriptor, d).dump();
      },
      py::arg("descriptor"),
      "quasi-convex null sequence verdict for an LCA group descriptor; JSON text");

  m.def(
      "check_report",
      [](const std::string& text) {
        qch::reports::CheckResult res =
            qch::reports::check_report(qch::reports::parse_report_text(text));
        return py::make_tuple(res.ok, res.problems, res.certificates_checked);
      },
      py::arg("text"),
      "re-verify a report (json or jsonl text): (ok, problems, certificates_checked)");

  m.def(
      "in_tm",
      [](const std::string& value, int64_t m) {
        return qch::in_Tm(qch::parse_circle_point(value), m);
      },
      py::arg("value"), py::arg("m"),
      "membership of an exact circle point \"num/den\" in T_m");
}
