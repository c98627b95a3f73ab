#include "qch/reports.hpp"

#include <map>
#include <set>
#include <sstream>

namespace qch::reports {

namespace {

Json outcome_json(const torus::PointOutcome& o) {
  Json j;
  j["point"] = to_string(o.point);
  j["separated"] = o.result.separated;
  if (o.result.certificate) {
    const torus::SeparationCertificate& c = *o.result.certificate;
    j["chi"] = c.chi.n.str();
    j["case"] = case_name(c.tag);
    if (c.m != 0) j["m"] = c.m.str();
    j["value"] = to_string(c.value);
  }
  return j;
}

Json outcome_json(const padic::PointOutcome& o, int64_t p) {
  Json j;
  j["point"] = padic::to_string(o.point);
  j["separated"] = o.result.separated;
  if (o.result.certificate) {
    const padic::SeparationCertificate& c = *o.result.certificate;
    j["chi"] = padic::to_string(c.chi, p);
    j["case"] = case_name(c.tag);
    if (c.m != 0) j["m"] = c.m.str();
    j["value"] = to_string(c.value);
  }
  return j;
}

void add_problem(CheckResult& res, const std::string& msg) {
  if (res.problems.size() < 100) {
    res.problems.push_back(msg);
  } else if (res.problems.size() == 100) {
    res.problems.push_back("further problems suppressed");
  }
}

}  // namespace

Json hull_report(const FiniteGroup& g, const ElementSet& input, const QcReport& qc) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "hull";
  j["group"] = to_string(g);
  Json in = Json::array();
  for (const GroupElement& x : input) in.push_back(to_string(g, x));
  j["input"] = std::move(in);
  Json h = Json::array();
  for (const GroupElement& x : qc.certificate.hull) h.push_back(to_string(g, x));
  j["hull"] = std::move(h);
  j["quasi_convex"] = qc.quasi_convex;
  Json ex = Json::array();
  for (const ExcludedWitness& w : qc.certificate.excluded) {
    Json e;
    e["point"] = to_string(g, w.x);
    e["chi"] = to_string(g, w.chi);
    e["value"] = to_string(w.value);
    ex.push_back(std::move(e));
  }
  j["excluded"] = std::move(ex);
  return j;
}

Json torus_verify_report(const torus::VerificationReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "torus-verify";
  j["spec"] = to_string(r.spec);
  j["depth"] = r.depth;
  j["budget"] = r.budget.str();
  j["points_swept"] = r.points_swept;
  j["members_skipped"] = r.members_skipped;
  j["all_separated"] = r.all_separated;
  Json arr = Json::array();
  for (const torus::PointOutcome& o : r.outcomes) arr.push_back(outcome_json(o));
  j["outcomes"] = std::move(arr);
  return j;
}

Json padic_verify_report(const padic::VerificationReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "padic-verify";
  j["spec"] = to_string(r.spec);
  j["depth"] = r.depth;
  j["level_budget"] = r.level_budget;
  j["cosets_swept"] = r.cosets_swept;
  j["cosets_excluded"] = r.cosets_excluded;
  j["all_separated"] = r.all_separated;
  Json arr = Json::array();
  for (const padic::PointOutcome& o : r.outcomes) arr.push_back(outcome_json(o, r.spec.p));
  j["outcomes"] = std::move(arr);
  return j;
}

Json torus_probe_report(const torus::ProbeReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "density-probe";
  j["flavor"] = "torus";
  j["spec"] = to_string(r.spec);
  j["depth"] = r.depth;
  j["budget"] = r.budget.str();
  j["probed"] = r.points_probed;
  j["separated_count"] = r.separated_count;
  Json arr = Json::array();
  for (const torus::PointOutcome& o : r.separated) arr.push_back(outcome_json(o));
  j["separated"] = std::move(arr);
  return j;
}

Json padic_probe_report(const padic::ProbeReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "density-probe";
  j["flavor"] = "padic";
  j["spec"] = to_string(r.spec);
  j["depth"] = r.depth;
  j["level_budget"] = r.level_budget;
  j["probed"] = r.cosets_probed;
  j["separated_count"] = r.separated_count;
  Json arr = Json::array();
  for (const padic::PointOutcome& o : r.separated) arr.push_back(outcome_json(o, r.spec.p));
  j["separated"] = std::move(arr);
  return j;
}

Json digit_report(const ExhaustiveReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "digit-theorems";
  j["variant"] = variant_name(r.variant);
  j["p"] = r.p;
  j["depth"] = r.depth;
  j["pass"] = r.pass;
  j["expected_failure"] = expected_failure(r.variant, r.p, r.depth);
  j["matches_expectation"] = matches_expectation(r);
  j["counterexamples"] = r.counterexamples;
  return j;
}

Json classify_report(const std::string& input, const classify::GroupDescriptor& d) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "classify";
  j["input"] = input;
  j["descriptor"] = classify::to_string(d);
  classify::Verdict v = classify::verdict(d);
  j["admits"] = v.admits;
  j["compact"] = classify::is_compact(d);
  Json js = Json::array();
  for (const classify::Justification& ju : v.justification) {
    Json e;
    e["condition"] = ju.condition;
    e["reason"] = ju.reason;
    js.push_back(std::move(e));
  }
  j["justification"] = std::move(js);
  if (auto c = classify::compact_conditions(d)) {
    Json cc;
    cc["two_torsion_open"] = c->two_torsion_open;
    cc["three_torsion_open"] = c->three_torsion_open;
    cc["shape_2"] = c->shape_2;
    cc["shape_3"] = c->shape_3;
    cc["two_g_finite"] = c->two_g_finite;
    cc["three_g_finite"] = c->three_g_finite;
    cc["agree"] = c->agree;
    j["cross_check"] = std::move(cc);
  }
  return j;
}

namespace {

void check_hull(const Json& j, CheckResult& res) {
  FiniteGroup g = parse_group(j.at("group").get<std::string>());
  ElementSet input;
  for (const Json& s : j.at("input")) input.push_back(parse_element(g, s.get<std::string>()));
  ElementSet norm = normalize_set(g, input);
  if (norm != input) add_problem(res, "input set is not canonically ordered");

  ElementSet listed_hull;
  for (const Json& s : j.at("hull"))
    listed_hull.push_back(parse_element(g, s.get<std::string>()));
  ElementSet re = hull(g, norm);
  if (re != listed_hull) add_problem(res, "hull differs from recomputation");
  if (j.at("quasi_convex").get<bool>() != (re == norm))
    add_problem(res, "quasi_convex flag inconsistent with recomputed hull");

  std::set<std::vector<int64_t>> seen;
  for (const Json& e : j.at("excluded")) {
    GroupElement x = parse_element(g, e.at("point").get<std::string>());
    CharacterVec chi = parse_character(g, e.at("chi").get<std::string>());
    CirclePoint val = parse_circle_point(e.at("value").get<std::string>());
    std::string where = " for excluded point " + to_string(g, x);
    bool in_polar = true;
    for (const GroupElement& el : norm)
      if (!in_T_plus(pairing(g, chi, el))) {
        in_polar = false;
        break;
      }
    if (!in_polar) add_problem(res, "witness character outside the polar" + where);
    CirclePoint rv = pairing(g, chi, x);
    if (!(rv == val)) add_problem(res, "stored value differs from recomputed pairing" + where);
    if (in_T_plus(rv)) add_problem(res, "witness value lies in T_+" + where);
    if (std::binary_search(listed_hull.begin(), listed_hull.end(), x))
      add_problem(res, "excluded point appears in the hull" + where);
    if (!seen.insert(x.v).second) add_problem(res, "duplicate excluded point" + where);
    ++res.certificates_checked;
  }
  if (Int(static_cast<int64_t>(listed_hull.size())) +
          Int(static_cast<int64_t>(j.at("excluded").size())) !=
      group_order(g))
    add_problem(res, "hull and excluded witnesses do not partition the group");
}

void check_torus_outcome(const Json& o, const SequenceSpec& spec, const Int& den,
                         bool expect_separated, std::set<std::string>& seen,
                         bool& all_separated, CheckResult& res) {
  CirclePoint x = parse_circle_point(o.at("point").get<std::string>());
  std::string where = " for point " + to_string(x);
  if (!seen.insert(to_string(x)).second) add_problem(res, "duplicate point" + where);
  if (den % x.den != 0) add_problem(res, "denominator outside the sweep" + where);
  if (torus::point_in_K(spec, x) != SeqMembership::out)
    add_problem(res, "point is not outside K" + where);
  if (!o.at("separated").get<bool>()) {
    all_separated = false;
    if (expect_separated) add_problem(res, "unseparated point recorded" + where);
    return;
  }
  Int n(o.at("chi").get<std::string>());
  CirclePoint val = parse_circle_point(o.at("value").get<std::string>());
  if (!torus::char_in_polar({n}, spec))
    add_problem(res, "separating character outside the polar" + where);
  CirclePoint rv = int_scale(n, x);
  if (!(rv == val)) add_problem(res, "stored value differs from recomputed pairing" + where);
  if (in_T_plus(rv)) add_problem(res, "claimed separating value lies in T_+" + where);
  ++res.certificates_checked;
}

void check_torus_verify(const Json& j, CheckResult& res) {
  SequenceSpec spec = parse_sequence_spec(j.at("spec").get<std::string>());
  int64_t depth = j.at("depth").get<int64_t>();
  const Int den = pow_int(spec.p, depth);

  int64_t members = 0;
  int64_t nonmembers = 0;
  for (Int u = 1; u < den; ++u) {
    switch (torus::point_in_K(spec, canonicalize(u, den))) {
      case SeqMembership::in: ++members; break;
      case SeqMembership::out: ++nonmembers; break;
      case SeqMembership::unknown:
        add_problem(res, "membership of a sweep point is undecidable");
        break;
    }
  }
  if (j.at("members_skipped").get<int64_t>() != members)
    add_problem(res, "members_skipped differs from recount");
  const Json& outs = j.at("outcomes");
  if (j.at("points_swept").get<int64_t>() != static_cast<int64_t>(outs.size()))
    add_problem(res, "points_swept differs from the outcome count");
  if (static_cast<int64_t>(outs.size()) != nonmembers)
    add_problem(res, "outcomes do not cover every point outside K");

  bool all_separated = true;
  std::set<std::string> seen;
  for (const Json& o : outs)
    check_torus_outcome(o, spec, den, true, seen, all_separated, res);
  if (j.at("all_separated").get<bool>() != all_separated)
    add_problem(res, "all_separated flag inconsistent with outcomes");
}

void check_padic_outcome(const Json& o, const SequenceSpec& spec, int64_t depth,
                         bool expect_separated, std::set<std::string>& seen,
                         bool& all_separated, CheckResult& res) {
  padic::PadicTrunc x = padic::parse_trunc(o.at("point").get<std::string>());
  std::string where = " for coset " + padic::to_string(x);
  if (x.p != spec.p || x.N != depth) add_problem(res, "truncation shape mismatch" + where);
  if (!seen.insert(padic::trunc_value(x).str()).second)
    add_problem(res, "duplicate coset" + where);
  if (padic::coset_meets_L(spec, x) != SeqMembership::out)
    add_problem(res, "coset meets L" + where);
  if (!o.at("separated").get<bool>()) {
    all_separated = false;
    if (expect_separated) add_problem(res, "unseparated coset recorded" + where);
    return;
  }
  padic::PruferCharacter chi = padic::parse_prufer(o.at("chi").get<std::string>(), spec.p);
  CirclePoint val = parse_circle_point(o.at("value").get<std::string>());
  if (chi.level >= depth)
    add_problem(res, "character level not determined by the truncation" + where);
  if (!padic::char_in_polar(chi, spec))
    add_problem(res, "separating character outside the polar" + where);
  if (chi.level < depth) {
    CirclePoint rv = padic::zeta_eval(chi, x);
    if (!(rv == val)) add_problem(res, "stored value differs from recomputed pairing" + where);
    if (in_T_plus(rv)) add_problem(res, "claimed separating value lies in T_+" + where);
  }
  ++res.certificates_checked;
}

void check_padic_verify(const Json& j, CheckResult& res) {
  SequenceSpec spec = parse_sequence_spec(j.at("spec").get<std::string>());
  int64_t depth = j.at("depth").get<int64_t>();
  const Int mod = pow_int(spec.p, depth);

  int64_t meets = 0;
  int64_t misses = 0;
  for (Int v = 1; v < mod; ++v) {
    switch (padic::coset_meets_L(spec, padic::trunc_from_value(spec.p, depth, v))) {
      case SeqMembership::in: ++meets; break;
      case SeqMembership::out: ++misses; break;
      case SeqMembership::unknown:
        add_problem(res, "membership of a sweep coset is undecidable");
        break;
    }
  }
  if (j.at("cosets_excluded").get<int64_t>() != meets + 1)
    add_problem(res, "cosets_excluded differs from recount");
  const Json& outs = j.at("outcomes");
  if (j.at("cosets_swept").get<int64_t>() != static_cast<int64_t>(outs.size()))
    add_problem(res, "cosets_swept differs from the outcome count");
  if (static_cast<int64_t>(outs.size()) != misses)
    add_problem(res, "outcomes do not cover every coset missing L");

  bool all_separated = true;
  std::set<std::string> seen;
  for (const Json& o : outs)
    check_padic_outcome(o, spec, depth, true, seen, all_separated, res);
  if (j.at("all_separated").get<bool>() != all_separated)
    add_problem(res, "all_separated flag inconsistent with outcomes");
}

void check_probe(const Json& j, CheckResult& res) {
  std::string flavor = j.at("flavor").get<std::string>();
  SequenceSpec spec = parse_sequence_spec(j.at("spec").get<std::string>());
  int64_t depth = j.at("depth").get<int64_t>();
  const Json& sep = j.at("separated");
  if (j.at("separated_count").get<int64_t>() != static_cast<int64_t>(sep.size()))
    add_problem(res, "separated_count differs from the entry count");
  if (!sep.empty()) add_problem(res, "probe recorded separations");

  const Int mod = pow_int(spec.p, depth);
  int64_t misses = 0;
  bool all_separated = true;
  std::set<std::string> seen;
  if (flavor == "torus") {
    for (Int u = 1; u < mod; ++u)
      if (torus::point_in_K(spec, canonicalize(u, mod)) == SeqMembership::out) ++misses;
    for (const Json& o : sep) check_torus_outcome(o, spec, mod, false, seen, all_separated, res);
  } else if (flavor == "padic") {
    for (Int v = 1; v < mod; ++v)
      if (padic::coset_meets_L(spec, padic::trunc_from_value(spec.p, depth, v)) ==
          SeqMembership::out)
        ++misses;
    for (const Json& o : sep)
      check_padic_outcome(o, spec, depth, false, seen, all_separated, res);
  } else {
    add_problem(res, "unknown probe flavor '" + flavor + "'");
    return;
  }
  if (j.at("probed").get<int64_t>() != misses)
    add_problem(res, "probed count differs from recount");
}

void check_digit(const Json& j, CheckResult& res) {
  FirstDigitVariant variant = parse_variant(j.at("variant").get<std::string>());
  int64_t p = j.at("p").get<int64_t>();
  int64_t depth = j.at("depth").get<int64_t>();
  ExhaustiveReport re = verify_first_digit_theorem(p, depth, variant);
  if (j.at("pass").get<bool>() != re.pass)
    add_problem(res, "pass flag differs from recomputation");
  if (Json(re.counterexamples) != j.at("counterexamples"))
    add_problem(res, "counterexample list differs from recomputation");
  if (j.at("expected_failure").get<bool>() != expected_failure(variant, p, depth))
    add_problem(res, "expected_failure flag incorrect");
  if (j.at("matches_expectation").get<bool>() != matches_expectation(re))
    add_problem(res, "matches_expectation flag differs from recomputation");
  if (!matches_expectation(re))
    add_problem(res, "outcome does not match the documented expectation");
  ++res.certificates_checked;
}

void check_classify(const Json& j, CheckResult& res) {
  std::string text = j.at("descriptor").get<std::string>();
  classify::GroupDescriptor d = classify::parse_descriptor(text);
  Json re = classify_report(j.value("input", text), d);
  if (re.at("descriptor") != j.at("descriptor"))
    add_problem(res, "descriptor is not in normalized form");
  for (const char* key : {"admits", "compact", "justification"})
    if (re.at(key) != j.at(key))
      add_problem(res, std::string("field '") + key + "' differs from recomputation");
  if (re.contains("cross_check") != j.contains("cross_check") ||
      (re.contains("cross_check") && re.at("cross_check") != j.at("cross_check")))
    add_problem(res, "cross_check differs from recomputation");
  if (j.contains("cross_check") && !j.at("cross_check").at("agree").get<bool>())
    add_problem(res, "compact criteria disagree");
  ++res.certificates_checked;
}

}  // namespace

CheckResult check_report(const Json& j) {
  CheckResult res;
  try {
    if (!j.is_object()) {
      add_problem(res, "report is not a JSON object");
    } else {
      if (j.value("schema", "") != kSchema)
        add_problem(res, "unknown schema '" + j.value("schema", "") + "'");
      const std::string kind = j.value("kind", "");
      if (kind == "hull") {
        check_hull(j, res);
      } else if (kind == "torus-verify") {
        check_torus_verify(j, res);
      } else if (kind == "padic-verify") {
        check_padic_verify(j, res);
      } else if (kind == "density-probe") {
        check_probe(j, res);
      } else if (kind == "digit-theorems") {
        check_digit(j, res);
      } else if (kind == "classify") {
        check_classify(j, res);
      } else {
        add_problem(res, "unknown report kind '" + kind + "'");
      }
    }
  } catch (const std::exception& e) {
    add_problem(res, std::string("check aborted: ") + e.what());
  }
  res.ok = res.problems.empty();
  return res;
}

namespace {

std::string join_sample(const Json& arr, size_t cap) {
  std::string out;
  size_t shown = std::min(arr.size(), cap);
  for (size_t i = 0; i < shown; ++i) {
    if (i) out += " ";
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  if (arr.size() > cap) out += " ...";
  return out;
}

std::map<std::string, int64_t> case_tally(const Json& outcomes) {
  std::map<std::string, int64_t> tally;
  for (const Json& o : outcomes)
    if (o.value("separated", false)) ++tally[o.value("case", "?")];
  return tally;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string to_text(const Json& j) {
  std::ostringstream out;
  const std::string kind = j.value("kind", "");
  if (kind == "hull") {
    out << "hull report for " << j.at("group").get<std::string>() << "\n";
    out << "  input (" << j.at("input").size() << "): " << join_sample(j.at("input"), 16)
        << "\n";
    out << "  hull (" << j.at("hull").size() << "): " << join_sample(j.at("hull"), 16)
        << "\n";
    out << "  quasi-convex: " << yesno(j.at("quasi_convex").get<bool>()) << "\n";
    out << "  excluded elements witnessed: " << j.at("excluded").size() << "\n";
  } else if (kind == "torus-verify" || kind == "padic-verify") {
    out << (kind == "torus-verify" ? "torus" : "p-adic") << " verification\n";
    out << "  spec: " << j.at("spec").get<std::string>() << "\n";
    out << "  depth " << j.at("depth").get<int64_t>();
    if (kind == "torus-verify")
      out << ", scan budget " << j.at("budget").get<std::string>();
    else
      out << ", level budget " << j.at("level_budget").get<int64_t>();
    out << "\n";
    if (kind == "torus-verify")
      out << "  swept " << j.at("points_swept").get<int64_t>() << " points, skipped "
          << j.at("members_skipped").get<int64_t>() << " members\n";
    else
      out << "  swept " << j.at("cosets_swept").get<int64_t>() << " cosets, excluded "
          << j.at("cosets_excluded").get<int64_t>() << " meeting L\n";
    out << "  all separated: " << yesno(j.at("all_separated").get<bool>()) << "\n";
    out << "  separators by construction:";
    for (const auto& [name, count] : case_tally(j.at("outcomes")))
      out << " " << name << "=" << count;
    out << "\n";
  } else if (kind == "density-probe") {
    out << "density probe (" << j.at("flavor").get<std::string>() << ")\n";
    out << "  spec: " << j.at("spec").get<std::string>() << "\n";
    out << "  depth " << j.at("depth").get<int64_t>();
    if (j.contains("budget"))
      out << ", scan budget " << j.at("budget").get<std::string>();
    else
      out << ", level budget " << j.at("level_budget").get<int64_t>();
    out << "\n";
    out << "  probed " << j.at("probed").get<int64_t>() << ", separated "
        << j.at("separated_count").get<int64_t>() << "\n";
  } else if (kind == "digit-theorems") {
    out << "first-digit check: variant " << j.at("variant").get<std::string>() << ", p="
        << j.at("p").get<int64_t>() << ", depth " << j.at("depth").get<int64_t>() << "\n";
    out << "  pass: " << yesno(j.at("pass").get<bool>()) << " (counterexamples: "
        << j.at("counterexamples").size() << ")\n";
    out << "  matches expectation: " << yesno(j.at("matches_expectation").get<bool>())
        << "\n";
    if (!j.at("counterexamples").empty())
      out << "  counterexample digits: " << join_sample(j.at("counterexamples"), 6) << "\n";
  } else if (kind == "classify") {
    out << "classify: " << j.at("descriptor").get<std::string>() << "\n";
    out << "  admits a non-trivial quasi-convex null sequence: "
        << yesno(j.at("admits").get<bool>()) << "\n";
    for (const Json& ju : j.at("justification"))
      out << "  [" << ju.at("condition").get<std::string>() << "] "
          << ju.at("reason").get<std::string>() << "\n";
    if (j.contains("cross_check"))
      out << "  compact cross-check agreement: "
          << yesno(j.at("cross_check").at("agree").get<bool>()) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return out.str();
}

namespace {

const char* records_key_for(const std::string& kind) {
  if (kind == "hull") return "excluded";
  if (kind == "torus-verify" || kind == "padic-verify") return "outcomes";
  if (kind == "density-probe") return "separated";
  if (kind == "digit-theorems") return "counterexamples";
  return nullptr;
}

}  // namespace

std::string to_jsonl(const Json& report) {
  Json header = report;
  Json records = Json::array();
  const char* key = records_key_for(report.value("kind", ""));
  if (key && header.contains(key)) {
    records = header.at(key);
    header.erase(key);
  }
  header["records_key"] = key ? key : "";
  header["records"] = records.size();
  std::string out = header.dump();
  out += '\n';
  for (const Json& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

Json from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("from_jsonl: empty input");
  Json header = Json::parse(line);
  const std::string key = header.value("records_key", "");
  const int64_t expected = header.value("records", static_cast<int64_t>(0));
  header.erase("records_key");
  header.erase("records");
  Json records = Json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(Json::parse(line));
  }
  if (key.empty()) {
    if (!records.empty())
      throw std::invalid_argument("from_jsonl: records present without a records_key");
    if (expected != 0) throw std::invalid_argument("from_jsonl: record count mismatch");
    return header;
  }
  if (expected != static_cast<int64_t>(records.size()))
    throw std::invalid_argument("from_jsonl: record count mismatch (file truncated?)");
  header[key] = std::move(records);
  return header;
}

Json parse_report_text(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (j.is_object() && j.contains("records_key")) return from_jsonl(text);
    return j;
  } catch (const Json::parse_error&) {
    return from_jsonl(text);
  }
}

}  // namespace qch::reports
