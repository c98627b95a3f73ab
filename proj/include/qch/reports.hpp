#pragma once

#include "json.hpp"
#include "qch/balanced.hpp"
#include "qch/classify.hpp"
#include "qch/finite_group.hpp"
#include "qch/padic.hpp"
#include "qch/torus.hpp"

#include <string>
#include <vector>

namespace qch::reports {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qch.report/1";

// Report kinds: hull, torus-verify, padic-verify, density-probe,
// digit-theorems, classify. Big integers and exact circle values are carried
// as strings; counts and small parameters as JSON numbers.
Json hull_report(const FiniteGroup& g, const ElementSet& input, const QcReport& qc);
Json torus_verify_report(const torus::VerificationReport& r);
Json padic_verify_report(const padic::VerificationReport& r);
Json torus_probe_report(const torus::ProbeReport& r);
Json padic_probe_report(const padic::ProbeReport& r);
Json digit_report(const ExhaustiveReport& r);
Json classify_report(const std::string& input, const classify::GroupDescriptor& d);

struct CheckResult {
  bool ok{false};
  std::vector<std::string> problems;
  int64_t certificates_checked{0};
};

// Re-verifies a report from scratch: every certificate pairing is recomputed
// exactly, point membership is re-decided, and sweep counts are re-derived,
// so a stale or tampered file fails even when it is well-formed.
CheckResult check_report(const Json& report);

std::string to_text(const Json& report);

// Line-delimited form: a header record followed by one record per entry of
// the report's main array (named by "records_key" in the header).
std::string to_jsonl(const Json& report);
Json from_jsonl(const std::string& text);

// Reads either a single JSON document or the line-delimited form.
Json parse_report_text(const std::string& text);

}  // namespace qch::reports
