#pragma once

#include <stdexcept>
#include <string>

namespace qch {

// How a separating character was found. filter_scan: single-index m-scan at a
// digit that breaks the support/magnitude filter. case1/case2/case3: the
// two-index constructions for points that pass the filter (case1 the
// small-multiplier pair family, case2 the (p-1)-fold pair family for gap >= 2,
// case3 the adjacent-pair construction at p = 7). exhaustive: found by the
// budget-limited scan.
enum class SepCase { filter_scan, case1, case2, case3, exhaustive };

inline const char* case_name(SepCase c) {
  switch (c) {
    case SepCase::filter_scan: return "filter-scan";
    case SepCase::case1: return "case1";
    case SepCase::case2: return "case2";
    case SepCase::case3: return "case3";
    case SepCase::exhaustive: return "exhaustive";
  }
  throw std::invalid_argument("case_name: unknown case");
}

inline SepCase parse_case(const std::string& s) {
  if (s == "filter-scan") return SepCase::filter_scan;
  if (s == "case1") return SepCase::case1;
  if (s == "case2") return SepCase::case2;
  if (s == "case3") return SepCase::case3;
  if (s == "exhaustive") return SepCase::exhaustive;
  throw std::invalid_argument("parse_case: unknown case '" + s + "'");
}

}  // namespace qch
