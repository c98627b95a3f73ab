#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qch/parallel.hpp"
#include "qch/reports.hpp"

namespace {

using qch::Int;
using qch::reports::Json;

struct OutputOpts {
  std::string format{"text"};
  std::string out_path;
};

int emit_report(const Json& report, const OutputOpts& o) {
  std::string payload;
  if (o.format == "json" || o.format == "structured")
    payload = report.dump(2) + "\n";
  else if (o.format == "jsonl")
    payload = qch::reports::to_jsonl(report);
  else
    payload = qch::reports::to_text(report);
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << o.out_path << "'\n";
      return 2;
    }
    f << payload;
    std::cout << "report written to " << o.out_path << "\n";
  } else {
    std::cout << payload;
  }
  return 0;
}

// Exit 0 on pass, 1 on a verification failure recorded in the report.
int finish(const Json& report, const OutputOpts& o, bool pass) {
  int rc = emit_report(report, o);
  return rc != 0 ? rc : (pass ? 0 : 1);
}

qch::ElementSet parse_set_literal(const qch::FiniteGroup& g, const std::string& lit) {
  qch::ElementSet out;
  size_t i = 0;
  while (i < lit.size()) {
    char c = lit[i];
    if (c == '(') {
      size_t close = lit.find(')', i);
      if (close == std::string::npos)
        throw std::invalid_argument("set literal: unbalanced '(' in '" + lit + "'");
      out.push_back(qch::parse_element(g, lit.substr(i, close - i + 1)));
      i = close + 1;
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
      ++i;
    } else {
      throw std::invalid_argument(std::string("set literal: unexpected character '") + c +
                                  "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("set literal: no elements");
  return qch::normalize_set(g, out);
}

void require_desk_scale(const qch::FiniteGroup& g) {
  if (qch::group_order(g) > 2000000)
    throw std::invalid_argument("group order exceeds the brute-force bound of 2000000");
}

qch::SequenceSpec make_spec(int64_t p, std::vector<int64_t> a, const std::string& mode) {
  qch::SequenceSpec spec{p, std::move(a),
                         mode == "prefix" ? qch::SeqMode::prefix : qch::SeqMode::exact};
  qch::validate_spec(spec);
  return spec;
}

// The canonical full sequence a_n = n, listed far enough that neither sweep
// membership at the given depth nor any polar decision for |n| <= budget
// consults the unlisted tail.
qch::SequenceSpec full_sequence_prefix_torus(int64_t p, int64_t depth, const Int& budget) {
  int64_t top = depth - 1;
  while (qch::pow_int(p, top + 2) < 4 * budget) ++top;
  std::vector<int64_t> a(static_cast<size_t>(top + 1));
  for (int64_t k = 0; k <= top; ++k) a[static_cast<size_t>(k)] = k;
  return {p, std::move(a), qch::SeqMode::prefix};
}

qch::SequenceSpec full_sequence_prefix_padic(int64_t p, int64_t depth) {
  std::vector<int64_t> a(static_cast<size_t>(depth));
  for (int64_t k = 0; k < depth; ++k) a[static_cast<size_t>(k)] = k;
  return {p, std::move(a), qch::SeqMode::prefix};
}

int run_check(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  Json report = qch::reports::parse_report_text(buf.str());
  qch::reports::CheckResult res = qch::reports::check_report(report);
  std::cout << "check: " << path << "\n";
  std::cout << "  certificates checked: " << res.certificates_checked << "\n";
  if (res.ok) {
    std::cout << "  ok\n";
    return 0;
  }
  std::cout << "  problems (" << res.problems.size() << "):\n";
  for (const std::string& p : res.problems) std::cout << "  - " << p << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact quasi-convexity toolkit: polars and hulls in finite products of cyclic "
      "groups, separating-character sweeps on the circle and the p-adic integers, "
      "first-digit checks, and a classifier for LCA group descriptors"};
  app.require_subcommand(0, 1);
  // Lets --format/--out/--check appear after the subcommand name too.
  app.fallthrough();

  OutputOpts out;
  app.add_option("--format", out.format, "text, json (alias structured), or jsonl")
      ->check(CLI::IsMember({"text", "json", "jsonl", "structured"}))
      ->capture_default_str();
  app.add_option("--out", out.out_path, "write the report to this file");
  std::string check_path;
  app.add_option("--check", check_path, "re-verify a report file and exit");

  std::function<int()> action;

  auto* hull_cmd =
      app.add_subcommand("hull", "brute-force quasi-convex hull of a finite set");
  std::string hull_group, hull_set;
  hull_cmd->add_option("--group", hull_group, "product of cyclic groups, e.g. Z5xZ6xZ7")
      ->required();
  hull_cmd->add_option("--set", hull_set, "element tuples, e.g. \"(0,0,0) (1,0,0)\"")
      ->required();
  hull_cmd->callback([&] {
    action = [&]() {
      qch::FiniteGroup g = qch::parse_group(hull_group);
      require_desk_scale(g);
      qch::ElementSet e = parse_set_literal(g, hull_set);
      qch::QcReport qc = qch::is_quasi_convex(g, e);
      return finish(qch::reports::hull_report(g, e, qc), out, true);
    };
  });

  auto* vc_cmd = app.add_subcommand(
      "verify-cyclic", "check that the standard null set {0, +-e_k} is quasi-convex");
  std::string vc_group;
  vc_cmd->add_option("--group", vc_group, "product of cyclic groups")->required();
  vc_cmd->callback([&] {
    action = [&]() {
      qch::FiniteGroup g = qch::parse_group(vc_group);
      require_desk_scale(g);
      qch::ElementSet e = qch::standard_null_set(g);
      qch::QcReport qc = qch::is_quasi_convex(g, e);
      return finish(qch::reports::hull_report(g, e, qc), out, qc.quasi_convex);
    };
  });

  auto* vt_cmd = app.add_subcommand(
      "verify-torus", "separate every denominator-p^depth point outside the null set");
  int64_t vt_p = 0, vt_depth = 0, vt_budget = 0;
  int vt_workers = 0;
  std::vector<int64_t> vt_a;
  std::string vt_mode{"exact"};
  vt_cmd->add_option("--p", vt_p, "prime base")->required();
  vt_cmd->add_option("--a", vt_a, "sequence values a_0,a_1,...")->required()->delimiter(',');
  vt_cmd->add_option("--depth", vt_depth, "sweep denominators dividing p^depth")->required();
  vt_cmd->add_option("--budget", vt_budget, "exhaustive |n| bound (default 4*p^(depth+1))");
  vt_cmd->add_option("--mode", vt_mode, "exact or prefix")
      ->check(CLI::IsMember({"exact", "prefix"}));
  vt_cmd->add_option("--workers", vt_workers, "0 = QCH_WORKERS or hardware count");
  vt_cmd->callback([&] {
    action = [&]() {
      qch::SequenceSpec spec = make_spec(vt_p, vt_a, vt_mode);
      Int budget = vt_budget > 0 ? Int(vt_budget) : qch::torus::default_budget(spec, vt_depth);
      int workers = vt_workers > 0 ? vt_workers : qch::default_worker_count();
      qch::torus::VerificationReport rep =
          qch::torus::verify_quasi_convex(spec, vt_depth, budget, workers);
      return finish(qch::reports::torus_verify_report(rep), out, rep.all_separated);
    };
  });

  auto* vp_cmd = app.add_subcommand(
      "verify-padic", "separate every depth-N coset whose coset misses the null set");
  int64_t vp_p = 0, vp_depth = 0, vp_budget = -1;
  int vp_workers = 0;
  std::vector<int64_t> vp_a;
  std::string vp_mode{"exact"};
  vp_cmd->add_option("--p", vp_p, "prime base")->required();
  vp_cmd->add_option("--a", vp_a, "sequence values a_0,a_1,...")->required()->delimiter(',');
  vp_cmd->add_option("--depth", vp_depth, "truncation depth N")->required();
  vp_cmd->add_option("--level-budget", vp_budget,
                     "highest character level scanned (default depth-1)");
  vp_cmd->add_option("--mode", vp_mode, "exact or prefix")
      ->check(CLI::IsMember({"exact", "prefix"}));
  vp_cmd->add_option("--workers", vp_workers, "0 = QCH_WORKERS or hardware count");
  vp_cmd->callback([&] {
    action = [&]() {
      qch::SequenceSpec spec = make_spec(vp_p, vp_a, vp_mode);
      int64_t lb = vp_budget >= 0 ? vp_budget : qch::padic::default_level_budget(vp_depth);
      int workers = vp_workers > 0 ? vp_workers : qch::default_worker_count();
      qch::padic::VerificationReport rep =
          qch::padic::verify_quasi_convex(spec, vp_depth, lb, workers);
      return finish(qch::reports::padic_verify_report(rep), out, rep.all_separated);
    };
  });

  auto* dp_cmd = app.add_subcommand(
      "density-probe", "expect zero separations for the hull-dense sets at p = 2, 3");
  std::string dp_flavor;
  int64_t dp_p = 0, dp_depth = 3, dp_budget = 10000, dp_level = 6;
  std::vector<int64_t> dp_a;
  std::string dp_mode{"exact"};
  dp_cmd->add_option("--flavor", dp_flavor, "torus or padic")
      ->required()
      ->check(CLI::IsMember({"torus", "padic"}));
  dp_cmd->add_option("--p", dp_p, "prime base (2 or 3)")->required();
  dp_cmd->add_option("--depth", dp_depth, "sweep depth")->capture_default_str();
  dp_cmd->add_option("--a", dp_a, "sequence values (default: the full sequence a_n = n)")
      ->delimiter(',');
  dp_cmd->add_option("--mode", dp_mode, "exact or prefix (with --a)")
      ->check(CLI::IsMember({"exact", "prefix"}));
  dp_cmd->add_option("--budget", dp_budget, "torus: exhaustive |n| bound")
      ->capture_default_str();
  dp_cmd->add_option("--level-budget", dp_level, "padic: highest character level")
      ->capture_default_str();
  dp_cmd->callback([&] {
    action = [&]() {
      if (dp_flavor == "torus") {
        qch::SequenceSpec spec = dp_a.empty()
                                     ? full_sequence_prefix_torus(dp_p, dp_depth, Int(dp_budget))
                                     : make_spec(dp_p, dp_a, dp_mode);
        qch::torus::ProbeReport rep = qch::torus::density_probe(spec, dp_depth, Int(dp_budget));
        return finish(qch::reports::torus_probe_report(rep), out, rep.separated_count == 0);
      }
      qch::SequenceSpec spec = dp_a.empty() ? full_sequence_prefix_padic(dp_p, dp_depth)
                                            : make_spec(dp_p, dp_a, dp_mode);
      qch::padic::ProbeReport rep = qch::padic::density_probe(spec, dp_depth, dp_level);
      return finish(qch::reports::padic_probe_report(rep), out, rep.separated_count == 0);
    };
  });

  auto* dt_cmd = app.add_subcommand(
      "digit-theorems", "exhaustive first-digit checks over balanced expansions");
  int64_t dt_p = 0, dt_depth = 0;
  std::string dt_variant;
  dt_cmd->add_option("--p", dt_p, "odd prime base")->required();
  dt_cmd->add_option("--depth", dt_depth, "expansion depth")->required();
  dt_cmd->add_option("--variant", dt_variant, "a, b, c, cor-c1, or cor-p-1")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c", "cor-c1", "cor-p-1"}));
  dt_cmd->callback([&] {
    action = [&]() {
      qch::ExhaustiveReport rep =
          qch::verify_first_digit_theorem(dt_p, dt_depth, qch::parse_variant(dt_variant));
      return finish(qch::reports::digit_report(rep), out, qch::matches_expectation(rep));
    };
  });

  auto* cl_cmd = app.add_subcommand(
      "classify", "quasi-convex null sequence verdict for an LCA group descriptor");
  std::string cl_desc;
  cl_cmd->add_option("descriptor", cl_desc, "e.g. \"J5\", \"Z2^w x Z8\", \"(Z5xZ6xZ7)^w\"")
      ->required();
  cl_cmd->callback([&] {
    action = [&]() {
      qch::classify::GroupDescriptor d = qch::classify::parse_descriptor(cl_desc);
      Json rep = qch::reports::classify_report(cl_desc, d);
      bool pass = !rep.contains("cross_check") ||
                  rep.at("cross_check").at("agree").get<bool>();
      return finish(rep, out, pass);
    };
  });

  auto* ck_cmd = app.add_subcommand("check", "re-verify a report file from scratch");
  std::string ck_file;
  ck_cmd->add_option("file", ck_file, "report path (json or jsonl)")->required();
  ck_cmd->callback([&] {
    action = [&]() { return run_check(ck_file); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!check_path.empty()) return run_check(check_path);
    if (!action) {
      std::cout << app.help();
      return 2;
    }
    return action();
  } catch (const qch::PrefixTooShort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
