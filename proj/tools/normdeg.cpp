// normdeg: normality degrees of finite groups from the command line.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "normdeg/errors.hpp"
#include "normdeg/explorer.hpp"

namespace {

using namespace normdeg;
namespace ex = normdeg::explorer;

enum Exit : int { kOk = 0, kUsage = 1, kConstraint = 2, kCap = 3, kMismatch = 4 };

std::string decimal(const ExactRatio& r) {
  std::ostringstream out;
  out << std::setprecision(17) << r.to_double();
  return out.str();
}

formulas::Family require_family(const std::string& name) {
  auto f = formulas::family_from_name(name);
  if (!f) throw CLI::ValidationError("--family", "unknown family '" + name + "'");
  return *f;
}

int run_compute(const std::string& spec_text, const std::string& method_name, bool with_sd,
                const std::string& ledger, std::size_t order_cap) {
  auto method = ex::method_choice_from_name(method_name);
  if (!method) throw CLI::ValidationError("--method", "unknown method '" + method_name + "'");
  const auto spec = groups::parse_spec(spec_text);
  const auto report = ex::compute(spec, *method, with_sd, order_cap);
  std::cout << "spec\torder\tlattice_size\tnormal_count\tndeg\tsd\tmethod\telapsed_ms\n"
            << report.spec << '\t' << report.order << '\t' << report.lattice_size << '\t'
            << report.normal_count << '\t' << report.ndeg << '\t' << (report.sd ? report.sd->str() : "-")
            << '\t' << degrees::method_name(report.method) << '\t' << report.elapsed_ms << '\n';
  if (!ledger.empty()) ex::ledger_append(ledger, report);
  return kOk;
}

int run_verify(const std::string& family_name, const std::string& range_text, std::size_t order_cap,
               unsigned threads) {
  const auto family = require_family(family_name);
  ex::RangeMap ranges;
  try {
    ranges = ex::parse_ranges(range_text);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--range", e.what());
  }
  const auto result = ex::verify(family, ranges, order_cap, threads);
  std::cout << "spec\tformula\tbrute\tstatus\n";
  const ex::VerifyRow* first_bad = nullptr;
  for (const auto& row : result.rows) {
    std::cout << row.spec << '\t' << row.formula << '\t' << row.brute << '\t' << (row.ok ? "pass" : "FAIL")
              << '\n';
    if (!row.ok && !first_bad) first_bad = &row;
  }
  std::cerr << result.rows.size() << " tuples, " << result.mismatches << " mismatches\n";
  if (first_bad) {
    std::cerr << "first mismatch: " << first_bad->spec << ": formula " << first_bad->formula << " vs brute "
              << first_bad->brute << '\n';
    return kMismatch;
  }
  return kOk;
}

int run_density(const std::string& target_text, std::size_t steps, bool with_decimal) {
  ExactRatio target;
  try {
    target = ExactRatio::parse(target_text);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--target", e.what());
  }
  const auto rows = ex::density(target, steps);
  std::cout << "step\tfactors\tndeg\ttarget\tgap" << (with_decimal ? "\tgap_decimal" : "") << '\n';
  for (const auto& s : rows) {
    std::string factors;
    for (std::size_t i = 0; i < s.factor_specs.size(); ++i) {
      if (i) factors += " x ";
      factors += s.factor_specs[i];
    }
    std::cout << s.index << '\t' << factors << '\t' << s.ndeg << '\t' << s.target << '\t' << s.gap;
    if (with_decimal) std::cout << '\t' << decimal(s.gap);
    std::cout << '\n';
  }
  return kOk;
}

int run_conjecture43(std::uint64_t a_max, std::size_t order_cap, unsigned threads) {
  const auto result = ex::witness_search(a_max, order_cap, threads);
  std::cout << "a\ttarget\tmpn_witness\tcatalog_witness\n";
  for (const auto& row : result.rows) {
    std::cout << row.a << '\t' << row.target << '\t' << row.criterion_witness.value_or("none found") << '\t'
              << row.catalog_witness.value_or("none found") << '\n';
  }
  std::cerr << "catalog: " << result.catalog_size << " groups up to order " << order_cap << '\n';
  for (const auto& s : result.exact_count_solutions) {
    std::cerr << "note: " << s << " has exactly one non-normal subgroup\n";
  }
  return kOk;
}

int run_limits(const std::string& family_name, std::uint64_t p, std::uint64_t n_max, bool with_decimal) {
  const auto family = require_family(family_name);
  switch (family) {
    case formulas::Family::Mpn:
    case formulas::Family::Dihedral2n:
    case formulas::Family::Quaternion2n:
    case formulas::Family::Semidihedral2n:
      break;
    default:
      throw CLI::ValidationError("--family", "no limit table for '" + family_name + "'");
  }
  const auto rows = ex::limits(family, p, n_max);
  std::cout << "n\tndeg\tdistance" << (with_decimal ? "\tdistance_decimal" : "") << '\n';
  for (const auto& r : rows) {
    std::cout << r.n << '\t' << r.ndeg << '\t' << r.distance;
    if (with_decimal) std::cout << '\t' << decimal(r.distance);
    std::cout << '\n';
  }
  return kOk;
}

int run_ledger_summary(const std::string& path) {
  const auto s = ex::ledger_summarize(path, std::cerr);
  std::cout << "key\tvalue\tcount\n";
  std::cout << "records\t-\t" << s.records << '\n';
  std::cout << "malformed\t-\t" << s.malformed << '\n';
  for (const auto& [m, c] : s.by_method) std::cout << "method\t" << m << '\t' << c << '\n';
  for (const auto& [f, c] : s.by_family) std::cout << "family\t" << f << '\t' << c << '\n';
  for (const auto& v : s.distinct_ndeg) std::cout << "ndeg\t" << v << "\t-\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normality degrees of finite groups"};
  app.set_version_flag("--version", std::string(ex::kToolVersion));
  app.require_subcommand(1);

  std::string spec, method = "auto", ledger;
  bool with_sd = false;
  std::size_t order_cap = lattice::kDefaultOrderCap;
  unsigned threads = 0;
  auto* compute = app.add_subcommand("compute", "Degree of one group");
  compute->add_option("--spec", spec, "Group spec, e.g. 'Dih(3) x C(2)'")->required();
  compute->add_option("--method", method, "brute | conjugacy | formula | auto")->capture_default_str();
  compute->add_flag("--sd", with_sd, "Also compute the subgroup commutativity degree");
  compute->add_option("--ledger", ledger, "Append the report to this JSON Lines file");
  compute->add_option("--order-cap", order_cap, "Largest order enumerated")->capture_default_str();

  std::string family, range;
  auto* verify = app.add_subcommand("verify", "Formula vs enumeration over a parameter grid");
  verify->add_option("--family", family)->required();
  verify->add_option("--range", range, "k=lo..hi,... (max_order=N filters the grid)")->required();
  verify->add_option("--order-cap", order_cap)->capture_default_str();
  verify->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();

  std::string target;
  std::size_t steps = 20;
  bool with_decimal = false;
  auto* density = app.add_subcommand("density", "Groups whose degree tends to a target");
  density->add_option("--target", target, "a/b in [0, 1]")->required();
  density->add_option("--steps", steps)->capture_default_str()->check(CLI::PositiveNumber);
  density->add_flag("--decimal", with_decimal, "Add an approximate decimal column");

  std::uint64_t a_max = 10;
  std::size_t search_cap = 128;
  auto* conj = app.add_subcommand("conjecture43", "Search for groups with degree a/(a+1)");
  conj->add_option("--a-max", a_max)->capture_default_str()->check(CLI::PositiveNumber);
  conj->add_option("--order-cap", search_cap)->capture_default_str()->check(CLI::PositiveNumber);
  conj->add_option("--threads", threads)->capture_default_str();

  std::uint64_t n_max = 10, prime = 3;
  auto* lim = app.add_subcommand("limits", "Degrees along a p-group family");
  lim->add_option("--family", family)->required();
  lim->add_option("--n-max", n_max)->required();
  lim->add_option("--p", prime, "Prime for mpn")->capture_default_str();
  lim->add_flag("--decimal", with_decimal, "Add an approximate decimal column");

  std::string ledger_path;
  auto* led = app.add_subcommand("ledger", "Result ledger tools");
  led->require_subcommand(1);
  auto* summarize = led->add_subcommand("summarize", "Aggregate a ledger file");
  summarize->add_option("path", ledger_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) return run_compute(spec, method, with_sd, ledger, order_cap);
    if (*verify) return run_verify(family, range, order_cap, threads);
    if (*density) return run_density(target, steps, with_decimal);
    if (*conj) return run_conjecture43(a_max, search_cap, threads);
    if (*lim) return run_limits(family, prime, n_max, with_decimal);
    if (*summarize) return run_ledger_summary(ledger_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConstraintError& e) {
    std::cerr << "constraint violation: " << e.what() << '\n';
    return kConstraint;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
