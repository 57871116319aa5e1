#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "normdeg/degrees.hpp"
#include "normdeg/formulas.hpp"
#include "normdeg/groups.hpp"

namespace normdeg::explorer {

inline constexpr std::string_view kToolVersion = "normdeg 1.0.0";

// ---------------------------------------------------------------------------
// compute

enum class MethodChoice { brute, conjugacy, formula, automatic };

std::optional<MethodChoice> method_choice_from_name(std::string_view name);

/// Closed-form report for a spec. Single terms use their family formula;
/// C(p^a) x C(p^b) uses the rank-2 abelian count; other products use
/// coprime multiplicativity. Empty when no formula covers the spec.
std::optional<degrees::DegreeReport> formula_report(const groups::GroupSpec& spec);

/// `automatic` prefers the formula route and falls back to brute force.
/// Throws ConstraintError if `formula` is requested for an uncovered spec.
degrees::DegreeReport compute(const groups::GroupSpec& spec, MethodChoice method, bool with_sd,
                              std::size_t order_cap);

// ---------------------------------------------------------------------------
// verify: formula vs brute force over a parameter grid

struct Range {
  std::uint64_t lo;
  std::uint64_t hi;
};
using RangeMap = std::map<std::string, Range>;

/// "p=2..3,n=1..20,max_order=300". Throws std::invalid_argument.
RangeMap parse_ranges(std::string_view text);

struct VerifyRow {
  std::string spec;
  std::string formula;  ///< compact rendering of the formula values
  std::string brute;    ///< same quantities from enumeration
  bool ok;
};

struct VerifyResult {
  std::vector<VerifyRow> rows;  ///< canonical tuple order
  std::size_t mismatches = 0;
};

/// Valid parameter tuples of a family inside the ranges, in canonical order.
/// Keys: sdp p,n[,k0]; dihedral n; zm m,n[,r]; mpn p,n; dihedral2n /
/// quaternion2n / semidihedral2n n; abelian2 p,a1,a2. Tuples whose group
/// order exceeds max_order (when given) are dropped.
std::vector<formulas::FamilyParam> grid(formulas::Family family, const RangeMap& ranges);

/// Throws CapExceeded before doing any work if a tuple exceeds order_cap.
VerifyResult verify(formulas::Family family, const RangeMap& ranges, std::size_t order_cap,
                    unsigned threads = 0);

// ---------------------------------------------------------------------------
// density sequences

struct DensityStep {
  std::size_t index;
  std::vector<std::string> factor_specs;
  ExactRatio ndeg;
  ExactRatio target;
  ExactRatio gap;
};

/// Steps 1..steps of a group sequence whose ndeg tends to `target` in [0, 1].
/// Interior targets a/b use a product of b-a modular p-groups
/// M(p, a+i+1), factor i at step t taking the prime with index
/// t*(b-a) + i - 1. Target 0 uses dihedral 2-groups, target 1 uses M(3^n).
std::vector<DensityStep> density(const ExactRatio& target, std::size_t steps);

// ---------------------------------------------------------------------------
// a/(a+1) witness search

struct WitnessRow {
  std::uint64_t a;
  ExactRatio target;
  std::optional<std::string> criterion_witness;  ///< an M(q, n) hit
  std::optional<std::string> catalog_witness;    ///< first catalog hit
};

/// Nonabelian catalog groups up to the order cap, ordered by (order, spec):
/// the single-term families plus products with cyclic groups and pairwise
/// products. Abelian groups are left out (their ndeg is always 1).
std::vector<groups::GroupSpec> catalog(std::size_t order_cap);

/// M(q, n) candidates come from primes q with (q+1) | (a+3), n = q(a+3)/(q+1) - 1,
/// each confirmed by exact evaluation.
std::optional<std::string> mpn_witness(std::uint64_t a);

struct WitnessSearch {
  std::vector<WitnessRow> rows;
  std::size_t catalog_size = 0;
  /// Catalog groups with |L(G)| = |N(G)| + 1 (exploratory; expected empty).
  std::vector<std::string> exact_count_solutions;
};

WitnessSearch witness_search(std::uint64_t a_max, std::size_t order_cap, unsigned threads = 0);

// ---------------------------------------------------------------------------
// limit tables

struct LimitRow {
  std::uint64_t n;
  ExactRatio ndeg;
  ExactRatio distance;  ///< |limit - ndeg|
};

std::vector<LimitRow> limits(formulas::Family family, std::uint64_t p, std::uint64_t n_max);

// ---------------------------------------------------------------------------
// JSON Lines ledger

struct LedgerRecord {
  std::int64_t timestamp;  ///< UTC seconds
  degrees::DegreeReport report;
  std::string tool_version;
};

nlohmann::json to_json(const LedgerRecord& rec);
LedgerRecord record_from_json(const nlohmann::json& j);

void ledger_append(const std::filesystem::path& path, const degrees::DegreeReport& report);

struct LedgerSummary {
  std::size_t records = 0;
  std::size_t malformed = 0;
  std::map<std::string, std::size_t> by_method;
  std::map<std::string, std::size_t> by_family;
  std::vector<ExactRatio> distinct_ndeg;  ///< ascending
};

/// Malformed lines are reported to `diagnostics` with their line number and
/// skipped.
LedgerSummary ledger_summarize(const std::filesystem::path& path, std::ostream& diagnostics);

}  // namespace normdeg::explorer
