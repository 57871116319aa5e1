#include "normdeg/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "normdeg/errors.hpp"
#include "normdeg/lattice.hpp"
#include "normdeg/numtheory.hpp"
#include "normdeg/parallel.hpp"

namespace normdeg::explorer {

namespace nt = numtheory;
using degrees::DegreeReport;
using degrees::Method;
using formulas::Family;
using formulas::FamilyParam;
using groups::GroupSpec;
using groups::Term;

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

std::uint64_t order_u64(const BigInt& order) {
  return order > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                           : static_cast<std::uint64_t>(order);
}

void require_enumerable(const GroupSpec& spec, std::size_t order_cap) {
  const BigInt order = spec.order();
  if (order > order_cap) throw CapExceeded("enumeration cap", order_u64(order), order_cap);
}

groups::GroupTable build_for_enumeration(const GroupSpec& spec, std::size_t order_cap) {
  require_enumerable(spec, order_cap);
  return groups::build(spec, std::max(order_cap, groups::kMaxTableOrder));
}

std::optional<std::pair<std::uint64_t, unsigned>> cyclic_prime_power(const Term& t) {
  std::uint64_t n;
  if (t.family == groups::Family::C) {
    n = t.params[0];
  } else if (t.family == groups::Family::EA && t.params[1] == 1) {
    n = t.params[0];
  } else {
    return std::nullopt;
  }
  if (n == 1) return std::nullopt;
  auto [p, k] = nt::prime_power_root(n);
  if (p == 0) return std::nullopt;
  return std::make_pair(p, k);
}

DegreeReport report_from_counts(std::string spec, BigInt order, const formulas::Counts& c) {
  DegreeReport r;
  r.spec = std::move(spec);
  r.order = std::move(order);
  r.lattice_size = c.lattice_size;
  r.normal_count = c.normal_count;
  r.ndeg = c.ndeg();
  r.method = Method::formula;
  return r;
}

std::optional<DegreeReport> single_term_formula(const Term& t) {
  auto fp = formulas::family_of(t);
  if (!fp) return std::nullopt;
  return report_from_counts(t.str(), groups::term_order(t), formulas::counts(*fp));
}

bool in_range(const RangeMap& ranges, const std::string& key, std::uint64_t v) {
  auto it = ranges.find(key);
  return it == ranges.end() || (v >= it->second.lo && v <= it->second.hi);
}

Range need_range(const RangeMap& ranges, const std::string& key, Family f) {
  auto it = ranges.find(key);
  if (it == ranges.end()) {
    throw std::invalid_argument("family " + std::string(formulas::family_name(f)) +
                                " needs a range for '" + key + "'");
  }
  return it->second;
}

std::string counts_string(const BigInt& lattice_size, const BigInt& normal_count) {
  return "L=" + lattice_size.str() + " N=" + normal_count.str() + " ndeg=" +
         ExactRatio(normal_count, lattice_size).str();
}

VerifyRow verify_one(const FamilyParam& fp, std::size_t order_cap) {
  const GroupSpec spec = formulas::spec_of(fp);
  const auto table = build_for_enumeration(spec, order_cap);
  const auto lat = lattice::enumerate_subgroups(table, order_cap);
  VerifyRow row;
  row.spec = spec.str();

  if (fp.family == Family::AbelianRank2) {
    const auto p = fp.params[0];
    const auto a1 = static_cast<unsigned>(fp.params[1]);
    const auto a2 = static_cast<unsigned>(fp.params[2]);
    std::map<std::size_t, std::size_t> by_size;
    for (const auto& h : lat.subgroups()) ++by_size[h.size];
    std::string expected = "total=" + formulas::abelian_rank2_total(p, a1, a2).str() + " counts=";
    std::string actual = "total=" + std::to_string(lat.size()) + " counts=";
    for (unsigned alpha = 0; alpha <= a1 + a2; ++alpha) {
      const std::size_t size = static_cast<std::size_t>(nt::checked_pow(p, a1 + a2 - alpha));
      if (alpha) {
        expected += ",";
        actual += ",";
      }
      expected += formulas::abelian_rank2_count(p, a1, a2, alpha).str();
      actual += std::to_string(by_size[size]);
    }
    row.formula = expected;
    row.brute = actual;
  } else {
    const auto c = formulas::counts(fp);
    row.formula = counts_string(c.lattice_size, c.normal_count);
    row.brute = counts_string(lat.size(), lat.normal_count());
  }
  row.ok = row.formula == row.brute;
  return row;
}

}  // namespace

std::optional<MethodChoice> method_choice_from_name(std::string_view name) {
  if (name == "brute") return MethodChoice::brute;
  if (name == "conjugacy") return MethodChoice::conjugacy;
  if (name == "formula") return MethodChoice::formula;
  if (name == "auto") return MethodChoice::automatic;
  return std::nullopt;
}

std::optional<DegreeReport> formula_report(const GroupSpec& spec) {
  for (const auto& t : spec.factors) groups::validate(t);
  if (spec.factors.size() == 1) return single_term_formula(spec.factors[0]);

  if (spec.factors.size() == 2) {
    auto a = cyclic_prime_power(spec.factors[0]);
    auto b = cyclic_prime_power(spec.factors[1]);
    if (a && b && a->first == b->first) {
      const std::uint64_t lo = std::min(a->second, b->second);
      const std::uint64_t hi = std::max(a->second, b->second);
      return report_from_counts(spec.str(), spec.order(),
                                formulas::counts(FamilyParam{Family::AbelianRank2, {a->first, lo, hi}}));
    }
  }

  std::vector<DegreeReport> parts;
  for (const auto& t : spec.factors) {
    auto part = single_term_formula(t);
    if (!part) return std::nullopt;
    parts.push_back(std::move(*part));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (boost::multiprecision::gcd(parts[i].order, parts[j].order) != 1) return std::nullopt;
    }
  }
  return degrees::ndeg_coprime_product(parts);
}

DegreeReport compute(const GroupSpec& spec, MethodChoice method, bool with_sd, std::size_t order_cap) {
  const auto start = Clock::now();
  DegreeReport report;
  std::optional<groups::GroupTable> table;
  std::optional<lattice::SubgroupLattice> lat;
  auto enumerate = [&] {
    if (!lat) {
      table.emplace(build_for_enumeration(spec, order_cap));
      lat.emplace(lattice::enumerate_subgroups(*table, order_cap));
    }
  };

  std::optional<DegreeReport> closed_form;
  if (method == MethodChoice::formula || method == MethodChoice::automatic) {
    closed_form = formula_report(spec);
    if (!closed_form && method == MethodChoice::formula) {
      throw ConstraintError("no closed-form formula covers " + spec.str());
    }
  }
  if (closed_form) {
    report = std::move(*closed_form);
  } else if (method == MethodChoice::conjugacy) {
    enumerate();
    report = degrees::ndeg_conjugacy(*table, *lat, spec.str());
  } else {
    enumerate();
    report = degrees::ndeg_brute(*table, *lat, spec.str());
  }
  if (with_sd) {
    enumerate();
    report.sd = degrees::sd_brute(*table, *lat);
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

RangeMap parse_ranges(std::string_view text) {
  RangeMap out;
  auto parse_u64 = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty range bound");
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad range bound '" + std::string(s) + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("range item '" + std::string(item) + "' is not key=lo..hi");
    }
    std::string key(item.substr(0, eq));
    std::string_view value = item.substr(eq + 1);
    Range r;
    if (auto dots = value.find(".."); dots != std::string_view::npos) {
      r = {parse_u64(value.substr(0, dots)), parse_u64(value.substr(dots + 2))};
    } else {
      r.lo = r.hi = parse_u64(value);
    }
    if (r.lo > r.hi) throw std::invalid_argument("empty range for '" + key + "'");
    out[key] = r;
  }
  return out;
}

std::vector<FamilyParam> grid(Family family, const RangeMap& ranges) {
  std::vector<FamilyParam> out;
  std::uint64_t max_order = std::numeric_limits<std::uint64_t>::max();
  if (auto it = ranges.find("max_order"); it != ranges.end()) max_order = it->second.hi;

  auto try_add = [&](FamilyParam fp) {
    try {
      formulas::validate(fp);
    } catch (const ConstraintError&) {
      return;
    }
    if (formulas::spec_of(fp).order() > max_order) return;
    out.push_back(std::move(fp));
  };

  switch (family) {
    case Family::SemidirectPNK: {
      const Range p = need_range(ranges, "p", family), n = need_range(ranges, "n", family);
      for (std::uint64_t pp = p.lo; pp <= p.hi; ++pp) {
        if (!nt::is_prime(pp)) continue;
        for (std::uint64_t nn = std::max<std::uint64_t>(n.lo, 2); nn <= n.hi; ++nn) {
          if (pp * nn > max_order) break;
          for (std::uint64_t k0 = 2; k0 < nn; ++k0) {
            if (in_range(ranges, "k0", k0)) try_add({family, {pp, nn, k0}});
          }
        }
      }
      break;
    }
    case Family::ZMGroup: {
      const Range m = need_range(ranges, "m", family), n = need_range(ranges, "n", family);
      for (std::uint64_t mm = std::max<std::uint64_t>(m.lo, 1); mm <= m.hi; ++mm) {
        for (std::uint64_t nn = std::max<std::uint64_t>(n.lo, 1); nn <= n.hi; ++nn) {
          if (mm * nn > max_order) break;
          if (nt::gcd(mm, nn) != 1) continue;
          const std::uint64_t r_hi = mm == 1 ? 1 : mm - 1;
          for (std::uint64_t r = 1; r <= r_hi; ++r) {
            if (in_range(ranges, "r", r)) try_add({family, {mm, nn, r}});
          }
        }
      }
      break;
    }
    case Family::Mpn:
    case Family::AbelianRank2: {
      const Range p = need_range(ranges, "p", family);
      for (std::uint64_t pp = p.lo; pp <= p.hi; ++pp) {
        if (!nt::is_prime(pp)) continue;
        if (family == Family::Mpn) {
          const Range n = need_range(ranges, "n", family);
          for (std::uint64_t nn = n.lo; nn <= std::min<std::uint64_t>(n.hi, 64); ++nn) {
            try_add({family, {pp, nn}});
          }
        } else {
          const Range a1 = need_range(ranges, "a1", family), a2 = need_range(ranges, "a2", family);
          for (std::uint64_t x = a1.lo; x <= std::min<std::uint64_t>(a1.hi, 63); ++x) {
            for (std::uint64_t y = std::max(x, a2.lo); y <= std::min<std::uint64_t>(a2.hi, 63); ++y) {
              try {
                if (BigInt(nt::checked_pow(pp, static_cast<unsigned>(x + y))) > max_order) break;
              } catch (const std::overflow_error&) {
                break;
              }
              try_add({family, {pp, x, y}});
            }
          }
        }
      }
      break;
    }
    case Family::Dihedral2n:
    case Family::Quaternion2n:
    case Family::Semidihedral2n:
    case Family::DihedralAnyN:
    case Family::Cyclic: {
      const Range n = need_range(ranges, "n", family);
      const std::uint64_t hi = family == Family::DihedralAnyN || family == Family::Cyclic
                                   ? n.hi
                                   : std::min<std::uint64_t>(n.hi, 63);
      for (std::uint64_t nn = n.lo; nn <= hi; ++nn) try_add({family, {nn}});
      break;
    }
  }
  return out;
}

VerifyResult verify(Family family, const RangeMap& ranges, std::size_t order_cap, unsigned threads) {
  const auto tuples = grid(family, ranges);
  for (const auto& fp : tuples) require_enumerable(formulas::spec_of(fp), order_cap);
  VerifyResult result;
  result.rows.resize(tuples.size());
  parallel_for(tuples.size(), threads,
               [&](std::size_t i) { result.rows[i] = verify_one(tuples[i], order_cap); });
  for (const auto& row : result.rows) {
    if (!row.ok) ++result.mismatches;
  }
  return result;
}

std::vector<DensityStep> density(const ExactRatio& target, std::size_t steps) {
  if (target < ExactRatio(0) || target > ExactRatio(1)) {
    throw ConstraintError("density target " + target.str() + " is outside [0, 1]");
  }
  std::vector<DensityStep> out;
  for (std::size_t t = 1; t <= steps; ++t) {
    DensityStep step{t, {}, 0, target, 0};
    if (target.is_zero()) {
      const std::uint64_t n = t + 2;
      step.factor_specs.push_back(formulas::spec_of({Family::Dihedral2n, {n}}).str());
      step.ndeg = formulas::ndeg_family(Family::Dihedral2n, 2, n);
    } else if (target == ExactRatio(1)) {
      const std::uint64_t n = t + 2;
      step.factor_specs.push_back(formulas::spec_of({Family::Mpn, {3, n}}).str());
      step.ndeg = formulas::ndeg_family(Family::Mpn, 3, n);
    } else {
      const auto a = static_cast<std::uint64_t>(target.num());
      const auto b = static_cast<std::uint64_t>(target.den());
      const std::uint64_t factors = b - a;
      const auto primes = nt::nth_primes(t * factors, factors);
      step.ndeg = 1;
      for (std::uint64_t i = 1; i <= factors; ++i) {
        const std::uint64_t p = primes[i - 1];
        const std::uint64_t n = a + i + 1;
        step.factor_specs.push_back(formulas::spec_of({Family::Mpn, {p, n}}).str());
        step.ndeg *= formulas::ndeg_family(Family::Mpn, p, n);
      }
    }
    step.gap = (target - step.ndeg).abs();
    out.push_back(std::move(step));
  }
  return out;
}

std::vector<GroupSpec> catalog(std::size_t order_cap) {
  using GF = groups::Family;
  std::vector<GroupSpec> base;
  auto add = [&](GF f, std::vector<std::uint64_t> params) {
    Term t{f, std::move(params)};
    try {
      groups::validate(t);
    } catch (const ConstraintError&) {
      return;
    }
    if (groups::term_order(t) <= order_cap) base.push_back(GroupSpec{{std::move(t)}});
  };
  for (std::uint64_t n = 3; 2 * n <= order_cap; ++n) add(GF::Dih, {n});
  for (std::uint64_t n = 3; n < 63 && (std::uint64_t{1} << n) <= order_cap; ++n) {
    add(GF::Q, {n});
    add(GF::SD, {n});
  }
  for (std::uint64_t p = 2; p * p * p <= order_cap; ++p) {
    if (!nt::is_prime(p)) continue;
    for (std::uint64_t n = 3, q = p * p * p; q <= order_cap; ++n, q *= p) add(GF::M, {p, n});
  }
  for (std::uint64_t n = 3; n <= 5; ++n) add(GF::Sym, {n});
  for (std::uint64_t p = 2; 2 * p <= order_cap; ++p) {
    if (!nt::is_prime(p)) continue;
    for (std::uint64_t n = 2; p * n <= order_cap; ++n) {
      for (std::uint64_t k0 = 2; k0 < n; ++k0) add(GF::SDP, {p, n, k0});
    }
  }
  for (std::uint64_t m = 3; 2 * m <= order_cap; ++m) {
    for (std::uint64_t n = 2; m * n <= order_cap; ++n) {
      for (std::uint64_t r = 2; r < m; ++r) add(GF::ZM, {m, n, r});
    }
  }

  std::vector<GroupSpec> all = base;
  for (const auto& x : base) {
    const BigInt ox = x.order();
    for (std::uint64_t k = 2; ox * k <= order_cap; ++k) {
      GroupSpec prod = x;
      prod.factors.push_back(Term{GF::C, {k}});
      all.push_back(std::move(prod));
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i; j < base.size(); ++j) {
      if (base[i].order() * base[j].order() > order_cap) continue;
      GroupSpec prod = base[i];
      prod.factors.push_back(base[j].factors[0]);
      all.push_back(std::move(prod));
    }
  }
  std::sort(all.begin(), all.end(), [](const GroupSpec& a, const GroupSpec& b) {
    const BigInt oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.str() < b.str();
  });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::optional<std::string> mpn_witness(std::uint64_t a) {
  const ExactRatio target{BigInt(a), BigInt(a) + 1};
  for (std::uint64_t q = 2; q + 1 <= a + 3; ++q) {
    if (!nt::is_prime(q) || (a + 3) % (q + 1) != 0) continue;
    const std::uint64_t n = q * ((a + 3) / (q + 1)) - 1;
    try {
      if (formulas::ndeg_family(Family::Mpn, q, n) == target) {
        return formulas::spec_of({Family::Mpn, {q, n}}).str();
      }
    } catch (const ConstraintError&) {
      // n below the family minimum
    }
  }
  return std::nullopt;
}

WitnessSearch witness_search(std::uint64_t a_max, std::size_t order_cap, unsigned threads) {
  const auto specs = catalog(order_cap);
  std::vector<lattice::SubgroupLattice> unused;
  std::vector<std::pair<std::size_t, std::size_t>> counts(specs.size());  // (|L|, |N|)
  parallel_for(specs.size(), threads, [&](std::size_t i) {
    const auto table = build_for_enumeration(specs[i], order_cap);
    const auto lat = lattice::enumerate_subgroups(table, order_cap);
    counts[i] = {lat.size(), lat.normal_count()};
  });

  WitnessSearch result;
  result.catalog_size = specs.size();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (counts[i].first == counts[i].second + 1) result.exact_count_solutions.push_back(specs[i].str());
  }
  for (std::uint64_t a = 1; a <= a_max; ++a) {
    WitnessRow row{a, ExactRatio(BigInt(a), BigInt(a) + 1), mpn_witness(a), std::nullopt};
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (ExactRatio(BigInt(counts[i].second), BigInt(counts[i].first)) == row.target) {
        row.catalog_witness = specs[i].str();
        break;
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<LimitRow> limits(Family family, std::uint64_t p, std::uint64_t n_max) {
  const int limit = formulas::family_limit(family);
  if (family != Family::Mpn) p = 2;
  std::uint64_t n_min = 3;
  if (family == Family::Semidihedral2n || (family == Family::Mpn && p == 2)) n_min = 4;
  std::vector<LimitRow> rows;
  for (std::uint64_t n = n_min; n <= n_max; ++n) {
    ExactRatio v = formulas::ndeg_family(family, p, n);
    rows.push_back({n, v, (ExactRatio(limit) - v).abs()});
  }
  return rows;
}

nlohmann::json to_json(const LedgerRecord& rec) {
  nlohmann::json j;
  j["timestamp"] = rec.timestamp;
  const nlohmann::json report = degrees::to_json(rec.report);
  for (auto it = report.begin(); it != report.end(); ++it) j[it.key()] = *it;
  j["tool_version"] = rec.tool_version;
  return j;
}

LedgerRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  return LedgerRecord{j.at("timestamp").get<std::int64_t>(), degrees::report_from_json(j),
                      j.at("tool_version").get<std::string>()};
}

void ledger_append(const std::filesystem::path& path, const DegreeReport& report) {
  const auto now = std::chrono::system_clock::now();
  LedgerRecord rec{std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count(),
                   report, std::string(kToolVersion)};
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open ledger " + path.string() + " for appending");
  out << to_json(rec).dump() << '\n';
  if (!out) throw std::runtime_error("write to ledger " + path.string() + " failed");
}

LedgerSummary ledger_summarize(const std::filesystem::path& path, std::ostream& diagnostics) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ledger " + path.string());
  LedgerSummary summary;
  std::set<ExactRatio> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    LedgerRecord rec;
    try {
      rec = record_from_json(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      ++summary.malformed;
      diagnostics << path.string() << ":" << line_no << ": malformed record: " << e.what() << '\n';
      continue;
    }
    ++summary.records;
    ++summary.by_method[std::string(degrees::method_name(rec.report.method))];
    std::string family;
    try {
      const GroupSpec spec = groups::parse_spec(rec.report.spec);
      for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        if (i) family += " x ";
        family += groups::family_name(spec.factors[i].family);
      }
    } catch (const Error&) {
      family = "unknown";
    }
    ++summary.by_family[family];
    values.insert(rec.report.ndeg);
  }
  summary.distinct_ndeg.assign(values.begin(), values.end());
  return summary;
}

}  // namespace normdeg::explorer
