#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "normdeg/errors.hpp"
#include "normdeg/explorer.hpp"
#include "normdeg/numtheory.hpp"

using namespace normdeg;
using namespace normdeg::explorer;
using formulas::Family;
using groups::parse_spec;

TEST_CASE("compute routes") {
  auto s3 = compute(parse_spec("Sym(3)"), MethodChoice::brute, true, 512);
  CHECK(s3.ndeg == ExactRatio(1, 2));
  CHECK(s3.sd.has_value());
  auto m = compute(parse_spec("M(5,4)"), MethodChoice::formula, false, 512);
  CHECK(m.ndeg == ExactRatio(3, 4));
  CHECK(m.method == degrees::Method::formula);
  auto zm = compute(parse_spec("ZM(3,2,2)"), MethodChoice::automatic, false, 512);
  CHECK(zm.ndeg == ExactRatio(1, 2));
  CHECK(zm.method == degrees::Method::formula);
  auto prod = compute(parse_spec("Dih(5) x C(3)"), MethodChoice::automatic, false, 512);
  CHECK(prod.method == degrees::Method::product);
  CHECK(prod.ndeg == compute(parse_spec("Dih(5) x C(3)"), MethodChoice::brute, false, 512).ndeg);
  auto ab = compute(parse_spec("C(9) x C(3)"), MethodChoice::automatic, false, 512);
  CHECK(ab.method == degrees::Method::formula);
  CHECK(ab.lattice_size == formulas::abelian_rank2_total(3, 1, 2));
  auto fallback = compute(parse_spec("Dih(3) x C(2)"), MethodChoice::automatic, false, 512);
  CHECK(fallback.method == degrees::Method::brute);
  CHECK(fallback.ndeg == ExactRatio(7, 16));

  CHECK_THROWS_AS(compute(parse_spec("Sym(4)"), MethodChoice::formula, false, 512), ConstraintError);
  CHECK_THROWS_AS(compute(parse_spec("M(5,4)"), MethodChoice::brute, false, 512), CapExceeded);
  CHECK_THROWS_AS(compute(parse_spec("M(5,4)"), MethodChoice::formula, true, 512), CapExceeded);
  CHECK(compute(parse_spec("M(5,4)"), MethodChoice::conjugacy, false, 625).ndeg == ExactRatio(3, 4));
}

TEST_CASE("formula_report coverage") {
  CHECK(formula_report(parse_spec("Q(5)")));
  CHECK(formula_report(parse_spec("SDP(3,7,2) x C(4)")));
  CHECK_FALSE(formula_report(parse_spec("Sym(4)")));
  CHECK_FALSE(formula_report(parse_spec("Q(3) x C(2)")));
  CHECK_FALSE(formula_report(parse_spec("C(2) x C(2) x C(2)")));
  CHECK(formula_report(parse_spec("C(4) x C(2)"))->ndeg == ExactRatio(1));
}

TEST_CASE("parse_ranges") {
  auto r = parse_ranges("p=2..3,n=1..20,max_order=300");
  CHECK(r.at("p").lo == 2);
  CHECK(r.at("p").hi == 3);
  CHECK(r.at("max_order").lo == 300);
  CHECK(r.at("max_order").hi == 300);
  CHECK_THROWS_AS(parse_ranges("p=3..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ranges("p"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ranges("p=a..b"), std::invalid_argument);
}

TEST_CASE("grid ordering and filtering") {
  auto g = grid(Family::SemidirectPNK, parse_ranges("p=2..3,n=1..10"));
  REQUIRE_FALSE(g.empty());
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1].params < g[i].params);
  auto capped = grid(Family::ZMGroup, parse_ranges("m=1..50,n=1..50,max_order=60"));
  for (const auto& fp : capped) CHECK(fp.params[0] * fp.params[1] <= 60);
  CHECK_THROWS_AS(grid(Family::SemidirectPNK, parse_ranges("p=2..3")), std::invalid_argument);
}

TEST_CASE("verify examples") {
  auto sdp = verify(Family::SemidirectPNK, parse_ranges("p=2..3,n=1..20"), 512);
  CHECK(sdp.mismatches == 0);
  CHECK(sdp.rows.size() > 10);
  auto dih = verify(Family::DihedralAnyN, parse_ranges("n=1..40"), 512);
  CHECK(dih.mismatches == 0);
  bool odd = false, even = false;
  for (const auto& row : dih.rows) {
    const auto n = std::stoul(row.spec.substr(4));
    (n % 2 ? odd : even) = true;
  }
  CHECK((odd && even));
  auto ab = verify(Family::AbelianRank2, parse_ranges("p=2..3,a1=0..6,a2=0..6,max_order=729"), 729);
  CHECK(ab.mismatches == 0);
  CHECK(ab.rows.front().formula.find("counts=") != std::string::npos);
  CHECK_THROWS_AS(verify(Family::DihedralAnyN, parse_ranges("n=1..300"), 512), CapExceeded);
}

TEST_CASE("density construction") {
  auto half = density(ExactRatio(1, 2), 20);
  REQUIRE(half.size() == 20);
  CHECK(half[0].factor_specs == std::vector<std::string>{"M(3,3)"});
  CHECK(half[0].ndeg == ExactRatio(7, 10));
  CHECK(half[0].gap == ExactRatio(1, 5));
  CHECK(half.back().gap < ExactRatio(1, 40));
  for (std::size_t i = 1; i < half.size(); ++i) CHECK(half[i].gap < half[i - 1].gap);

  auto three_sevenths = density(ExactRatio(3, 7), 3);
  for (const auto& step : three_sevenths) {
    REQUIRE(step.factor_specs.size() == 4);
    ExactRatio product(1);
    for (const auto& f : step.factor_specs) {
      auto spec = parse_spec(f);
      product *= formulas::ndeg_family(Family::Mpn, spec.factors[0].params[0], spec.factors[0].params[1]);
    }
    CHECK(product == step.ndeg);
  }
  // factor exponents a + i + 1 and primes disjoint across steps
  CHECK(three_sevenths[0].factor_specs[0] == "M(11,5)");
  CHECK(three_sevenths[1].factor_specs[3] == "M(37,8)");

  CHECK(density(ExactRatio(0), 3).back().gap < density(ExactRatio(0), 2).back().gap);
  CHECK(density(ExactRatio(1), 3).back().gap < density(ExactRatio(1), 2).back().gap);
  CHECK_THROWS_AS(density(ExactRatio(3, 2), 3), ConstraintError);
}

TEST_CASE("a/(a+1) witnesses") {
  CHECK_FALSE(mpn_witness(1));
  CHECK(mpn_witness(3) == "M(5,4)");
  CHECK(mpn_witness(5) == "M(3,5)");
  for (std::uint64_t a = 1; a <= 60; ++a) {
    if (auto w = mpn_witness(a)) {
      auto spec = parse_spec(*w);
      auto p = spec.factors[0].params;
      CHECK(formulas::ndeg_family(Family::Mpn, p[0], p[1]) == ExactRatio(BigInt(a), BigInt(a + 1)));
    }
  }
  auto result = witness_search(3, 64);
  REQUIRE(result.rows.size() == 3);
  // Sym(3) is Dih(3), which sorts first among order-6 groups
  CHECK(result.rows[0].catalog_witness == "Dih(3)");
  CHECK(result.rows[2].catalog_witness.has_value());
  CHECK(result.exact_count_solutions.empty());
  auto cat = catalog(625);
  CHECK(std::find(cat.begin(), cat.end(), parse_spec("M(5,4)")) != cat.end());
  CHECK(std::find(cat.begin(), cat.end(), parse_spec("Sym(3)")) != cat.end());
}

TEST_CASE("limit tables") {
  auto q = limits(Family::Quaternion2n, 2, 10);
  CHECK(q.front().n == 3);
  CHECK(q.front().ndeg == ExactRatio(1));
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i].distance < q[i - 1].distance);
  auto m = limits(Family::Mpn, 3, 10);
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i].ndeg > m[i - 1].ndeg);
  CHECK(limits(Family::Semidihedral2n, 2, 6).front().n == 4);
  CHECK(limits(Family::Mpn, 2, 6).front().n == 4);
}

TEST_CASE("ledger append and summarize") {
  const auto path = std::filesystem::temp_directory_path() / "normdeg_test_ledger.jsonl";
  std::filesystem::remove(path);
  ledger_append(path, compute(parse_spec("Sym(3)"), MethodChoice::brute, false, 512));
  ledger_append(path, compute(parse_spec("Dih(3)"), MethodChoice::automatic, false, 512));
  ledger_append(path, compute(parse_spec("M(5,4)"), MethodChoice::formula, false, 512));
  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n\n" << R"({"timestamp": 1})" << "\n";
  }
  ledger_append(path, compute(parse_spec("Dih(3) x C(2)"), MethodChoice::brute, false, 512));

  std::ostringstream diag;
  auto s = ledger_summarize(path, diag);
  CHECK(s.records == 4);
  CHECK(s.malformed == 2);
  CHECK(diag.str().find(":4:") != std::string::npos);
  CHECK(diag.str().find(":6:") != std::string::npos);
  CHECK(s.by_method.at("brute") == 2);
  CHECK(s.by_method.at("formula") == 2);
  CHECK(s.by_family.at("Dih x C") == 1);
  CHECK(s.distinct_ndeg == std::vector<ExactRatio>{ExactRatio(7, 16), ExactRatio(1, 2), ExactRatio(3, 4)});

  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  auto rec = record_from_json(nlohmann::json::parse(first));
  CHECK(rec.tool_version == kToolVersion);
  CHECK(rec.report.spec == "Sym(3)");
  CHECK(rec.timestamp > 1600000000);
  std::filesystem::remove(path);
  CHECK_THROWS(ledger_summarize(path, diag));
}
