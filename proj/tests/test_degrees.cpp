#include <doctest.h>

#include "corpus.hpp"
#include "normdeg/degrees.hpp"
#include "normdeg/errors.hpp"
#include "normdeg/groups.hpp"
#include "oracle.hpp"

using namespace normdeg;
using namespace normdeg::degrees;
using groups::parse_spec;

namespace {

struct Enumerated {
  groups::GroupTable g;
  SubgroupLattice lat;
};

Enumerated enumerate(const std::string& text) {
  auto g = groups::build(parse_spec(text));
  auto lat = lattice::enumerate_subgroups(g);
  return {std::move(g), std::move(lat)};
}

// Ordered pairs (H, K) with HK = KH, counted from explicit product sets.
ExactRatio sd_oracle(const groups::GroupTable& g) {
  auto subs = oracle::subgroups_rank3(g);
  std::size_t permuting = 0;
  for (const auto& h : subs) {
    for (const auto& k : subs) {
      std::set<std::uint32_t> hk, kh;
      for (auto a : h)
        for (auto b : k) {
          hk.insert(g.mul(a, b));
          kh.insert(g.mul(b, a));
        }
      permuting += hk == kh;
    }
  }
  return ExactRatio(BigInt(permuting), BigInt(subs.size() * subs.size()));
}

}  // namespace

TEST_CASE("ndeg_brute examples") {
  CHECK(ndeg_brute(groups::build(parse_spec("Sym(3)")), "Sym(3)").ndeg == ExactRatio(1, 2));
  CHECK(ndeg_brute(groups::build(parse_spec("Sym(4)")), "Sym(4)").ndeg == ExactRatio(2, 15));
  auto r = ndeg_brute(groups::build(parse_spec("Dih(3) x C(2)")), "Dih(3) x C(2)");
  CHECK(r.ndeg == ExactRatio(7, 16));
  CHECK(r.order == 12);
  CHECK(r.lattice_size == 16);
  CHECK(r.normal_count == 7);
  CHECK(r.method == Method::brute);
  CHECK(r.spec == "Dih(3) x C(2)");
}

TEST_CASE("ndeg_conjugacy examples") {
  CHECK(ndeg_conjugacy(groups::build(parse_spec("Sym(3)")), "Sym(3)").ndeg == ExactRatio(1, 2));
  auto r = ndeg_conjugacy(groups::build(parse_spec("SDP(3,7,2)")), "SDP(3,7,2)");
  CHECK(r.ndeg == ExactRatio(3, 10));
  CHECK(r.method == Method::conjugacy);
  CHECK(ndeg_conjugacy(groups::build(parse_spec("Q(3)")), "Q(3)").ndeg == ExactRatio(1));
}

TEST_CASE("sd_brute agrees with explicit product sets") {
  for (const char* text : {"Dih(3)", "Dih(4)", "Q(3)", "Sym(4)", "SD(4)", "M(3,3)", "SDP(3,7,2)",
                           "Dih(3) x C(2)", "ZM(5,4,2)", "C(2) x C(4)"}) {
    CAPTURE(text);
    auto e = enumerate(text);
    CHECK(sd_brute(e.g, e.lat) == sd_oracle(e.g));
  }
  auto q8 = enumerate("Q(3)");
  CHECK(sd_brute(q8.g, q8.lat) == ExactRatio(1));
  auto ab = enumerate("C(4) x C(4)");
  CHECK(sd_brute(ab.g, ab.lat) == ExactRatio(1));
}

TEST_CASE("Dedekind detection") {
  CHECK(is_dedekind(enumerate("C(30)").lat));
  CHECK(is_dedekind(enumerate("Q(3)").lat));
  CHECK(is_dedekind(enumerate("Q(3) x EA(2,2)").lat));
  CHECK_FALSE(is_dedekind(enumerate("Dih(4)").lat));
  CHECK_FALSE(is_dedekind(enumerate("Q(4)").lat));
}

TEST_CASE("corpus invariants") {
  for (const auto& text : corpus()) {
    CAPTURE(text);
    auto e = enumerate(text);
    auto brute = ndeg_brute(e.g, e.lat, text);
    auto conj = ndeg_conjugacy(e.g, e.lat, text);
    CHECK(brute.ndeg == conj.ndeg);
    CHECK(brute.ndeg == ExactRatio(brute.normal_count, brute.lattice_size));
    CHECK(brute.ndeg > ExactRatio(0));
    CHECK(brute.ndeg <= ExactRatio(1));
    auto sd = sd_brute(e.g, e.lat);
    CHECK(brute.ndeg <= sd);
    const bool dedekind = is_dedekind(e.lat);
    CHECK((brute.ndeg == sd) == dedekind);
    CHECK((brute.ndeg == ExactRatio(1)) == dedekind);
    if (groups::is_abelian(e.g)) CHECK(dedekind);
  }
}

TEST_CASE("p-group bound") {
  auto d8 = enumerate("Dih(4)");
  auto b = pgroup_bound_check(d8.g, d8.lat, 2);
  CHECK(b.bound == ExactRatio(6, 10));
  CHECK(b.ndeg == ExactRatio(6, 10));
  CHECK(b.holds);
  auto q8 = enumerate("Q(3)");
  CHECK(pgroup_bound_check(q8.g, q8.lat, 2).bound == ExactRatio(1));
  auto m27 = enumerate("M(3,3)");
  CHECK(pgroup_bound_check(m27.g, m27.lat, 3).holds);
  CHECK_THROWS_AS(pgroup_bound_check(m27.g, m27.lat, 2), ConstraintError);
  CHECK_THROWS_AS(pgroup_bound_check(m27.g, m27.lat, 9), ConstraintError);
}

TEST_CASE("coprime products") {
  auto s3 = ndeg_brute(groups::build(parse_spec("Sym(3)")), "Sym(3)");
  auto c5 = ndeg_brute(groups::build(parse_spec("C(5)")), "C(5)");
  std::vector<DegreeReport> parts{s3, c5};
  auto prod = ndeg_coprime_product(parts);
  CHECK(prod.ndeg == ExactRatio(1, 2));
  CHECK(prod.method == Method::product);
  CHECK(prod.spec == "Sym(3) x C(5)");
  CHECK(prod.order == 30);

  auto c25 = ndeg_brute(groups::build(parse_spec("C(25)")), "C(25)");
  std::vector<DegreeReport> parts2{s3, c25};
  auto brute = ndeg_brute(groups::build(parse_spec("Sym(3) x C(25)")), "Sym(3) x C(25)");
  CHECK(ndeg_coprime_product(parts2).ndeg == brute.ndeg);
  CHECK(ndeg_coprime_product(parts2).lattice_size == brute.lattice_size);

  auto d3 = ndeg_brute(groups::build(parse_spec("Dih(3)")), "Dih(3)");
  auto sdp = ndeg_brute(groups::build(parse_spec("SDP(3,7,2)")), "SDP(3,7,2)");
  std::vector<DegreeReport> bad{d3, sdp};
  try {
    ndeg_coprime_product(bad);
    FAIL("expected rejection");
  } catch (const ConstraintError& e) {
    std::string what = e.what();
    CHECK(what.find("Dih(3)") != std::string::npos);
    CHECK(what.find("SDP(3,7,2)") != std::string::npos);
  }
}

TEST_CASE("non-multiplicativity witness") {
  auto prod = ndeg_brute(groups::build(parse_spec("Dih(3) x C(2)")), "");
  auto d3 = ndeg_brute(groups::build(parse_spec("Dih(3)")), "");
  auto c2 = ndeg_brute(groups::build(parse_spec("C(2)")), "");
  CHECK(prod.ndeg == ExactRatio(7, 16));
  CHECK(d3.ndeg * c2.ndeg == ExactRatio(1, 2));
  CHECK(prod.ndeg != d3.ndeg * c2.ndeg);
}

TEST_CASE("lattice-isomorphic groups with different degrees") {
  // both lattices are a bottom, four atoms and a top
  auto ea = enumerate("EA(3,2)");
  auto d3 = enumerate("Dih(3)");
  CHECK(ea.lat.size() == d3.lat.size());
  CHECK(ndeg_brute(ea.g, ea.lat).ndeg == ExactRatio(1));
  CHECK(ndeg_brute(d3.g, d3.lat).ndeg == ExactRatio(1, 2));
}

TEST_CASE("two constructions of the same group agree") {
  for (std::uint64_t m = 3; m <= 25; m += 2) {
    auto zm = ndeg_brute(groups::build(groups::Term{groups::Family::ZM, {m, 2, m - 1}}), "");
    auto dih = ndeg_brute(groups::build(groups::Term{groups::Family::Dih, {m}}), "");
    CHECK(zm.ndeg == dih.ndeg);
    CHECK(zm.lattice_size == dih.lattice_size);
  }
}

TEST_CASE("conjugate subgroups have equal degrees") {
  for (const char* text : {"Sym(4)", "Sym(5)", "Dih(12)", "SDP(3,13,3)", "SD(5)"}) {
    CAPTURE(text);
    auto e = enumerate(text);
    for (const auto& cls : e.lat.classes()) {
      if (cls.members.size() == 1) continue;
      std::optional<ExactRatio> first;
      for (auto idx : cls.members) {
        auto sub = groups::subgroup_table(e.g, e.lat[idx].members.elements());
        auto v = ndeg_brute(sub, "").ndeg;
        if (!first) first = v;
        CHECK(v == *first);
      }
    }
  }
}

TEST_CASE("DegreeReport JSON round trip") {
  auto e = enumerate("Dih(4)");
  auto r = ndeg_brute(e.g, e.lat, "Dih(4)");
  r.sd = sd_brute(e.g, e.lat);
  auto j = to_json(r);
  CHECK(j["ndeg"] == "3/5");
  CHECK(j["order"] == 8);
  CHECK(j["method"] == "brute");
  auto back = report_from_json(j);
  CHECK(back.spec == r.spec);
  CHECK(back.ndeg == r.ndeg);
  CHECK(back.sd == r.sd);
  CHECK(back.lattice_size == r.lattice_size);

  DegreeReport huge;
  huge.spec = "M(3,64)";
  huge.order = BigInt(1) << 100;
  huge.lattice_size = 10;
  huge.normal_count = 3;
  huge.ndeg = ExactRatio(3, 10);
  huge.method = Method::formula;
  auto hj = to_json(huge);
  CHECK(hj["order"].is_string());
  CHECK(hj["sd"].is_null());
  CHECK(report_from_json(hj).order == huge.order);
  CHECK_THROWS(report_from_json(nlohmann::json::parse(R"j({"spec":"C(2)"})j")));
}
