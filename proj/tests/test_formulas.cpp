#include <doctest.h>

#include "normdeg/errors.hpp"
#include "normdeg/formulas.hpp"
#include "normdeg/lattice.hpp"
#include "normdeg/numtheory.hpp"

using namespace normdeg;
using namespace normdeg::formulas;
namespace nt = normdeg::numtheory;

namespace {

std::pair<std::size_t, std::size_t> brute_counts(const FamilyParam& fp) {
  auto g = groups::build(spec_of(fp));
  auto lat = lattice::enumerate_subgroups(g);
  return {lat.size(), lat.normal_count()};
}

}  // namespace

TEST_CASE("semidirect examples") {
  CHECK(lattice_size_semidirect(3, 7, 2) == 10);
  CHECK(lattice_size_semidirect(2, 3, 2) == 6);
  for (std::uint64_t n = 3; n <= 51; n += 2)
    CHECK(lattice_size_semidirect(2, n, n - 1) == BigInt(nt::tau(n)) + nt::sigma(n));
  CHECK(ndeg_semidirect(3, 7, 2) == ExactRatio(3, 10));
  CHECK(ndeg_semidirect(2, 3, 2) == ExactRatio(1, 2));
  CHECK(ndeg_semidirect(2, 5, 4) == ExactRatio(3, 8));
  CHECK_THROWS_AS(ndeg_semidirect(2, 4, 3), ConstraintError);
}

TEST_CASE("semidirect normal count beyond gcd(k0 - 1, n) = 1") {
  // Z_2 acting on Z_15 by 4: <x^3, y> is normal as well
  CHECK(normal_count_semidirect(2, 15, 4) == 6);
  CHECK(brute_counts({Family::SemidirectPNK, {2, 15, 4}}).second == 6);
  CHECK(normal_count_semidirect(3, 7, 2) == nt::tau(7) + 1);
}

TEST_CASE("semidirect bounds") {
  auto b = semidirect_bounds(3, 7, 2);
  CHECK(b.upper == ExactRatio(3, 4));
  CHECK(b.lower_a == ExactRatio(3, 10));
  CHECK(b.lower_b == ExactRatio(3, 16));
  CHECK(b.r == 7);
  CHECK(semidirect_bounds(2, 3, 2).lower_a == ndeg_semidirect(2, 3, 2));
}

TEST_CASE("semidirect bounds bracket the degree on the grid") {
  std::size_t checked = 0;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::uint64_t n = 2; n <= 120; ++n) {
      for (std::uint64_t k0 = 2; k0 < n; ++k0) {
        try {
          validate({Family::SemidirectPNK, {p, n, k0}});
        } catch (const ConstraintError&) {
          continue;
        }
        auto b = semidirect_bounds(p, n, k0);
        auto v = ndeg_semidirect(p, n, k0);
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(k0);
        REQUIRE(b.lower_a <= v);
        REQUIRE(b.lower_b <= v);
        REQUIRE(v <= b.upper);
        REQUIRE(b.lower_b > ExactRatio(BigInt(1), BigInt(b.r + 1)));
        // the sigma lower bound is attained exactly when k0 - 1 is a unit mod n
        REQUIRE((v == b.lower_a) == (nt::gcd(k0 - 1, n) == 1));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("dihedral degrees") {
  CHECK(ndeg_dihedral(3) == ExactRatio(1, 2));
  CHECK(ndeg_dihedral(6) == ExactRatio(7, 16));
  for (std::uint64_t n = 3; n <= 40; ++n) {
    CHECK(ndeg_dihedral(std::uint64_t{1} << (n - 1)) ==
          ExactRatio(BigInt(n + 3), (BigInt(1) << n) + n - 1));
    CHECK(ndeg_dihedral(std::uint64_t{1} << (n - 1)) == ndeg_family(Family::Dihedral2n, 2, n));
  }
  for (std::uint64_t n = 5; n <= 1000; ++n) {
    CAPTURE(n);
    REQUIRE(ndeg_dihedral(n) < ExactRatio(1, 2));
  }
  CHECK(ndeg_dihedral(4) > ExactRatio(1, 2));
  CHECK_THROWS_AS(ndeg_dihedral(2), ConstraintError);
  for (std::uint64_t n = 3; n <= 99; n += 2) {
    CHECK(ndeg_dihedral(n) == ndeg_semidirect(2, n, n - 1));
    CHECK(ndeg_dihedral(n) == ndeg_zm(n, 2, n - 1));
  }
}

TEST_CASE("ZM counts") {
  CHECK(zm_counts(3, 2, 2).lattice_size == 6);
  CHECK(zm_counts(3, 2, 2).normal_count == 3);
  CHECK(ndeg_zm(3, 2, 2) == ExactRatio(1, 2));
  CHECK(ndeg_zm(7, 2, 6) == ExactRatio(3, 10));
  auto c = zm_counts(5, 4, 2);
  auto [l, nn] = brute_counts({Family::ZMGroup, {5, 4, 2}});
  CHECK(c.lattice_size == l);
  CHECK(c.normal_count == nn);
  CHECK_THROWS_AS(zm_counts(5, 3, 2), ConstraintError);
}

TEST_CASE("ZM with r = 1") {
  // m = 1 is the cyclic group Z_n, where both counts agree
  auto c = zm_counts(1, 12, 1);
  CHECK(c.lattice_size == nt::tau(12));
  CHECK(c.normal_count == nt::tau(12));
  // m > 1 with r = 1 breaks gcd(m, r - 1) = 1
  CHECK_THROWS_AS(zm_counts(5, 4, 1), ConstraintError);
}

TEST_CASE("abelian rank 2 counts") {
  CHECK(abelian_rank2_total(2, 1, 2) == 8);
  for (unsigned a1 = 0; a1 <= 3; ++a1)
    for (unsigned a2 = a1; a2 <= 4; ++a2) {
      CHECK(abelian_rank2_count(3, a1, a2, 0) == 1);
      BigInt sum = 0;
      for (unsigned alpha = 0; alpha <= a1 + a2; ++alpha) {
        sum += abelian_rank2_count(3, a1, a2, alpha);
        // counts are symmetric in alpha <-> a1 + a2 - alpha (duality)
        CHECK(abelian_rank2_count(3, a1, a2, alpha) == abelian_rank2_count(3, a1, a2, a1 + a2 - alpha));
      }
      CHECK(sum == abelian_rank2_total(3, a1, a2));
    }
  for (std::uint64_t p : {2, 3, 5, 7})
    for (unsigned n = 3; n <= 20; ++n)
      CHECK(abelian_rank2_total(p, 1, n - 2) == BigInt((1 + p) * n - 2 * p));
}

TEST_CASE("p-group family counts") {
  CHECK(family_lattice_size(Family::Dihedral2n, 2, 3) == 10);
  CHECK(family_lattice_size(Family::Quaternion2n, 2, 3) == 6);
  CHECK(family_lattice_size(Family::Semidihedral2n, 2, 4) == 15);
  CHECK(family_lattice_size(Family::Mpn, 3, 3) == 10);
  CHECK(family_normal_count(Family::Mpn, 3, 3) == 7);
  CHECK(family_normal_count(Family::Dihedral2n, 2, 3) == 6);
  CHECK(family_normal_count(Family::Quaternion2n, 2, 3) == 6);
  CHECK(ndeg_family(Family::Mpn, 5, 4) == ExactRatio(3, 4));
  CHECK(ndeg_family(Family::Quaternion2n, 2, 3) == ExactRatio(1));
  CHECK(ndeg_family(Family::Dihedral2n, 2, 4) == ExactRatio(7, 19));
  CHECK(family_limit(Family::Mpn) == 1);
  CHECK(family_limit(Family::Dihedral2n) == 0);
  CHECK(family_limit(Family::Semidihedral2n) == 0);
  CHECK_THROWS_AS(ndeg_family(Family::Mpn, 2, 3), ConstraintError);
  CHECK_THROWS_AS(ndeg_family(Family::Semidihedral2n, 2, 3), ConstraintError);
  CHECK_THROWS_AS(ndeg_family(Family::Dihedral2n, 3, 4), ConstraintError);
  // every subgroup of the quotient by the normal order-p subgroup is normal, plus the trivial one
  for (std::uint64_t p : {2, 3, 5})
    for (std::uint64_t n = (p == 2 ? 4 : 3); n <= 30; ++n)
      CHECK(family_normal_count(Family::Mpn, p, n) == abelian_rank2_total(p, 1, static_cast<unsigned>(n - 2)) + 1);
}

TEST_CASE("family sequences are monotone") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const std::uint64_t start = p == 2 ? 4 : 3;
    for (std::uint64_t n = start; n < 64; ++n) REQUIRE(ndeg_family(Family::Mpn, p, n) < ndeg_family(Family::Mpn, p, n + 1));
  }
  for (auto f : {Family::Dihedral2n, Family::Quaternion2n, Family::Semidihedral2n})
    for (std::uint64_t n = 4; n < 64; ++n) REQUIRE(ndeg_family(f, 2, n + 1) < ndeg_family(f, 2, n));
}

TEST_CASE("family_of and spec_of") {
  auto fp = family_of(groups::Term{groups::Family::Dih, {7}});
  REQUIRE(fp);
  CHECK(fp->family == Family::DihedralAnyN);
  CHECK(family_of(groups::Term{groups::Family::EA, {3, 2}})->family == Family::AbelianRank2);
  CHECK(family_of(groups::Term{groups::Family::EA, {3, 1}})->family == Family::Cyclic);
  CHECK_FALSE(family_of(groups::Term{groups::Family::Sym, {4}}));
  CHECK_FALSE(family_of(groups::Term{groups::Family::EA, {2, 3}}));
  CHECK(spec_of({Family::Dihedral2n, {4}}).str() == "Dih(8)");
  CHECK(spec_of({Family::AbelianRank2, {3, 1, 2}}).str() == "C(3) x C(9)");
  CHECK(family_name(Family::SemidirectPNK) == "sdp");
  CHECK(family_from_name("zm") == Family::ZMGroup);
  CHECK_FALSE(family_from_name("nope"));
}

TEST_CASE("formulas match brute force on small instances") {
  const FamilyParam params[] = {
      {Family::Mpn, {3, 3}},          {Family::Mpn, {2, 5}},           {Family::Dihedral2n, {5}},
      {Family::Quaternion2n, {4}},    {Family::Semidihedral2n, {5}},   {Family::DihedralAnyN, {12}},
      {Family::SemidirectPNK, {3, 13, 3}}, {Family::ZMGroup, {7, 6, 3}}, {Family::Cyclic, {60}},
      {Family::AbelianRank2, {2, 2, 3}},
  };
  for (const auto& fp : params) {
    CAPTURE(spec_of(fp).str());
    auto c = counts(fp);
    auto [l, n] = brute_counts(fp);
    CHECK(c.lattice_size == l);
    CHECK(c.normal_count == n);
  }
}
