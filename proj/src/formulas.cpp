#include "normdeg/formulas.hpp"

#include <stdexcept>
#include <string>

#include "normdeg/errors.hpp"
#include "normdeg/numtheory.hpp"

namespace normdeg::formulas {

namespace nt = numtheory;

namespace {

constexpr std::pair<Family, std::string_view> kNames[] = {
    {Family::Mpn, "mpn"},
    {Family::Dihedral2n, "dihedral2n"},
    {Family::Quaternion2n, "quaternion2n"},
    {Family::Semidihedral2n, "semidihedral2n"},
    {Family::DihedralAnyN, "dihedral"},
    {Family::SemidirectPNK, "sdp"},
    {Family::ZMGroup, "zm"},
    {Family::AbelianRank2, "abelian2"},
    {Family::Cyclic, "cyclic"},
};

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

[[noreturn]] void violated(std::string_view what, const std::string& condition) {
  throw ConstraintError(std::string(what) + ": requires " + condition);
}

void check_pgroup_family(Family f, std::uint64_t p, std::uint64_t n) {
  constexpr std::uint64_t kMaxExponent = 1u << 16;
  if (n > kMaxExponent) violated(family_name(f), "n <= 65536");
  switch (f) {
    case Family::Mpn:
      if (!nt::is_prime(p)) violated("Mpn", "p prime");
      if (n < 3) violated("Mpn", "n >= 3");
      if (p == 2 && n < 4) violated("Mpn", "n >= 4 when p = 2");
      return;
    case Family::Dihedral2n:
    case Family::Quaternion2n:
      if (p != 2) violated(family_name(f), "p = 2");
      if (n < 3) violated(family_name(f), "n >= 3");
      return;
    case Family::Semidihedral2n:
      if (p != 2) violated(family_name(f), "p = 2");
      if (n < 4) violated(family_name(f), "n >= 4");
      return;
    default:
      throw std::invalid_argument("not a p-group family with a cyclic maximal subgroup: " +
                                  std::string(family_name(f)));
  }
}

void check_sdp(std::uint64_t p, std::uint64_t n, std::uint64_t k0) {
  groups::validate(groups::Term{groups::Family::SDP, {p, n, k0}});
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& [fam, n] : kNames) {
    if (n == name) return fam;
  }
  return std::nullopt;
}

BigInt lattice_size_semidirect(std::uint64_t p, std::uint64_t n, std::uint64_t k0) {
  check_sdp(p, n, k0);
  const std::uint64_t d = nt::gcd((k0 % n + n - 1) % n, n);
  return BigInt(nt::tau(n)) + nt::gcd_divisor_sum(n, n / d);
}

BigInt normal_count_semidirect(std::uint64_t p, std::uint64_t n, std::uint64_t k0) {
  check_sdp(p, n, k0);
  // <x^e, y> is normal exactly when e | gcd(k0 - 1, n); e = 1 is G itself.
  const std::uint64_t d = nt::gcd((k0 % n + n - 1) % n, n);
  return BigInt(nt::tau(n)) + nt::tau(d);
}

ExactRatio ndeg_semidirect(std::uint64_t p, std::uint64_t n, std::uint64_t k0) {
  return ExactRatio(normal_count_semidirect(p, n, k0), lattice_size_semidirect(p, n, k0));
}

SemidirectBounds semidirect_bounds(std::uint64_t p, std::uint64_t n, std::uint64_t k0) {
  check_sdp(p, n, k0);
  const BigInt t = nt::tau(n);
  const std::uint64_t r = n / nt::gcd((k0 % n + n - 1) % n, n);
  return SemidirectBounds{ExactRatio(t + 1, 2 * t), ExactRatio(t + 1, t + nt::sigma(n)),
                          ExactRatio(t + 1, t * (r + 1)), r};
}

ExactRatio ndeg_dihedral(std::uint64_t n) {
  if (n < 3) violated("dihedral", "n >= 3");
  const BigInt t = nt::tau(n);
  const BigInt s = nt::sigma(n);
  return n % 2 == 1 ? ExactRatio(t + 1, t + s) : ExactRatio(t + 3, t + s);
}

Counts zm_counts(std::uint64_t m, std::uint64_t n, std::uint64_t r) {
  groups::validate(groups::Term{groups::Family::ZM, {m, n, r}});
  Counts c{0, 0};
  const auto n_divs = nt::divisors(n);
  for (std::uint64_t m1 : nt::divisors(m)) {
    for (std::uint64_t n1 : n_divs) {
      // (r^n - 1)/(r^n1 - 1) as 1 + r^n1 + ... + r^(n - n1); only its
      // residue mod m1 matters for the gcd.
      const std::uint64_t step = nt::pow_mod(r, n1, m1);
      std::uint64_t term = 1 % m1;
      std::uint64_t quotient = 0;
      for (std::uint64_t t = 0; t < n / n1; ++t) {
        quotient = (quotient + term) % m1;
        term = nt::mul_mod(term, step, m1);
      }
      c.lattice_size += nt::gcd(m1, quotient);
    }
  }
  for (std::uint64_t n1 : n_divs) {
    const std::uint64_t residue = (nt::pow_mod(r, n1, m) + m - 1 % m) % m;
    c.normal_count += nt::tau(nt::gcd(m, residue));
  }
  if (r % m == 1 % m && c.lattice_size != c.normal_count) {
    // r = 1 forces m = 1 (a cyclic group); accepted only when both counts agree.
    violated("ZM", "r != 1 (mod m) unless both counts agree");
  }
  return c;
}

ExactRatio ndeg_zm(std::uint64_t m, std::uint64_t n, std::uint64_t r) { return zm_counts(m, n, r).ndeg(); }

BigInt abelian_rank2_count(std::uint64_t p, unsigned a1, unsigned a2, unsigned alpha) {
  if (!nt::is_prime(p)) violated("abelian2", "p prime");
  if (a1 > a2) violated("abelian2", "a1 <= a2");
  if (alpha > a1 + a2) violated("abelian2", "0 <= alpha <= a1 + a2");
  unsigned e;
  if (alpha <= a1) {
    e = alpha + 1;
  } else if (alpha <= a2) {
    e = a1 + 1;
  } else {
    e = a1 + a2 - alpha + 1;
  }
  return (big_pow(p, e) - 1) / (p - 1);
}

BigInt abelian_rank2_total(std::uint64_t p, unsigned a1, unsigned a2) {
  if (!nt::is_prime(p)) violated("abelian2", "p prime");
  if (a1 > a2) violated("abelian2", "a1 <= a2");
  const BigInt P = p;
  const BigInt A1 = a1, A2 = a2;
  BigInt numerator = (A2 - A1 + 1) * big_pow(p, a1 + 2) - (A2 - A1 - 1) * big_pow(p, a1 + 1) -
                     (A1 + A2 + 3) * P + (A1 + A2 + 1);
  const BigInt denominator = (P - 1) * (P - 1);
  if (numerator % denominator != 0) throw std::logic_error("abelian2 total not integral");
  return numerator / denominator;
}

BigInt family_lattice_size(Family f, std::uint64_t p, std::uint64_t n) {
  check_pgroup_family(f, p, n);
  const BigInt N = n;
  switch (f) {
    case Family::Mpn: return (1 + BigInt(p)) * N + 1 - p;
    case Family::Dihedral2n: return big_pow(2, n) + N - 1;
    case Family::Quaternion2n: return big_pow(2, n - 1) + N - 1;
    case Family::Semidihedral2n: return 3 * big_pow(2, n - 2) + N - 1;
    default: break;
  }
  throw std::logic_error("unreachable");
}

BigInt family_normal_count(Family f, std::uint64_t p, std::uint64_t n) {
  check_pgroup_family(f, p, n);
  if (f == Family::Mpn) return (1 + BigInt(p)) * n + 1 - 2 * BigInt(p);
  return BigInt(n) + 3;
}

ExactRatio ndeg_family(Family f, std::uint64_t p, std::uint64_t n) {
  return ExactRatio(family_normal_count(f, p, n), family_lattice_size(f, p, n));
}

int family_limit(Family f) {
  switch (f) {
    case Family::Mpn: return 1;
    case Family::Dihedral2n:
    case Family::Quaternion2n:
    case Family::Semidihedral2n: return 0;
    default: break;
  }
  throw std::invalid_argument("no limit for family " + std::string(family_name(f)));
}

void validate(const FamilyParam& fp) { (void)counts(fp); }

Counts counts(const FamilyParam& fp) {
  const auto& a = fp.params;
  auto need = [&](std::size_t k) {
    if (a.size() != k) {
      violated(family_name(fp.family), std::to_string(k) + " parameter(s)");
    }
  };
  switch (fp.family) {
    case Family::Mpn:
      need(2);
      return {family_lattice_size(fp.family, a[0], a[1]), family_normal_count(fp.family, a[0], a[1])};
    case Family::Dihedral2n:
    case Family::Quaternion2n:
    case Family::Semidihedral2n:
      need(1);
      return {family_lattice_size(fp.family, 2, a[0]), family_normal_count(fp.family, 2, a[0])};
    case Family::DihedralAnyN: {
      need(1);
      if (a[0] < 3) violated("dihedral", "n >= 3");
      const BigInt t = nt::tau(a[0]);
      return {t + nt::sigma(a[0]), a[0] % 2 == 1 ? t + 1 : t + 3};
    }
    case Family::SemidirectPNK:
      need(3);
      return {lattice_size_semidirect(a[0], a[1], a[2]), normal_count_semidirect(a[0], a[1], a[2])};
    case Family::ZMGroup:
      need(3);
      return zm_counts(a[0], a[1], a[2]);
    case Family::AbelianRank2: {
      need(3);
      if (a[1] > 64 || a[2] > 64) violated("abelian2", "a1, a2 <= 64");
      BigInt total = abelian_rank2_total(a[0], static_cast<unsigned>(a[1]), static_cast<unsigned>(a[2]));
      return {total, total};
    }
    case Family::Cyclic: {
      need(1);
      if (a[0] < 1) violated("cyclic", "n >= 1");
      const BigInt t = nt::tau(a[0]);
      return {t, t};
    }
  }
  throw std::logic_error("unhandled family");
}

std::optional<FamilyParam> family_of(const groups::Term& term) {
  using GF = groups::Family;
  const auto& a = term.params;
  switch (term.family) {
    case GF::C: return FamilyParam{Family::Cyclic, {a[0]}};
    case GF::Dih:
      if (a[0] < 3) return std::nullopt;
      return FamilyParam{Family::DihedralAnyN, {a[0]}};
    case GF::Q: return FamilyParam{Family::Quaternion2n, {a[0]}};
    case GF::SD: return FamilyParam{Family::Semidihedral2n, {a[0]}};
    case GF::M: return FamilyParam{Family::Mpn, {a[0], a[1]}};
    case GF::SDP: return FamilyParam{Family::SemidirectPNK, {a[0], a[1], a[2]}};
    case GF::ZM: return FamilyParam{Family::ZMGroup, {a[0], a[1], a[2]}};
    case GF::EA:
      if (a[1] == 1) return FamilyParam{Family::Cyclic, {a[0]}};
      if (a[1] == 2) return FamilyParam{Family::AbelianRank2, {a[0], 1, 1}};
      return std::nullopt;
    case GF::Sym: return std::nullopt;
  }
  return std::nullopt;
}

groups::GroupSpec spec_of(const FamilyParam& fp) {
  using GF = groups::Family;
  const auto& a = fp.params;
  auto one = [](GF f, std::vector<std::uint64_t> params) {
    return groups::GroupSpec{{groups::Term{f, std::move(params)}}};
  };
  switch (fp.family) {
    case Family::Mpn: return one(GF::M, {a[0], a[1]});
    case Family::Dihedral2n: return one(GF::Dih, {nt::checked_pow(2, static_cast<unsigned>(a[0] - 1))});
    case Family::Quaternion2n: return one(GF::Q, {a[0]});
    case Family::Semidihedral2n: return one(GF::SD, {a[0]});
    case Family::DihedralAnyN: return one(GF::Dih, {a[0]});
    case Family::SemidirectPNK: return one(GF::SDP, {a[0], a[1], a[2]});
    case Family::ZMGroup: return one(GF::ZM, {a[0], a[1], a[2]});
    case Family::AbelianRank2:
      return groups::GroupSpec{
          {groups::Term{GF::C, {nt::checked_pow(a[0], static_cast<unsigned>(a[1]))}},
           groups::Term{GF::C, {nt::checked_pow(a[0], static_cast<unsigned>(a[2]))}}}};
    case Family::Cyclic: return one(GF::C, {a[0]});
  }
  throw std::logic_error("unhandled family");
}

}  // namespace normdeg::formulas
