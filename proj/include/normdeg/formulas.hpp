#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "normdeg/exact_ratio.hpp"
#include "normdeg/groups.hpp"

namespace normdeg::formulas {

/// Group families with closed-form subgroup and normal-subgroup counts.
///   Mpn              M(p^n), params (p, n)
///   Dihedral2n       dihedral group of order 2^n, params (n)
///   Quaternion2n     generalized quaternion of order 2^n, params (n)
///   Semidihedral2n   semidihedral of order 2^n, params (n)
///   DihedralAnyN     dihedral group of order 2n, params (n), n >= 3
///   SemidirectPNK    Z_p acting on Z_n through k0, params (p, n, k0)
///   ZMGroup          ZM(m, n, r), params (m, n, r)
///   AbelianRank2     Z_{p^a1} x Z_{p^a2}, params (p, a1, a2), a1 <= a2
///   Cyclic           Z_n, params (n)
enum class Family {
  Mpn,
  Dihedral2n,
  Quaternion2n,
  Semidihedral2n,
  DihedralAnyN,
  SemidirectPNK,
  ZMGroup,
  AbelianRank2,
  Cyclic,
};

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct FamilyParam {
  Family family;
  std::vector<std::uint64_t> params;
};

struct Counts {
  BigInt lattice_size;
  BigInt normal_count;

  ExactRatio ndeg() const { return ExactRatio(normal_count, lattice_size); }
};

/// Throws ConstraintError for parameters outside the family's domain.
void validate(const FamilyParam& fp);
Counts counts(const FamilyParam& fp);

/// The formula family realizing a single spec term, if any.
std::optional<FamilyParam> family_of(const groups::Term& term);
/// Spec term for a family member (for building the brute-force oracle).
groups::GroupSpec spec_of(const FamilyParam& fp);

// Semidirect products Z_p x| Z_n.

BigInt lattice_size_semidirect(std::uint64_t p, std::uint64_t n, std::uint64_t k0);
/// tau(n) + tau(gcd(k0 - 1, n)). The normal subgroups outside Z_n are the
/// <x^e, y> with e | gcd(k0 - 1, n), so the count is tau(n) + 1 only when
/// gcd(k0 - 1, n) = 1.
BigInt normal_count_semidirect(std::uint64_t p, std::uint64_t n, std::uint64_t k0);
ExactRatio ndeg_semidirect(std::uint64_t p, std::uint64_t n, std::uint64_t k0);

struct SemidirectBounds {
  ExactRatio upper;    ///< (tau+1) / (2 tau)
  ExactRatio lower_a;  ///< (tau+1) / (tau + sigma)
  ExactRatio lower_b;  ///< (tau+1) / (tau (r+1))
  std::uint64_t r;     ///< n / gcd(k0-1, n)
};

SemidirectBounds semidirect_bounds(std::uint64_t p, std::uint64_t n, std::uint64_t k0);

/// Dihedral group of order 2n, n >= 3, odd/even piecewise.
ExactRatio ndeg_dihedral(std::uint64_t n);

Counts zm_counts(std::uint64_t m, std::uint64_t n, std::uint64_t r);
ExactRatio ndeg_zm(std::uint64_t m, std::uint64_t n, std::uint64_t r);

/// Number of subgroups of order p^(a1+a2-alpha) in Z_{p^a1} x Z_{p^a2}.
BigInt abelian_rank2_count(std::uint64_t p, unsigned a1, unsigned a2, unsigned alpha);
BigInt abelian_rank2_total(std::uint64_t p, unsigned a1, unsigned a2);

/// Four p-group families with a cyclic maximal subgroup. The 2-group
/// families require p == 2.
BigInt family_lattice_size(Family f, std::uint64_t p, std::uint64_t n);
BigInt family_normal_count(Family f, std::uint64_t p, std::uint64_t n);
ExactRatio ndeg_family(Family f, std::uint64_t p, std::uint64_t n);
/// Limit of ndeg_family as n grows: 1 for Mpn, 0 for the 2-group families.
int family_limit(Family f);

}  // namespace normdeg::formulas
