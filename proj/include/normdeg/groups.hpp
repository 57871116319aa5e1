#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normdeg/element_set.hpp"
#include "normdeg/exact_ratio.hpp"

namespace normdeg::groups {

/// Constructor names of the spec language.
///   C(n)          cyclic, order n
///   Dih(n)        dihedral, order 2n
///   Q(n)          generalized quaternion, order 2^n
///   SD(n)         semidihedral (quasi-dihedral), order 2^n
///   M(p,n)        modular p-group, order p^n
///   Sym(n)        symmetric group on n points
///   SDP(p,n,k0)   Z_p acting on Z_n by y -> k0*y
///   ZM(m,n,r)     <a,b | a^m = b^n = 1, b^-1 a b = a^r>
///   EA(p,n)       elementary abelian, order p^n
enum class Family { C, Dih, Q, SD, M, Sym, SDP, ZM, EA };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);
std::size_t family_arity(Family f);

struct Term {
  Family family;
  std::vector<std::uint64_t> params;

  std::string str() const;
  friend bool operator==(const Term&, const Term&) = default;
};

/// A direct product of one or more constructor terms.
struct GroupSpec {
  std::vector<Term> factors;

  /// Canonical rendering: terms joined by " x ", no other whitespace.
  std::string str() const;
  BigInt order() const;
  bool is_product() const { return factors.size() > 1; }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Throws ParseError for grammar/arity problems and ConstraintError for
/// parameters outside the family's domain.
GroupSpec parse_spec(std::string_view text);

/// Throws ConstraintError naming the violated condition.
void validate(const Term& term);
BigInt term_order(const Term& term);

inline constexpr std::size_t kMaxTableOrder = 4096;

/// A finite group as an explicit multiplication table. Element 0 is the
/// identity. Immutable once built.
class GroupTable {
 public:
  GroupTable(std::size_t order, std::vector<Element> mul, std::vector<std::string> labels = {});

  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  /// g h g^-1
  Element conj(Element g, Element h) const { return mul(mul(g, h), inv_[g]); }

  const std::string& label(Element a) const { return labels_[a]; }
  /// element order -> number of elements of that order
  const std::map<std::uint64_t, std::uint64_t>& fingerprint() const noexcept {
    return fingerprint_;
  }
  std::uint64_t element_order(Element a) const { return orders_[a]; }

 private:
  std::size_t order_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> orders_;
  std::map<std::uint64_t, std::uint64_t> fingerprint_;
};

GroupTable build(const GroupSpec& spec, std::size_t max_order = kMaxTableOrder);
GroupTable build(const Term& term, std::size_t max_order = kMaxTableOrder);

/// Z_k acting on Z_m: elements y^j x^i with id j*m + i, y^-1 x y = x^r and
/// y^k = x^s (s = 0 for a split extension).
GroupTable build_metacyclic(std::uint64_t m, std::uint64_t k, std::uint64_t r, std::uint64_t s = 0);

/// Lexicographic pairing: (a, b) gets id a*|B| + b.
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// Standalone table for a subgroup; elements are renumbered in increasing id
/// order, so the identity stays 0.
GroupTable subgroup_table(const GroupTable& g, std::span<const Element> elements);

bool is_abelian(const GroupTable& g);
std::uint64_t element_order(const GroupTable& g, Element x);

/// Latin square, identity, inverses, and associativity (exhaustive up to
/// order 128, 10^5 seeded random triples above). Returns a description of
/// the first failure.
std::optional<std::string> check_axioms(const GroupTable& g);

}  // namespace normdeg::groups
