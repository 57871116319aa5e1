#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "normdeg/exact_ratio.hpp"
#include "normdeg/groups.hpp"
#include "normdeg/lattice.hpp"

namespace normdeg::degrees {

using groups::GroupTable;
using lattice::SubgroupLattice;

enum class Method { brute, conjugacy, formula, product };

std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

struct DegreeReport {
  std::string spec;
  BigInt order;
  BigInt lattice_size;
  BigInt normal_count;
  ExactRatio ndeg;
  std::optional<ExactRatio> sd;
  Method method = Method::brute;
  std::uint64_t elapsed_ms = 0;
};

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal
/// strings; ratios are "num/den" strings.
nlohmann::json to_json(const DegreeReport& r);
DegreeReport report_from_json(const nlohmann::json& j);

/// |N(G)| / |L(G)| straight from the normal flags.
DegreeReport ndeg_brute(const GroupTable& g, const SubgroupLattice& lat, std::string spec = {});
/// Enumerates the lattice itself; elapsed_ms covers the enumeration.
DegreeReport ndeg_brute(const GroupTable& g, std::string spec,
                        std::size_t order_cap = lattice::kDefaultOrderCap);

/// Fraction of ordered pairs (H, K) with HK = KH.
ExactRatio sd_brute(const GroupTable& g, const SubgroupLattice& lat);

/// |N| / (|N| + sum over non-normal class representatives of (G : N_G(H))).
DegreeReport ndeg_conjugacy(const GroupTable& g, const SubgroupLattice& lat, std::string spec = {});
DegreeReport ndeg_conjugacy(const GroupTable& g, std::string spec,
                            std::size_t order_cap = lattice::kDefaultOrderCap);

bool is_dedekind(const SubgroupLattice& lat);

struct PGroupBound {
  ExactRatio bound;
  ExactRatio ndeg;
  bool holds;
};

/// ndeg <= |N| / (|N| + p * #non-normal classes) for a p-group.
/// Throws ConstraintError when |G| is not a power of p.
PGroupBound pgroup_bound_check(const GroupTable& g, const SubgroupLattice& lat, std::uint64_t p);

/// Multiplies the reports of groups with pairwise coprime orders. Throws
/// ConstraintError naming the first pair sharing a factor.
DegreeReport ndeg_coprime_product(std::span<const DegreeReport> parts);

}  // namespace normdeg::degrees
