#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "normdeg/element_set.hpp"
#include "normdeg/groups.hpp"

namespace normdeg::lattice {

using groups::GroupTable;

/// A subgroup of a fixed GroupTable: membership bitset plus a generating set.
struct SubgroupSet {
  ElementSet members;
  std::size_t size = 0;
  std::vector<Element> generators;

  bool contains(Element e) const { return members.test(e); }
};

inline constexpr std::size_t kDefaultOrderCap = 512;

struct ConjugacyClass {
  std::size_t representative;  ///< lowest canonical index in the class
  std::vector<std::size_t> members;
};

/// All subgroups of a group in canonical order (size, then lexicographic
/// element list), so index 0 is the trivial subgroup and the last index is
/// the whole group.
class SubgroupLattice {
 public:
  std::size_t group_order() const noexcept { return group_order_; }
  std::size_t size() const noexcept { return subgroups_.size(); }
  const SubgroupSet& operator[](std::size_t i) const { return subgroups_[i]; }
  const std::vector<SubgroupSet>& subgroups() const noexcept { return subgroups_; }

  bool is_normal(std::size_t i) const { return normal_[i] != 0; }
  std::size_t normal_count() const;

  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }

  std::optional<std::size_t> index_of(const ElementSet& members) const;

 private:
  friend SubgroupLattice enumerate_subgroups(const GroupTable&, std::size_t);
  friend void conjugacy_classes(const GroupTable&, SubgroupLattice&);

  std::size_t group_order_ = 0;
  std::vector<SubgroupSet> subgroups_;
  std::vector<char> normal_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
};

/// Smallest subgroup containing `seed`.
SubgroupSet generated_subgroup(const GroupTable& g, std::span<const Element> seed);

/// <H, x>, grown coset by coset from H.
SubgroupSet join(const GroupTable& g, const SubgroupSet& h, Element x);

/// Wraps an arbitrary subgroup bitset, recovering a generating set.
SubgroupSet from_members(const GroupTable& g, const ElementSet& members);

/// Seeds with every cyclic subgroup and closes under joins with cyclic
/// subgroups until nothing new appears. Fills normal flags and conjugacy
/// classes. Throws CapExceeded when |G| > order_cap.
SubgroupLattice enumerate_subgroups(const GroupTable& g, std::size_t order_cap = kDefaultOrderCap);

/// g H g^-1 as a bitset.
ElementSet conjugate(const GroupTable& g, const ElementSet& h, Element by);

bool is_normal(const GroupTable& g, const SubgroupSet& h);
SubgroupSet normalizer(const GroupTable& g, const SubgroupSet& h);
/// Intersection of all conjugates of H.
SubgroupSet core(const GroupTable& g, const SubgroupSet& h);

/// Orbit partition of the lattice under conjugation; stored into `lat`.
void conjugacy_classes(const GroupTable& g, SubgroupLattice& lat);

struct FixPoints {
  std::vector<std::size_t> fix_conj;  ///< singleton conjugation orbits
  std::vector<std::size_t> fix_core;  ///< subgroups equal to their core
};

FixPoints fix_points(const GroupTable& g, const SubgroupLattice& lat);

}  // namespace normdeg::lattice
