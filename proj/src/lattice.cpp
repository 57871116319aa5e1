#include "normdeg/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "normdeg/errors.hpp"

namespace normdeg::lattice {

namespace {

SubgroupSet trivial(const GroupTable& g) {
  SubgroupSet t{ElementSet(g.order()), 1, {}};
  t.members.set(0);
  return t;
}

bool canonical_less(const SubgroupSet& a, const SubgroupSet& b) {
  if (a.size != b.size) return a.size < b.size;
  return a.members.lex_less(b.members);
}

}  // namespace

SubgroupSet join(const GroupTable& g, const SubgroupSet& h, Element x) {
  if (h.contains(x)) return h;
  SubgroupSet r{h.members, h.size, h.generators};
  r.generators.push_back(x);
  const std::vector<Element> base = h.members.elements();

  // Right cosets H*t; the union is closed once every rep times every
  // generator lands inside it.
  std::vector<Element> reps{0};
  auto add_coset = [&](Element t) {
    for (Element e : base) r.members.set(g.mul(e, t));
    r.size += base.size();
    reps.push_back(t);
  };
  add_coset(x);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (Element s : r.generators) {
      Element t = g.mul(reps[i], s);
      if (!r.members.test(t)) add_coset(t);
    }
  }
  return r;
}

SubgroupSet generated_subgroup(const GroupTable& g, std::span<const Element> seed) {
  SubgroupSet h = trivial(g);
  for (Element x : seed) h = join(g, h, x);
  return h;
}

SubgroupSet from_members(const GroupTable& g, const ElementSet& members) {
  SubgroupSet h = trivial(g);
  members.for_each([&](Element x) {
    if (!h.contains(x)) h = join(g, h, x);
  });
  return h;
}

ElementSet conjugate(const GroupTable& g, const ElementSet& h, Element by) {
  ElementSet out(g.order());
  h.for_each([&](Element e) { out.set(g.conj(by, e)); });
  return out;
}

bool is_normal(const GroupTable& g, const SubgroupSet& h) {
  // Conjugation is an automorphism, so gHg^-1 = H iff it maps the
  // generators of H into H.
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (Element s : h.generators) {
      if (!h.contains(g.conj(static_cast<Element>(x), s))) return false;
    }
  }
  return true;
}

SubgroupSet normalizer(const GroupTable& g, const SubgroupSet& h) {
  ElementSet members(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool fixes = true;
    for (Element s : h.generators) {
      if (!h.contains(g.conj(static_cast<Element>(x), s))) {
        fixes = false;
        break;
      }
    }
    if (fixes) members.set(static_cast<Element>(x));
  }
  return from_members(g, members);
}

SubgroupSet core(const GroupTable& g, const SubgroupSet& h) {
  ElementSet running = h.members;
  for (std::size_t x = 1; x < g.order() && running.count() > 1; ++x) {
    running &= conjugate(g, h.members, static_cast<Element>(x));
  }
  return from_members(g, running);
}

std::size_t SubgroupLattice::normal_count() const {
  return static_cast<std::size_t>(std::count(normal_.begin(), normal_.end(), 1));
}

std::optional<std::size_t> SubgroupLattice::index_of(const ElementSet& members) const {
  auto it = index_.find(members);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SubgroupLattice enumerate_subgroups(const GroupTable& g, std::size_t order_cap) {
  if (g.order() > order_cap) throw CapExceeded("enumeration cap", g.order(), order_cap);

  std::vector<SubgroupSet> subs;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto insert = [&](SubgroupSet s) {
    auto [it, fresh] = seen.try_emplace(s.members, subs.size());
    if (fresh) subs.push_back(std::move(s));
  };

  // Cyclic subgroups, one generator each.
  std::vector<Element> cyclic_gens;
  insert(trivial(g));
  for (std::size_t x = 1; x < g.order(); ++x) {
    const Element e = static_cast<Element>(x);
    SubgroupSet c = generated_subgroup(g, std::span<const Element>(&e, 1));
    if (!seen.contains(c.members)) {
      cyclic_gens.push_back(e);
      insert(std::move(c));
    }
  }

  // Every subgroup is a join of cyclic subgroups, so closing under
  // "join with one cyclic subgroup" reaches all of them.
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (Element c : cyclic_gens) {
      if (subs[i].contains(c)) continue;
      SubgroupSet j = join(g, subs[i], c);
      insert(std::move(j));
    }
  }

  std::sort(subs.begin(), subs.end(), canonical_less);

  SubgroupLattice lat;
  lat.group_order_ = g.order();
  lat.subgroups_ = std::move(subs);
  for (std::size_t i = 0; i < lat.subgroups_.size(); ++i) {
    lat.index_.emplace(lat.subgroups_[i].members, i);
  }
  lat.normal_.resize(lat.subgroups_.size());
  for (std::size_t i = 0; i < lat.subgroups_.size(); ++i) {
    lat.normal_[i] = is_normal(g, lat.subgroups_[i]) ? 1 : 0;
  }
  conjugacy_classes(g, lat);
  return lat;
}

void conjugacy_classes(const GroupTable& g, SubgroupLattice& lat) {
  const std::size_t n = lat.size();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  lat.class_of_.assign(n, kUnassigned);
  lat.classes_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (lat.class_of_[i] != kUnassigned) continue;
    const std::size_t cls = lat.classes_.size();
    ConjugacyClass c{i, {i}};
    lat.class_of_[i] = cls;
    for (std::size_t x = 1; x < g.order(); ++x) {
      ElementSet image = conjugate(g, lat[i].members, static_cast<Element>(x));
      auto j = lat.index_of(image);
      if (!j) throw std::logic_error("conjugate subgroup missing from lattice");
      if (lat.class_of_[*j] == kUnassigned) {
        lat.class_of_[*j] = cls;
        c.members.push_back(*j);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    lat.classes_.push_back(std::move(c));
  }
}

FixPoints fix_points(const GroupTable& g, const SubgroupLattice& lat) {
  FixPoints fp;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (lat.classes()[lat.class_of(i)].members.size() == 1) fp.fix_conj.push_back(i);
    if (core(g, lat[i]).members == lat[i].members) fp.fix_core.push_back(i);
  }
  return fp;
}

}  // namespace normdeg::lattice
