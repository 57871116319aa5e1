#include "normdeg/degrees.hpp"

#include <chrono>

#include "normdeg/errors.hpp"
#include "normdeg/numtheory.hpp"

namespace normdeg::degrees {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

nlohmann::json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::uint64_t>(v);
  }
  return v.str();
}

BigInt big_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("expected integer");
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::brute: return "brute";
    case Method::conjugacy: return "conjugacy";
    case Method::formula: return "formula";
    case Method::product: return "product";
  }
  return "unknown";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : {Method::brute, Method::conjugacy, Method::formula, Method::product}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

nlohmann::json to_json(const DegreeReport& r) {
  nlohmann::json j;
  j["spec"] = r.spec;
  j["order"] = big_to_json(r.order);
  j["lattice_size"] = big_to_json(r.lattice_size);
  j["normal_count"] = big_to_json(r.normal_count);
  j["ndeg"] = r.ndeg.str();
  j["sd"] = r.sd ? nlohmann::json(r.sd->str()) : nlohmann::json(nullptr);
  j["method"] = std::string(method_name(r.method));
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

DegreeReport report_from_json(const nlohmann::json& j) {
  DegreeReport r;
  r.spec = j.at("spec").get<std::string>();
  r.order = big_from_json(j.at("order"));
  r.lattice_size = big_from_json(j.at("lattice_size"));
  r.normal_count = big_from_json(j.at("normal_count"));
  r.ndeg = ExactRatio::parse(j.at("ndeg").get<std::string>());
  if (j.contains("sd") && !j.at("sd").is_null()) {
    r.sd = ExactRatio::parse(j.at("sd").get<std::string>());
  }
  auto m = method_from_name(j.at("method").get<std::string>());
  if (!m) throw std::invalid_argument("unknown method");
  r.method = *m;
  r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
  return r;
}

DegreeReport ndeg_brute(const GroupTable& g, const SubgroupLattice& lat, std::string spec) {
  DegreeReport r;
  r.spec = std::move(spec);
  r.order = g.order();
  r.lattice_size = lat.size();
  r.normal_count = lat.normal_count();
  r.ndeg = ExactRatio(r.normal_count, r.lattice_size);
  r.method = Method::brute;
  return r;
}

DegreeReport ndeg_brute(const GroupTable& g, std::string spec, std::size_t order_cap) {
  auto start = Clock::now();
  SubgroupLattice lat = lattice::enumerate_subgroups(g, order_cap);
  DegreeReport r = ndeg_brute(g, lat, std::move(spec));
  r.elapsed_ms = ms_since(start);
  return r;
}

ExactRatio sd_brute(const GroupTable& g, const SubgroupLattice& lat) {
  const std::size_t n = lat.size();
  BigInt permuting = 0;
  std::uint64_t off_diagonal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& h = lat[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& k = lat[j];
      bool permutes;
      if (lat.is_normal(i) || lat.is_normal(j) || h.members.is_subset_of(k.members)) {
        permutes = true;
      } else {
        // |HK| = |H||K|/|H n K|; HK is a subgroup iff it fills <H, K>.
        const std::size_t meet = h.members.intersection_count(k.members);
        const std::size_t product = h.size * k.size / meet;
        if (g.order() % product != 0) {
          permutes = false;
        } else {
          lattice::SubgroupSet joined = h;
          for (Element x : k.generators) {
            joined = lattice::join(g, joined, x);
            if (joined.size > product) break;
          }
          permutes = joined.size == product;
        }
      }
      if (permutes) ++off_diagonal;
    }
  }
  permuting = BigInt(off_diagonal) * 2 + n;
  return ExactRatio(permuting, BigInt(n) * n);
}

DegreeReport ndeg_conjugacy(const GroupTable& g, const SubgroupLattice& lat, std::string spec) {
  BigInt normal = lat.normal_count();
  BigInt denominator = normal;
  for (const auto& cls : lat.classes()) {
    if (lat.is_normal(cls.representative)) continue;
    denominator += g.order() / lattice::normalizer(g, lat[cls.representative]).size;
  }
  DegreeReport r;
  r.spec = std::move(spec);
  r.order = g.order();
  r.lattice_size = denominator;
  r.normal_count = normal;
  r.ndeg = ExactRatio(normal, denominator);
  r.method = Method::conjugacy;
  return r;
}

DegreeReport ndeg_conjugacy(const GroupTable& g, std::string spec, std::size_t order_cap) {
  auto start = Clock::now();
  SubgroupLattice lat = lattice::enumerate_subgroups(g, order_cap);
  DegreeReport r = ndeg_conjugacy(g, lat, std::move(spec));
  r.elapsed_ms = ms_since(start);
  return r;
}

bool is_dedekind(const SubgroupLattice& lat) { return lat.normal_count() == lat.size(); }

PGroupBound pgroup_bound_check(const GroupTable& g, const SubgroupLattice& lat, std::uint64_t p) {
  if (!numtheory::is_prime(p)) throw ConstraintError("p-group bound: " + std::to_string(p) + " is not prime");
  std::uint64_t n = g.order();
  while (n % p == 0) n /= p;
  if (n != 1) {
    throw ConstraintError("p-group bound: order " + std::to_string(g.order()) +
                          " is not a power of " + std::to_string(p));
  }
  std::uint64_t non_normal_classes = 0;
  for (const auto& cls : lat.classes()) {
    if (!lat.is_normal(cls.representative)) ++non_normal_classes;
  }
  const BigInt normal = lat.normal_count();
  PGroupBound out{ExactRatio(normal, normal + BigInt(p) * non_normal_classes),
                  ExactRatio(normal, BigInt(lat.size())), false};
  out.holds = out.ndeg <= out.bound;
  return out;
}

DegreeReport ndeg_coprime_product(std::span<const DegreeReport> parts) {
  if (parts.empty()) throw std::invalid_argument("ndeg_coprime_product: no parts");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      BigInt common = boost::multiprecision::gcd(parts[i].order, parts[j].order);
      if (common != 1) {
        throw ConstraintError("orders not coprime: " + parts[i].spec + " (order " +
                              parts[i].order.str() + ") and " + parts[j].spec + " (order " +
                              parts[j].order.str() + ") share factor " + common.str());
      }
    }
  }
  DegreeReport r;
  r.method = Method::product;
  r.order = 1;
  r.lattice_size = 1;
  r.normal_count = 1;
  r.ndeg = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) r.spec += " x ";
    r.spec += parts[i].spec;
    r.order *= parts[i].order;
    // Coprime orders: every subgroup of the product is a product of subgroups.
    r.lattice_size *= parts[i].lattice_size;
    r.normal_count *= parts[i].normal_count;
    r.ndeg *= parts[i].ndeg;
    r.elapsed_ms += parts[i].elapsed_ms;
  }
  return r;
}

}  // namespace normdeg::degrees
