#include "normdeg/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>

#include "normdeg/errors.hpp"
#include "normdeg/numtheory.hpp"

namespace normdeg::groups {

namespace nt = numtheory;

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::C, "C", 1},     {Family::Dih, "Dih", 1}, {Family::Q, "Q", 1},
    {Family::SD, "SD", 1},   {Family::M, "M", 2},     {Family::Sym, "Sym", 1},
    {Family::SDP, "SDP", 3}, {Family::ZM, "ZM", 3},   {Family::EA, "EA", 2},
};

const FamilyInfo& info(Family f) {
  for (const auto& fi : kFamilies) {
    if (fi.family == f) return fi;
  }
  throw std::logic_error("unknown family");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupSpec parse() {
    GroupSpec spec;
    skip_ws();
    spec.factors.push_back(term());
    skip_ws();
    while (pos_ < text_.size()) {
      if (text_[pos_] != 'x') fail("expected 'x' or end of input");
      ++pos_;
      skip_ws();
      spec.factors.push_back(term());
      skip_ws();
    }
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (UINT64_MAX - digit) / 10) {
        pos_ = start;
        fail("integer out of range");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return value;
  }

  Term term() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected group constructor name");
    std::string_view name = text_.substr(start, pos_ - start);
    auto family = family_from_name(name);
    if (!family) {
      pos_ = start;
      fail("unknown constructor '" + std::string(name) + "'");
    }
    Term t{*family, {}};
    expect('(');
    t.params.push_back(integer());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      t.params.push_back(integer());
      skip_ws();
    }
    expect(')');
    if (t.params.size() != family_arity(t.family)) {
      pos_ = start;
      fail(std::string(name) + " takes " + std::to_string(family_arity(t.family)) +
           " parameter(s), got " + std::to_string(t.params.size()));
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void violated(const Term& t, const std::string& condition) {
  throw ConstraintError(t.str() + ": requires " + condition);
}

std::string power_label(std::string_view sym, std::uint64_t e) {
  if (e == 0) return {};
  std::string s(sym);
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

GroupTable build_cyclic(std::uint64_t n) {
  std::vector<Element> mul(n * n);
  std::vector<std::string> labels(n);
  for (std::uint64_t a = 0; a < n; ++a) {
    labels[a] = a == 0 ? "1" : power_label("x", a);
    for (std::uint64_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Element>((a + b) % n);
  }
  return GroupTable(n, std::move(mul), std::move(labels));
}

std::string cycle_label(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ",";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(perm[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

GroupTable build_symmetric(std::uint64_t n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Element> rank;
  for (std::size_t i = 0; i < perms.size(); ++i) rank[perms[i]] = static_cast<Element>(i);

  const std::size_t order = perms.size();
  std::vector<Element> mul(order * order);
  std::vector<int> composed(n);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      // (a*b)(i) = a(b(i))
      for (std::size_t i = 0; i < n; ++i) composed[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      mul[a * order + b] = rank.at(composed);
    }
  }
  std::vector<std::string> labels;
  labels.reserve(order);
  for (const auto& perm : perms) labels.push_back(cycle_label(perm));
  return GroupTable(order, std::move(mul), std::move(labels));
}

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& fi : kFamilies) {
    if (fi.name == name) return fi.family;
  }
  return std::nullopt;
}

std::size_t family_arity(Family f) { return info(f).arity; }

std::string Term::str() const {
  std::string s(family_name(family));
  s += "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(params[i]);
  }
  return s + ")";
}

std::string GroupSpec::str() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += factors[i].str();
  }
  return s;
}

BigInt term_order(const Term& t) {
  const auto& a = t.params;
  auto pow = [](std::uint64_t b, std::uint64_t e) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= b;
    return r;
  };
  switch (t.family) {
    case Family::C: return a[0];
    case Family::Dih: return BigInt(a[0]) * 2;
    case Family::Q:
    case Family::SD: return pow(2, a[0]);
    case Family::M:
    case Family::EA: return pow(a[0], a[1]);
    case Family::Sym: {
      BigInt r = 1;
      for (std::uint64_t i = 2; i <= a[0]; ++i) r *= i;
      return r;
    }
    case Family::SDP: return BigInt(a[0]) * a[1];
    case Family::ZM: return BigInt(a[0]) * a[1];
  }
  return 0;
}

BigInt GroupSpec::order() const {
  BigInt r = 1;
  for (const auto& t : factors) r *= term_order(t);
  return r;
}

void validate(const Term& t) {
  const auto& a = t.params;
  if (a.size() != family_arity(t.family)) violated(t, "correct parameter count");
  constexpr std::uint64_t kMaxExponent = 1u << 16;
  if ((t.family == Family::Q || t.family == Family::SD) && a[0] > kMaxExponent) {
    violated(t, "n <= 65536");
  }
  if ((t.family == Family::M || t.family == Family::EA) && a[1] > kMaxExponent) {
    violated(t, "n <= 65536");
  }
  switch (t.family) {
    case Family::C:
    case Family::Dih:
      if (a[0] < 1) violated(t, "n >= 1");
      break;
    case Family::Q:
      if (a[0] < 3) violated(t, "n >= 3");
      break;
    case Family::SD:
      if (a[0] < 4) violated(t, "n >= 4");
      break;
    case Family::M:
      if (!nt::is_prime(a[0])) violated(t, "p prime");
      if (a[1] < 3) violated(t, "n >= 3");
      if (a[0] == 2 && a[1] < 4) violated(t, "n >= 4 when p = 2");
      break;
    case Family::Sym:
      if (a[0] < 1) violated(t, "n >= 1");
      if (a[0] > 5) violated(t, "n <= 5");
      break;
    case Family::SDP: {
      const std::uint64_t p = a[0], n = a[1], k0 = a[2];
      if (!nt::is_prime(p)) violated(t, "p prime");
      if (n < 2) violated(t, "n >= 2");
      if (n % p == 0) violated(t, "p does not divide n");
      if (nt::gcd(k0 % n, n) != 1) violated(t, "gcd(k0, n) = 1");
      if (k0 % n == 1) violated(t, "k0 != 1 (mod n)");
      if (nt::pow_mod(k0, p, n) != 1 % n) violated(t, "k0^p = 1 (mod n)");
      break;
    }
    case Family::ZM: {
      const std::uint64_t m = a[0], n = a[1], r = a[2];
      if (m < 1 || n < 1 || r < 1) violated(t, "m, n, r >= 1");
      if (nt::gcd(m, n) != 1) violated(t, "gcd(m, n) = 1");
      if (nt::gcd(m, r - 1) != 1) violated(t, "gcd(m, r - 1) = 1");
      if (nt::pow_mod(r, n, m) != 1 % m) violated(t, "r^n = 1 (mod m)");
      break;
    }
    case Family::EA:
      if (!nt::is_prime(a[0])) violated(t, "p prime");
      if (a[1] < 1) violated(t, "n >= 1");
      break;
  }
}

GroupSpec parse_spec(std::string_view text) {
  GroupSpec spec = Parser(text).parse();
  for (const auto& t : spec.factors) validate(t);
  return spec;
}

GroupTable::GroupTable(std::size_t order, std::vector<Element> table, std::vector<std::string> labels)
    : order_(order), mul_(std::move(table)), inv_(order, 0), labels_(std::move(labels)), orders_(order, 0) {
  if (order_ == 0 || mul_.size() != order_ * order_) {
    throw std::invalid_argument("GroupTable: table size does not match order");
  }
  if (labels_.size() != order_) {
    labels_.resize(order_);
    for (std::size_t i = 0; i < order_; ++i) labels_[i] = "e" + std::to_string(i);
  }
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) {
      if (mul_[a * order_ + b] == 0) {
        inv_[a] = static_cast<Element>(b);
        break;
      }
    }
  }
  for (std::size_t a = 0; a < order_; ++a) {
    std::uint64_t k = 1;
    Element x = static_cast<Element>(a);
    while (x != 0 && k <= order_) {
      x = mul(x, static_cast<Element>(a));
      ++k;
    }
    orders_[a] = k;
    ++fingerprint_[k];
  }
}

GroupTable build_metacyclic(std::uint64_t m, std::uint64_t k, std::uint64_t r, std::uint64_t s) {
  const std::uint64_t order = m * k;
  std::vector<std::uint64_t> rpow(k, 1 % m);
  for (std::uint64_t j = 1; j < k; ++j) rpow[j] = nt::mul_mod(rpow[j - 1], r % m, m);

  std::vector<Element> mul(order * order);
  std::vector<std::string> labels(order);
  for (std::uint64_t a = 0; a < order; ++a) {
    const std::uint64_t j1 = a / m, i1 = a % m;
    std::string lab = power_label("y", j1) + power_label("x", i1);
    labels[a] = lab.empty() ? "1" : lab;
    for (std::uint64_t b = 0; b < order; ++b) {
      const std::uint64_t j2 = b / m, i2 = b % m;
      // y^j1 x^i1 y^j2 x^i2 = y^(j1+j2) x^(i1 r^j2 + i2)
      std::uint64_t j = j1 + j2;
      std::uint64_t i = (nt::mul_mod(i1, rpow[j2], m) + i2) % m;
      if (j >= k) {
        j -= k;
        i = (i + s) % m;
      }
      mul[a * order + b] = static_cast<Element>(j * m + i);
    }
  }
  return GroupTable(order, std::move(mul), std::move(labels));
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const std::size_t na = a.order(), nb = b.order(), order = na * nb;
  std::vector<Element> mul(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    const auto xa = static_cast<Element>(x / nb), xb = static_cast<Element>(x % nb);
    labels[x] = "(" + a.label(xa) + "," + b.label(xb) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      const auto ya = static_cast<Element>(y / nb), yb = static_cast<Element>(y % nb);
      mul[x * order + y] = static_cast<Element>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
  }
  return GroupTable(order, std::move(mul), std::move(labels));
}

GroupTable subgroup_table(const GroupTable& g, std::span<const Element> elements) {
  std::vector<Element> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || sorted.front() != 0) {
    throw std::invalid_argument("subgroup_table: identity missing");
  }
  std::vector<Element> index(g.order(), static_cast<Element>(-1));
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<Element>(i);
  const std::size_t n = sorted.size();
  std::vector<Element> mul(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = g.label(sorted[i]);
    for (std::size_t j = 0; j < n; ++j) {
      Element p = index[g.mul(sorted[i], sorted[j])];
      if (p == static_cast<Element>(-1)) throw std::invalid_argument("subgroup_table: not closed");
      mul[i * n + j] = p;
    }
  }
  return GroupTable(n, std::move(mul), std::move(labels));
}

GroupTable build(const Term& t, std::size_t max_order) {
  validate(t);
  const BigInt order = term_order(t);
  if (order > max_order) {
    throw CapExceeded("table order cap",
                      order > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(order),
                      max_order);
  }
  const auto& a = t.params;
  switch (t.family) {
    case Family::C: return build_cyclic(a[0]);
    case Family::Dih: return build_metacyclic(a[0], 2, a[0] - 1);
    case Family::Q: {
      const std::uint64_t m = std::uint64_t{1} << (a[0] - 1);
      return build_metacyclic(m, 2, m - 1, m / 2);
    }
    case Family::SD: {
      const std::uint64_t m = std::uint64_t{1} << (a[0] - 1);
      return build_metacyclic(m, 2, m / 2 - 1);
    }
    case Family::M: {
      const std::uint64_t q = nt::checked_pow(a[0], static_cast<unsigned>(a[1] - 2));
      return build_metacyclic(q * a[0], a[0], q + 1);
    }
    case Family::Sym: return build_symmetric(a[0]);
    case Family::SDP: return build_metacyclic(a[1], a[0], a[2] % a[1]);
    case Family::ZM: return build_metacyclic(a[0], a[1], a[2] % a[0]);
    case Family::EA: {
      GroupTable g = build_cyclic(a[0]);
      for (std::uint64_t i = 1; i < a[1]; ++i) g = direct_product(g, build_cyclic(a[0]));
      return g;
    }
  }
  throw std::logic_error("unhandled family");
}

GroupTable build(const GroupSpec& spec, std::size_t max_order) {
  for (const auto& t : spec.factors) validate(t);
  const BigInt order = spec.order();
  if (order > max_order) {
    throw CapExceeded("table order cap",
                      order > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(order),
                      max_order);
  }
  GroupTable g = build(spec.factors.front(), max_order);
  for (std::size_t i = 1; i < spec.factors.size(); ++i) {
    g = direct_product(g, build(spec.factors[i], max_order));
  }
  return g;
}

bool is_abelian(const GroupTable& g) {
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = a + 1; b < g.order(); ++b) {
      if (g.mul(static_cast<Element>(a), static_cast<Element>(b)) !=
          g.mul(static_cast<Element>(b), static_cast<Element>(a))) {
        return false;
      }
    }
  }
  return true;
}

std::uint64_t element_order(const GroupTable& g, Element x) { return g.element_order(x); }

std::optional<std::string> check_axioms(const GroupTable& g) {
  const std::size_t n = g.order();
  auto el = [](std::size_t v) { return static_cast<Element>(v); };
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      Element p = g.mul(el(a), el(b));
      if (p >= n || seen[p]) return "row " + std::to_string(a) + " is not a permutation";
      seen[p] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      Element p = g.mul(el(b), el(a));
      if (p >= n || seen[p]) return "column " + std::to_string(a) + " is not a permutation";
      seen[p] = 1;
    }
    if (g.mul(0, el(a)) != a || g.mul(el(a), 0) != a) {
      return "0 is not an identity for " + std::to_string(a);
    }
    if (g.mul(el(a), g.inv(el(a))) != 0 || g.mul(g.inv(el(a)), el(a)) != 0) {
      return "bad inverse for " + std::to_string(a);
    }
  }
  auto assoc = [&](Element a, Element b, Element c) {
    return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
  };
  auto describe = [](Element a, Element b, Element c) {
    std::ostringstream os;
    os << "associativity fails at (" << a << "," << b << "," << c << ")";
    return os.str();
  };
  if (n <= 128) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(el(a), el(b), el(c))) return describe(el(a), el(b), el(c));
  } else {
    std::mt19937_64 rng(0x6e6f726d646567ull);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 100000; ++i) {
      Element a = el(pick(rng)), b = el(pick(rng)), c = el(pick(rng));
      if (!assoc(a, b, c)) return describe(a, b, c);
    }
  }
  return std::nullopt;
}

}  // namespace normdeg::groups
