#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "hoaft/order.hpp"

namespace hoaft {

namespace {

class DensePoset final : public Poset::Impl {
 public:
  DensePoset(std::vector<std::string> names, std::vector<Bits> up)
      : names_(std::move(names)), up_(std::move(up)), down_(names_.size(), Bits(names_.size())) {
    for (std::size_t a = 0; a < up_.size(); ++a)
      for (auto b = up_[a].find_first(); b != Bits::npos; b = up_[a].find_next(b)) down_[b].set(a);
  }

  std::size_t size() const override { return names_.size(); }
  bool leq(Element a, Element b) const override { return up_[a].test(b); }
  std::string name(Element e) const override { return names_[e]; }
  Bits up_set(Element a) const override { return up_[a]; }
  Bits down_set(Element a) const override { return down_[a]; }

 private:
  std::vector<std::string> names_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

class OppositePoset final : public Poset::Impl {
 public:
  explicit OppositePoset(Poset base) : base_(std::move(base)) {}

  std::size_t size() const override { return base_.size(); }
  bool leq(Element a, Element b) const override { return base_.leq(b, a); }
  std::string name(Element e) const override { return base_.name(e); }
  Bits up_set(Element a) const override { return base_.down_set(a); }
  Bits down_set(Element a) const override { return base_.up_set(a); }

  const Poset& base() const { return base_; }

 private:
  Poset base_;
};

}  // namespace

Bits Poset::Impl::up_set(Element a) const {
  Bits out(size());
  for (Element b = 0; b < size(); ++b)
    if (leq(a, b)) out.set(b);
  return out;
}

Bits Poset::Impl::down_set(Element a) const {
  Bits out(size());
  for (Element b = 0; b < size(); ++b)
    if (leq(b, a)) out.set(b);
  return out;
}

std::optional<Element> Poset::Impl::find(std::string_view name) const {
  std::call_once(index_once_, [this] {
    index_.reserve(size());
    for (Element e = 0; e < size(); ++e) index_.emplace(this->name(e), e);
  });
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Poset::Poset() : impl_(std::make_shared<DensePoset>(std::vector<std::string>{}, std::vector<Bits>{})) {}

Poset Poset::from_up_sets(std::vector<std::string> names, std::vector<Bits> up) {
  return Poset(std::make_shared<DensePoset>(std::move(names), std::move(up)));
}

Poset Poset::validate(std::vector<std::string> elements,
                      const std::vector<std::pair<std::string, std::string>>& leq, OrderMode mode) {
  const std::size_t n = elements.size();
  std::unordered_map<std::string, Element> index;
  for (Element i = 0; i < n; ++i)
    if (!index.emplace(elements[i], i).second)
      throw Error(Errc::duplicate_element, "element '" + elements[i] + "' listed twice");

  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw Error(Errc::unknown_element, "relation mentions unknown element '" + s + "'");
    return it->second;
  };

  std::vector<Bits> up(n, Bits(n));
  for (const auto& [a, b] : leq) up[lookup(a)].set(lookup(b));

  if (mode == OrderMode::covers) {
    for (Element i = 0; i < n; ++i) up[i].set(i);
    // Warshall on rows
    for (Element k = 0; k < n; ++k)
      for (Element i = 0; i < n; ++i)
        if (up[i].test(k)) up[i] |= up[k];
  } else {
    for (Element i = 0; i < n; ++i)
      if (!up[i].test(i))
        throw Error(Errc::not_reflexive, "missing " + elements[i] + " <= " + elements[i]);
  }

  for (Element a = 0; a < n; ++a)
    for (auto b = up[a].find_next(a); b != Bits::npos; b = up[a].find_next(b))
      if (up[b].test(a))
        throw Error(Errc::not_antisymmetric,
                    "cycle " + elements[a] + " <= " + elements[b] + " <= " + elements[a]);

  if (mode == OrderMode::full) {
    for (Element a = 0; a < n; ++a)
      for (auto b = up[a].find_first(); b != Bits::npos; b = up[a].find_next(b))
        if (!up[b].is_subset_of(up[a])) {
          Bits missing = up[b] - up[a];
          auto c = missing.find_first();
          throw Error(Errc::not_transitive, elements[a] + " <= " + elements[b] + " <= " + elements[c] + " but not " +
                                                elements[a] + " <= " + elements[c]);
        }
  }
  return from_up_sets(std::move(elements), std::move(up));
}

std::vector<std::string> Poset::names() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (Element e = 0; e < size(); ++e) out.push_back(name(e));
  return out;
}

Element Poset::at(std::string_view n) const {
  if (auto e = find(n)) return *e;
  throw Error(Errc::unknown_element, "no element named '" + std::string(n) + "'");
}

bool operator==(const Poset& a, const Poset& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.size() != b.size()) return false;
  for (Element e = 0; e < a.size(); ++e)
    if (a.name(e) != b.name(e) || a.up_set(e) != b.up_set(e)) return false;
  return true;
}

std::optional<Element> extremum(const Poset& p, const Bits& set, BoundKind kind) {
  auto first = set.find_first();
  if (first == Bits::npos) return std::nullopt;
  Element c = static_cast<Element>(first);
  for (auto e = set.find_next(first); e != Bits::npos; e = set.find_next(e)) {
    bool better = kind == BoundKind::lub ? p.leq(c, e) : p.leq(e, c);
    if (better) c = static_cast<Element>(e);
  }
  // c is maximal among candidates reached; it is the maximum iff everything sits below it
  const Bits cone = kind == BoundKind::lub ? p.down_set(c) : p.up_set(c);
  if (!set.is_subset_of(cone)) return std::nullopt;
  return c;
}

std::optional<Element> bound(const Poset& p, std::span<const Element> subset, BoundKind kind) {
  Bits bounds(p.size());
  bounds.set();
  for (Element s : subset) {
    if (s >= p.size()) throw Error(Errc::unknown_element, "element index out of range");
    bounds &= kind == BoundKind::glb ? p.down_set(s) : p.up_set(s);
  }
  // glb is the greatest lower bound, lub the least upper bound
  return extremum(p, bounds, kind == BoundKind::glb ? BoundKind::lub : BoundKind::glb);
}

std::optional<Element> bottom(const Poset& p) {
  Bits all(p.size());
  all.set();
  return extremum(p, all, BoundKind::glb);
}

std::optional<Element> top(const Poset& p) {
  Bits all(p.size());
  all.set();
  return extremum(p, all, BoundKind::lub);
}

PosetClassification classify(const Poset& p) {
  PosetClassification c;
  c.has_bottom = bottom(p).has_value();
  c.has_top = top(p).has_value();
  c.is_cpo = c.has_bottom;
  if (!c.has_bottom) return c;

  const std::size_t n = p.size();
  std::vector<Bits> up(n);
  for (Element a = 0; a < n; ++a) up[a] = p.up_set(a);
  bool joins = true;
  for (Element a = 0; a < n && joins; ++a)
    for (Element b = a + 1; b < n && joins; ++b) {
      if (up[a].test(b) || up[b].test(a)) continue;
      Bits common = up[a] & up[b];
      auto first = common.find_first();
      if (first == Bits::npos) {
        joins = false;
        break;
      }
      Element m = static_cast<Element>(first);
      for (auto e = common.find_next(first); e != Bits::npos; e = common.find_next(e))
        if (up[e].test(m)) m = static_cast<Element>(e);
      joins = common.is_subset_of(up[m]);
    }
  c.is_complete_join_semilattice = joins;
  c.is_complete_lattice = joins;
  return c;
}

bool is_chain(const Poset& p, std::span<const Element> subset) {
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      if (!p.comparable(subset[i], subset[j])) return false;
  return true;
}

Poset opposite(const Poset& p) {
  if (auto* op = dynamic_cast<const OppositePoset*>(&p.impl())) return op->base();
  return Poset(std::make_shared<OppositePoset>(p));
}

Poset sub_poset(const Poset& p, std::span<const Element> keep) {
  const std::size_t n = keep.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (Element e : keep) names.push_back(p.name(e));
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(keep[i], keep[j])) up[i].set(j);
  return Poset::from_up_sets(std::move(names), std::move(up));
}

std::vector<std::pair<Element, Element>> covers(const Poset& p) {
  std::vector<std::pair<Element, Element>> out;
  const std::size_t n = p.size();
  std::vector<Bits> up(n);
  for (Element a = 0; a < n; ++a) {
    up[a] = p.up_set(a);
    up[a].reset(a);
  }
  for (Element a = 0; a < n; ++a)
    for (auto b = up[a].find_first(); b != Bits::npos; b = up[a].find_next(b)) {
      bool direct = true;
      for (auto c = up[a].find_first(); c != Bits::npos && direct; c = up[a].find_next(c))
        if (c != b && up[c].test(b)) direct = false;
      if (direct) out.emplace_back(a, static_cast<Element>(b));
    }
  return out;
}

std::vector<Element> linear_extension(const Poset& p) {
  std::vector<Element> order(p.size());
  std::iota(order.begin(), order.end(), Element{0});
  std::vector<std::size_t> depth(p.size());
  for (Element e = 0; e < p.size(); ++e) depth[e] = p.down_set(e).count();
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return depth[a] < depth[b]; });
  return order;
}

std::string describe(const Poset& p) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  std::vector<bool> touched(p.size());
  for (auto [a, b] : covers(p)) {
    os << (first ? "" : ", ") << p.name(a) << '<' << p.name(b);
    touched[a] = touched[b] = true;
    first = false;
  }
  for (Element e = 0; e < p.size(); ++e)
    if (!touched[e]) {
      os << (first ? "" : ", ") << p.name(e);
      first = false;
    }
  os << '}';
  return os.str();
}

bool is_partial_order(const Poset& p) {
  const std::size_t n = p.size();
  for (Element a = 0; a < n; ++a) {
    if (!p.leq(a, a)) return false;
    for (Element b = 0; b < n; ++b) {
      if (a != b && p.leq(a, b) && p.leq(b, a)) return false;
      if (!p.leq(a, b)) continue;
      for (Element c = 0; c < n; ++c)
        if (p.leq(b, c) && !p.leq(a, c)) return false;
    }
  }
  return true;
}

Poset chain(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(prefix) + std::to_string(i));
    for (std::size_t j = i; j < n; ++j) up[i].set(j);
  }
  return Poset::from_up_sets(std::move(names), std::move(up));
}

Poset antichain(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(prefix) + std::to_string(i));
    up[i].set(i);
  }
  return Poset::from_up_sets(std::move(names), std::move(up));
}

}  // namespace hoaft
