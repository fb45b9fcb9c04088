#include <algorithm>
#include <numeric>

#include "hoaft/order.hpp"

namespace hoaft {

std::optional<std::pair<Element, Element>> monotonicity_witness(const FunctionTable& f) {
  const std::size_t n = f.source.size();
  for (Element x = 0; x < n; ++x) {
    const Bits up = f.source.up_set(x);
    const Bits ok = f.target.up_set(f.table[x]);
    for (auto y = up.find_first(); y != Bits::npos; y = up.find_next(y))
      if (!ok.test(f.table[y])) return std::make_pair(x, static_cast<Element>(y));
  }
  return std::nullopt;
}

MonotoneMap::MonotoneMap(Poset source, Poset target, std::vector<Element> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (table_.size() != source_.size()) throw Error(Errc::invalid_input, "map table is not total on its source");
  for (Element v : table_)
    if (v >= target_.size()) throw Error(Errc::unknown_element, "map value outside the target");
  if (auto w = monotonicity_witness(FunctionTable{source_, target_, table_}))
    throw Error(Errc::not_monotone, source_.name(w->first) + " <= " + source_.name(w->second) + " but " +
                                        target_.name(table_[w->first]) + " !<= " + target_.name(table_[w->second]));
}

MonotoneMap MonotoneMap::identity(const Poset& p) {
  std::vector<Element> t(p.size());
  std::iota(t.begin(), t.end(), Element{0});
  return MonotoneMap(p, p, std::move(t));
}

MonotoneMap MonotoneMap::then(const MonotoneMap& g) const {
  if (g.source_.size() != target_.size()) throw Error(Errc::invalid_input, "maps do not compose");
  std::vector<Element> t(table_.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.table_[table_[i]];
  return MonotoneMap(source_, g.target_, std::move(t));
}

IsoPair iso_from_bijection(const Poset& dom, const Poset& cod, std::vector<Element> table) {
  std::vector<Element> inv(cod.size(), static_cast<Element>(dom.size()));
  if (table.size() != dom.size() || dom.size() != cod.size())
    throw Error(Errc::internal_law_failure, "structure map is not a bijection");
  for (Element x = 0; x < table.size(); ++x) {
    if (inv[table[x]] != dom.size()) throw Error(Errc::internal_law_failure, "structure map is not injective");
    inv[table[x]] = x;
  }
  try {
    return IsoPair{MonotoneMap(dom, cod, std::move(table)), MonotoneMap(cod, dom, std::move(inv))};
  } catch (const Error& e) {
    throw Error(Errc::internal_law_failure, std::string("structure map is not an order-isomorphism: ") + e.what());
  }
}

std::optional<MonotoneMap> inverse_isomorphism(const MonotoneMap& m) {
  const std::size_t n = m.source().size();
  if (m.target().size() != n) return std::nullopt;
  std::vector<Element> inv(n, static_cast<Element>(n));
  for (Element x = 0; x < n; ++x) {
    if (inv[m(x)] != n) return std::nullopt;
    inv[m(x)] = x;
  }
  FunctionTable back{m.target(), m.source(), inv};
  if (monotonicity_witness(back)) return std::nullopt;
  return MonotoneMap(m.target(), m.source(), std::move(inv));
}

std::optional<MonotoneMap> find_isomorphism(const Poset& p, const Poset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return std::nullopt;

  std::vector<Bits> pu(n), pd(n), qu(n), qd(n);
  std::vector<std::pair<std::size_t, std::size_t>> pinv(n), qinv(n);
  for (Element e = 0; e < n; ++e) {
    pu[e] = p.up_set(e);
    pd[e] = p.down_set(e);
    qu[e] = q.up_set(e);
    qd[e] = q.down_set(e);
    pinv[e] = {pd[e].count(), pu[e].count()};
    qinv[e] = {qd[e].count(), qu[e].count()};
  }
  {
    auto a = pinv, b = qinv;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  // place p's elements along a linear extension so constraints bite early
  const auto order = linear_extension(p);
  std::vector<Element> image(n);
  Bits used(n);
  std::vector<std::size_t> next(n + 1, 0);

  std::size_t depth = 0;
  auto consistent = [&](std::size_t d, Element v) {
    const Element x = order[d];
    if (used.test(v) || pinv[x] != qinv[v]) return false;
    for (std::size_t j = 0; j < d; ++j) {
      const Element y = order[j];
      if (pu[y].test(x) != qu[image[y]].test(v)) return false;
      if (pu[x].test(y) != qu[v].test(image[y])) return false;
    }
    return true;
  };
  while (true) {
    if (depth == n) break;
    std::size_t v = next[depth];
    while (v < n && !consistent(depth, static_cast<Element>(v))) ++v;
    if (v == n) {
      if (depth == 0) return std::nullopt;
      next[depth] = 0;
      --depth;
      used.reset(image[order[depth]]);
      ++next[depth];
      continue;
    }
    image[order[depth]] = static_cast<Element>(v);
    used.set(v);
    next[depth] = v;
    ++depth;
  }
  return MonotoneMap(p, q, std::move(image));
}

}  // namespace hoaft
