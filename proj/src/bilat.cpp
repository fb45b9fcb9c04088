#include "hoaft/bilat.hpp"

#include <algorithm>
#include <set>

namespace hoaft {

Bilattice::Bilattice(Poset base) : base_(std::move(base)) {
  if (!classify(base_).is_complete_lattice)
    throw Error(Errc::not_complete_lattice, "bilattice base " + describe(base_) + " is not a complete lattice");
  const std::size_t n = base_.size();
  auto cells = std::make_shared<std::vector<Element>>();
  cells->reserve(2 * n * n);
  std::vector<Element> lo, hi;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      cells->push_back(x);
      cells->push_back(y);
      lo.push_back(x);
      hi.push_back(y);
    }
  space_ = coordinate_poset({base_, opposite(base_)}, std::move(cells));
  Bits all(n);
  all.set();
  pairs_ = PairView(space_, base_, all, all, std::move(lo), std::move(hi), true);
  for (Element x = 0; x < n; ++x) exact_.push_back(pair(x, x));
}

Element Bilattice::project(Element e) const {
  if (!is_exact(e)) throw Error(Errc::not_exact, space_.name(e) + " is not exact");
  return lo(e);
}

Bilattice make_bilattice(const Poset& lattice) { return Bilattice(lattice); }

IsoPair product_iso(const Poset& l1, const Poset& l2) {
  Bilattice b1(l1), b2(l2);
  ProductSpace lp({l1, l2});
  Bilattice b12(lp.poset());
  ProductSpace dom({b1.space(), b2.space()});
  std::vector<Element> table(dom.poset().size());
  for (Element e = 0; e < table.size(); ++e) {
    const Element e1 = dom.component(e, 0), e2 = dom.component(e, 1);
    const Element a[2] = {b1.lo(e1), b2.lo(e2)};
    const Element b[2] = {b1.hi(e1), b2.hi(e2)};
    table[e] = b12.pair(lp.element(a), lp.element(b));
  }
  return iso_from_bijection(dom.poset(), b12.space(), std::move(table));
}

IsoPair exponential_iso(const Poset& l1, const Poset& l2) {
  Bilattice b1(l1), b2(l2);
  MapSpace dom = exponential(b1.space(), b2.space());
  MapSpace m = exponential(b1.space(), l2);
  Bilattice bm(m.poset());
  const std::size_t k = b1.space().size();
  std::vector<Element> table(dom.poset().size()), f1(k), f2(k);
  for (Element f = 0; f < table.size(); ++f) {
    for (Element a = 0; a < k; ++a) {
      f1[a] = b2.lo(dom.apply(f, a));
      f2[a] = b2.hi(dom.apply(f, b1.pairs().swap(a)));
    }
    auto g1 = m.find(f1), g2 = m.find(f2);
    if (!g1 || !g2) throw Error(Errc::internal_law_failure, "psi produced a non-monotone component");
    table[f] = bm.pair(*g1, *g2);
  }
  return iso_from_bijection(dom.poset(), bm.space(), std::move(table));
}

namespace {

PsiCheck full_check(const Bilattice& b1, const Bilattice& b2) {
  PsiCheck out;
  const Poset& l2 = b2.base();
  const auto m = monotone_tables(b1.space(), l2, size_cap());
  MapSpace dom = exponential(b1.space(), b2.space());
  out.domain_size = dom.poset().size();

  const std::size_t k = b1.space().size();
  const std::size_t n = dom.poset().size();
  std::set<std::vector<Element>> members(m.begin(), m.end());
  auto cells = std::make_shared<std::vector<Element>>(n * 2 * k);
  std::set<std::vector<Element>> rows;
  std::vector<Element> f1(k), f2(k);
  for (Element f = 0; f < n; ++f) {
    for (Element a = 0; a < k; ++a) {
      f1[a] = b2.lo(dom.apply(f, a));
      f2[a] = b2.hi(dom.apply(f, b1.pairs().swap(a)));
    }
    if (!members.count(f1) || !members.count(f2)) {
      out.failure = "component of psi(" + dom.poset().name(f) + ") is not monotone";
      return out;
    }
    std::vector<Element> row(f1);
    row.insert(row.end(), f2.begin(), f2.end());
    std::copy(row.begin(), row.end(), cells->begin() + f * 2 * k);
    if (!rows.insert(std::move(row)).second) {
      out.failure = "psi is not injective at " + dom.poset().name(f);
      return out;
    }
  }
  if (rows.size() != m.size() * m.size()) {
    out.failure = "psi is not surjective: " + std::to_string(rows.size()) + " of " +
                  std::to_string(m.size() * m.size()) + " pairs hit";
    return out;
  }
  // precision order on M x M, rows in domain order
  std::vector<Poset> coords(k, l2);
  coords.insert(coords.end(), k, opposite(l2));
  Poset image = coordinate_poset(std::move(coords), cells);
  for (Element f = 0; f < n; ++f)
    if (dom.poset().up_set(f) != image.up_set(f)) {
      out.failure = "order not preserved or reflected at " + dom.poset().name(f);
      return out;
    }
  out.ok = true;
  return out;
}

PsiCheck factored_check(const Bilattice& b1, const Bilattice& b2, std::size_t budget) {
  PsiCheck out;
  out.factored = true;
  const Poset& s = b1.space();
  const Poset& l2 = b2.base();
  const std::size_t k = s.size();
  std::vector<Element> swap(k);
  for (Element a = 0; a < k; ++a) swap[a] = b1.pairs().swap(a);
  for (Element a = 0; a < k; ++a) {
    if (swap[swap[a]] != a) {
      out.failure = "swap is not an involution at " + s.name(a);
      return out;
    }
    for (Element b = 0; b < k; ++b)
      if (s.leq(a, b) != s.leq(swap[b], swap[a])) {
        out.failure = "swap does not reverse " + s.name(a) + " <= " + s.name(b);
        return out;
      }
  }
  // covers of B(L1) pulled back along the swap
  std::vector<std::pair<Element, Element>> pulled;
  for (auto [a, b] : covers(s)) pulled.emplace_back(swap[a], swap[b]);
  const std::size_t n2 = l2.size();
  // precomposition with the swap must land in hom(B(L1), to)
  auto carry = [&](const Poset& from, const Poset& to, std::size_t& count) {
    std::vector<char> leq(n2 * n2);
    for (Element x = 0; x < n2; ++x)
      for (Element y = 0; y < n2; ++y) leq[x * n2 + y] = to.leq(x, y);
    bool ok = true;
    for_each_monotone(s, from, [&](std::span<const Element> f) {
      if (++count > budget)
        throw Error(Errc::size_cap_exceeded, "hom-set into " + describe(from) + " exceeds " + std::to_string(budget) + " maps");
      for (auto [a, b] : pulled)
        if (!leq[f[a] * n2 + f[b]]) {
          ok = false;
          out.failure = "precomposing with swap breaks monotonicity at " + s.name(swap[a]) + " <= " + s.name(swap[b]);
          return false;
        }
      return true;
    });
    return ok;
  };
  std::size_t m = 0, m_op = 0;
  if (!carry(opposite(l2), l2, m_op) || !carry(l2, opposite(l2), m)) return out;
  if (m != m_op) {
    out.failure = "hom-set sizes differ: " + std::to_string(m) + " vs " + std::to_string(m_op);
    return out;
  }
  out.domain_size = m * m_op;
  out.ok = true;
  return out;
}

}  // namespace

PsiCheck verify_exponential_iso(const Poset& l1, const Poset& l2, std::size_t stream_budget) {
  Bilattice b1(l1), b2(l2);
  // |M|^2 against the cap, counting no further than needed
  const double cap = static_cast<double>(size_cap());
  std::size_t m = 0;
  for_each_monotone(b1.space(), l2, [&](std::span<const Element>) {
    ++m;
    return static_cast<double>(m) * static_cast<double>(m) <= cap;
  });
  if (static_cast<double>(m) * static_cast<double>(m) <= cap) return full_check(b1, b2);
  return factored_check(b1, b2, stream_budget ? stream_budget : size_cap());
}

ApproximatorClass classify_approximator(const Bilattice& b, std::span<const Element> table) {
  MonotoneMap a(b.space(), b.space(), std::vector<Element>(table.begin(), table.end()));
  const Poset& l = b.base();
  const std::size_t n = l.size();
  ApproximatorClass c;
  c.symmetric = c.gracefully_degrading = true;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element a1 = b.lo(a(b.pair(x, y)));
      const Element a2 = b.hi(a(b.pair(y, x)));
      c.symmetric = c.symmetric && a1 == a2;
      c.gracefully_degrading = c.gracefully_degrading && l.leq(a1, a2);
    }
  // psi(A) = (lo . A, hi . A . swap) as maps from the bilattice into L
  const std::size_t k = b.space().size();
  c.exact_pair_under_psi = c.consistent_pair_under_psi = true;
  for (Element e = 0; e < k; ++e) {
    const Element g1 = b.lo(a(e));
    const Element g2 = b.hi(a(b.pairs().swap(e)));
    c.exact_pair_under_psi = c.exact_pair_under_psi && g1 == g2;
    c.consistent_pair_under_psi = c.consistent_pair_under_psi && l.leq(g1, g2);
  }
  if (c.symmetric != c.exact_pair_under_psi || c.gracefully_degrading != c.consistent_pair_under_psi)
    throw Error(Errc::internal_law_failure, "approximator flags disagree with their images under psi");
  return c;
}

}  // namespace hoaft
