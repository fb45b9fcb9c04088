#include "hoaft/pairs.hpp"

namespace hoaft {

namespace {
std::uint64_t key(Element l, Element h) { return (std::uint64_t{l} << 32) | h; }
}  // namespace

PairView::PairView(Poset space, Poset carrier, Bits lower, Bits upper, std::vector<Element> lo,
                   std::vector<Element> hi, bool square)
    : space_(std::move(space)),
      carrier_(std::move(carrier)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      square_(square) {
  if (lo_.size() != space_.size() || hi_.size() != space_.size())
    throw Error(Errc::internal_law_failure, "pair view does not cover the space");
  index_.reserve(lo_.size());
  for (Element e = 0; e < lo_.size(); ++e) {
    if (!lower_.test(lo_[e]) || !upper_.test(hi_[e]))
      throw Error(Errc::internal_law_failure, "pair component of " + space_.name(e) + " outside L or U");
    if (!index_.emplace(key(lo_[e], hi_[e]), e).second)
      throw Error(Errc::internal_law_failure, "two elements share the pair of " + space_.name(e));
  }
  if (space_.size() > 0) {
    auto lb = extremum(carrier_, lower_, BoundKind::glb);
    auto ut = extremum(carrier_, upper_, BoundKind::lub);
    if (!lb || !ut) throw Error(Errc::internal_law_failure, "L has no least or U no greatest element");
    lower_bottom_ = *lb;
    upper_top_ = *ut;
  }
}

std::optional<Element> PairView::join(Element l, Element h) const {
  auto it = index_.find(key(l, h));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element PairView::swap(Element e) const {
  if (auto s = join(hi_[e], lo_[e])) return *s;
  throw Error(Errc::no_pair_structure, "no swapped pair for " + space_.name(e));
}

bool check_precision_order(const PairView& v) {
  const Poset& s = v.space();
  const Poset& c = v.carrier();
  for (Element a = 0; a < s.size(); ++a) {
    const Bits up = s.up_set(a);
    for (Element b = 0; b < s.size(); ++b) {
      const bool p = c.leq(v.lo(a), v.lo(b)) && c.leq(v.hi(b), v.hi(a));
      if (p != up.test(b)) return false;
    }
  }
  return true;
}

PairView product_pairs(const ProductSpace& space, const std::vector<const PairView*>& factors) {
  std::vector<Poset> carriers;
  bool square = true;
  for (const auto* f : factors) {
    carriers.push_back(f->carrier());
    square = square && f->square();
  }
  ProductSpace cp(carriers);
  const std::size_t nc = cp.poset().size();
  Bits lower(nc), upper(nc);
  for (Element c = 0; c < nc; ++c) {
    bool l = true, u = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Element ci = cp.component(c, i);
      l = l && factors[i]->lower().test(ci);
      u = u && factors[i]->upper().test(ci);
    }
    lower[c] = l;
    upper[c] = u;
  }
  const std::size_t n = space.poset().size();
  std::vector<Element> lo(n), hi(n), tl(factors.size()), th(factors.size());
  for (Element e = 0; e < n; ++e) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Element ei = space.component(e, i);
      tl[i] = factors[i]->lo(ei);
      th[i] = factors[i]->hi(ei);
    }
    lo[e] = cp.element(tl);
    hi[e] = cp.element(th);
  }
  return PairView(space.poset(), cp.poset(), std::move(lower), std::move(upper), std::move(lo), std::move(hi), square);
}

}  // namespace hoaft
