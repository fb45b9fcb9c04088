#include "hoaft/lu.hpp"

#include <map>
#include <sstream>

#include "hoaft/types.hpp"

namespace hoaft {

namespace {

std::vector<Element> indices(const Bits& b) {
  std::vector<Element> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<Element>(i));
  return out;
}

std::string show(const Poset& p, const std::vector<Element>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << p.name(s[i]);
  os << '}';
  return os.str();
}

TupleReport fail(int clause, std::string witness) { return TupleReport{false, clause, std::move(witness)}; }

}  // namespace

TupleReport check_tuple(const ApproximationTuple& t) {
  const Poset& p = t.order;
  if (t.lower.size() != p.size() || t.upper.size() != p.size())
    return fail(1, "L/U membership does not match the carrier");
  Bits either = t.lower | t.upper;
  if (!either.all()) return fail(1, "carrier element outside L and U: " + p.name(static_cast<Element>((~either).find_first())));

  auto bot = bottom(p), tp = top(p);
  if (!bot || !tp) return fail(1, std::string("no ") + (!bot ? "bottom" : "top") + " in " + describe(p));
  for (Element e : {*bot, *tp})
    if (!t.lower.test(e) || !t.upper.test(e)) return fail(2, p.name(e) + " is not in both L and U");

  const auto l = indices(t.lower), u = indices(t.upper);
  const Poset lp = sub_poset(p, l), up = sub_poset(p, u);
  if (!classify(lp).is_complete_lattice) return fail(3, "L = " + describe(lp) + " is not a complete lattice");
  if (!classify(up).is_complete_lattice) return fail(3, "U = " + describe(up) + " is not a complete lattice");

  // joins in L are monotone in the subset, so the largest admissible S decides
  for (Element b : u) {
    std::vector<Element> s;
    for (Element i = 0; i < l.size(); ++i)
      if (p.leq(l[i], b)) s.push_back(i);
    const Element j = l[*bound(lp, s, BoundKind::lub)];
    if (!p.leq(j, b)) {
      std::vector<Element> shown;
      for (Element i : s) shown.push_back(l[i]);
      return fail(4, "b = " + p.name(b) + ", S = " + show(p, shown) + ": join in L is " + p.name(j));
    }
  }
  for (Element a : l) {
    std::vector<Element> s;
    for (Element i = 0; i < u.size(); ++i)
      if (p.leq(a, u[i])) s.push_back(i);
    const Element m = u[*bound(up, s, BoundKind::glb)];
    if (!p.leq(a, m)) {
      std::vector<Element> shown;
      for (Element i : s) shown.push_back(u[i]);
      return fail(5, "a = " + p.name(a) + ", S = " + show(p, shown) + ": meet in U is " + p.name(m));
    }
  }
  return {};
}

TupleValidation validate_tuple(const std::vector<std::string>& lower, const std::vector<std::string>& upper,
                               const std::vector<std::pair<std::string, std::string>>& leq, OrderMode mode) {
  std::vector<std::string> elems;
  std::map<std::string, Element> pos;
  auto add = [&](const std::string& s) {
    if (pos.emplace(s, elems.size()).second) elems.push_back(s);
  };
  for (const auto& s : lower) add(s);
  for (const auto& s : upper) add(s);
  Poset order = Poset::validate(elems, leq, mode);
  Bits lb(elems.size()), ub(elems.size());
  for (const auto& s : lower) lb.set(pos[s]);
  for (const auto& s : upper) ub.set(pos[s]);
  ApproximationTuple t{order, lb, ub};
  TupleValidation v;
  v.report = check_tuple(t);
  if (v.report.ok) v.tuple = std::move(t);
  return v;
}

namespace {

PairView build_pairs(const ApproximationTuple& t) {
  const Poset& p = t.order;
  auto cells = std::make_shared<std::vector<Element>>();
  std::vector<Element> lo, hi;
  for (auto x = t.lower.find_first(); x != Bits::npos; x = t.lower.find_next(x))
    for (auto y = t.upper.find_first(); y != Bits::npos; y = t.upper.find_next(y))
      if (p.leq(static_cast<Element>(x), static_cast<Element>(y))) {
        cells->push_back(static_cast<Element>(x));
        cells->push_back(static_cast<Element>(y));
        lo.push_back(static_cast<Element>(x));
        hi.push_back(static_cast<Element>(y));
      }
  check_size(static_cast<double>(lo.size()), "L (x) U space");
  Poset space = coordinate_poset({p, opposite(p)}, std::move(cells));
  return PairView(space, p, t.lower, t.upper, std::move(lo), std::move(hi), false);
}

}  // namespace

LUSpace::LUSpace(ApproximationTuple t) : tuple_(std::move(t)) {
  auto r = check_tuple(tuple_);
  if (!r.ok) throw Error(Errc::invalid_input, "not an approximation tuple (clause " + std::to_string(r.clause) + "): " + r.witness);
  pairs_ = build_pairs(tuple_);
  const auto b = bottom(space());
  if (!b || p1(*b) != pairs_.lower_bottom() || p2(*b) != pairs_.upper_top())
    throw Error(Errc::internal_law_failure, "L (x) U space has no (bottom, top) least element");
}

LUSpace lu_space(const ApproximationTuple& t) { return LUSpace(t); }

Element chain_sup(const LUSpace& s, std::span<const Element> chain) {
  const Poset& sp = s.space();
  for (Element e : chain)
    if (e >= sp.size()) throw Error(Errc::unknown_element, "chain element out of range");
  if (!is_chain(sp, chain)) throw Error(Errc::not_a_chain, "elements are not totally ordered");
  const ApproximationTuple& t = s.tuple();
  const auto l = indices(t.lower), u = indices(t.upper);
  const Poset lp = sub_poset(t.order, l), up = sub_poset(t.order, u);
  std::vector<Element> xs, ys;
  for (Element e : chain) {
    xs.push_back(static_cast<Element>(std::lower_bound(l.begin(), l.end(), s.p1(e)) - l.begin()));
    ys.push_back(static_cast<Element>(std::lower_bound(u.begin(), u.end(), s.p2(e)) - u.begin()));
  }
  const Element x = l[*bound(lp, xs, BoundKind::lub)];
  const Element y = u[*bound(up, ys, BoundKind::glb)];
  auto e = s.find(x, y);
  if (!e) throw Error(Errc::internal_law_failure, "chain supremum (" + t.order.name(x) + "," + t.order.name(y) + ") is not in the space");
  return *e;
}

LUExponential lu_exponential(const Poset& a, const PairView& b) {
  const Poset& carrier = b.carrier();
  const auto l = indices(b.lower()), u = indices(b.upper());
  const Poset lb = sub_poset(carrier, l), ub = sub_poset(carrier, u);
  const auto lmaps = monotone_tables(a, lb, size_cap());
  const auto umaps = monotone_tables(a, opposite(ub), size_cap());

  // union of both map families as tables into the carrier, in lexicographic order
  std::map<std::vector<Element>, std::pair<bool, bool>> all;
  for (auto t : lmaps) {
    for (auto& v : t) v = l[v];
    all[t].first = true;
  }
  for (auto t : umaps) {
    for (auto& v : t) v = u[v];
    all[t].second = true;
  }
  check_size(static_cast<double>(all.size()), "exponential tuple carrier");
  const std::size_t k = a.size();
  auto cells = std::make_shared<std::vector<Element>>();
  cells->reserve(all.size() * k);
  Bits lower(all.size()), upper(all.size());
  std::map<std::vector<Element>, Element> index;
  Element i = 0;
  for (const auto& [t, member] : all) {
    cells->insert(cells->end(), t.begin(), t.end());
    lower[i] = member.first;
    upper[i] = member.second;
    index.emplace(t, i++);
  }
  Poset order = coordinate_poset(std::vector<Poset>(k, carrier), cells, a.names());
  ApproximationTuple tuple{order, lower, upper};
  if (auto r = check_tuple(tuple); !r.ok)
    throw Error(Errc::internal_law_failure,
                "exponential tuple violates clause " + std::to_string(r.clause) + ": " + r.witness);
  LUSpace space(tuple);

  MapSpace maps = exponential(a, b.space());
  std::vector<Element> nu(maps.poset().size()), lo(k), hi(k);
  for (Element f = 0; f < nu.size(); ++f) {
    for (Element x = 0; x < k; ++x) {
      lo[x] = b.lo(maps.apply(f, x));
      hi[x] = b.hi(maps.apply(f, x));
    }
    auto il = index.find(lo), ih = index.find(hi);
    std::optional<Element> e;
    if (il != index.end() && ih != index.end()) e = space.find(il->second, ih->second);
    if (!e) throw Error(Errc::internal_law_failure, "nu(" + maps.poset().name(f) + ") is not in the tuple space");
    nu[f] = *e;
  }
  IsoPair iso = iso_from_bijection(maps.poset(), space.space(), std::move(nu));
  return LUExponential{std::move(tuple), std::move(space), std::move(maps), std::move(iso)};
}

LUExponential lu_exponential(const LUSpace& a, const LUSpace& b) { return lu_exponential(a.space(), b.pairs()); }

LUSpace boolean_lu_space() {
  Poset e = truth_poset();
  Bits all(2);
  all.set();
  return LUSpace(ApproximationTuple{e, all, all});
}

}  // namespace hoaft
