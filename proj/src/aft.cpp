#include "hoaft/aft.hpp"

#include "hoaft/error.hpp"

namespace hoaft {

Operator::Operator(Poset space, std::function<Element(Element)> fn) : space_(std::move(space)), fn_(std::move(fn)) {}

Operator Operator::from_table(Poset space, std::vector<Element> table) {
  if (table.size() != space.size()) throw Error(Errc::invalid_input, "operator table does not cover the space");
  for (Element v : table)
    if (v >= space.size()) throw Error(Errc::invalid_input, "operator value out of range");
  auto t = std::make_shared<const std::vector<Element>>(std::move(table));
  return Operator(std::move(space), [t](Element x) { return (*t)[x]; });
}

Element Operator::operator()(Element x) const {
  if (x >= space_.size()) throw Error(Errc::unknown_element, "operator argument out of range");
  const Element v = fn_(x);
  if (v >= space_.size()) throw Error(Errc::internal_law_failure, "operator value out of range");
  return v;
}

std::vector<Element> Operator::tabulate() const {
  std::vector<Element> t(space_.size());
  for (Element x = 0; x < t.size(); ++x) t[x] = (*this)(x);
  return t;
}

std::optional<std::pair<Element, Element>> monotonicity_witness(const Operator& op) {
  return monotonicity_witness(FunctionTable{op.space(), op.space(), op.tabulate()});
}

Element lfp(const Operator& op, bool exhaustive) {
  const Poset& p = op.space();
  auto b = bottom(p);
  if (!b) throw Error(Errc::no_bottom, "lfp needs a least element");
  if (exhaustive)
    if (auto w = monotonicity_witness(op))
      throw Error(Errc::not_monotone, p.name(w->first) + " <= " + p.name(w->second) + " is not preserved");
  Element x = *b;
  for (;;) {
    const Element y = op(x);
    if (y == x) return x;
    if (!p.leq(x, y)) throw Error(Errc::not_monotone, "Kleene step from " + p.name(x) + " to " + p.name(y) + " goes down");
    x = y;
  }
}

std::vector<Element> fixpoints(const Operator& op) {
  std::vector<Element> out;
  for (Element x = 0; x < op.space().size(); ++x)
    if (op(x) == x) out.push_back(x);
  return out;
}

Approximator::Approximator(PairView pairs, Operator op) : pairs_(std::move(pairs)), op_(std::move(op)) {
  if (op_.space().size() != pairs_.space().size()) throw Error(Errc::invalid_input, "operator is not on the pair space");
}

std::optional<Element> Approximator::apply(Element x, Element y) const {
  auto e = pairs_.join(x, y);
  if (!e) return std::nullopt;
  return op_(*e);
}

std::optional<Element> Approximator::a1(Element x, Element y) const {
  auto v = apply(x, y);
  if (!v) return std::nullopt;
  return pairs_.lo(*v);
}

std::optional<Element> Approximator::a2(Element x, Element y) const {
  auto v = apply(x, y);
  if (!v) return std::nullopt;
  return pairs_.hi(*v);
}

ApproximatorReport check_approximator(const Approximator& a, const Operator* o) {
  ApproximatorReport r;
  const PairView& v = a.pairs();
  const Poset& c = v.carrier();
  const auto w = monotonicity_witness(a.op());
  r.monotone = !w;
  if (w) r.witness = "not monotone at " + v.space().name(w->first) + " <= " + v.space().name(w->second);
  r.symmetric = true;
  for (Element e = 0; e < v.space().size() && r.symmetric; ++e) {
    const Element x = v.lo(e), y = v.hi(e);
    auto f = a.a1(x, y);
    auto g = a.a2(y, x);
    if (g && *f != *g) {
      r.symmetric = false;
      if (r.witness.empty()) r.witness = "A1" + v.space().name(e) + " differs from A2 at the swapped pair";
    }
  }
  if (o) {
    if (o->space().size() != c.size()) throw Error(Errc::invalid_input, "lattice operator is not on the carrier");
    bool ok = true;
    for (Element x = 0; x < c.size() && ok; ++x) {
      auto d = a.apply(x, x);
      if (!d) continue;
      const Element ox = (*o)(x);
      ok = v.lo(*d) == ox && v.hi(*d) == ox;
      if (!ok && r.witness.empty()) r.witness = "diagonal differs at " + c.name(x);
    }
    r.approximates = ok;
  }
  return r;
}

Element kripke_kleene(const Approximator& a) { return lfp(a.op()); }

std::vector<Element> supported_fixpoints(const Approximator& a) {
  std::vector<Element> out;
  const PairView& v = a.pairs();
  for (Element x = 0; x < a.carrier().size(); ++x) {
    if (!v.lower().test(x) || !v.upper().test(x)) continue;
    if (auto f = a.a1(x, x); f && *f == x) out.push_back(x);
  }
  return out;
}

namespace {

// Kleene iteration of a component map inside the carrier
Element iterate(const Poset& c, Element start, const std::function<std::optional<Element>(Element)>& step,
                const std::string& what) {
  Element x = start;
  for (;;) {
    auto y = step(x);
    if (!y) throw Error(Errc::revision_out_of_space, what + " leaves the pair space at " + c.name(x));
    if (*y == x) return x;
    if (!c.leq(x, *y)) throw Error(Errc::not_monotone, what + " goes down from " + c.name(x) + " to " + c.name(*y));
    x = *y;
  }
}

}  // namespace

Element stable_revision(const Approximator& a, Element y) {
  const PairView& v = a.pairs();
  if (y >= a.carrier().size() || !v.upper().test(y))
    throw Error(Errc::revision_out_of_space, "stable revision needs an element of U");
  return iterate(a.carrier(), v.lower_bottom(), [&](Element x) { return a.a1(x, y); }, "stable revision");
}

Element upper_revision(const Approximator& a, Element x) {
  const PairView& v = a.pairs();
  const Poset& c = a.carrier();
  if (x >= c.size() || !v.lower().test(x)) throw Error(Errc::revision_out_of_space, "upper revision needs an element of L");
  std::optional<Element> start;
  if (v.square()) {
    start = extremum(c, v.upper(), BoundKind::glb);
  } else {
    start = extremum(c, v.upper() & c.up_set(x), BoundKind::glb);
  }
  if (!start) throw Error(Errc::no_bottom, "no least element of U to start the upper revision");
  return iterate(c, *start, [&](Element y) { return a.a2(x, y); }, "upper revision");
}

std::vector<Element> stable_fixpoints(const Approximator& a) {
  std::vector<Element> out;
  const PairView& v = a.pairs();
  for (Element x = 0; x < a.carrier().size(); ++x) {
    if (!v.lower().test(x) || !v.upper().test(x)) continue;
    if (stable_revision(a, x) == x) out.push_back(x);
  }
  return out;
}

Element well_founded(const Approximator& a) {
  const PairView& v = a.pairs();
  const Poset& s = v.space();
  auto b = bottom(s);
  if (!b) throw Error(Errc::no_bottom, "pair space has no least element");
  Element e = *b;
  for (;;) {
    const Element x = stable_revision(a, v.hi(e));
    const Element y = upper_revision(a, v.lo(e));
    auto n = v.join(x, y);
    if (!n) throw Error(Errc::revision_out_of_space, "well-founded step gives no pair (" + a.carrier().name(x) + "," + a.carrier().name(y) + ")");
    if (*n == e) return e;
    if (!s.leq(e, *n)) throw Error(Errc::not_monotone, "well-founded step goes down from " + s.name(e));
    e = *n;
  }
}

}  // namespace hoaft
