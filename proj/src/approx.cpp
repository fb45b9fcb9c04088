#include "hoaft/approx.hpp"

#include <algorithm>
#include <cmath>

#include "hoaft/bilat.hpp"
#include "hoaft/lu.hpp"

namespace hoaft {

std::string_view to_string(Flavor f) { return f == Flavor::bilat ? "bilat" : "lu"; }

BaseApprox standard_base(Flavor f, const Poset& semantics) {
  BaseApprox b;
  b.semantics = semantics;
  if (f == Flavor::bilat) {
    Bilattice bl(semantics);
    b.app = bl.space();
    b.exact = bl.exact();
    b.proj.assign(b.app.size(), no_element);
    for (Element e : b.exact) b.proj[e] = bl.lo(e);
    b.pairs = bl.pairs();
    return b;
  }
  if (!classify(semantics).is_complete_lattice)
    throw Error(Errc::not_complete_lattice, describe(semantics) + " is not a complete lattice");
  Bits all(semantics.size());
  all.set();
  LUSpace s(ApproximationTuple{semantics, all, all});
  b.app = s.space();
  b.proj.assign(b.app.size(), no_element);
  for (Element e = 0; e < b.app.size(); ++e)
    if (s.p1(e) == s.p2(e)) {
      b.exact.push_back(e);
      b.proj[e] = s.p1(e);
    }
  b.pairs = s.pairs();
  return b;
}

// ---------------------------------------------------------------------------

SystemClosure SystemClosure::predicate_types() { return SystemClosure(); }

SystemClosure SystemClosure::explicit_members(TypeClosure c) {
  SystemClosure s;
  s.members_ = std::move(c);
  return s;
}

bool SystemClosure::contains(const TypeExpr& t) const {
  if (members_) return members_->contains(t);
  if (t.is_product())
    return std::all_of(t.fields().begin(), t.fields().end(), [&](const auto& f) { return contains(f.second); });
  try {
    return classify_type(t) == TypeClass::predicate;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------

Element ApproxSpace::apply(Element f, Element a) const {
  if (!maps_) throw Error(Errc::invalid_input, type_.str() + " is not an exponential space");
  return maps_->apply(f, a);
}

std::vector<Element> ApproxSpace::exact_elements() const {
  std::vector<Element> out;
  for (auto i = exact_.find_first(); i != Bits::npos; i = exact_.find_next(i)) out.push_back(static_cast<Element>(i));
  return out;
}

bool ApproxSpace::is_consistent(Element c) const {
  if (c >= size()) throw Error(Errc::unknown_element, "element " + std::to_string(c) + " outside App(" + type_.str() + ")");
  return poset_.up_set(c).intersects(exact_);
}

Element ApproxSpace::project(Element e) const {
  if (e >= size()) throw Error(Errc::unknown_element, "element " + std::to_string(e) + " outside App(" + type_.str() + ")");
  if (!exact_.test(e)) throw Error(Errc::not_exact, poset_.name(e) + " is not exact in App(" + type_.str() + ")");
  return proj_[e];
}

std::vector<Element> ApproxSpace::preimage(Element x) const {
  std::vector<Element> out;
  for (auto i = exact_.find_first(); i != Bits::npos; i = exact_.find_next(i))
    if (proj_[i] == x) out.push_back(static_cast<Element>(i));
  return out;
}

Element ApproxSpace::least_exact_representative(Element x) const {
  const SemanticSpace& sem = *semantics_;
  if (x >= sem.poset.size()) throw Error(Errc::unknown_element, "element outside E_" + type_.str());
  switch (kind_) {
    case Kind::base: {
      const auto pre = preimage(x);
      auto m = bound(poset_, pre, BoundKind::glb);
      if (pre.empty() || !m || !exact_.test(*m) || proj_[*m] != x)
        throw Error(Errc::internal_law_failure, "no exact meet of the preimage of " + sem.poset.name(x));
      return *m;
    }
    case Kind::product: {
      std::vector<Element> t(parts_.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = parts_[i]->least_exact_representative(sem.product->component(x, i));
      return product_->element(t);
    }
    case Kind::power: {
      std::vector<Element> t(product_->arity());
      for (Element y = 0; y < t.size(); ++y) t[y] = parts_[0]->least_exact_representative(sem.maps->apply(x, y));
      return product_->element(t);
    }
    case Kind::exponential:
      break;
  }
  const ApproxSpace& a = *parts_[0];
  const ApproxSpace& b = *parts_[1];
  // d_e for every e in E_src
  const std::size_t ne = a.semantics().poset.size();
  std::vector<Element> d(ne);
  for (Element e = 0; e < ne; ++e) d[e] = b.least_exact_representative(sem.maps->apply(x, e));
  const auto bot = bottom(b.poset());
  std::vector<Element> table(a.size());
  for (Element c = 0; c < a.size(); ++c) {
    if (a.is_exact(c)) {
      table[c] = d[a.project(c)];
      continue;
    }
    std::vector<Element> below;
    const Bits down = a.poset().down_set(c) & a.exact_set();
    for (auto e = down.find_first(); e != Bits::npos; e = down.find_next(e)) below.push_back(d[a.project(static_cast<Element>(e))]);
    if (below.empty()) {
      table[c] = *bot;
      continue;
    }
    std::sort(below.begin(), below.end());
    below.erase(std::unique(below.begin(), below.end()), below.end());
    auto j = bound(b.poset(), below, BoundKind::lub);
    if (!j) throw Error(Errc::join_absent, "no join in App(" + b.type().str() + ") of the representatives below " + a.poset().name(c));
    table[c] = *j;
  }
  auto f = maps_->find(table);
  if (!f) throw Error(Errc::internal_law_failure, "representative of " + sem.poset.name(x) + " is not monotone");
  if (!exact_.test(*f) || proj_[*f] != x)
    throw Error(Errc::internal_law_failure, "representative of " + sem.poset.name(x) + " is not an exact preimage");
  return *f;
}

const PairView& ApproxSpace::pairs() const {
  std::call_once(pairs_once_, [this] {
    try {
      build_pairs();
    } catch (const Error& e) {
      pairs_error_ = e.what();
    }
  });
  if (!pairs_) throw Error(Errc::no_pair_structure, "App(" + type_.str() + "): " + pairs_error_);
  return *pairs_;
}

void ApproxSpace::build_pairs() const {
  switch (kind_) {
    case Kind::base:
      if (!base_pairs_) throw Error(Errc::no_pair_structure, "base space has no pair reading");
      pairs_ = base_pairs_;
      return;
    case Kind::product: {
      std::vector<const PairView*> fs;
      for (const auto& p : parts_) fs.push_back(&p->pairs());
      pairs_ = product_pairs(*product_, fs);
      return;
    }
    case Kind::power: {
      std::vector<const PairView*> fs(product_->arity(), &parts_[0]->pairs());
      pairs_ = product_pairs(*product_, fs);
      return;
    }
    case Kind::exponential:
      break;
  }
  const ApproxSpace& a = *parts_[0];
  const PairView& bp = parts_[1]->pairs();
  const std::size_t k = a.size(), n = size();
  std::vector<Element> lo(n), hi(n);
  if (flavor_ == Flavor::lu) {
    LUExponential le = lu_exponential(a.poset(), bp);
    for (Element f = 0; f < n; ++f) {
      const Element g = le.nu.forward(f);
      lo[f] = le.space.p1(g);
      hi[f] = le.space.p2(g);
    }
    pairs_.emplace(poset_, le.tuple.order, le.tuple.lower, le.tuple.upper, std::move(lo), std::move(hi), false);
    return;
  }
  // square case: f |-> (lo . f, hi . f . swap) over the maps into the carrier
  const PairView& ap = a.pairs();
  if (!ap.square() || !bp.square()) throw Error(Errc::no_pair_structure, "bilattice exponential needs square parts");
  MapSpace carrier = exponential(a.poset(), bp.carrier());
  std::vector<Element> t1(k), t2(k);
  for (Element f = 0; f < n; ++f) {
    for (Element x = 0; x < k; ++x) {
      t1[x] = bp.lo(apply(f, x));
      t2[x] = bp.hi(apply(f, ap.swap(x)));
    }
    auto g1 = carrier.find(t1), g2 = carrier.find(t2);
    if (!g1 || !g2) throw Error(Errc::internal_law_failure, "pair component of " + poset_.name(f) + " is not monotone");
    lo[f] = *g1;
    hi[f] = *g2;
  }
  Bits all(carrier.poset().size());
  all.set();
  pairs_.emplace(poset_, carrier.poset(), all, all, std::move(lo), std::move(hi), true);
}

// ---------------------------------------------------------------------------

struct ApproximationSystem::Impl {
  Flavor flavor;
  std::map<std::string, BaseApprox, std::less<>> bases;
  BaseAssignment base;
  SystemClosure closure;
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const ApproxSpace>> memo;
};

ApproximationSystem::ApproximationSystem(Flavor flavor, std::map<std::string, BaseApprox, std::less<>> bases,
                                         SystemClosure closure)
    : impl_(std::make_shared<Impl>()) {
  impl_->flavor = flavor;
  for (const auto& [name, b] : bases) {
    if (b.proj.size() != b.app.size())
      throw Error(Errc::invalid_input, "projection of base " + name + " is not indexed by its App space");
    for (Element e : b.exact)
      if (e >= b.app.size()) throw Error(Errc::unknown_element, "exact element outside App(" + name + ")");
    impl_->base.emplace(name, b.semantics);
  }
  impl_->bases = std::move(bases);
  impl_->closure = std::move(closure);
}

Flavor ApproximationSystem::flavor() const { return impl_->flavor; }
const BaseAssignment& ApproximationSystem::base() const { return impl_->base; }
const std::map<std::string, BaseApprox, std::less<>>& ApproximationSystem::bases() const { return impl_->bases; }
const SystemClosure& ApproximationSystem::closure() const { return impl_->closure; }

std::shared_ptr<const ApproxSpace> ApproximationSystem::app(const TypeExpr& t) const {
  {
    std::lock_guard lock(impl_->mu);
    if (auto it = impl_->memo.find(t.str()); it != impl_->memo.end()) return it->second;
  }
  if (!impl_->closure.contains(t)) throw Error(Errc::type_not_in_closure, "E_" + t.str() + " is not in the closure");

  std::shared_ptr<ApproxSpace> sp(new ApproxSpace());
  sp->type_ = t;
  sp->flavor_ = impl_->flavor;
  sp->semantics_ = semantics(t, impl_->base);
  const SemanticSpace& sem = *sp->semantics_;

  auto finish_componentwise = [&](const std::vector<const ApproxSpace*>& comps) {
    const std::size_t n = sp->product_->poset().size();
    sp->poset_ = sp->product_->poset();
    sp->exact_.resize(n);
    sp->proj_.assign(n, no_element);
    std::vector<Element> image(comps.size());
    for (Element e = 0; e < n; ++e) {
      bool exact = true;
      for (std::size_t i = 0; i < comps.size() && exact; ++i) {
        const Element c = sp->product_->component(e, i);
        exact = comps[i]->is_exact(c);
        if (exact) image[i] = comps[i]->project(c);
      }
      if (!exact) continue;
      sp->exact_.set(e);
      if (sp->kind_ == ApproxSpace::Kind::product) {
        sp->proj_[e] = sem.product->element(image);
      } else {
        auto g = sem.maps->find(image);
        if (!g) throw Error(Errc::internal_law_failure, "projection outside E_" + t.str());
        sp->proj_[e] = *g;
      }
    }
  };

  if (t.is_base()) {
    auto it = impl_->bases.find(t.name());
    if (it == impl_->bases.end()) throw Error(Errc::unknown_base_type, "no base space for " + t.name());
    const BaseApprox& b = it->second;
    sp->kind_ = ApproxSpace::Kind::base;
    sp->poset_ = b.app;
    sp->exact_.resize(b.app.size());
    for (Element e : b.exact) sp->exact_.set(e);
    sp->proj_ = b.proj;
    sp->base_pairs_ = b.pairs;
  } else if (t.is_product()) {
    sp->kind_ = ApproxSpace::Kind::product;
    std::vector<Poset> fs;
    std::vector<const ApproxSpace*> comps;
    for (const auto& f : t.fields()) {
      sp->parts_.push_back(app(f.second));
      fs.push_back(sp->parts_.back()->poset());
      comps.push_back(sp->parts_.back().get());
    }
    sp->product_.emplace(std::move(fs));
    finish_componentwise(comps);
  } else if (!impl_->closure.contains(t.src())) {
    sp->kind_ = ApproxSpace::Kind::power;
    sp->parts_.push_back(app(t.dst()));
    const std::size_t copies = sem.parts[0]->poset.size();
    check_size(std::pow(static_cast<double>(sp->parts_[0]->size()), static_cast<double>(copies)), "App(" + t.str() + ")");
    sp->product_.emplace(std::vector<Poset>(copies, sp->parts_[0]->poset()));
    finish_componentwise(std::vector<const ApproxSpace*>(copies, sp->parts_[0].get()));
  } else {
    sp->kind_ = ApproxSpace::Kind::exponential;
    sp->parts_.push_back(app(t.src()));
    sp->parts_.push_back(app(t.dst()));
    const ApproxSpace& a = *sp->parts_[0];
    const ApproxSpace& b = *sp->parts_[1];
    sp->maps_ = exponential(a.poset(), b.poset());
    sp->poset_ = sp->maps_->poset();
    const std::size_t n = sp->poset_.size();
    sp->exact_.resize(n);
    sp->proj_.assign(n, no_element);
    const auto ax = a.exact_elements();
    const std::size_t ne = a.semantics().poset.size();
    std::vector<Element> reps(ne), table(ne);
    for (Element x = 0; x < ne; ++x) reps[x] = a.least_exact_representative(x);
    for (Element f = 0; f < n; ++f) {
      if (!std::all_of(ax.begin(), ax.end(), [&](Element e) { return b.is_exact(sp->maps_->apply(f, e)); })) continue;
      sp->exact_.set(f);
      for (Element x = 0; x < ne; ++x) table[x] = b.project(sp->maps_->apply(f, reps[x]));
      sp->proj_[f] = *sem.maps->find(table);
    }
  }

  std::lock_guard lock(impl_->mu);
  return impl_->memo.emplace(t.str(), std::move(sp)).first->second;
}

ApproximationSystem lu_bool_system() {
  return ApproximationSystem(Flavor::lu, {{"o", standard_base(Flavor::lu, truth_poset())}},
                             SystemClosure::predicate_types());
}

ApproximationSystem bilat_bool_system() {
  return ApproximationSystem(Flavor::bilat, {{"o", standard_base(Flavor::bilat, truth_poset())}},
                             SystemClosure::predicate_types());
}

// ---------------------------------------------------------------------------

SystemReport validate_system(const ApproximationSystem& s) {
  SystemReport r;
  auto fail = [&](std::string clause, std::string witness) {
    r.ok = false;
    r.violations.push_back({std::move(clause), std::move(witness)});
  };
  bool all_cjsl = true;
  for (const auto& [name, b] : s.bases()) {
    const auto c = classify(b.app);
    if (!c.is_cpo) fail("cpo", "App(" + name + ") = " + describe(b.app) + " has no bottom");
    all_cjsl = all_cjsl && c.is_complete_join_semilattice;
  }
  for (const auto& [name, b] : s.bases()) {
    Bits exact(b.app.size());
    for (Element e : b.exact) exact.set(e);
    if (!all_cjsl)
      for (Element e : b.exact) {
        const Bits above = b.app.up_set(e) - exact;
        if (above.any()) {
          fail("3b", "App(" + name + ") is not a complete join semilattice and " +
                         b.app.name(static_cast<Element>(above.find_first())) + " lies above exact " + b.app.name(e) +
                         " without being exact");
          break;
        }
      }

    Bits hit(b.semantics.size());
    bool total = true;
    for (Element e : b.exact) {
      if (b.proj[e] == no_element || b.proj[e] >= b.semantics.size()) {
        fail("4a", "projection of " + name + " undefined at exact " + b.app.name(e));
        total = false;
        break;
      }
      hit.set(b.proj[e]);
    }
    if (!total) continue;
    if (!hit.all())
      fail("4a", "projection of " + name + " misses " + b.semantics.name(static_cast<Element>((~hit).find_first())));

    [&] {
      for (Element x : b.exact)
        for (Element y : b.exact)
          if (b.app.leq(x, y) && b.proj[x] != b.proj[y]) {
            fail("4b", b.app.name(x) + " <= " + b.app.name(y) + " but they project to " + b.semantics.name(b.proj[x]) +
                           " and " + b.semantics.name(b.proj[y]));
            return;
          }
    }();

    for (Element v = 0; v < b.semantics.size(); ++v) {
      std::vector<Element> pre;
      for (Element e : b.exact)
        if (b.proj[e] == v) pre.push_back(e);
      if (pre.empty()) continue;
      auto m = bound(b.app, pre, BoundKind::glb);
      if (!m) {
        fail("4c", "exact preimage of " + b.semantics.name(v) + " has no meet in App(" + name + ")");
        break;
      }
      if (!exact.test(*m) || b.proj[*m] != v) {
        fail("4c", "meet " + b.app.name(*m) + " of the preimage of " + b.semantics.name(v) +
                       " is not an exact representative of it");
        break;
      }
    }
  }
  return r;
}

UpwardReport check_upward_closure(const ApproximationSystem& s, const TypeExpr& t) {
  UpwardReport r;
  r.by_join_semilattices = std::all_of(s.bases().begin(), s.bases().end(), [](const auto& kv) {
    return classify(kv.second.app).is_complete_join_semilattice;
  });
  if (r.by_join_semilattices) return r;
  auto sp = s.app(t);
  for (Element e : sp->exact_elements()) {
    const Bits above = sp->poset().up_set(e) - sp->exact_set();
    if (above.any()) {
      r.ok = false;
      r.counterexample = sp->poset().name(static_cast<Element>(above.find_first())) + " lies above exact " +
                         sp->poset().name(e) + " without being exact";
      return r;
    }
  }
  return r;
}

}  // namespace hoaft
