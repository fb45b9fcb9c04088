#include "hoaft/laws.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hoaft/approx.hpp"
#include "hoaft/bilat.hpp"
#include "hoaft/error.hpp"
#include "hoaft/lu.hpp"

namespace hoaft {

namespace {

// Records the first failure only; later ones just flip the flag.
void fail(LawResult& r, const std::string& what) {
  if (r.pass) r.detail = what;
  r.pass = false;
}

Poset named_poset(std::vector<std::string> names, std::vector<std::pair<std::string, std::string>> covers) {
  return Poset::validate(std::move(names), covers, OrderMode::covers);
}

// Every chain of p, each listed bottom-up, visited once.
void for_each_chain(const Poset& p, const std::function<void(const std::vector<Element>&)>& visit) {
  const auto order = linear_extension(p);
  std::vector<Element> c;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    visit(c);
    for (std::size_t i = from; i < order.size(); ++i) {
      if (!c.empty() && !p.lt(c.back(), order[i])) continue;
      c.push_back(order[i]);
      grow(i + 1);
      c.pop_back();
    }
  };
  grow(0);
}

// Least element of `set` above every element of `xs` (greatest below with lub = false).
std::optional<Element> bound_within(const Poset& p, const Bits& set, std::span<const Element> xs, bool lub) {
  std::vector<Element> cand;
  for (Element e = 0; e < p.size(); ++e) {
    if (!set.test(e)) continue;
    bool ok = true;
    for (Element x : xs) ok = ok && (lub ? p.leq(x, e) : p.leq(e, x));
    if (ok) cand.push_back(e);
  }
  for (Element c : cand) {
    bool best = true;
    for (Element d : cand) best = best && (lub ? p.leq(c, d) : p.leq(d, c));
    if (best) return c;
  }
  return std::nullopt;
}

ApproximationTuple tuple_from_code(const Poset& p, std::size_t code) {
  const std::size_t n = p.size();
  Bits l(n), u(n);
  for (std::size_t i = 0; i < n; ++i, code /= 3) {
    l[i] = code % 3 != 1;
    u[i] = code % 3 != 0;
  }
  return {p, l, u};
}

}  // namespace

std::vector<Poset> ccc_context() {
  return {chain(1),
          chain(2),
          antichain(2),
          chain(3),
          named_poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}),
          named_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}})};
}

std::vector<Poset> lattices_up_to(std::size_t n) {
  std::vector<Poset> out;
  for (const Poset& p : enumerate_posets_up_to(n))
    if (classify(p).is_complete_lattice) out.push_back(p);
  return out;
}

LawResult ccc_laws(std::size_t max_size) {
  LawResult r;
  r.name = "ccc";
  const auto ctx = ccc_context();
  std::size_t posets = 0;
  auto expect = [&](const UniversalCandidate& c, bool want, const std::string& what) {
    const UniversalReport u = check_universal(c, ctx);
    r.checked += u.checked;
    if (u.pass != want) fail(r, what + (want ? ": " + u.counterexample : ": passed but should not"));
  };
  for (const Poset& x : enumerate_posets_up_to(max_size)) {
    ++posets;
    const std::string dx = describe(x);
    expect(UniversalCandidate::terminal(x), x.size() == 1, "terminal " + dx);
    for (const Poset& c : ctx) {
      const std::string dc = describe(c);
      expect(UniversalCandidate::of(product({x, c})), true, "product " + dx + " x " + dc);
      expect(UniversalCandidate::of(exponential(x, c)), true, "exponential " + dx + " -> " + dc);
      expect(UniversalCandidate::of(exponential(c, x)), true, "exponential " + dc + " -> " + dx);
    }
    expect(UniversalCandidate::of(product({x, x, x})), true, "product " + dx + "^3");
  }
  if (r.pass) r.detail = std::to_string(posets) + " posets against " + std::to_string(ctx.size()) + " test objects";
  return r;
}

LawResult function_space_laws(std::size_t max_size) {
  LawResult r;
  r.name = "function-space";
  const auto all = enumerate_posets_up_to(max_size);
  for (const Poset& x : all)
    for (const Poset& y : all) {
      const MapSpace fs = function_space(x, y);
      const ProductSpace pw(std::vector<Poset>(x.size(), y));
      ++r.checked;
      const std::string what = describe(x) + " -> " + describe(y);
      if (fs.poset().size() != pw.poset().size() || !find_isomorphism(fs.poset(), pw.poset())) {
        fail(r, "no isomorphism for " + what);
        continue;
      }
      // and the evident one, f |-> (f(x))_x, is an isomorphism
      std::vector<Element> table(fs.poset().size());
      for (Element f = 0; f < table.size(); ++f) table[f] = pw.element(fs.table(f));
      try {
        iso_from_bijection(fs.poset(), pw.poset(), std::move(table));
      } catch (const Error& e) {
        fail(r, "tupling is not an isomorphism for " + what + ": " + e.what());
      }
    }
  if (r.pass) r.detail = std::to_string(r.checked) + " pairs";
  return r;
}

LawResult bilat_laws(std::size_t max_lattice, std::size_t max_approx, std::size_t psi_budget) {
  LawResult r;
  r.name = "bilat";
  const auto lats = lattices_up_to(max_lattice);
  std::size_t capped = 0, psi_full = 0, psi_factored = 0;
  for (const Poset& l1 : lats)
    for (const Poset& l2 : lats) {
      const std::string what = describe(l1) + " / " + describe(l2);
      ++r.checked;
      try {
        const IsoPair phi = product_iso(l1, l2);
        for (Element e = 0; e < phi.forward.source().size(); ++e)
          if (phi.backward(phi.forward(e)) != e) fail(r, "phi round trip fails for " + what);
      } catch (const Error& e) {
        fail(r, "phi for " + what + ": " + e.what());
      }
      try {
        const PsiCheck c = verify_exponential_iso(l1, l2, psi_budget);
        (c.factored ? psi_factored : psi_full) += 1;
        if (!c.ok) fail(r, "psi for " + what + ": " + c.failure);
      } catch (const Error& e) {
        if (e.code() != Errc::size_cap_exceeded) throw;
        ++capped;
        fail(r, "psi for " + what + " not verified: " + e.what());
      }
    }
  std::size_t approximators = 0;
  for (const Poset& l : lattices_up_to(max_approx)) {
    const Bilattice b(l);
    for (const auto& a : monotone_tables(b.space(), b.space(), size_cap())) {
      ++approximators;
      ApproximatorClass c;
      try {
        c = classify_approximator(b, a);
      } catch (const Error& e) {
        fail(r, "classify over " + describe(l) + ": " + e.what());
        continue;
      }
      // pointwise: A1(x,y) vs A2(y,x)
      bool eq = true, le = true;
      for (Element e = 0; e < a.size(); ++e) {
        const Element f1 = b.lo(a[e]), f2 = b.hi(a[b.pairs().swap(e)]);
        eq = eq && f1 == f2;
        le = le && l.leq(f1, f2);
      }
      if (c.symmetric != eq || c.exact_pair_under_psi != eq || c.gracefully_degrading != le ||
          c.consistent_pair_under_psi != le)
        fail(r, "classification disagrees over " + describe(l));
    }
  }
  r.checked += approximators;
  std::ostringstream os;
  os << lats.size() << " lattices, psi full " << psi_full << " factored " << psi_factored << " unverified " << capped
     << ", " << approximators << " approximators";
  if (r.pass) r.detail = os.str();
  else r.detail += " [" + os.str() + "]";
  return r;
}

LawResult lu_laws(std::size_t max_size) {
  LawResult r;
  r.name = "lu";
  std::size_t tuples = 0, valid = 0, chains = 0;
  for (const Poset& p : enumerate_posets_up_to(max_size)) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < p.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      const ApproximationTuple t = tuple_from_code(p, code);
      ++tuples;
      if (!check_tuple(t).ok) {
        try {
          LUSpace bad(t);
          fail(r, "invalid tuple accepted over " + describe(p));
        } catch (const Error& e) {
          if (e.code() != Errc::invalid_input) throw;
        }
        continue;
      }
      ++valid;
      const LUSpace s(t);
      const Poset& sp = s.space();
      const std::string what = describe(p) + " code " + std::to_string(code);
      if (!classify(sp).is_cpo) fail(r, "not a cpo: " + what);
      if (!check_precision_order(s.pairs())) fail(r, "precision order broken: " + what);
      for_each_chain(sp, [&](const std::vector<Element>& c) {
        ++chains;
        std::vector<Element> lows, highs;
        for (Element e : c) {
          lows.push_back(s.p1(e));
          highs.push_back(s.p2(e));
        }
        const auto x = bound_within(p, t.lower, lows, true);
        const auto y = bound_within(p, t.upper, highs, false);
        const auto formula = x && y ? s.find(*x, *y) : std::nullopt;
        const auto generic = bound(sp, c, BoundKind::lub);
        const Element got = chain_sup(s, c);
        if (!formula || *formula != got || !generic || *generic != got) fail(r, "chain sup disagrees: " + what);
      });
    }
  }
  r.checked = tuples + chains;

  const LUSpace b = boolean_lu_space();
  const LUExponential e = lu_exponential(b, b);
  ++r.checked;
  if (e.space.space().size() != 11) fail(r, "boolean exponential has " + std::to_string(e.space.space().size()) + " elements");
  if (!find_isomorphism(e.space.space(), exponential(b.space(), b.space()).poset()))
    fail(r, "boolean exponential is not isomorphic to the monotone maps");
  const TupleReport tr = check_tuple(e.tuple);
  if (!tr.ok) fail(r, "boolean exponential tuple fails clause " + std::to_string(tr.clause) + ": " + tr.witness);

  if (r.pass)
    r.detail = std::to_string(valid) + " valid of " + std::to_string(tuples) + " tuples, " + std::to_string(chains) +
               " chains";
  return r;
}

LawResult approx_laws(const std::vector<std::string>& types) {
  LawResult r;
  r.name = "approx";
  std::vector<std::string> skipped;
  const std::pair<const char*, ApproximationSystem> systems[] = {{"lu-bool", lu_bool_system()},
                                                                 {"bilat-bool", bilat_bool_system()}};
  for (const auto& [sname, s] : systems) {
    const SystemReport v = validate_system(s);
    if (!v.ok) fail(r, std::string(sname) + " fails clause " + v.violations.front().clause);
    for (const auto& tname : types) {
      const TypeExpr t = TypeExpr::parse(tname);
      const std::string at = std::string(sname) + " at " + tname;
      std::shared_ptr<const ApproxSpace> sp;
      try {
        sp = s.app(t);
      } catch (const Error& e) {
        if (e.code() != Errc::size_cap_exceeded) throw;
        skipped.push_back(at);
        continue;
      }
      const Poset& p = sp->poset();

      const UpwardReport up = check_upward_closure(s, t);
      if (!up.ok) fail(r, "upward closure " + at + ": " + up.counterexample);
      if (up.by_join_semilattices) {
        for (const auto& [bn, base] : s.bases())
          if (!classify(base.app).is_complete_join_semilattice) fail(r, "base " + bn + " is not a CJSL in " + at);
      } else {
        for (Element e : sp->exact_elements())
          for (Element d = 0; d < p.size(); ++d)
            if (p.leq(e, d) && !sp->is_exact(d)) fail(r, "not upward closed " + at + " at " + p.name(d));
      }

      const auto exacts = sp->exact_elements();
      for (Element a : exacts)
        for (Element b : exacts) {
          ++r.checked;
          if (p.leq(a, b) && sp->project(a) != sp->project(b))
            fail(r, "comparable exacts project apart " + at + ": " + p.name(a) + " <= " + p.name(b));
        }

      const std::size_t ne = sp->semantics().poset.size();
      for (Element x = 0; x < ne; ++x) {
        ++r.checked;
        const auto pre = sp->preimage(x);
        const Element rep = sp->least_exact_representative(x);
        const bool below_all = std::all_of(pre.begin(), pre.end(), [&](Element d) { return p.leq(rep, d); });
        if (!sp->is_exact(rep) || std::find(pre.begin(), pre.end(), rep) == pre.end() || !below_all)
          fail(r, "least representative is not the meet of the preimage " + at);
        if (sp->project(rep) != x) fail(r, "projection not surjective " + at);
      }
      for (Element e : exacts)
        if (!p.leq(sp->least_exact_representative(sp->project(e)), e)) fail(r, "round trip above " + at);

      if (sp->kind() != ApproxSpace::Kind::exponential) continue;
      // every representative of the argument gives the same value
      const ApproxSpace& src = *sp->parts()[0];
      const ApproxSpace& dst = *sp->parts()[1];
      const MapSpace& sem = *sp->semantics().maps;
      for (Element f : exacts)
        for (Element x = 0; x < src.semantics().poset.size(); ++x)
          for (Element d : src.preimage(x)) {
            ++r.checked;
            if (dst.project(sp->apply(f, d)) != sem.apply(sp->project(f), x))
              fail(r, "projection depends on the representative " + at + " at " + p.name(f));
          }
    }
  }
  if (r.pass) {
    r.detail = std::to_string(types.size() * 2 - skipped.size()) + " spaces";
    for (const auto& s : skipped) r.detail += "; skipped " + s + " (size cap)";
  }
  return r;
}

std::vector<LawResult> run_laws(std::string_view suite, std::size_t max_size) {
  const std::vector<std::string> types{"o", "o->o", "(o->o)->o"};
  if (suite == "ccc") return {ccc_laws(max_size), function_space_laws(max_size)};
  if (suite == "bilat") return {bilat_laws(max_size, std::min<std::size_t>(max_size, 3))};
  if (suite == "lu") return {lu_laws(max_size)};
  if (suite == "approx") return {approx_laws(types)};
  if (suite == "all")
    return {ccc_laws(max_size), function_space_laws(max_size), bilat_laws(max_size, std::min<std::size_t>(max_size, 3)),
            lu_laws(max_size), approx_laws(types)};
  throw Error(Errc::invalid_input, "unknown suite " + std::string(suite));
}

}  // namespace hoaft
