#include <gtest/gtest.h>

#include <random>

#include "hoaft/holog.hpp"
#include "oracles.hpp"

using namespace hoaft;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::invalid_input;
}

const char* example41 = "p : o -> o.\np(R) :- R.\n";

std::string component_name(const Evaluator& ev, Element interp, const std::string& sym) {
  const auto& s = ev.space();
  const std::size_t i = s.index(sym);
  return s.app(i).poset().name(s.product().component(interp, i));
}

// Three-valued first-order semantics on (lower, upper) bitmasks, independent of
// the approximation machinery.
struct ClassicalOracle {
  std::vector<std::string> atoms;
  const Program& prog;

  explicit ClassicalOracle(const Program& p) : prog(p) {
    for (const auto& [n, t] : p.signature) atoms.push_back(n);
  }
  std::size_t idx(const std::string& a) const {
    return static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), a) - atoms.begin());
  }
  std::pair<bool, bool> eval(const Term& t, unsigned lo, unsigned hi) const {
    switch (t.kind) {
      case Term::Kind::constant:
        return {(lo >> idx(t.name) & 1) != 0, (hi >> idx(t.name) & 1) != 0};
      case Term::Kind::truth:
        return {true, true};
      case Term::Kind::falsity:
        return {false, false};
      case Term::Kind::negation: {
        auto [a, b] = eval(t.args[0], lo, hi);
        return {!b, !a};
      }
      case Term::Kind::conjunction: {
        auto [a, b] = eval(t.args[0], lo, hi);
        auto [c, d] = eval(t.args[1], lo, hi);
        return {a && c, b && d};
      }
      case Term::Kind::disjunction: {
        auto [a, b] = eval(t.args[0], lo, hi);
        auto [c, d] = eval(t.args[1], lo, hi);
        return {a || c, b || d};
      }
      default:
        throw std::logic_error("not first-order");
    }
  }
  std::pair<unsigned, unsigned> step(unsigned lo, unsigned hi) const {
    unsigned nl = 0, nh = 0;
    for (const Rule& r : prog.rules) {
      auto [a, b] = eval(r.body, lo, hi);
      if (a) nl |= 1u << idx(r.head);
      if (b) nh |= 1u << idx(r.head);
    }
    return {nl, nh};
  }
  static bool leq_p(std::pair<unsigned, unsigned> a, std::pair<unsigned, unsigned> b) {
    return (a.first & ~b.first) == 0 && (b.second & ~a.second) == 0;
  }
  static std::pair<unsigned, unsigned> least(const std::vector<std::pair<unsigned, unsigned>>& s) {
    for (auto c : s) {
      bool ok = true;
      for (auto x : s) ok = ok && leq_p(c, x);
      if (ok) return c;
    }
    throw std::logic_error("no least element");
  }
  unsigned full() const { return (1u << atoms.size()) - 1; }
  std::pair<unsigned, unsigned> kk() const {
    std::vector<std::pair<unsigned, unsigned>> fix;
    for (unsigned lo = 0; lo <= full(); ++lo)
      for (unsigned hi = 0; hi <= full(); ++hi)
        if (step(lo, hi) == std::pair{lo, hi}) fix.emplace_back(lo, hi);
    return least(fix);
  }
  // least x (subset order) with lower(x, y) = x
  unsigned revision(unsigned y) const {
    std::vector<unsigned> fix;
    for (unsigned x = 0; x <= full(); ++x)
      if (step(x, y).first == x) fix.push_back(x);
    for (unsigned c : fix) {
      bool ok = true;
      for (unsigned x : fix) ok = ok && (c & ~x) == 0;
      if (ok) return c;
    }
    throw std::logic_error("no least revision");
  }
  std::pair<unsigned, unsigned> wf() const {
    std::vector<std::pair<unsigned, unsigned>> stable;
    for (unsigned x = 0; x <= full(); ++x)
      for (unsigned y = 0; y <= full(); ++y)
        if (revision(y) == x && revision(x) == y) stable.emplace_back(x, y);
    return least(stable);
  }
  std::string name(std::pair<unsigned, unsigned> v, const std::string& a) const {
    const std::size_t i = idx(a);
    return std::string("(") + ((v.first >> i & 1) ? "t" : "f") + "," + ((v.second >> i & 1) ? "t" : "f") + ")";
  }
};

void expect_matches_oracle(const std::string& text) {
  Program p = typecheck(parse_program(text));
  ClassicalOracle o(p);
  Evaluator ev(p, bilat_bool_system());
  const Element kk = compute_model(ev, Mode::kk), wf = compute_model(ev, Mode::wf);
  for (const auto& a : o.atoms) {
    EXPECT_EQ(component_name(ev, kk, a), o.name(o.kk(), a)) << text << " KK " << a;
    EXPECT_EQ(component_name(ev, wf, a), o.name(o.wf(), a)) << text << " WF " << a;
  }
}

std::string random_body(std::mt19937& rng, int depth) {
  const char* atoms[] = {"a", "b", "c"};
  std::uniform_int_distribution<int> k(0, depth > 0 ? 5 : 1);
  switch (k(rng)) {
    case 0:
      return atoms[rng() % 3];
    case 1:
      return std::string("~") + atoms[rng() % 3];
    case 2:
      return "~(" + random_body(rng, depth - 1) + ")";
    case 3:
      return "(" + random_body(rng, depth - 1) + ", " + random_body(rng, depth - 1) + ")";
    case 4:
      return "(" + random_body(rng, depth - 1) + "; " + random_body(rng, depth - 1) + ")";
    default:
      return rng() % 2 ? "true" : "false";
  }
}

}  // namespace

TEST(Parse, Examples) {
  Program p = parse_program(example41);
  ASSERT_EQ(p.signature.size(), 1u);
  ASSERT_EQ(p.rules.size(), 1u);
  EXPECT_EQ(p.rules[0].head, "p");
  EXPECT_EQ(p.rules[0].params[0].first, "R");
  EXPECT_EQ(p.rules[0].body.kind, Term::Kind::var);
  EXPECT_TRUE(parse_program("").signature.empty());
  EXPECT_TRUE(parse_program("  % nothing here\n").rules.empty());
  EXPECT_EQ(code_of([] { parse_program("p : o. p :- ~q."); }), Errc::undeclared_symbol);
  EXPECT_EQ(code_of([] { parse_program("q :- true."); }), Errc::undeclared_symbol);
}

TEST(Parse, Structure) {
  Program p = parse_program("p : o. q : o. r : o -> o -> o.\np :- q, ~r(q, p) ; false.\nq.\n");
  ASSERT_EQ(p.rules.size(), 2u);
  EXPECT_EQ(p.rules[0].body.str(), "((q, ~r(q)(p)); false)");
  EXPECT_EQ(p.rules[1].body.kind, Term::Kind::truth);
  EXPECT_EQ(parse_program("p : o -> o. p(X) :- ((X)).").rules[0].body.str(), "X");
  EXPECT_EQ(parse_program("p : o -> o. q : o. q :- p((q, q)), p(q;q).").rules[0].body.str(), "(p((q, q)), p((q; q)))");
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse_program("p : o.\np :- q q.");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::syntax_error);
    EXPECT_NE(std::string(e.what()).find("2:"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse_program("p : o -> ."); }), Errc::syntax_error);
  EXPECT_EQ(code_of([] { parse_program("p : o. p :- "); }), Errc::syntax_error);
  EXPECT_EQ(code_of([] { parse_program("p : o -> o -> o. p(X, X) :- X."); }), Errc::syntax_error);
  EXPECT_EQ(code_of([] { parse_program("p : o. p : o."); }), Errc::syntax_error);
}

TEST(Typecheck, Examples) {
  Program p = typecheck(parse_program(example41));
  EXPECT_EQ(p.signature.at("p").str(), "o->o");
  EXPECT_EQ(p.rules[0].params[0].second.str(), "o");
  EXPECT_EQ(p.rules[0].body.type->str(), "o");
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : o -> o. q : o. q :- p(p).")); }), Errc::type_mismatch);
  EXPECT_NO_THROW(typecheck(parse_program("p : o. q : o. p :- q.")));
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : o -> o. q : o. q :- p.")); }), Errc::type_mismatch);
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : o -> o. p :- true.")); }), Errc::type_mismatch);
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : o. p(X) :- X.")); }), Errc::type_mismatch);
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : o. q : o. q :- p(q).")); }), Errc::type_mismatch);
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : i -> o.")); }), Errc::non_predicate_symbol);
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : (o, o).")); }), Errc::non_predicate_symbol);
  EXPECT_EQ(code_of([] { typecheck(parse_program("p : o -> i.")); }), Errc::non_predicate_symbol);
}

TEST(InterpretationSpace, Sizes) {
  EXPECT_EQ(InterpretationSpace(typecheck(parse_program(example41)), lu_bool_system()).poset().size(), 11u);
  EXPECT_EQ(InterpretationSpace(typecheck(parse_program("p : o. q : o.")), lu_bool_system()).poset().size(), 9u);
  EXPECT_EQ(InterpretationSpace(Program{}, lu_bool_system()).poset().size(), 1u);
}

TEST(Eval, Connectives) {
  Evaluator ev(parse_program(example41), lu_bool_system());
  const Poset& o = ev.truth().poset();
  const Element u = o.at("(f,t)"), f = o.at("(f,f)"), t = o.at("(t,t)");
  EXPECT_EQ(ev.negate(u), u);
  EXPECT_EQ(ev.negate(t), f);
  EXPECT_EQ(ev.conjoin(u, f), f);
  EXPECT_EQ(ev.disjoin(u, t), t);
  EXPECT_EQ(ev.truth_value(true), t);

  const auto& sp = ev.space();
  const Element id = *sp.app(0).maps()->find(std::vector<Element>{0, 1, 2});
  const Element interp = sp.product().element(std::vector<Element>{id});
  const Term& body = ev.program().rules[0].body;
  Term call;
  call.kind = Term::Kind::application;
  Term fn;
  fn.kind = Term::Kind::constant;
  fn.name = "p";
  fn.type = TypeExpr::parse("o -> o");
  call.args = {fn, body};
  call.type = TypeExpr::base("o");
  EXPECT_EQ(ev.eval(call, interp, {{"R", u}}), u);
  EXPECT_EQ(code_of([&] { ev.eval(body, interp, {}); }), Errc::unbound_variable);

  Evaluator b(parse_program("p : o."), bilat_bool_system());
  const Poset& o4 = b.truth().poset();
  EXPECT_EQ(b.negate(o4.at("(t,f)")), o4.at("(t,f)"));
  EXPECT_EQ(b.conjoin(o4.at("(t,f)"), o4.at("(f,t)")), o4.at("(f,f)"));
}

// eval over every interpretation and binding, both pairs compared
TEST(Eval, MonotoneInInterpretationAndEnvironment) {
  for (const char* text : {example41, "p : o -> o. q : o. p(R) :- ~R, q ; ~q.", "p : o -> o. q : o. q :- p(~q). p(X) :- ~p(X)."})
    for (const auto& sys : {lu_bool_system(), bilat_bool_system()}) {
      Evaluator ev(parse_program(text), sys);
      const Poset& ip = ev.space().poset();
      const Poset& o = ev.truth().poset();
      for (const Rule& r : ev.program().rules) {
        const bool has_param = !r.params.empty();
        const std::size_t nv = has_param ? o.size() : 1;
        for (Element i1 = 0; i1 < ip.size(); ++i1)
          for (Element i2 = 0; i2 < ip.size(); ++i2) {
            if (!ip.leq(i1, i2)) continue;
            for (Element v1 = 0; v1 < nv; ++v1)
              for (Element v2 = 0; v2 < nv; ++v2) {
                if (has_param && !o.leq(v1, v2)) continue;
                Env e1, e2;
                if (has_param) {
                  e1[r.params[0].first] = v1;
                  e2[r.params[0].first] = v2;
                }
                ASSERT_TRUE(o.leq(ev.eval(r.body, i1, e1), ev.eval(r.body, i2, e2))) << text;
              }
          }
      }
      EXPECT_FALSE(monotonicity_witness(ev.immediate_consequence()).has_value()) << text;
    }
}

TEST(ImmediateConsequence, Examples) {
  Evaluator ev(parse_program(example41), lu_bool_system());
  const Operator t = ev.immediate_consequence();
  const Element id = *ev.space().app(0).maps()->find(std::vector<Element>{0, 1, 2});
  for (Element i = 0; i < ev.space().poset().size(); ++i) EXPECT_EQ(ev.space().product().component(t(i), 0), id);

  Evaluator empty(Program{}, lu_bool_system());
  EXPECT_EQ(empty.immediate_consequence()(0), 0u);

  // no rules: false, not unknown
  Evaluator norules(parse_program("p : o. q : o -> o."), lu_bool_system());
  const Element v = norules.immediate_consequence()(bottom(norules.space().poset()).value());
  EXPECT_EQ(component_name(norules, v, "p"), "(f,f)");
  EXPECT_EQ(component_name(norules, v, "q"), "{(f,f)->(f,f), (f,t)->(f,f), (t,t)->(f,f)}");
}

TEST(ImmediateConsequence, FittingOperatorOverBilat) {
  Program p = typecheck(parse_program("p : o. q : o. p :- ~q."));
  ClassicalOracle o(p);
  Evaluator ev(p, bilat_bool_system());
  const Operator t = ev.immediate_consequence();
  const PairView& pv = ev.space().pairs();
  for (Element i = 0; i < ev.space().poset().size(); ++i) {
    unsigned lo = 0, hi = 0;
    for (std::size_t a = 0; a < 2; ++a) {
      const Element c = ev.space().product().component(i, a);
      const auto& bp = ev.space().app(a).pairs();
      if (bp.carrier().name(bp.lo(c)) == "t") lo |= 1u << a;
      if (bp.carrier().name(bp.hi(c)) == "t") hi |= 1u << a;
    }
    const auto want = o.step(lo, hi);
    for (const auto& a : o.atoms) EXPECT_EQ(component_name(ev, t(i), a), o.name(want, a));
  }
  EXPECT_TRUE(pv.square());
}

TEST(Model, Example41) {
  Evaluator ev(parse_program(example41), lu_bool_system());
  const Element m = compute_model(ev, Mode::kk);
  EXPECT_EQ(component_name(ev, m, "p"), "{(f,f)->(f,f), (f,t)->(f,t), (t,t)->(t,t)}");
  const auto a = analyze_model(ev, m);
  ASSERT_TRUE(a.two_valued);
  const SemanticSpace& sem = ev.space().app(0).semantics();
  const Poset e = truth_poset();
  EXPECT_EQ(sem.maps->apply((*a.projection)[0], e.at("t")), e.at("t"));
  EXPECT_EQ(sem.maps->apply((*a.projection)[0], e.at("f")), e.at("f"));
  EXPECT_FALSE(analyze_model(ev, bottom(ev.space().poset()).value()).two_valued);
  EXPECT_EQ(code_of([&] { compute_model(ev, Mode::wf); }), Errc::experimental_feature_disabled);
}

TEST(Model, ClassicalProgramsOverBilat) {
  for (const char* text : {"p : o. q : o. p :- ~q.", "p : o. p :- ~p.", "p : o. p :- p.", "p : o. q : o. p :- q. q :- p.",
                           "p : o. q : o. r : o. p :- ~q. q :- ~p. r :- p ; q.", "p : o. q : o. p :- ~q, ~p. q."})
    expect_matches_oracle(text);
  Evaluator ev(parse_program("p : o. q : o. p :- ~q."), bilat_bool_system());
  const Element m = compute_model(ev, Mode::wf);
  EXPECT_EQ(component_name(ev, m, "p"), "(t,t)");
  EXPECT_EQ(component_name(ev, m, "q"), "(f,f)");
  Evaluator loop(parse_program("p : o. p :- ~p."), bilat_bool_system());
  const auto a = analyze_model(loop, compute_model(loop, Mode::wf));
  EXPECT_FALSE(a.two_valued);
  EXPECT_FALSE(a.projection.has_value());
}

TEST(Model, RandomFirstOrderProgramsOverBilat) {
  std::mt19937 rng(11);
  for (int round = 0; round < 60; ++round) {
    std::string text = "a : o. b : o. c : o.\n";
    const int rules = static_cast<int>(rng() % 5);
    for (int k = 0; k < rules; ++k) text += std::string(1, "abc"[rng() % 3]) + " :- " + random_body(rng, 2) + ".\n";
    expect_matches_oracle(text);
  }
}

TEST(Model, ExperimentalLUWellFounded) {
  Evaluator ev(parse_program("p : o. q : o. p :- ~q."), lu_bool_system());
  const Element m = compute_model(ev, Mode::wf, true);
  EXPECT_EQ(component_name(ev, m, "p"), "(t,t)");
  EXPECT_EQ(component_name(ev, m, "q"), "(f,f)");
  Evaluator loop(parse_program("p : o. p :- ~p."), lu_bool_system());
  EXPECT_EQ(component_name(loop, compute_model(loop, Mode::wf, true), "p"), "(f,t)");
}

// negation-free higher-order programs; exact KK models, projection round trip
TEST(Model, HigherOrderNegationFree) {
  const char* text =
      "id : o -> o. id(X) :- X.\n"
      "q : o. q.\n"
      "r : o. r :- apply(id).\n"

      "apply : (o -> o) -> o. apply(F) :- F(q).\n";
  Evaluator ev(parse_program(text), lu_bool_system());
  const Element m = compute_model(ev, Mode::kk);
  const auto a = analyze_model(ev, m);
  ASSERT_TRUE(a.two_valued);
  EXPECT_EQ(component_name(ev, m, "r"), "(t,t)");
  EXPECT_EQ(component_name(ev, m, "id"), "{(f,f)->(f,f), (f,t)->(f,t), (t,t)->(t,t)}");
  const auto& sp = ev.space();
  for (std::size_t i = 0; i < sp.symbols().size(); ++i) {
    const Element x = (*a.projection)[i];
    EXPECT_EQ(sp.app(i).project(sp.app(i).least_exact_representative(x)), x);
  }
}
