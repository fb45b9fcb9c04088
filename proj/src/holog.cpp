#include "hoaft/holog.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>

#include "hoaft/error.hpp"

namespace hoaft {

std::string Term::str() const {
  switch (kind) {
    case Kind::var:
    case Kind::constant:
      return name;
    case Kind::truth:
      return "true";
    case Kind::falsity:
      return "false";
    case Kind::negation:
      return "~" + args[0].str();
    case Kind::conjunction:
      return "(" + args[0].str() + ", " + args[1].str() + ")";
    case Kind::disjunction:
      return "(" + args[0].str() + "; " + args[1].str() + ")";
    case Kind::application:
      return args[0].str() + "(" + args[1].str() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Program run() {
    Program p;
    std::vector<std::pair<Rule, std::pair<int, int>>> pending;
    for (skip(); !eof(); skip()) {
      const int line = line_, col = col_;
      std::string name = ident();
      skip();
      if (peek() == ':' && peek(1) != '-') {
        advance();
        const int tl = line_, tc = col_;
        std::string text;
        while (!eof() && peek() != '.') text += advance();
        expect('.');
        TypeExpr t;
        try {
          t = TypeExpr::parse(text);
        } catch (const Error& e) {
          fail(tl, tc, e.what());
        }
        if (!p.signature.emplace(name, t).second) fail(line, col, "symbol " + name + " declared twice");
        continue;
      }
      Rule r;
      r.head = std::move(name);
      r.line = line;
      if (peek() == '(') {
        advance();
        for (;;) {
          skip();
          r.params.emplace_back(ident(), TypeExpr());
          skip();
          if (peek() == ',') {
            advance();
            continue;
          }
          expect(')');
          break;
        }
        skip();
      }
      if (peek() == ':' && peek(1) == '-') {
        advance();
        advance();
        r.body = disjunction();
        skip();
      } else {
        r.body.kind = Term::Kind::truth;
        r.body.line = line;
        r.body.column = col;
      }
      expect('.');
      pending.emplace_back(std::move(r), std::pair{line, col});
    }
    for (auto& [r, pos] : pending) {
      if (!p.signature.count(r.head))
        throw Error(Errc::undeclared_symbol, at(pos.first, pos.second) + "head symbol " + r.head + " is not declared");
      std::set<std::string> seen;
      for (const auto& [v, t] : r.params)
        if (!seen.insert(v).second) fail(pos.first, pos.second, "parameter " + v + " repeated in the head of " + r.head);
      resolve(r.body, seen, p);
      p.rules.push_back(std::move(r));
    }
    return p;
  }

 private:
  static std::string at(int line, int col) { return std::to_string(line) + ":" + std::to_string(col) + ": "; }
  [[noreturn]] static void fail(int line, int col, const std::string& msg) {
    throw Error(Errc::syntax_error, at(line, col) + msg);
  }

  void resolve(Term& t, const std::set<std::string>& params, const Program& p) {
    if (t.kind == Term::Kind::var) {
      if (!params.count(t.name)) {
        if (!p.signature.count(t.name))
          throw Error(Errc::undeclared_symbol, at(t.line, t.column) + t.name + " is neither a parameter nor declared");
        t.kind = Term::Kind::constant;
      }
    }
    for (auto& a : t.args) resolve(a, params, p);
  }

  // inside argument lists a bare `,` separates arguments
  Term disjunction(bool arg = false) {
    Term l = conjunction(arg);
    for (skip(); peek() == ';'; skip()) {
      Term n = node(Term::Kind::disjunction);
      advance();
      n.args = {std::move(l), conjunction(arg)};
      l = std::move(n);
    }
    return l;
  }

  Term conjunction(bool arg) {
    Term l = unary();
    for (skip(); !arg && peek() == ','; skip()) {
      Term n = node(Term::Kind::conjunction);
      advance();
      n.args = {std::move(l), unary()};
      l = std::move(n);
    }
    return l;
  }

  Term unary() {
    skip();
    if (peek() == '~') {
      Term n = node(Term::Kind::negation);
      advance();
      n.args = {unary()};
      return n;
    }
    Term t = primary();
    for (skip(); peek() == '('; skip()) {
      advance();
      for (;;) {
        Term a = node(Term::Kind::application);
        a.args = {std::move(t), disjunction(true)};
        t = std::move(a);
        skip();
        if (peek() == ',') {
          advance();
          continue;
        }
        expect(')');
        break;
      }
    }
    return t;
  }

  Term primary() {
    skip();
    if (peek() == '(') {
      advance();
      Term t = disjunction();
      skip();
      expect(')');
      return t;
    }
    Term t = node(Term::Kind::var);
    t.name = ident();
    if (t.name == "true") t.kind = Term::Kind::truth;
    if (t.name == "false") t.kind = Term::Kind::falsity;
    if (t.kind != Term::Kind::var) t.name.clear();
    return t;
  }

  Term node(Term::Kind k) const {
    Term t;
    t.kind = k;
    t.line = line_;
    t.column = col_;
    return t;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  std::string ident() {
    if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      fail(line_, col_, eof() ? "unexpected end of input" : std::string("unexpected '") + peek() + "'");
    std::string out;
    while (!eof() && ident_char(peek())) out += advance();
    return out;
  }

  void expect(char c) {
    if (peek() != c) fail(line_, col_, std::string("expected '") + c + "'");
    advance();
  }

  void skip() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '%') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool eof() const { return i_ >= s_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
  char advance() {
    const char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

bool only_o(const TypeExpr& t) {
  switch (t.kind()) {
    case TypeExpr::Kind::base:
      return t.name() == "o";
    case TypeExpr::Kind::arrow:
      return only_o(t.src()) && only_o(t.dst());
    case TypeExpr::Kind::product:
      return false;
  }
  return false;
}

using TypeEnv = std::map<std::string, TypeExpr, std::less<>>;

const TypeExpr& infer(Term& t, const TypeEnv& vars, const Program& p, const std::string& path) {
  static const TypeExpr o = TypeExpr::base("o");
  auto mismatch = [&](const std::string& where, const TypeExpr& want, const TypeExpr& got) {
    throw Error(Errc::type_mismatch, std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + where +
                                         ": expected " + want.str() + ", got " + got.str());
  };
  switch (t.kind) {
    case Term::Kind::var:
      t.type = vars.at(t.name);
      break;
    case Term::Kind::constant:
      t.type = p.signature.at(t.name);
      break;
    case Term::Kind::truth:
    case Term::Kind::falsity:
      t.type = o;
      break;
    case Term::Kind::negation:
    case Term::Kind::conjunction:
    case Term::Kind::disjunction:
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        const std::string sub = path + ".arg" + std::to_string(i + 1);
        const TypeExpr& a = infer(t.args[i], vars, p, sub);
        if (!(a == o)) mismatch(sub, o, a);
      }
      t.type = o;
      break;
    case Term::Kind::application: {
      const TypeExpr& f = infer(t.args[0], vars, p, path + ".fn");
      if (!f.is_arrow()) throw Error(Errc::type_mismatch, path + ".fn: " + t.args[0].str() + " of type " + f.str() + " is applied");
      const TypeExpr& a = infer(t.args[1], vars, p, path + ".arg");
      if (!(a == f.src())) mismatch(path + ".arg", f.src(), a);
      t.type = f.dst();
      break;
    }
  }
  return *t.type;
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

Program typecheck(Program p) {
  for (const auto& [name, t] : p.signature)
    if (classify_type(t) != TypeClass::predicate || !only_o(t))
      throw Error(Errc::non_predicate_symbol, name + " : " + t.str() + " is not a predicate type over o");
  for (std::size_t k = 0; k < p.rules.size(); ++k) {
    Rule& r = p.rules[k];
    const std::string path = "rule " + std::to_string(k + 1) + " (" + r.head + ")";
    TypeExpr t = p.signature.at(r.head);
    TypeEnv vars;
    for (auto& [v, vt] : r.params) {
      if (!t.is_arrow())
        throw Error(Errc::type_mismatch, path + ": head has more parameters than " + p.signature.at(r.head).str());
      vt = t.src();
      vars.emplace(v, vt);
      t = t.dst();
    }
    if (!(t == TypeExpr::base("o")))
      throw Error(Errc::type_mismatch, path + ": head leaves " + r.head + " partially applied at type " + t.str());
    const TypeExpr& b = infer(r.body, vars, p, path + ".body");
    if (!(b == TypeExpr::base("o")))
      throw Error(Errc::type_mismatch, path + ".body: expected o, got " + b.str());
  }
  return p;
}

InterpretationSpace::InterpretationSpace(const Program& p, const ApproximationSystem& s) {
  std::vector<Poset> factors;
  for (const auto& [name, t] : p.signature) {
    symbols_.push_back(name);
    apps_.push_back(s.app(t));
    factors.push_back(apps_.back()->poset());
  }
  product_ = std::make_shared<ProductSpace>(std::move(factors));
}

std::size_t InterpretationSpace::index(std::string_view symbol) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol) throw Error(Errc::undeclared_symbol, std::string(symbol));
  return static_cast<std::size_t>(it - symbols_.begin());
}

const PairView& InterpretationSpace::pairs() const {
  static std::mutex m;
  std::lock_guard lock(m);
  if (!pairs_) {
    std::vector<const PairView*> f;
    for (const auto& a : apps_) f.push_back(&a->pairs());
    pairs_ = std::make_shared<PairView>(product_pairs(*product_, f));
  }
  return *pairs_;
}

bool InterpretationSpace::is_exact(Element interp) const {
  for (std::size_t i = 0; i < apps_.size(); ++i)
    if (!apps_[i]->is_exact(product_->component(interp, i))) return false;
  return true;
}

Evaluator::Evaluator(Program p, ApproximationSystem s) : program_(typecheck(std::move(p))), system_(std::move(s)) {
  space_ = std::make_shared<InterpretationSpace>(program_, system_);
  truth_ = system_.app(TypeExpr::base("o"));
  const Poset& c = truth_->pairs().carrier();
  const Element bot = bottom(c).value(), top_c = top(c).value();
  complement_.assign(c.size(), no_element);
  for (Element x = 0; x < c.size(); ++x)
    for (Element y = 0; y < c.size(); ++y) {
      const Element xy[2] = {x, y};
      if (bound(c, xy, BoundKind::glb) == bot && bound(c, xy, BoundKind::lub) == top_c) {
        if (complement_[x] != no_element) throw Error(Errc::invalid_input, "truth value " + c.name(x) + " has two complements");
        complement_[x] = y;
      }
    }
  for (Element x = 0; x < c.size(); ++x)
    if (complement_[x] == no_element) throw Error(Errc::invalid_input, "truth value " + c.name(x) + " has no complement");
  rules_by_symbol_.resize(space_->symbols().size());
  for (std::size_t k = 0; k < program_.rules.size(); ++k)
    rules_by_symbol_[space_->index(program_.rules[k].head)].push_back(k);
}

Element Evaluator::truth_value(bool v) const {
  const PairView& pv = truth_->pairs();
  const Poset& c = pv.carrier();
  const Element x = v ? top(c).value() : bottom(c).value();
  return pv.join(x, x).value();
}

Element Evaluator::negate(Element v) const {
  const PairView& pv = truth_->pairs();
  auto r = pv.join(complement_[pv.hi(v)], complement_[pv.lo(v)]);
  if (!r) throw Error(Errc::internal_law_failure, "negation of " + truth_->poset().name(v) + " leaves App(o)");
  return *r;
}

namespace {

Element combine(const PairView& pv, Element a, Element b, BoundKind k) {
  const Poset& c = pv.carrier();
  const Element lo[2] = {pv.lo(a), pv.lo(b)}, hi[2] = {pv.hi(a), pv.hi(b)};
  auto l = bound(c, lo, k), h = bound(c, hi, k);
  std::optional<Element> r;
  if (l && h) r = pv.join(*l, *h);
  if (!r) throw Error(Errc::internal_law_failure, "truth connective leaves App(o)");
  return *r;
}

}  // namespace

Element Evaluator::conjoin(Element a, Element b) const { return combine(truth_->pairs(), a, b, BoundKind::glb); }
Element Evaluator::disjoin(Element a, Element b) const { return combine(truth_->pairs(), a, b, BoundKind::lub); }

Element Evaluator::eval(const Term& t, Element interp, const Env& env) const {
  switch (t.kind) {
    case Term::Kind::var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw Error(Errc::unbound_variable, t.name);
      return it->second;
    }
    case Term::Kind::constant:
      return space_->product().component(interp, space_->index(t.name));
    case Term::Kind::truth:
      return truth_value(true);
    case Term::Kind::falsity:
      return truth_value(false);
    case Term::Kind::negation:
      return negate(eval(t.args[0], interp, env));
    case Term::Kind::conjunction:
      return conjoin(eval(t.args[0], interp, env), eval(t.args[1], interp, env));
    case Term::Kind::disjunction:
      return disjoin(eval(t.args[0], interp, env), eval(t.args[1], interp, env));
    case Term::Kind::application: {
      if (!t.args[0].type) throw Error(Errc::invalid_input, "term is not typechecked");
      auto sp = system_.app(*t.args[0].type);
      if (sp->kind() != ApproxSpace::Kind::exponential)
        throw Error(Errc::type_not_in_closure, "argument type of " + t.args[0].type->str() + " has no App space");
      return sp->apply(eval(t.args[0], interp, env), eval(t.args[1], interp, env));
    }
  }
  return no_element;
}

Element Evaluator::build(const ApproxSpace& sp, std::size_t sym, std::vector<Element>& args, Element interp) const {
  const auto& rules = rules_by_symbol_[sym];
  const std::size_t n = arity(program_.signature.at(space_->symbols()[sym]));
  if (args.size() == n) {
    Element v = truth_value(false);
    for (std::size_t k : rules) {
      const Rule& r = program_.rules[k];
      Env env;
      for (std::size_t i = 0; i < n; ++i) env.emplace(r.params[i].first, args[i]);
      v = disjoin(v, eval(r.body, interp, env));
    }
    return v;
  }
  if (sp.kind() != ApproxSpace::Kind::exponential)
    throw Error(Errc::type_not_in_closure, sp.type().str() + " is not built as an exponential");
  const ApproxSpace& src = *sp.parts()[0];
  const ApproxSpace& dst = *sp.parts()[1];
  std::vector<Element> table(src.size());
  for (Element a = 0; a < src.size(); ++a) {
    args.push_back(a);
    table[a] = build(dst, sym, args, interp);
    args.pop_back();
  }
  auto f = sp.maps()->find(table);
  if (!f) throw Error(Errc::internal_law_failure, "value of " + space_->symbols()[sym] + " is not monotone");
  return *f;
}

Operator Evaluator::immediate_consequence() const {
  struct Cache {
    std::mutex m;
    std::vector<Element> values;
  };
  auto cache = std::make_shared<Cache>();
  cache->values.assign(space_->poset().size(), no_element);
  return Operator(space_->poset(), [this, cache](Element interp) {
    {
      std::lock_guard lock(cache->m);
      if (cache->values[interp] != no_element) return cache->values[interp];
    }
    const std::size_t k = space_->symbols().size();
    std::vector<Element> tuple(k);
    std::vector<Element> args;
    for (std::size_t i = 0; i < k; ++i) tuple[i] = build(space_->app(i), i, args, interp);
    const Element out = space_->product().element(tuple);
    std::lock_guard lock(cache->m);
    cache->values[interp] = out;
    return out;
  });
}

Element compute_model(const Evaluator& ev, Mode mode, bool experimental_lu_stable) {
  const Operator op = ev.immediate_consequence();
  if (mode == Mode::kk) return lfp(op);
  if (ev.system().flavor() == Flavor::lu && !experimental_lu_stable)
    throw Error(Errc::experimental_feature_disabled, "well-founded models over LU need --experimental-lu-stable");
  return well_founded(Approximator(ev.space().pairs(), op));
}

ModelAnalysis analyze_model(const Evaluator& ev, Element interp) {
  ModelAnalysis a;
  const InterpretationSpace& s = ev.space();
  a.two_valued = s.is_exact(interp);
  if (!a.two_valued) return a;
  std::vector<Element> proj;
  for (std::size_t i = 0; i < s.symbols().size(); ++i) proj.push_back(s.app(i).project(s.product().component(interp, i)));
  a.projection = std::move(proj);
  return a;
}

}  // namespace hoaft
