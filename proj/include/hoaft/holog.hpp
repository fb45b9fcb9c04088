#pragma once

// A small higher-order propositional logic-programming language evaluated in
// approximation spaces: parsing, type checking, the immediate consequence
// operator and its Kripke-Kleene / well-founded models.
//
//   p : o -> o.          declaration
//   p(R) :- R, ~q.       rule; `,` and, `;` or, `~` not
//   q.                   fact (body true)
//   % comment

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoaft/aft.hpp"
#include "hoaft/approx.hpp"
#include "hoaft/types.hpp"

namespace hoaft {

struct Term {
  enum class Kind { var, constant, truth, falsity, negation, conjunction, disjunction, application };
  Kind kind = Kind::truth;
  std::string name;
  std::vector<Term> args;
  /// Filled in by typecheck.
  std::optional<TypeExpr> type;
  int line = 0, column = 0;

  std::string str() const;
};

struct Rule {
  std::string head;
  std::vector<std::pair<std::string, TypeExpr>> params;
  Term body;
  int line = 0;
};

struct Program {
  std::map<std::string, TypeExpr, std::less<>> signature;
  std::vector<Rule> rules;
};

/// Throws syntax_error (with line:column) and undeclared_symbol.
Program parse_program(std::string_view text);

/// Every declared type must be a predicate type over `o`, every body of type o.
/// Fills in parameter and term types. Throws non_predicate_symbol, type_mismatch.
Program typecheck(Program p);

using Env = std::map<std::string, Element, std::less<>>;

/// The product of the symbols' App spaces, symbols in name order.
class InterpretationSpace {
 public:
  InterpretationSpace(const Program& p, const ApproximationSystem& s);

  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t index(std::string_view symbol) const;
  const ApproxSpace& app(std::size_t i) const { return *apps_[i]; }
  const ProductSpace& product() const { return *product_; }
  const Poset& poset() const { return product_->poset(); }
  /// Componentwise pairs; built on first use.
  const PairView& pairs() const;

  bool is_exact(Element interp) const;

 private:
  std::vector<std::string> symbols_;
  std::vector<std::shared_ptr<const ApproxSpace>> apps_;
  std::shared_ptr<ProductSpace> product_;
  mutable std::shared_ptr<PairView> pairs_;
};

/// A typed program bound to an approximation system.
class Evaluator {
 public:
  /// Runs typecheck. Throws type_not_in_closure, size_cap_exceeded.
  Evaluator(Program p, ApproximationSystem s);

  const Program& program() const { return program_; }
  const ApproximationSystem& system() const { return system_; }
  const InterpretationSpace& space() const { return *space_; }
  /// App(E_o).
  const ApproxSpace& truth() const { return *truth_; }

  /// Element of the App space of the term's type. Throws unbound_variable.
  Element eval(const Term& t, Element interp, const Env& env) const;
  /// Truth-order join over the rule bodies, (f,f) when a symbol has no rules.
  /// The operator refers back to this evaluator.
  Operator immediate_consequence() const;

  Element truth_value(bool v) const;
  Element negate(Element v) const;
  Element conjoin(Element a, Element b) const;
  Element disjoin(Element a, Element b) const;

 private:
  Element build(const ApproxSpace& sp, std::size_t sym, std::vector<Element>& args, Element interp) const;

  Program program_;
  ApproximationSystem system_;
  std::shared_ptr<InterpretationSpace> space_;
  std::shared_ptr<const ApproxSpace> truth_;
  std::vector<Element> complement_;
  std::vector<std::vector<std::size_t>> rules_by_symbol_;
};

enum class Mode { kk, wf };

/// KK: least fixpoint of the immediate consequence operator. WF: the
/// well-founded fixpoint; on LU systems this needs `experimental_lu_stable`.
/// Throws experimental_feature_disabled.
Element compute_model(const Evaluator& ev, Mode mode, bool experimental_lu_stable = false);

struct ModelAnalysis {
  bool two_valued = false;
  /// One element of E_t per symbol (in symbol order) when two-valued.
  std::optional<std::vector<Element>> projection;
};

ModelAnalysis analyze_model(const Evaluator& ev, Element interp);

}  // namespace hoaft
