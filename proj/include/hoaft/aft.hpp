#pragma once

// Operators on finite posets and the fixpoint constructions of approximation
// fixpoint theory: Kleene least fixpoints, Kripke-Kleene, supported, stable and
// well-founded fixpoints of an approximator.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoaft/order.hpp"
#include "hoaft/pairs.hpp"

namespace hoaft {

/// A total map from a poset to itself; monotonicity is not assumed.
class Operator {
 public:
  Operator() = default;
  Operator(Poset space, std::function<Element(Element)> fn);
  /// Throws invalid_input on a short table or out-of-range value.
  static Operator from_table(Poset space, std::vector<Element> table);

  const Poset& space() const { return space_; }
  /// Throws unknown_element.
  Element operator()(Element x) const;
  std::vector<Element> tabulate() const;

 private:
  Poset space_;
  std::function<Element(Element)> fn_;
};

/// x <= y with op(x) not <= op(y), by exhaustive search.
std::optional<std::pair<Element, Element>> monotonicity_witness(const Operator& op);

/// Kleene iteration from the bottom. Each step must go up, so a non-monotone
/// operator that leaves the chain is reported; `exhaustive` adds a full
/// monotonicity check first. Throws not_monotone, no_bottom.
Element lfp(const Operator& op, bool exhaustive = false);

/// Every x with op(x) = x, in index order.
std::vector<Element> fixpoints(const Operator& op);

/// A precision-monotone operator on a pair space, read through its (lower,
/// upper) components.
class Approximator {
 public:
  /// Throws invalid_input when the operator does not live on `pairs.space()`.
  Approximator(PairView pairs, Operator op);

  const PairView& pairs() const { return pairs_; }
  const Operator& op() const { return op_; }
  const Poset& carrier() const { return pairs_.carrier(); }

  /// A(x,y) when the pair (x,y) exists.
  std::optional<Element> apply(Element x, Element y) const;
  std::optional<Element> a1(Element x, Element y) const;
  std::optional<Element> a2(Element x, Element y) const;

 private:
  PairView pairs_;
  Operator op_;
};

struct ApproximatorReport {
  bool monotone = false;
  bool symmetric = false;
  /// Set when a lattice operator was supplied.
  std::optional<bool> approximates;
  std::string witness;
};

/// Exhaustive. Symmetry compares A1(x,y) with A2(y,x) wherever both pairs
/// exist; approximation compares A(x,x) with (O(x),O(x)) on the diagonal.
/// `o` acts on the carrier.
ApproximatorReport check_approximator(const Approximator& a, const Operator* o = nullptr);

/// Least fixpoint of A in the precision order.
Element kripke_kleene(const Approximator& a);

/// Carrier elements x of L and U with A1(x,x) = x, in index order.
std::vector<Element> supported_fixpoints(const Approximator& a);

/// Least x in L with A1(x,y) = x, iterated from the bottom of L. `y` must be in
/// U. Throws revision_out_of_space when the iteration leaves the pairs of the
/// space, not_monotone when it fails to ascend.
Element stable_revision(const Approximator& a, Element y);

/// Least y in U with A2(x,y) = y. Square spaces iterate from the bottom of U;
/// otherwise from the least U element above x. `x` must be in L.
Element upper_revision(const Approximator& a, Element x);

/// Fixpoints of the stable revision, in index order.
std::vector<Element> stable_fixpoints(const Approximator& a);

/// Least fixpoint in the precision order of (x,y) |-> (S(y), S'(x)) with S the
/// stable revision and S' the upper revision.
Element well_founded(const Approximator& a);

}  // namespace hoaft
