#pragma once

// Approximation tuples (L, U, <=), their L (x) U spaces of consistent pairs,
// chain suprema, and the exponential tuple built from monotone and antitone maps.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hoaft/order.hpp"
#include "hoaft/pairs.hpp"

namespace hoaft {

struct ApproximationTuple {
  /// L and U together with the shared order.
  Poset order;
  Bits lower;
  Bits upper;
};

struct TupleReport {
  bool ok = true;
  /// 1: top/bottom exist, 2: they lie in both L and U, 3: L and U are complete
  /// lattices, 4: interlattice lub property, 5: interlattice glb property.
  int clause = 0;
  std::string witness;
};

TupleReport check_tuple(const ApproximationTuple& t);

struct TupleValidation {
  std::optional<ApproximationTuple> tuple;
  TupleReport report;
};

/// The order is given on the union of `lower` and `upper` (listed L first).
TupleValidation validate_tuple(const std::vector<std::string>& lower, const std::vector<std::string>& upper,
                               const std::vector<std::pair<std::string, std::string>>& leq, OrderMode mode);

class LUSpace {
 public:
  /// Throws invalid_input when `t` is not an approximation tuple.
  explicit LUSpace(ApproximationTuple t);

  const ApproximationTuple& tuple() const { return tuple_; }
  /// Pairs (x,y), x in L, y in U, x <= y, ordered by precision.
  const Poset& space() const { return pairs_.space(); }
  const PairView& pairs() const { return pairs_; }
  Element p1(Element e) const { return pairs_.lo(e); }
  Element p2(Element e) const { return pairs_.hi(e); }
  std::optional<Element> find(Element x, Element y) const { return pairs_.join(x, y); }

 private:
  ApproximationTuple tuple_;
  PairView pairs_;
};

LUSpace lu_space(const ApproximationTuple& t);

/// Least upper bound of a chain computed as (join in L of the lower parts,
/// meet in U of the upper parts). Throws not_a_chain.
Element chain_sup(const LUSpace& s, std::span<const Element> chain);

struct LUExponential {
  /// Monotone maps A -> L_B and antitone maps A -> U_B, ordered pointwise.
  ApproximationTuple tuple;
  LUSpace space;
  /// The order-core exponential A -> B.
  MapSpace maps;
  /// f |-> (lo . f, hi . f) and back.
  IsoPair nu;
};

/// `b` must have the L (x) U shape (its pairs are consistent: lo <= hi).
/// Throws internal_law_failure if the constructed tuple or nu misbehaves.
LUExponential lu_exponential(const Poset& a, const PairView& b);
LUExponential lu_exponential(const LUSpace& a, const LUSpace& b);

/// The boolean tuple L = U = {f < t}; its space is {(f,f), (f,t), (t,t)}.
LUSpace boolean_lu_space();

}  // namespace hoaft
