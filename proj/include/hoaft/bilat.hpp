#pragma once

// Square bilattices L x L with the precision order, the structure maps phi and
// psi between bilattices of products / exponentials, and approximator
// classification.

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "hoaft/order.hpp"
#include "hoaft/pairs.hpp"

namespace hoaft {

class Bilattice {
 public:
  /// Throws not_complete_lattice.
  explicit Bilattice(Poset base);

  const Poset& base() const { return base_; }
  /// Pairs (x,y) in lexicographic order; (x1,y1) <= (x2,y2) iff x1 <= x2 and y2 <= y1.
  const Poset& space() const { return space_; }
  const PairView& pairs() const { return pairs_; }

  Element pair(Element x, Element y) const { return static_cast<Element>(x * base_.size() + y); }
  Element lo(Element e) const { return static_cast<Element>(e / base_.size()); }
  Element hi(Element e) const { return static_cast<Element>(e % base_.size()); }

  /// (x,x) for each x of the base, in base order.
  const std::vector<Element>& exact() const { return exact_; }
  bool is_exact(Element e) const { return lo(e) == hi(e); }
  /// (x,x) -> x; throws not_exact.
  Element project(Element e) const;

 private:
  Poset base_;
  Poset space_;
  PairView pairs_;
  std::vector<Element> exact_;
};

Bilattice make_bilattice(const Poset& lattice);

/// phi : B(L1) x B(L2) -> B(L1 x L2), ((a1,b1),(a2,b2)) |-> ((a1,a2),(b1,b2)).
IsoPair product_iso(const Poset& l1, const Poset& l2);

/// psi : B(L2)^B(L1) -> B(L2^B(L1)), (f1,f2) |-> (f1, f2 . swap). Both sides
/// are built in full, so this is bounded by the size cap.
IsoPair exponential_iso(const Poset& l1, const Poset& l2);

struct PsiCheck {
  bool ok = false;
  /// Split into the identity on the first factor and f2 |-> f2 . swap on the
  /// second, each checked by streaming over the maps (no tables kept).
  bool factored = false;
  std::size_t domain_size = 0;
  std::string failure;
};

/// Verifies that psi is an order-isomorphism. When the domain fits the size
/// cap, both sides are built, the image rows are reindexed so both share
/// element indices, and up-sets are compared row by row. Larger domains take
/// the factored route: a monotone map into L2 x L2^op is a pair of monotone
/// maps ordered componentwise, psi acts as the identity on the first and as
/// precomposition with the swap on the second, and the swap is an
/// order-reversing involution, so it suffices that precomposition carries
/// hom(B(L1), L2^op) into hom(B(L1), L2) and back. The factored route throws
/// size_cap_exceeded once either hom-set passes `stream_budget` maps (the size
/// cap when zero).
PsiCheck verify_exponential_iso(const Poset& l1, const Poset& l2, std::size_t stream_budget = 0);

struct ApproximatorClass {
  bool symmetric = false;
  bool gracefully_degrading = false;
  bool exact_pair_under_psi = false;
  bool consistent_pair_under_psi = false;
};

/// `table` maps the bilattice space to itself. Throws not_monotone, and
/// internal_law_failure if the flags disagree with their psi counterparts.
ApproximatorClass classify_approximator(const Bilattice& b, std::span<const Element> table);

}  // namespace hoaft
