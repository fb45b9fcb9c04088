#pragma once

// Reading the elements of an approximation space as (lower, upper) pairs.

#include <optional>
#include <unordered_map>
#include <vector>

#include "hoaft/order.hpp"

namespace hoaft {

/// An approximation space presented as pairs over a carrier: every element is
/// some (l, h) with l in `lower` and h in `upper`, and the space order is
/// l1 <= l2 and h2 <= h1 in the carrier order.
class PairView {
 public:
  PairView() = default;
  /// Throws internal_law_failure when two elements share a pair or a value
  /// falls outside L / U. The order itself is checked by `check_precision_order`.
  PairView(Poset space, Poset carrier, Bits lower, Bits upper, std::vector<Element> lo, std::vector<Element> hi,
           bool square);

  const Poset& space() const { return space_; }
  /// L and U together, with the truth order.
  const Poset& carrier() const { return carrier_; }
  const Bits& lower() const { return lower_; }
  const Bits& upper() const { return upper_; }
  /// Every (l, h) with l in L and h in U is present (bilattice shape).
  bool square() const { return square_; }

  Element lo(Element e) const { return lo_[e]; }
  Element hi(Element e) const { return hi_[e]; }
  std::optional<Element> join(Element l, Element h) const;

  /// (hi, lo) for square views.
  Element swap(Element e) const;

  /// Least and greatest carrier elements of L and U.
  Element lower_bottom() const { return lower_bottom_; }
  Element upper_top() const { return upper_top_; }

 private:
  Poset space_;
  Poset carrier_;
  Bits lower_, upper_;
  std::vector<Element> lo_, hi_;
  std::unordered_map<std::uint64_t, Element> index_;
  bool square_ = false;
  Element lower_bottom_ = 0, upper_top_ = 0;
};

/// True when the space order is exactly the precision order of the pairs.
bool check_precision_order(const PairView& v);

/// Componentwise pair view of a product of pair views, over `space` (whose
/// elements must be laid out like `ProductSpace` of the factor spaces).
PairView product_pairs(const ProductSpace& space, const std::vector<const PairView*>& factors);

}  // namespace hoaft
