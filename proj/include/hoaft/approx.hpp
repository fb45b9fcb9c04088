#pragma once

// Approximation systems: approximation spaces App(E_t) built along the type
// structure, exact elements, consistency, projections p_t and their least exact
// representatives.

#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hoaft/order.hpp"
#include "hoaft/pairs.hpp"
#include "hoaft/types.hpp"

namespace hoaft {

enum class Flavor { bilat, lu };

std::string_view to_string(Flavor f);

inline constexpr Element no_element = std::numeric_limits<Element>::max();

/// What a system fixes for one base type.
struct BaseApprox {
  Poset semantics;
  Poset app;
  /// Exact elements of `app`, sorted.
  std::vector<Element> exact;
  /// Indexed by `app` elements; no_element off the exact set.
  std::vector<Element> proj;
  std::optional<PairView> pairs;
};

/// Base App space built from E by the flavor: the square bilattice of E, or
/// E (x) E with L = U = E. Exacts are the diagonal pairs, projecting to x.
BaseApprox standard_base(Flavor f, const Poset& semantics);

class ApproxSpace;
class ApproximationSystem;

/// Which types have approximation spaces.
class SystemClosure {
 public:
  /// Every predicate type over the system's bases, and labeled products of them.
  static SystemClosure predicate_types();
  static SystemClosure explicit_members(TypeClosure c);

  bool contains(const TypeExpr& t) const;
  bool is_explicit() const { return members_.has_value(); }
  const std::optional<TypeClosure>& members() const { return members_; }

 private:
  std::optional<TypeClosure> members_;
};

class ApproxSpace {
 public:
  enum class Kind { base, product, power, exponential };

  Kind kind() const { return kind_; }
  const TypeExpr& type() const { return type_; }
  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  /// E_t.
  const SemanticSpace& semantics() const { return *semantics_; }

  /// Product: one per field. Power: the single repeated factor. Exponential: {source, target}.
  const std::vector<std::shared_ptr<const ApproxSpace>>& parts() const { return parts_; }
  /// Product and power layouts (a power has one factor per element of E_src).
  const std::optional<ProductSpace>& product() const { return product_; }
  const std::optional<MapSpace>& maps() const { return maps_; }
  /// Exponential: f(a).
  Element apply(Element f, Element a) const;

  bool is_exact(Element e) const { return exact_.test(e); }
  const Bits& exact_set() const { return exact_; }
  /// Canonical (index) order.
  std::vector<Element> exact_elements() const;
  /// Some exact element lies above. Throws unknown_element.
  bool is_consistent(Element c) const;

  /// p_t as an element of E_t. Throws not_exact.
  Element project(Element e) const;
  /// Every exact element projecting to x.
  std::vector<Element> preimage(Element x) const;
  /// Least exact element projecting to x; for arrows built pointwise from the
  /// representatives one type down. Throws join_absent, or internal_law_failure
  /// if the construction does not give an exact monotone map.
  Element least_exact_representative(Element x) const;

  /// Lower/upper reading of the elements. Throws no_pair_structure when the
  /// space has none.
  const PairView& pairs() const;

  ApproxSpace(const ApproxSpace&) = delete;
  ApproxSpace& operator=(const ApproxSpace&) = delete;

 private:
  friend class ApproximationSystem;
  ApproxSpace() = default;

  Kind kind_ = Kind::base;
  TypeExpr type_;
  Flavor flavor_ = Flavor::bilat;
  Poset poset_;
  std::shared_ptr<const SemanticSpace> semantics_;
  std::vector<std::shared_ptr<const ApproxSpace>> parts_;
  std::optional<ProductSpace> product_;
  std::optional<MapSpace> maps_;
  Bits exact_;
  std::vector<Element> proj_;
  std::optional<PairView> base_pairs_;

  mutable std::once_flag pairs_once_;
  mutable std::optional<PairView> pairs_;
  mutable std::string pairs_error_;

  void build_pairs() const;
};

class ApproximationSystem {
 public:
  ApproximationSystem(Flavor flavor, std::map<std::string, BaseApprox, std::less<>> bases, SystemClosure closure);

  Flavor flavor() const;
  const BaseAssignment& base() const;
  const std::map<std::string, BaseApprox, std::less<>>& bases() const;
  const SystemClosure& closure() const;

  /// Memoized. Throws type_not_in_closure, unknown_base_type, size_cap_exceeded.
  std::shared_ptr<const ApproxSpace> app(const TypeExpr& t) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// The Boolean systems over E_o = {f < t}, closed over all predicate types.
ApproximationSystem lu_bool_system();
ApproximationSystem bilat_bool_system();

struct SystemViolation {
  /// "cpo", "3b", "4a", "4b" or "4c".
  std::string clause;
  std::string witness;
};

struct SystemReport {
  bool ok = true;
  /// In clause order, at most one per clause and base.
  std::vector<SystemViolation> violations;
};

/// Checks the base data: App spaces are cpos, the join-semilattice or
/// upward-closure disjunction, and the projection conditions.
SystemReport validate_system(const ApproximationSystem& s);

struct UpwardReport {
  bool ok = true;
  /// Every base App space is a complete join semilattice, so nothing to check.
  bool by_join_semilattices = false;
  std::string counterexample;
};

/// Either all base App spaces are complete join semilattices, or everything
/// above an exact element of app(t) is exact.
UpwardReport check_upward_closure(const ApproximationSystem& s, const TypeExpr& t);

}  // namespace hoaft
