#pragma once

// Finite posets and the constructions of the category of posets and monotone
// maps: products, exponentials (monotone maps, pointwise order), full function
// spaces, opposites, bounds and classification. Universal-property checkers
// and an order-isomorphism search live here too.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hoaft/error.hpp"

namespace hoaft {

/// Index of an element in a poset's canonical element sequence.
using Element = std::uint32_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;

enum class OrderMode { full, covers };

/// An immutable finite poset. Copies share the underlying representation.
///
/// Elements are identified by their position in the canonical sequence; that
/// sequence is the iteration order for every deterministic listing.
class Poset {
 public:
  /// Storage strategy. Explicit posets keep a bit matrix; constructed spaces
  /// compare coordinates on demand.
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual std::size_t size() const = 0;
    virtual bool leq(Element a, Element b) const = 0;
    virtual std::string name(Element e) const = 0;
    virtual Bits up_set(Element a) const;
    virtual Bits down_set(Element a) const;
    std::optional<Element> find(std::string_view name) const;

   private:
    mutable std::once_flag index_once_;
    mutable std::unordered_map<std::string, Element> index_;
  };

  Poset();
  explicit Poset(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  /// Builds and validates a poset from named elements and a relation.
  /// In `covers` mode the reflexive-transitive closure is taken first.
  static Poset validate(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& leq,
                        OrderMode mode);

  /// Trusted constructor: `up[a]` holds every b with a <= b.
  static Poset from_up_sets(std::vector<std::string> names, std::vector<Bits> up);

  std::size_t size() const { return impl_->size(); }
  bool empty() const { return size() == 0; }
  bool leq(Element a, Element b) const { return impl_->leq(a, b); }
  bool lt(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }

  std::string name(Element e) const { return impl_->name(e); }
  std::vector<std::string> names() const;
  std::optional<Element> find(std::string_view name) const { return impl_->find(name); }
  /// Like find, but throws unknown_element.
  Element at(std::string_view name) const;

  Bits up_set(Element a) const { return impl_->up_set(a); }
  Bits down_set(Element a) const { return impl_->down_set(a); }

  const Impl& impl() const { return *impl_; }

  /// Same element names in the same order and the same relation.
  friend bool operator==(const Poset& a, const Poset& b);

 private:
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Basic queries

std::optional<Element> bottom(const Poset& p);
std::optional<Element> top(const Poset& p);

enum class BoundKind { glb, lub };

/// Greatest lower / least upper bound of `subset` when it exists.
std::optional<Element> bound(const Poset& p, std::span<const Element> subset, BoundKind kind);

/// Greatest element of a set when it exists (least with `kind == glb`).
std::optional<Element> extremum(const Poset& p, const Bits& set, BoundKind kind);

struct PosetClassification {
  bool has_bottom = false;
  bool has_top = false;
  bool is_cpo = false;
  bool is_complete_lattice = false;
  bool is_complete_join_semilattice = false;
};

/// The empty chain counts, so a cpo needs a bottom element. Every non-empty
/// chain of a finite poset has a maximum, so for finite posets cpo-ness is
/// exactly the existence of a bottom; lattice checks go through pairwise joins.
PosetClassification classify(const Poset& p);

bool is_chain(const Poset& p, std::span<const Element> subset);

Poset opposite(const Poset& p);

/// The induced order on `keep`, in the given order.
Poset sub_poset(const Poset& p, std::span<const Element> keep);

std::vector<std::pair<Element, Element>> covers(const Poset& p);
std::vector<Element> linear_extension(const Poset& p);

/// Compact text such as `{a<b, c}` listing the covering pairs and isolated points.
std::string describe(const Poset& p);

/// Brute-force check of reflexivity, antisymmetry and transitivity.
bool is_partial_order(const Poset& p);

// ---------------------------------------------------------------------------
// Maps

/// A total function between the carriers of two posets, not necessarily monotone.
struct FunctionTable {
  Poset source;
  Poset target;
  std::vector<Element> table;
};

/// Pair (x, y) with x <= y in the source but table[x] not <= table[y].
std::optional<std::pair<Element, Element>> monotonicity_witness(const FunctionTable& f);

class MonotoneMap {
 public:
  /// Throws not_monotone (or invalid_input on a malformed table).
  MonotoneMap(Poset source, Poset target, std::vector<Element> table);

  static MonotoneMap identity(const Poset& p);

  Element operator()(Element x) const { return table_[x]; }
  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  const std::vector<Element>& table() const { return table_; }

  /// `g` after `*this`.
  MonotoneMap then(const MonotoneMap& g) const;

 private:
  Poset source_;
  Poset target_;
  std::vector<Element> table_;
};

struct IsoPair {
  MonotoneMap forward;
  MonotoneMap backward;
};

/// Both directions of a bijection, validated as monotone. Throws
/// internal_law_failure otherwise.
IsoPair iso_from_bijection(const Poset& dom, const Poset& cod, std::vector<Element> table);

/// The inverse when `m` is an order-isomorphism.
std::optional<MonotoneMap> inverse_isomorphism(const MonotoneMap& m);

std::optional<MonotoneMap> find_isomorphism(const Poset& p, const Poset& q);

// ---------------------------------------------------------------------------
// Constructions

/// Generalized product of a finite family with componentwise order. Elements
/// are tuples in lexicographic order, first factor most significant.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<Poset> factors);

  const Poset& poset() const { return poset_; }
  const std::vector<Poset>& factors() const { return factors_; }
  std::size_t arity() const { return factors_.size(); }

  Element component(Element e, std::size_t i) const;
  std::vector<Element> tuple(Element e) const;
  Element element(std::span<const Element> tuple) const;
  MonotoneMap projection(std::size_t i) const;

 private:
  std::vector<Poset> factors_;
  std::vector<std::size_t> strides_;
  Poset poset_;
};

ProductSpace product(std::vector<Poset> family);

/// A space of maps from `source` to `target` ordered pointwise. Elements are
/// tables indexed by source elements, in lexicographic order.
class MapSpace {
 public:
  enum class Kind { monotone, all };

  const Poset& poset() const { return poset_; }
  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  Kind kind() const { return kind_; }

  std::span<const Element> table(Element f) const;
  std::optional<Element> find(std::span<const Element> table) const;
  Element apply(Element f, Element x) const { return table(f)[x]; }

  /// ev : poset x source -> target, over product({poset, source}).
  FunctionTable evaluation() const;

 private:
  friend MapSpace exponential(const Poset& src, const Poset& tgt);
  friend MapSpace function_space(const Poset& src, const Poset& tgt);
  MapSpace(Kind kind, Poset source, Poset target, std::shared_ptr<const std::vector<Element>> cells);

  Kind kind_;
  Poset source_;
  Poset target_;
  std::shared_ptr<const std::vector<Element>> cells_;
  Poset poset_;
};

/// All monotone maps src -> tgt, enumerated along a linear extension of src
/// with non-monotone prefixes pruned.
MapSpace exponential(const Poset& src, const Poset& tgt);

/// All total maps src -> tgt, monotone or not.
MapSpace function_space(const Poset& src, const Poset& tgt);

/// Visits every monotone map src -> tgt (same pruned enumeration, unsorted)
/// until `visit` returns false.
void for_each_monotone(const Poset& src, const Poset& tgt,
                       const std::function<bool(std::span<const Element>)>& visit);

/// Tables of every monotone map, lexicographically ordered. Throws
/// size_cap_exceeded once more than `cap` maps are found.
std::vector<std::vector<Element>> monotone_tables(const Poset& src, const Poset& tgt, std::size_t cap);

/// Poset over explicit coordinate tuples ordered componentwise by `coords`.
/// Names come out as `(a,b)` tuples, or `{k->v, ...}` when `keys` is given.
Poset coordinate_poset(std::vector<Poset> coords, std::shared_ptr<const std::vector<Element>> cells,
                       std::optional<std::vector<std::string>> keys = std::nullopt);

// ---------------------------------------------------------------------------
// Universal properties

enum class UniversalKind { terminal, product, exponential };

struct UniversalCandidate {
  UniversalKind kind = UniversalKind::terminal;
  Poset object;
  /// product: the factors; exponential: {source, target}.
  std::vector<Poset> factors;
  /// product: projections object -> factor; exponential: {ev}.
  std::vector<FunctionTable> maps;

  static UniversalCandidate terminal(Poset t);
  static UniversalCandidate of(const ProductSpace& p);
  static UniversalCandidate of(const MapSpace& e);
};

struct UniversalReport {
  bool pass = true;
  std::size_t checked = 0;
  std::string counterexample;
};

/// Brute-force existence and uniqueness of mediating morphisms for every
/// test object in `context` and every morphism (tuple) out of it.
UniversalReport check_universal(const UniversalCandidate& candidate, std::span<const Poset> context);

// ---------------------------------------------------------------------------
// Generation

/// All posets with `n` elements up to isomorphism (n <= 6), elements named a, b, ...
std::vector<Poset> enumerate_posets(std::size_t n);

/// All posets with at most `n` elements up to isomorphism, by size.
std::vector<Poset> enumerate_posets_up_to(std::size_t n);

Poset chain(std::size_t n, std::string_view prefix = "");
Poset antichain(std::size_t n, std::string_view prefix = "");

}  // namespace hoaft
