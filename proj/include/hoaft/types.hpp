#pragma once

// Type expressions (bases, labeled products, arrows), their poset semantics,
// and closures of type sets.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hoaft/order.hpp"

namespace hoaft {

class TypeExpr {
 public:
  enum class Kind { base, product, arrow };
  using Field = std::pair<std::string, TypeExpr>;

  /// The empty product.
  TypeExpr();

  static TypeExpr base(std::string name);
  static TypeExpr product(std::vector<Field> fields);
  /// Components labeled "0", "1", ...
  static TypeExpr tuple(std::vector<TypeExpr> components);
  static TypeExpr arrow(TypeExpr src, TypeExpr dst);

  /// `o`, `i`, right-associative `a -> b`, products `(a, b)` or `(x: a, y: b)`.
  /// `(a)` is grouping; a one-field unlabeled product is written `(a,)`.
  static TypeExpr parse(std::string_view text);

  Kind kind() const;
  bool is_base() const { return kind() == Kind::base; }
  bool is_product() const { return kind() == Kind::product; }
  bool is_arrow() const { return kind() == Kind::arrow; }

  const std::string& name() const;
  const std::vector<Field>& fields() const;
  const TypeExpr& src() const;
  const TypeExpr& dst() const;

  /// Canonical text; two types are equal iff their texts are.
  const std::string& str() const;

  friend bool operator==(const TypeExpr& a, const TypeExpr& b) { return a.str() == b.str(); }
  friend bool operator<(const TypeExpr& a, const TypeExpr& b) { return a.str() < b.str(); }

 private:
  struct Node;
  explicit TypeExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// The two-element truth poset f < t.
Poset truth_poset();

using BaseAssignment = std::map<std::string, Poset, std::less<>>;

/// E_t together with how it was built, so elements can be taken apart.
struct SemanticSpace {
  TypeExpr type;
  Poset poset;
  /// Product: one per field. Arrow: {source, target}.
  std::vector<std::shared_ptr<const SemanticSpace>> parts;
  std::optional<ProductSpace> product;
  std::optional<MapSpace> maps;
};

/// Products become order-core products; arrows become full function spaces.
std::shared_ptr<const SemanticSpace> semantics(const TypeExpr& t, const BaseAssignment& base);

class TypeClosure {
 public:
  TypeClosure() = default;
  TypeClosure(std::vector<TypeExpr> roots, std::vector<TypeExpr> members)
      : roots_(std::move(roots)), members_(std::move(members)) {}

  const std::vector<TypeExpr>& roots() const { return roots_; }
  /// Breadth-first discovery order from the roots.
  const std::vector<TypeExpr>& members() const { return members_; }
  bool contains(const TypeExpr& t) const;

 private:
  std::vector<TypeExpr> roots_;
  std::vector<TypeExpr> members_;
};

/// Least superset of `roots` closed under arrow codomains and product components.
TypeClosure closure_S(const std::vector<TypeExpr>& roots);

/// Like closure_S but also closed under arrow domains, so every arrow type in
/// it gets a genuine exponential approximation space.
TypeClosure predicate_closure(const std::vector<TypeExpr>& roots);

enum class TypeClass { functional, predicate, parameter_only, other };

std::string_view to_string(TypeClass c);

/// Grammar classes over bases `o` and `i`:
///   functional  s ::= i | i -> s
///   predicate   p ::= o | r -> p     with r ::= i | p
TypeClass classify_type(const TypeExpr& t);

/// Number of arguments before the final result (0 for non-arrows).
std::size_t arity(const TypeExpr& t);

}  // namespace hoaft
