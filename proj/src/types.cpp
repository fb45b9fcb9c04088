#include "hoaft/types.hpp"

#include <cctype>
#include <deque>
#include <set>

namespace hoaft {

struct TypeExpr::Node {
  Kind kind;
  std::string name;
  std::vector<Field> fields;
  std::vector<TypeExpr> arrow;  // {src, dst}
  std::string text;
};

namespace {

bool default_labels(const std::vector<TypeExpr::Field>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].first != std::to_string(i)) return false;
  return true;
}

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : s_(text) {}

  TypeExpr parse() {
    TypeExpr t = type();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::syntax_error, "type '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::optional<std::string> ident() {
    skip();
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    if (end == pos_ || std::isdigit(static_cast<unsigned char>(s_[pos_]))) return std::nullopt;
    std::string out(s_.substr(pos_, end - pos_));
    pos_ = end;
    return out;
  }

  TypeExpr type() {
    TypeExpr lhs = atom();
    if (eat("->")) return TypeExpr::arrow(lhs, type());
    return lhs;
  }

  TypeExpr atom() {
    if (eat("(")) {
      if (eat(")")) return TypeExpr::product({});
      std::vector<TypeExpr::Field> fields;
      bool labeled = false, trailing = false;
      while (true) {
        std::string label = std::to_string(fields.size());
        const std::size_t save = pos_;
        if (auto id = ident(); id && eat(":")) {
          label = *id;
          labeled = true;
        } else {
          pos_ = save;
        }
        fields.emplace_back(label, type());
        if (eat(")")) break;
        if (!eat(",")) fail("expected ',' or ')'");
        if (eat(")")) {
          trailing = true;
          break;
        }
      }
      if (fields.size() == 1 && !labeled && !trailing) return fields[0].second;
      return TypeExpr::product(std::move(fields));
    }
    if (auto id = ident()) return TypeExpr::base(*id);
    fail(pos_ < s_.size() ? "expected a type" : "unexpected end of input");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

TypeExpr::TypeExpr() : TypeExpr(product({})) {}

TypeExpr TypeExpr::base(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::base;
  n->text = name;
  n->name = std::move(name);
  return TypeExpr(std::move(n));
}

TypeExpr TypeExpr::product(std::vector<Field> fields) {
  std::set<std::string> seen;
  for (const auto& f : fields)
    if (!seen.insert(f.first).second) throw Error(Errc::invalid_input, "duplicate product label '" + f.first + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  const bool plain = default_labels(fields);
  std::string text = "(";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text += ",";
    if (!plain) text += fields[i].first + ":";
    text += fields[i].second.str();
  }
  if (plain && fields.size() == 1) text += ",";
  n->text = text + ")";
  n->fields = std::move(fields);
  return TypeExpr(std::move(n));
}

TypeExpr TypeExpr::tuple(std::vector<TypeExpr> components) {
  std::vector<Field> fields;
  for (std::size_t i = 0; i < components.size(); ++i) fields.emplace_back(std::to_string(i), std::move(components[i]));
  return product(std::move(fields));
}

TypeExpr TypeExpr::arrow(TypeExpr src, TypeExpr dst) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::arrow;
  n->text = (src.is_arrow() ? "(" + src.str() + ")" : src.str()) + "->" + dst.str();
  n->arrow = {std::move(src), std::move(dst)};
  return TypeExpr(std::move(n));
}

TypeExpr TypeExpr::parse(std::string_view text) { return TypeParser(text).parse(); }

TypeExpr::Kind TypeExpr::kind() const { return node_->kind; }
const std::string& TypeExpr::name() const { return node_->name; }
const std::vector<TypeExpr::Field>& TypeExpr::fields() const { return node_->fields; }
const TypeExpr& TypeExpr::src() const { return node_->arrow.at(0); }
const TypeExpr& TypeExpr::dst() const { return node_->arrow.at(1); }
const std::string& TypeExpr::str() const { return node_->text; }

Poset truth_poset() {
  static const Poset p = Poset::validate({"f", "t"}, {{"f", "t"}}, OrderMode::covers);
  return p;
}

std::shared_ptr<const SemanticSpace> semantics(const TypeExpr& t, const BaseAssignment& base) {
  auto out = std::make_shared<SemanticSpace>();
  out->type = t;
  switch (t.kind()) {
    case TypeExpr::Kind::base: {
      auto it = base.find(t.name());
      if (it == base.end()) throw Error(Errc::unknown_base_type, "no poset assigned to base type '" + t.name() + "'");
      out->poset = it->second;
      break;
    }
    case TypeExpr::Kind::product: {
      std::vector<Poset> factors;
      for (const auto& [label, ft] : t.fields()) {
        out->parts.push_back(semantics(ft, base));
        factors.push_back(out->parts.back()->poset);
      }
      out->product.emplace(std::move(factors));
      out->poset = out->product->poset();
      break;
    }
    case TypeExpr::Kind::arrow: {
      out->parts.push_back(semantics(t.src(), base));
      out->parts.push_back(semantics(t.dst(), base));
      out->maps.emplace(function_space(out->parts[0]->poset, out->parts[1]->poset));
      out->poset = out->maps->poset();
      break;
    }
  }
  return out;
}

bool TypeClosure::contains(const TypeExpr& t) const {
  for (const auto& m : members_)
    if (m == t) return true;
  return false;
}

namespace {

TypeClosure close(const std::vector<TypeExpr>& roots, bool domains) {
  std::vector<TypeExpr> members;
  std::set<std::string> seen;
  std::deque<TypeExpr> queue(roots.begin(), roots.end());
  while (!queue.empty()) {
    TypeExpr t = queue.front();
    queue.pop_front();
    if (!seen.insert(t.str()).second) continue;
    members.push_back(t);
    if (t.is_arrow()) {
      if (domains) queue.push_back(t.src());
      queue.push_back(t.dst());
    } else if (t.is_product()) {
      for (const auto& f : t.fields()) queue.push_back(f.second);
    }
  }
  return TypeClosure(roots, std::move(members));
}

bool functional(const TypeExpr& t) {
  if (t.is_base()) return t.name() == "i";
  return t.is_arrow() && t.src().is_base() && t.src().name() == "i" && functional(t.dst());
}

bool predicate(const TypeExpr& t) {
  if (t.is_base()) return t.name() == "o";
  if (!t.is_arrow()) return false;
  const TypeExpr& r = t.src();
  const bool parameter = (r.is_base() && r.name() == "i") || predicate(r);
  return parameter && predicate(t.dst());
}

void check_bases(const TypeExpr& t) {
  switch (t.kind()) {
    case TypeExpr::Kind::base:
      if (t.name() != "o" && t.name() != "i")
        throw Error(Errc::unknown_base_type, "base type '" + t.name() + "' is neither o nor i");
      return;
    case TypeExpr::Kind::product:
      for (const auto& f : t.fields()) check_bases(f.second);
      return;
    case TypeExpr::Kind::arrow:
      check_bases(t.src());
      check_bases(t.dst());
      return;
  }
}

}  // namespace

TypeClosure closure_S(const std::vector<TypeExpr>& roots) { return close(roots, false); }

TypeClosure predicate_closure(const std::vector<TypeExpr>& roots) { return close(roots, true); }

std::string_view to_string(TypeClass c) {
  switch (c) {
    case TypeClass::functional: return "FUNCTIONAL";
    case TypeClass::predicate: return "PREDICATE";
    case TypeClass::parameter_only: return "PARAMETER_ONLY";
    case TypeClass::other: return "OTHER";
  }
  return "OTHER";
}

TypeClass classify_type(const TypeExpr& t) {
  check_bases(t);
  if (functional(t)) return TypeClass::functional;
  if (predicate(t)) return TypeClass::predicate;
  // parameter types are i or predicate types, both caught above
  return TypeClass::other;
}

std::size_t arity(const TypeExpr& t) { return t.is_arrow() ? 1 + arity(t.dst()) : 0; }

}  // namespace hoaft
