#include "hoaft/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hoaft/error.hpp"

namespace hoaft {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::invalid_input, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) bad(std::string(what) + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> relation(const Json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  if (j.is_null()) return out;
  if (!j.is_array()) bad("\"leq\" must be an array of pairs");
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) bad("\"leq\" entries are [a, b]");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

OrderMode mode_of(const Json& j) {
  if (!j.contains("mode")) return OrderMode::covers;
  const Json& m = j.at("mode");
  if (m == "full") return OrderMode::full;
  if (m == "covers") return OrderMode::covers;
  bad("\"mode\" is \"full\" or \"covers\"");
}

Element named(const Poset& p, const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": element names are strings");
  auto e = p.find(j.get<std::string>());
  if (!e) throw Error(Errc::unknown_element, where + ": no element " + j.get<std::string>());
  return *e;
}

}  // namespace

Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = p.names();
  Json leq = Json::array();
  for (Element a = 0; a < p.size(); ++a)
    for (Element b = 0; b < p.size(); ++b)
      if (p.leq(a, b)) leq.push_back({p.name(a), p.name(b)});
  j["leq"] = std::move(leq);
  j["mode"] = "full";
  return j;
}

Poset poset_from_json(const Json& j) {
  return Poset::validate(strings(field(j, "elements"), "\"elements\""), relation(j.value("leq", Json())), mode_of(j));
}

TupleValidation tuple_from_json(const Json& j) {
  return validate_tuple(strings(field(j, "L"), "\"L\""), strings(field(j, "U"), "\"U\""),
                        relation(j.value("leq", Json())), mode_of(j));
}

Json operator_to_json(const Operator& op) {
  Json j;
  j["space"] = poset_to_json(op.space());
  Json t = Json::object();
  for (Element x = 0; x < op.space().size(); ++x) t[op.space().name(x)] = op.space().name(op(x));
  j["table"] = std::move(t);
  return j;
}

ApproximationSystem system_from_json(const Json& j) {
  const Json& fl = field(j, "flavor");
  Flavor flavor;
  if (fl == "lu") {
    flavor = Flavor::lu;
  } else if (fl == "bilat") {
    flavor = Flavor::bilat;
  } else {
    bad("\"flavor\" is \"lu\" or \"bilat\"");
  }
  const Json& bases = field(j, "bases");
  if (!bases.is_object() || bases.empty()) bad("\"bases\" must map base type names to posets");
  std::map<std::string, BaseApprox, std::less<>> out;
  for (const auto& [name, pj] : bases.items()) {
    const Poset sem = poset_from_json(pj);
    BaseApprox b;
    const bool custom = j.contains("app") && j["app"].contains(name);
    if (custom) {
      b.semantics = sem;
      b.app = poset_from_json(j["app"][name]);
      if (!j.contains("exact") || !j["exact"].contains(name) || !j.contains("proj") || !j["proj"].contains(name))
        bad("base " + name + " with an explicit App space needs \"exact\" and \"proj\"");
    } else {
      b = standard_base(flavor, sem);
    }
    if (j.contains("exact") && j["exact"].contains(name)) {
      const std::vector<Element> old_proj = b.proj;
      b.exact.clear();
      for (const auto& e : j["exact"][name]) b.exact.push_back(named(b.app, e, "exact." + name));
      std::sort(b.exact.begin(), b.exact.end());
      b.exact.erase(std::unique(b.exact.begin(), b.exact.end()), b.exact.end());
      b.proj.assign(b.app.size(), no_element);
      for (Element e : b.exact) b.proj[e] = custom ? no_element : old_proj[e];
    }
    if (j.contains("proj") && j["proj"].contains(name)) {
      const Json& pm = j["proj"][name];
      if (!pm.is_object()) bad("proj." + name + " must map App elements to E elements");
      for (const auto& [k, v] : pm.items()) {
        const Element a = named(b.app, Json(k), "proj." + name);
        if (!std::binary_search(b.exact.begin(), b.exact.end(), a)) bad("proj." + name + ": " + k + " is not exact");
        b.proj[a] = named(sem, v, "proj." + name);
      }
    }
    for (Element e : b.exact)
      if (b.proj[e] == no_element) bad("proj." + name + " misses exact element " + b.app.name(e));
    out.emplace(name, std::move(b));
  }
  SystemClosure closure = SystemClosure::predicate_types();
  if (j.contains("closure")) {
    std::vector<TypeExpr> roots;
    for (const auto& t : strings(j["closure"], "\"closure\"")) roots.push_back(TypeExpr::parse(t));
    closure = SystemClosure::explicit_members(closure_S(roots));
  }
  return ApproximationSystem(flavor, std::move(out), std::move(closure));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ApproximationSystem load_system(std::string_view source) {
  if (source == "builtin:lu-bool") return lu_bool_system();
  if (source == "builtin:bilat-bool") return bilat_bool_system();
  if (source.rfind("builtin:", 0) == 0) bad("unknown builtin system " + std::string(source));
  Json j;
  try {
    j = Json::parse(read_file(std::string(source)));
  } catch (const Json::exception& e) {
    bad(std::string(source) + ": " + e.what());
  }
  return system_from_json(j);
}

Json value_to_json(const ApproxSpace& sp, Element e) {
  switch (sp.kind()) {
    case ApproxSpace::Kind::base:
      return sp.poset().name(e);
    case ApproxSpace::Kind::exponential: {
      const ApproxSpace& src = *sp.parts()[0];
      Json j = Json::object();
      for (Element a = 0; a < src.size(); ++a) j[src.poset().name(a)] = value_to_json(*sp.parts()[1], sp.apply(e, a));
      return j;
    }
    case ApproxSpace::Kind::product: {
      Json j = Json::object();
      const auto& fields = sp.type().fields();
      for (std::size_t i = 0; i < fields.size(); ++i)
        j[fields[i].first] = value_to_json(*sp.parts()[i], sp.product()->component(e, i));
      return j;
    }
    case ApproxSpace::Kind::power: {
      Json j = Json::object();
      const Poset& keys = sp.semantics().parts[0]->poset;
      for (Element i = 0; i < keys.size(); ++i) j[keys.name(i)] = value_to_json(*sp.parts()[0], sp.product()->component(e, i));
      return j;
    }
  }
  return {};
}

Element value_from_json(const ApproxSpace& sp, const Json& j) {
  const std::string where = "value of type " + sp.type().str();
  if (sp.kind() == ApproxSpace::Kind::base) return named(sp.poset(), j, where);
  if (!j.is_object()) bad(where + " must be an object");
  std::vector<Element> t;
  if (sp.kind() == ApproxSpace::Kind::exponential) {
    const ApproxSpace& src = *sp.parts()[0];
    for (Element a = 0; a < src.size(); ++a) {
      const std::string k = src.poset().name(a);
      if (!j.contains(k)) bad(where + " misses argument " + k);
      t.push_back(value_from_json(*sp.parts()[1], j[k]));
    }
    auto f = sp.maps()->find(t);
    if (!f) bad(where + " is not a monotone map");
    return *f;
  }
  const std::size_t n = sp.product()->arity();
  for (std::size_t i = 0; i < n; ++i) {
    std::string k;
    const ApproxSpace* part;
    if (sp.kind() == ApproxSpace::Kind::product) {
      k = sp.type().fields()[i].first;
      part = sp.parts()[i].get();
    } else {
      k = sp.semantics().parts[0]->poset.name(static_cast<Element>(i));
      part = sp.parts()[0].get();
    }
    if (!j.contains(k)) bad(where + " misses component " + k);
    t.push_back(value_from_json(*part, j[k]));
  }
  return sp.product()->element(t);
}

Json semantic_to_json(const SemanticSpace& s, Element e) {
  if (s.maps) {
    Json j = Json::object();
    const SemanticSpace& src = *s.parts[0];
    for (Element a = 0; a < src.poset.size(); ++a) j[src.poset.name(a)] = semantic_to_json(*s.parts[1], s.maps->apply(e, a));
    return j;
  }
  if (s.product) {
    Json j = Json::object();
    const auto& fields = s.type.fields();
    for (std::size_t i = 0; i < fields.size(); ++i) j[fields[i].first] = semantic_to_json(*s.parts[i], s.product->component(e, i));
    return j;
  }
  return s.poset.name(e);
}

Json model_to_json(const Evaluator& ev, Element interp) {
  const InterpretationSpace& s = ev.space();
  Json j = Json::object();
  for (std::size_t i = 0; i < s.symbols().size(); ++i) {
    const ApproxSpace& sp = s.app(i);
    const Element v = s.product().component(interp, i);
    Json e;
    e["type"] = sp.type().str();
    e["value"] = value_to_json(sp, v);
    e["exact"] = sp.is_exact(v);
    e["projection"] = sp.is_exact(v) ? semantic_to_json(sp.semantics(), sp.project(v)) : Json();
    j[s.symbols()[i]] = std::move(e);
  }
  return j;
}

Json project_model(const Json& model, const ApproximationSystem& s) {
  const Json& m = model.is_object() && model.contains("model") ? model.at("model") : model;
  if (!m.is_object()) bad("model must be an object of symbols");
  Json out = Json::object();
  for (const auto& [sym, entry] : m.items()) {
    if (!entry.is_object()) bad("model entry " + sym + " must be an object");
    const Json& ty = field(entry, "type");
    if (!ty.is_string()) bad("model entry " + sym + ": \"type\" must be a string");
    auto sp = s.app(TypeExpr::parse(ty.get<std::string>()));
    const Element v = value_from_json(*sp, field(entry, "value"));
    if (!sp->is_exact(v)) throw Error(Errc::not_exact, sym + " is not exact");
    out[sym] = semantic_to_json(sp->semantics(), sp->project(v));
  }
  return out;
}

}  // namespace hoaft
