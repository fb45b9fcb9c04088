#include <functional>
#include <map>
#include <sstream>

#include "hoaft/order.hpp"

namespace hoaft {

namespace {

std::string show_table(const Poset& src, const Poset& tgt, std::span<const Element> t) {
  std::ostringstream os;
  os << '{';
  for (Element x = 0; x < t.size(); ++x) os << (x ? ", " : "") << src.name(x) << "->" << tgt.name(t[x]);
  os << '}';
  return os.str();
}

using Key = std::vector<std::vector<Element>>;

// Every key in `wanted` (a full cartesian family) must be hit exactly once.
bool tally(const std::map<Key, std::size_t>& hits, const std::vector<std::vector<std::vector<Element>>>& wanted,
           UniversalReport& report, const std::function<std::string(const Key&)>& show, const std::string& where) {
  std::size_t total = 1;
  for (const auto& w : wanted) total *= w.size();
  report.checked += total;
  for (const auto& [key, count] : hits)
    if (count > 1) {
      report.pass = false;
      report.counterexample = where + ": " + show(key) + " has " + std::to_string(count) + " mediating morphisms";
      return false;
    }
  if (hits.size() == total) return true;
  std::vector<std::size_t> digit(wanted.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Key key;
    for (std::size_t i = 0; i < wanted.size(); ++i) key.push_back(wanted[i][digit[i]]);
    if (!hits.count(key)) {
      report.pass = false;
      report.counterexample = where + ": " + show(key) + " has no mediating morphism";
      return false;
    }
    for (std::size_t i = wanted.size(); i-- > 0;) {
      if (++digit[i] < wanted[i].size()) break;
      digit[i] = 0;
    }
  }
  return true;
}

}  // namespace

UniversalCandidate UniversalCandidate::terminal(Poset t) {
  UniversalCandidate c;
  c.kind = UniversalKind::terminal;
  c.object = std::move(t);
  return c;
}

UniversalCandidate UniversalCandidate::of(const ProductSpace& p) {
  UniversalCandidate c;
  c.kind = UniversalKind::product;
  c.object = p.poset();
  c.factors = p.factors();
  for (std::size_t i = 0; i < p.arity(); ++i) {
    auto pi = p.projection(i);
    c.maps.push_back(FunctionTable{pi.source(), pi.target(), pi.table()});
  }
  return c;
}

UniversalCandidate UniversalCandidate::of(const MapSpace& e) {
  UniversalCandidate c;
  c.kind = UniversalKind::exponential;
  c.object = e.poset();
  c.factors = {e.source(), e.target()};
  c.maps = {e.evaluation()};
  return c;
}

UniversalReport check_universal(const UniversalCandidate& cand, std::span<const Poset> context) {
  UniversalReport report;
  const Poset& obj = cand.object;
  const std::size_t cap = size_cap();

  switch (cand.kind) {
    case UniversalKind::terminal:
      for (const auto& a : context) {
        const auto homs = monotone_tables(a, obj, cap);
        ++report.checked;
        if (homs.size() != 1) {
          report.pass = false;
          report.counterexample = "test object " + describe(a) + " has " + std::to_string(homs.size()) +
                                  " morphisms into the candidate";
          return report;
        }
      }
      return report;

    case UniversalKind::product: {
      const std::size_t k = cand.factors.size();
      if (cand.maps.size() != k) throw Error(Errc::invalid_input, "product candidate needs one projection per factor");
      for (std::size_t i = 0; i < k; ++i) {
        const auto& pi = cand.maps[i];
        if (pi.table.size() != obj.size()) throw Error(Errc::invalid_input, "projection not total on the candidate");
        if (auto w = monotonicity_witness(FunctionTable{obj, cand.factors[i], pi.table})) {
          report.pass = false;
          report.counterexample = "projection " + std::to_string(i) + " is not monotone at " + obj.name(w->first) +
                                  " <= " + obj.name(w->second);
          return report;
        }
      }
      for (const auto& a : context) {
        std::vector<std::vector<std::vector<Element>>> wanted;
        for (const auto& x : cand.factors) wanted.push_back(monotone_tables(a, x, cap));
        std::map<Key, std::size_t> hits;
        for (const auto& m : monotone_tables(a, obj, cap)) {
          Key key(k, std::vector<Element>(a.size()));
          for (std::size_t i = 0; i < k; ++i)
            for (Element x = 0; x < a.size(); ++x) key[i][x] = cand.maps[i].table[m[x]];
          ++hits[key];
        }
        auto show = [&](const Key& key) {
          std::string s = "(";
          for (std::size_t i = 0; i < k; ++i) s += (i ? ", " : "") + show_table(a, cand.factors[i], key[i]);
          return s + ")";
        };
        if (!tally(hits, wanted, report, show, "test object " + describe(a))) return report;
      }
      return report;
    }

    case UniversalKind::exponential: {
      if (cand.factors.size() != 2 || cand.maps.size() != 1)
        throw Error(Errc::invalid_input, "exponential candidate needs {source, target} and an evaluation map");
      const Poset& x = cand.factors[0];
      const Poset& y = cand.factors[1];
      const ProductSpace ex({obj, x});
      const auto& ev = cand.maps[0].table;
      if (ev.size() != ex.poset().size()) throw Error(Errc::invalid_input, "evaluation map has the wrong domain");
      if (auto w = monotonicity_witness(FunctionTable{ex.poset(), y, ev})) {
        report.pass = false;
        report.counterexample = "evaluation is not monotone: " + ex.poset().name(w->first) + " <= " +
                                ex.poset().name(w->second) + " but " + y.name(ev[w->first]) + " !<= " +
                                y.name(ev[w->second]);
        return report;
      }
      for (const auto& a : context) {
        const ProductSpace ax({a, x});
        std::vector<std::vector<std::vector<Element>>> wanted{monotone_tables(ax.poset(), y, cap)};
        std::map<Key, std::size_t> hits;
        for (const auto& m : monotone_tables(a, obj, cap)) {
          Key key(1, std::vector<Element>(ax.poset().size()));
          for (Element i = 0; i < a.size(); ++i)
            for (Element j = 0; j < x.size(); ++j) {
              const Element src[2] = {m[i], j};
              const Element pos[2] = {i, j};
              key[0][ax.element(pos)] = ev[ex.element(src)];
            }
          ++hits[key];
        }
        auto show = [&](const Key& key) { return show_table(ax.poset(), y, key[0]); };
        if (!tally(hits, wanted, report, show, "test object " + describe(a))) return report;
      }
      return report;
    }
  }
  return report;
}

}  // namespace hoaft
