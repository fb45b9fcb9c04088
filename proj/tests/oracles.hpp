#pragma once

// Brute-force reference implementations used to cross-check the library.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoaft/order.hpp"

namespace oracle {

using hoaft::Element;
using hoaft::Poset;

inline Poset make(std::vector<std::string> elems, std::vector<std::pair<std::string, std::string>> covers) {
  return Poset::validate(std::move(elems), covers, hoaft::OrderMode::covers);
}

inline std::vector<Element> members(std::uint64_t mask, std::size_t n) {
  std::vector<Element> out;
  for (Element i = 0; i < n; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

// glb by scanning all lower bounds
inline std::optional<Element> glb(const Poset& p, const std::vector<Element>& s) {
  std::vector<Element> lower;
  for (Element x = 0; x < p.size(); ++x) {
    bool ok = true;
    for (Element y : s) ok = ok && p.leq(x, y);
    if (ok) lower.push_back(x);
  }
  for (Element c : lower) {
    bool greatest = true;
    for (Element x : lower) greatest = greatest && p.leq(x, c);
    if (greatest) return c;
  }
  return std::nullopt;
}

inline std::optional<Element> lub(const Poset& p, const std::vector<Element>& s) {
  std::vector<Element> upper;
  for (Element x = 0; x < p.size(); ++x) {
    bool ok = true;
    for (Element y : s) ok = ok && p.leq(y, x);
    if (ok) upper.push_back(x);
  }
  for (Element c : upper) {
    bool least = true;
    for (Element x : upper) least = least && p.leq(c, x);
    if (least) return c;
  }
  return std::nullopt;
}

inline bool is_chain(const Poset& p, const std::vector<Element>& s) {
  for (Element a : s)
    for (Element b : s)
      if (!p.leq(a, b) && !p.leq(b, a)) return false;
  return true;
}

// Every subset enumerated; only for posets with a handful of elements.
inline hoaft::PosetClassification classify(const Poset& p) {
  hoaft::PosetClassification c;
  const std::size_t n = p.size();
  c.has_bottom = glb(p, members((std::uint64_t{1} << n) - 1, n)).has_value() && n > 0;
  c.has_top = lub(p, members((std::uint64_t{1} << n) - 1, n)).has_value() && n > 0;
  bool cpo = true, cl = true, cjsl = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto s = members(mask, n);
    const bool has_lub = lub(p, s).has_value();
    if (is_chain(p, s) && !has_lub) cpo = false;
    if (!has_lub) cjsl = false;
    if (!has_lub || !glb(p, s)) cl = false;
  }
  c.is_cpo = cpo;
  c.is_complete_lattice = cl;
  c.is_complete_join_semilattice = cjsl;
  return c;
}

// Every total map, kept when monotone.
inline std::vector<std::vector<Element>> monotone_maps(const Poset& src, const Poset& tgt) {
  std::vector<std::vector<Element>> out;
  const std::size_t k = src.size(), m = tgt.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= m;
  for (std::size_t f = 0; f < total; ++f) {
    std::vector<Element> t(k);
    std::size_t rest = f;
    for (std::size_t i = k; i-- > 0;) {
      t[i] = static_cast<Element>(rest % m);
      rest /= m;
    }
    bool mono = true;
    for (Element x = 0; x < k && mono; ++x)
      for (Element y = 0; y < k && mono; ++y)
        if (src.leq(x, y) && !tgt.leq(t[x], t[y])) mono = false;
    if (mono) out.push_back(t);
  }
  return out;
}

}  // namespace oracle
