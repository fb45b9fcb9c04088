#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "hoaft/order.hpp"

namespace hoaft {

namespace {

// Rows of `k` coordinates, compared componentwise. Up/down sets are built from
// per-(coordinate, value) masks so no N x N matrix is ever materialized.
class CoordinatePoset final : public Poset::Impl {
 public:
  CoordinatePoset(std::vector<Poset> coords, std::shared_ptr<const std::vector<Element>> cells,
                  std::optional<std::vector<std::string>> keys)
      : coords_(std::move(coords)), cells_(std::move(cells)), keys_(std::move(keys)) {
    n_ = coords_.empty() ? 1 : cells_->size() / coords_.size();
  }

  std::size_t size() const override { return n_; }

  bool leq(Element a, Element b) const override {
    const std::size_t k = coords_.size();
    for (std::size_t i = 0; i < k; ++i)
      if (!coords_[i].leq(cell(a, i), cell(b, i))) return false;
    return true;
  }

  std::string name(Element e) const override {
    std::ostringstream os;
    if (!keys_) {
      os << '(';
      for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i].name(cell(e, i));
      os << ')';
    } else {
      os << '{';
      for (std::size_t i = 0; i < coords_.size(); ++i)
        os << (i ? ", " : "") << (*keys_)[i] << "->" << coords_[i].name(cell(e, i));
      os << '}';
    }
    return os.str();
  }

  Bits up_set(Element a) const override { return cone(a, true); }
  Bits down_set(Element a) const override { return cone(a, false); }

 private:
  Element cell(Element e, std::size_t i) const { return (*cells_)[e * coords_.size() + i]; }

  Bits cone(Element a, bool up) const {
    std::call_once(masks_once_, [this] { build_masks(); });
    Bits out(n_);
    out.set();
    const auto& masks = up ? up_masks_ : down_masks_;
    for (std::size_t i = 0; i < coords_.size(); ++i) out &= masks[i][cell(a, i)];
    return out;
  }

  void build_masks() const {
    const std::size_t k = coords_.size();
    up_masks_.resize(k);
    down_masks_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t m = coords_[i].size();
      std::vector<Bits> eq(m, Bits(n_));
      for (Element e = 0; e < n_; ++e) eq[cell(e, i)].set(e);
      up_masks_[i].assign(m, Bits(n_));
      down_masks_[i].assign(m, Bits(n_));
      for (Element v = 0; v < m; ++v) {
        const Bits above = coords_[i].up_set(v);
        for (auto w = above.find_first(); w != Bits::npos; w = above.find_next(w)) {
          up_masks_[i][v] |= eq[w];
          down_masks_[i][w] |= eq[v];
        }
      }
    }
  }

  std::vector<Poset> coords_;
  std::shared_ptr<const std::vector<Element>> cells_;
  std::optional<std::vector<std::string>> keys_;
  std::size_t n_ = 0;
  mutable std::once_flag masks_once_;
  mutable std::vector<std::vector<Bits>> up_masks_;
  mutable std::vector<std::vector<Bits>> down_masks_;
};

double product_size(const std::vector<Poset>& factors) {
  double n = 1;
  for (const auto& f : factors) n *= static_cast<double>(f.size());
  return n;
}

}  // namespace

Poset coordinate_poset(std::vector<Poset> coords, std::shared_ptr<const std::vector<Element>> cells,
                       std::optional<std::vector<std::string>> keys) {
  if (!coords.empty() && cells->size() % coords.size() != 0)
    throw Error(Errc::invalid_input, "coordinate table is not rectangular");
  return Poset(std::make_shared<CoordinatePoset>(std::move(coords), std::move(cells), std::move(keys)));
}

// ---------------------------------------------------------------------------

ProductSpace::ProductSpace(std::vector<Poset> factors) : factors_(std::move(factors)) {
  check_size(product_size(factors_), "product");
  const std::size_t k = factors_.size();
  strides_.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) strides_[i - 1] = strides_[i] * factors_[i].size();
  const std::size_t n = k == 0 ? 1 : strides_[0] * factors_[0].size();
  auto cells = std::make_shared<std::vector<Element>>(n * k);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t i = 0; i < k; ++i)
      (*cells)[e * k + i] = static_cast<Element>((e / strides_[i]) % factors_[i].size());
  poset_ = coordinate_poset(factors_, std::move(cells));
}

Element ProductSpace::component(Element e, std::size_t i) const {
  return static_cast<Element>((e / strides_[i]) % factors_[i].size());
}

std::vector<Element> ProductSpace::tuple(Element e) const {
  std::vector<Element> out(arity());
  for (std::size_t i = 0; i < arity(); ++i) out[i] = component(e, i);
  return out;
}

Element ProductSpace::element(std::span<const Element> t) const {
  if (t.size() != arity()) throw Error(Errc::invalid_input, "tuple has wrong arity");
  std::size_t e = 0;
  for (std::size_t i = 0; i < arity(); ++i) {
    if (t[i] >= factors_[i].size()) throw Error(Errc::unknown_element, "tuple component out of range");
    e += t[i] * strides_[i];
  }
  return static_cast<Element>(e);
}

MonotoneMap ProductSpace::projection(std::size_t i) const {
  std::vector<Element> table(poset_.size());
  for (Element e = 0; e < poset_.size(); ++e) table[e] = component(e, i);
  return MonotoneMap(poset_, factors_[i], std::move(table));
}

ProductSpace product(std::vector<Poset> family) { return ProductSpace(std::move(family)); }

// ---------------------------------------------------------------------------

MapSpace::MapSpace(Kind kind, Poset source, Poset target, std::shared_ptr<const std::vector<Element>> cells)
    : kind_(kind), source_(std::move(source)), target_(std::move(target)), cells_(std::move(cells)) {
  std::vector<Poset> coords(source_.size(), target_);
  poset_ = coordinate_poset(std::move(coords), cells_, source_.names());
}

std::span<const Element> MapSpace::table(Element f) const {
  const std::size_t k = source_.size();
  return std::span<const Element>(cells_->data() + f * k, k);
}

std::optional<Element> MapSpace::find(std::span<const Element> t) const {
  const std::size_t k = source_.size();
  if (t.size() != k) return std::nullopt;
  std::size_t lo = 0, hi = poset_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto row = table(static_cast<Element>(mid));
    if (std::lexicographical_compare(row.begin(), row.end(), t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < poset_.size()) {
    auto row = table(static_cast<Element>(lo));
    if (std::equal(row.begin(), row.end(), t.begin(), t.end())) return static_cast<Element>(lo);
  }
  return std::nullopt;
}

FunctionTable MapSpace::evaluation() const {
  ProductSpace dom({poset_, source_});
  std::vector<Element> table(dom.poset().size());
  for (Element e = 0; e < table.size(); ++e) table[e] = apply(dom.component(e, 0), dom.component(e, 1));
  return FunctionTable{dom.poset(), target_, std::move(table)};
}

void for_each_monotone(const Poset& src, const Poset& tgt,
                       const std::function<bool(std::span<const Element>)>& visit) {
  const std::size_t k = src.size();
  const std::size_t m = tgt.size();
  if (k == 0) {
    visit({});
    return;
  }
  if (m == 0) return;

  const auto order = linear_extension(src);
  // lower covers of each source element, restricted to those placed earlier
  std::vector<std::vector<Element>> below(k);
  for (auto [a, b] : covers(src)) below[b].push_back(a);
  std::vector<Bits> tgt_up(m);
  for (Element v = 0; v < m; ++v) tgt_up[v] = tgt.up_set(v);

  std::vector<Element> table(k);
  std::vector<Bits> cand(k);
  Bits all(m);
  all.set();

  std::size_t depth = 0;
  auto prepare = [&](std::size_t d) {
    const Element s = order[d];
    cand[d] = all;
    for (Element pre : below[s]) cand[d] &= tgt_up[table[pre]];
  };
  prepare(0);
  std::vector<std::size_t> next(k, 0);
  next[0] = cand[0].find_first();
  while (true) {
    if (next[depth] == Bits::npos) {
      if (depth == 0) break;
      --depth;
      next[depth] = cand[depth].find_next(next[depth]);
      continue;
    }
    table[order[depth]] = static_cast<Element>(next[depth]);
    if (depth + 1 == k) {
      if (!visit(table)) return;
      next[depth] = cand[depth].find_next(next[depth]);
      continue;
    }
    ++depth;
    prepare(depth);
    next[depth] = cand[depth].find_first();
  }
}

std::vector<std::vector<Element>> monotone_tables(const Poset& src, const Poset& tgt, std::size_t cap) {
  std::vector<std::vector<Element>> out;
  for_each_monotone(src, tgt, [&](std::span<const Element> t) {
    out.emplace_back(t.begin(), t.end());
    if (out.size() > cap)
      throw Error(Errc::size_cap_exceeded, "monotone map space exceeds " + std::to_string(cap) + " elements");
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

MapSpace exponential(const Poset& src, const Poset& tgt) {
  auto tables = monotone_tables(src, tgt, size_cap());
  auto cells = std::make_shared<std::vector<Element>>();
  cells->reserve(tables.size() * src.size());
  for (const auto& t : tables) cells->insert(cells->end(), t.begin(), t.end());
  return MapSpace(MapSpace::Kind::monotone, src, tgt, std::move(cells));
}

MapSpace function_space(const Poset& src, const Poset& tgt) {
  const std::size_t k = src.size();
  const std::size_t m = tgt.size();
  check_size(std::pow(static_cast<double>(m), static_cast<double>(k)), "function space");
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) n *= m;
  auto cells = std::make_shared<std::vector<Element>>(n * k);
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t rest = f;
    for (std::size_t i = k; i-- > 0;) {
      (*cells)[f * k + i] = static_cast<Element>(rest % m);
      rest /= m;
    }
  }
  return MapSpace(MapSpace::Kind::all, src, tgt, std::move(cells));
}

}  // namespace hoaft
