#include <algorithm>
#include <map>

#include "hoaft/order.hpp"

namespace hoaft {

namespace {

// Down-sets (strict) of the elements; element j may only sit above elements < j.
void extend(std::size_t n, std::vector<Bits>& down, std::vector<std::vector<Bits>>& out) {
  const std::size_t j = down.size();
  if (j == n) {
    out.push_back(down);
    return;
  }
  // every down-closed subset of {0..j-1} is a valid strict down-set for j
  for (std::size_t mask = 0; mask < (std::size_t{1} << j); ++mask) {
    Bits d(n);
    for (std::size_t i = 0; i < j; ++i)
      if (mask >> i & 1) d.set(i);
    bool closed = true;
    for (auto i = d.find_first(); i != Bits::npos && closed; i = d.find_next(i)) closed = down[i].is_subset_of(d);
    if (!closed) continue;
    down.push_back(d);
    extend(n, down, out);
    down.pop_back();
  }
}

Poset from_strict_down(const std::vector<Bits>& down) {
  const std::size_t n = down.size();
  std::vector<std::string> names;
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
    up[i].set(i);
    for (auto b = down[i].find_first(); b != Bits::npos; b = down[i].find_next(b)) up[b].set(i);
  }
  return Poset::from_up_sets(std::move(names), std::move(up));
}

}  // namespace

std::vector<Poset> enumerate_posets(std::size_t n) {
  if (n > 6) throw Error(Errc::invalid_input, "poset enumeration is limited to 6 elements");
  std::vector<std::vector<Bits>> labeled;
  std::vector<Bits> down;
  extend(n, down, labeled);

  std::vector<Poset> out;
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, std::vector<std::size_t>> buckets;
  for (const auto& d : labeled) {
    Poset p = from_strict_down(d);
    std::vector<std::pair<std::size_t, std::size_t>> inv;
    for (Element e = 0; e < n; ++e) inv.emplace_back(p.down_set(e).count(), p.up_set(e).count());
    std::sort(inv.begin(), inv.end());
    auto& bucket = buckets[inv];
    bool seen = false;
    for (std::size_t idx : bucket)
      if (find_isomorphism(out[idx], p)) {
        seen = true;
        break;
      }
    if (seen) continue;
    bucket.push_back(out.size());
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Poset> enumerate_posets_up_to(std::size_t n) {
  std::vector<Poset> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto level = enumerate_posets(k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace hoaft
