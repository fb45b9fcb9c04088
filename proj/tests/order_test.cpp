#include <gtest/gtest.h>

#include "hoaft/order.hpp"
#include "oracles.hpp"

using namespace hoaft;
using oracle::make;

namespace {

Poset three_valued() { return make({"U", "T", "F"}, {{"U", "T"}, {"U", "F"}}); }
Poset two_chain() { return make({"f", "t"}, {{"f", "t"}}); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::invalid_input;
}

}  // namespace

TEST(Validate, CoversModeBuildsClosure) {
  Poset p = make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(p.leq(0, 2));
  EXPECT_TRUE(p.leq(1, 1));
  EXPECT_FALSE(p.leq(2, 0));
  EXPECT_TRUE(is_partial_order(p));
}

TEST(Validate, Errors) {
  EXPECT_EQ(code_of([] { make({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }), Errc::not_antisymmetric);
  EXPECT_EQ(code_of([] { make({"a", "a"}, {}); }), Errc::duplicate_element);
  EXPECT_EQ(code_of([] { make({"a"}, {{"a", "z"}}); }), Errc::unknown_element);
  EXPECT_EQ(code_of([] { Poset::validate({"a", "b"}, {{"a", "a"}}, OrderMode::full); }), Errc::not_reflexive);
  EXPECT_EQ(code_of([] {
              Poset::validate({"a", "b", "c"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}},
                              OrderMode::full);
            }),
            Errc::not_transitive);
  // a longer cycle is only visible after closure
  EXPECT_EQ(code_of([] { make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }), Errc::not_antisymmetric);
}

TEST(Validate, FullModeSinglePoint) {
  Poset p = Poset::validate({"a"}, {{"a", "a"}}, OrderMode::full);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_TRUE(p.leq(0, 0));
}

TEST(Validate, EmptyPoset) {
  Poset p = make({}, {});
  EXPECT_EQ(p.size(), 0u);
  auto c = classify(p);
  EXPECT_FALSE(c.is_cpo);
  EXPECT_FALSE(c.has_bottom);
}

TEST(Bound, Examples) {
  Poset c = two_chain();
  std::vector<Element> ab{0, 1};
  EXPECT_EQ(bound(c, ab, BoundKind::lub), Element{1});

  Poset a = three_valued();
  std::vector<Element> tf{a.at("T"), a.at("F")};
  EXPECT_EQ(bound(a, tf, BoundKind::glb), a.at("U"));
  EXPECT_FALSE(bound(a, tf, BoundKind::lub).has_value());
  std::vector<Element> none;
  EXPECT_EQ(bound(a, none, BoundKind::lub), a.at("U"));
  EXPECT_FALSE(bound(a, none, BoundKind::glb).has_value());
  std::vector<Element> bad{7};
  EXPECT_THROW(bound(a, bad, BoundKind::glb), Error);
}

TEST(Bound, AgreesWithOracleOnAllSmallPosets) {
  for (const auto& p : enumerate_posets_up_to(5)) {
    const std::size_t n = p.size();
    const Poset op = opposite(p);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      auto s = oracle::members(mask, n);
      ASSERT_EQ(bound(p, s, BoundKind::glb), oracle::glb(p, s)) << describe(p);
      ASSERT_EQ(bound(p, s, BoundKind::lub), oracle::lub(p, s)) << describe(p);
      ASSERT_EQ(bound(op, s, BoundKind::glb), bound(p, s, BoundKind::lub));
    }
  }
}

TEST(Classify, Examples) {
  Poset powerset = make({"0", "1", "2", "12"}, {{"0", "1"}, {"0", "2"}, {"1", "12"}, {"2", "12"}});
  auto c = classify(powerset);
  EXPECT_TRUE(c.is_complete_lattice);
  EXPECT_TRUE(c.is_cpo);

  auto t = classify(three_valued());
  EXPECT_TRUE(t.is_cpo);
  EXPECT_FALSE(t.is_complete_lattice);
  EXPECT_FALSE(t.has_top);

  EXPECT_FALSE(classify(antichain(2)).is_cpo);
}

TEST(Classify, AgreesWithSubsetEnumeration) {
  for (const auto& p : enumerate_posets_up_to(5)) {
    auto fast = classify(p);
    auto slow = oracle::classify(p);
    EXPECT_EQ(fast.has_bottom, slow.has_bottom) << describe(p);
    EXPECT_EQ(fast.has_top, slow.has_top) << describe(p);
    EXPECT_EQ(fast.is_cpo, slow.is_cpo) << describe(p);
    EXPECT_EQ(fast.is_complete_lattice, slow.is_complete_lattice) << describe(p);
    EXPECT_EQ(fast.is_complete_join_semilattice, slow.is_complete_join_semilattice) << describe(p);
  }
}

TEST(Opposite, Involution) {
  Poset c = two_chain();
  Poset op = opposite(c);
  EXPECT_TRUE(op.leq(1, 0));
  EXPECT_FALSE(op.leq(0, 1));
  EXPECT_TRUE(opposite(op) == c);
  Poset a = antichain(3);
  Poset oa = opposite(a);
  for (Element x = 0; x < 3; ++x)
    for (Element y = 0; y < 3; ++y) EXPECT_EQ(a.leq(x, y), oa.leq(x, y));
  for (const auto& p : enumerate_posets_up_to(4)) EXPECT_TRUE(opposite(opposite(p)) == p);
}

TEST(Product, Examples) {
  auto empty = product({});
  EXPECT_EQ(empty.poset().size(), 1u);
  EXPECT_EQ(empty.poset().name(0), "()");

  auto sq = product({two_chain(), two_chain()});
  const Poset& p = sq.poset();
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(bottom(p), p.at("(f,f)"));
  EXPECT_FALSE(p.comparable(p.at("(f,t)"), p.at("(t,f)")));
  EXPECT_TRUE(is_partial_order(p));

  EXPECT_EQ(product({three_valued(), three_valued()}).poset().size(), 9u);
}

TEST(Product, TupleRoundTripAndProjections) {
  auto sp = product({chain(2), three_valued(), chain(3)});
  for (Element e = 0; e < sp.poset().size(); ++e) EXPECT_EQ(sp.element(sp.tuple(e)), e);
  for (std::size_t i = 0; i < sp.arity(); ++i) EXPECT_NO_THROW(sp.projection(i));
}

TEST(Exponential, Examples) {
  auto e = exponential(two_chain(), two_chain());
  ASSERT_EQ(e.poset().size(), 3u);
  EXPECT_TRUE(is_partial_order(e.poset()));
  // const-f, identity, const-t is a chain
  std::vector<Element> all{0, 1, 2};
  EXPECT_TRUE(is_chain(e.poset(), all));

  Poset a = three_valued();
  EXPECT_EQ(exponential(a, a).poset().size(), 11u);

  Poset one = chain(1);
  for (const auto& p : enumerate_posets_up_to(3)) EXPECT_TRUE(find_isomorphism(exponential(one, p).poset(), p));
}

TEST(Exponential, PrunedEnumerationMatchesFilterAll) {
  auto posets = enumerate_posets_up_to(3);
  for (const auto& x : posets)
    for (const auto& y : posets) {
      auto slow = oracle::monotone_maps(x, y);
      auto fast = monotone_tables(x, y, size_cap());
      EXPECT_EQ(fast, slow) << describe(x) << " -> " << describe(y);
    }
}

TEST(Exponential, SizeCap) {
  const auto saved = size_cap();
  set_size_cap(10);
  Poset a = three_valued();
  EXPECT_EQ(code_of([&] { exponential(a, a); }), Errc::size_cap_exceeded);
  EXPECT_EQ(code_of([&] { function_space(a, a); }), Errc::size_cap_exceeded);
  set_size_cap(saved);
}

TEST(FunctionSpace, Examples) {
  auto f = function_space(two_chain(), two_chain());
  EXPECT_EQ(f.poset().size(), 4u);
  std::vector<Element> swap{1, 0};
  ASSERT_TRUE(f.find(swap).has_value());
  EXPECT_EQ(f.poset().name(*f.find(swap)), "{f->t, t->f}");

  Poset e = two_chain();
  EXPECT_TRUE(find_isomorphism(function_space(e, e).poset(), product({e, e}).poset()));
  EXPECT_EQ(function_space(three_valued(), chain(1)).poset().size(), 1u);
}

TEST(FunctionSpace, IsomorphicToPowers) {
  auto posets = enumerate_posets_up_to(3);
  for (const auto& x : posets)
    for (const auto& y : posets) {
      std::vector<Poset> copies(x.size(), y);
      EXPECT_TRUE(find_isomorphism(function_space(x, y).poset(), product(copies).poset()))
          << describe(x) << " -> " << describe(y);
    }
}

TEST(Universal, Examples) {
  auto small = enumerate_posets_up_to(3);
  EXPECT_TRUE(check_universal(UniversalCandidate::terminal(chain(1)), small).pass);
  auto t2 = check_universal(UniversalCandidate::terminal(chain(2)), small);
  EXPECT_FALSE(t2.pass);
  EXPECT_FALSE(t2.counterexample.empty());

  EXPECT_TRUE(check_universal(UniversalCandidate::of(product({two_chain(), two_chain()})), small).pass);
  EXPECT_TRUE(check_universal(UniversalCandidate::of(exponential(two_chain(), two_chain())), small).pass);

  auto bad = check_universal(UniversalCandidate::of(function_space(two_chain(), two_chain())), small);
  EXPECT_FALSE(bad.pass);
  EXPECT_NE(bad.counterexample.find("not monotone"), std::string::npos);
  // with an antichain source every map is monotone, so the substitution is harmless
  EXPECT_TRUE(check_universal(UniversalCandidate::of(function_space(antichain(2), two_chain())), small).pass);
}

TEST(Universal, ProductWithSwappedProjectionFails) {
  auto sq = product({two_chain(), chain(3)});
  auto cand = UniversalCandidate::of(sq);
  // a product of a 2-chain and a 3-chain whose first projection is constant
  std::fill(cand.maps[0].table.begin(), cand.maps[0].table.end(), 0);
  auto r = check_universal(cand, enumerate_posets_up_to(2));
  EXPECT_FALSE(r.pass);
}

TEST(Isomorphism, Examples) {
  auto id = find_isomorphism(two_chain(), chain(2));
  ASSERT_TRUE(id);
  EXPECT_EQ(id->table(), (std::vector<Element>{0, 1}));
  EXPECT_FALSE(find_isomorphism(two_chain(), antichain(2)));
  EXPECT_FALSE(find_isomorphism(chain(2), chain(3)));

  Poset e = two_chain();
  auto iso = find_isomorphism(function_space(e, e).poset(), product({e, e}).poset());
  ASSERT_TRUE(iso);
  EXPECT_TRUE(inverse_isomorphism(*iso));
}

TEST(Isomorphism, WitnessIsAnOrderIsomorphism) {
  auto posets = enumerate_posets_up_to(4);
  for (const auto& p : posets) {
    auto rev = opposite(p);
    auto m = find_isomorphism(p, p);
    ASSERT_TRUE(m);
    EXPECT_TRUE(inverse_isomorphism(*m));
    // self-dual or not, the search must agree with a check of its own answer
    if (auto d = find_isomorphism(p, rev)) EXPECT_TRUE(inverse_isomorphism(*d));
  }
}

TEST(Enumerate, KnownCounts) {
  const std::size_t expected[] = {1, 1, 2, 5, 16, 63, 318};
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(enumerate_posets(n).size(), expected[n]) << n;
}

TEST(Enumerate, PairwiseNonIsomorphic) {
  auto ps = enumerate_posets(4);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_FALSE(find_isomorphism(ps[i], ps[j]));
}

TEST(LinearExtension, RespectsOrder) {
  for (const auto& p : enumerate_posets_up_to(5)) {
    auto ext = linear_extension(p);
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < ext.size(); ++i) pos[ext[i]] = i;
    for (Element a = 0; a < p.size(); ++a)
      for (Element b = 0; b < p.size(); ++b)
        if (p.lt(a, b)) EXPECT_LT(pos[a], pos[b]);
  }
}

TEST(Describe, ListsCoversAndIsolatedPoints) {
  EXPECT_EQ(describe(make({"a", "b", "c"}, {{"a", "b"}})), "{a<b, c}");
  EXPECT_EQ(describe(make({}, {})), "{}");
}

TEST(MonotoneMap, RejectsNonMonotone) {
  EXPECT_EQ(code_of([] { MonotoneMap(two_chain(), two_chain(), {1, 0}); }), Errc::not_monotone);
  EXPECT_EQ(code_of([] { MonotoneMap(two_chain(), two_chain(), {0}); }), Errc::invalid_input);
}

TEST(CoordinatePoset, MatchesDenseOrder) {
  Poset a = three_valued();
  auto e = exponential(a, a);
  const Poset& p = e.poset();
  for (Element x = 0; x < p.size(); ++x) {
    Bits up = p.up_set(x), down = p.down_set(x);
    for (Element y = 0; y < p.size(); ++y) {
      bool pointwise = true;
      for (Element s = 0; s < a.size(); ++s) pointwise = pointwise && a.leq(e.apply(x, s), e.apply(y, s));
      EXPECT_EQ(p.leq(x, y), pointwise);
      EXPECT_EQ(up.test(y), pointwise);
      EXPECT_EQ(down.test(y), p.leq(y, x));
    }
  }
  EXPECT_TRUE(is_partial_order(p));
  EXPECT_EQ(p.find(p.name(5)), Element{5});
}
