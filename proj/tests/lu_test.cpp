#include <gtest/gtest.h>

#include "hoaft/lu.hpp"
#include "hoaft/types.hpp"
#include "oracles.hpp"

using namespace hoaft;

namespace {

std::vector<Element> of(const Bits& b) {
  std::vector<Element> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<Element>(i));
  return out;
}

// Every clause by subset enumeration; answers 0 when valid, else the first failing clause.
int tuple_oracle(const ApproximationTuple& t) {
  const Poset& p = t.order;
  const std::size_t n = p.size();
  const auto all = oracle::members((std::uint64_t{1} << n) - 1, n);
  auto bot = oracle::glb(p, all), tp = oracle::lub(p, all);
  if (n == 0 || !bot || !tp) return 1;
  if (!t.lower.test(*bot) || !t.upper.test(*bot) || !t.lower.test(*tp) || !t.upper.test(*tp)) return 2;
  const auto l = of(t.lower), u = of(t.upper);
  const Poset lp = sub_poset(p, l), up = sub_poset(p, u);
  if (!oracle::classify(lp).is_complete_lattice || !oracle::classify(up).is_complete_lattice) return 3;
  for (Element b : u)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << l.size()); ++m) {
      auto s = oracle::members(m, l.size());
      bool below = true;
      for (Element i : s) below = below && p.leq(l[i], b);
      if (below && !p.leq(l[*oracle::lub(lp, s)], b)) return 4;
    }
  for (Element a : l)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << u.size()); ++m) {
      auto s = oracle::members(m, u.size());
      bool above = true;
      for (Element i : s) above = above && p.leq(a, u[i]);
      if (above && !p.leq(a, u[*oracle::glb(up, s)])) return 5;
    }
  return 0;
}

// Each element lands in L only, U only, or both.
template <class F>
void for_each_tuple(std::size_t max_n, F&& f) {
  for (const Poset& p : enumerate_posets_up_to(max_n)) {
    const std::size_t n = p.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Bits l(n), u(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) {
        l[i] = c % 3 != 1;
        u[i] = c % 3 != 0;
      }
      f(ApproximationTuple{p, l, u});
    }
  }
}

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

TEST(ValidateTuple, Examples) {
  auto v = validate_tuple({"f", "t"}, {"f", "t"}, {{"f", "t"}}, OrderMode::covers);
  EXPECT_TRUE(v.report.ok);

  v = validate_tuple({"bot", "half", "top"}, {"bot", "top"}, {{"bot", "half"}, {"half", "top"}}, OrderMode::covers);
  ASSERT_TRUE(v.report.ok) << v.report.witness;
  LUSpace s(*v.tuple);
  std::vector<std::string> names = s.space().names();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"(bot,bot)", "(bot,top)", "(half,top)", "(top,top)"}));

  v = validate_tuple({"bot", "m", "top"}, {"bot", "x", "y", "top"},
                     {{"bot", "m"}, {"m", "x"}, {"m", "y"}, {"x", "top"}, {"y", "top"}}, OrderMode::covers);
  EXPECT_FALSE(v.report.ok);
  EXPECT_EQ(v.report.clause, 5);
  EXPECT_NE(v.report.witness.find("a = m"), std::string::npos);
  EXPECT_FALSE(v.tuple.has_value());

  v = validate_tuple({"a", "b"}, {"a", "b"}, {}, OrderMode::covers);
  EXPECT_EQ(v.report.clause, 1);
}

TEST(ValidateTuple, AgreesWithSubsetOracle) {
  std::size_t valid = 0, checked = 0;
  for_each_tuple(4, [&](const ApproximationTuple& t) {
    const int want = tuple_oracle(t);
    const auto got = check_tuple(t);
    ASSERT_EQ(got.ok ? 0 : got.clause, want) << describe(t.order);
    valid += want == 0;
    ++checked;
  });
  EXPECT_GT(valid, 0u);
  EXPECT_GT(checked, valid);
}

TEST(LUSpace, BooleanSpace) {
  LUSpace s = boolean_lu_space();
  const Poset& p = s.space();
  ASSERT_EQ(p.size(), 3u);
  const Element ft = *p.find("(f,t)");
  EXPECT_EQ(bottom(p), ft);
  EXPECT_TRUE(p.leq(ft, *p.find("(t,t)")));
  EXPECT_TRUE(p.leq(ft, *p.find("(f,f)")));
  EXPECT_FALSE(p.comparable(*p.find("(t,t)"), *p.find("(f,f)")));
  EXPECT_FALSE(p.find("(t,f)").has_value());
  EXPECT_TRUE(check_precision_order(s.pairs()));

  const Element chain[2] = {ft, *p.find("(t,t)")};
  EXPECT_EQ(chain_sup(s, chain), *p.find("(t,t)"));
  const Element single[1] = {*p.find("(f,f)")};
  EXPECT_EQ(chain_sup(s, single), single[0]);
  EXPECT_EQ(chain_sup(s, {}), ft);
  const Element anti[2] = {*p.find("(f,f)"), *p.find("(t,t)")};
  EXPECT_EQ(code_of([&] { chain_sup(s, anti); }), Errc::not_a_chain);
}

TEST(LUSpace, OnePoint) {
  Bits one(1);
  one.set();
  EXPECT_EQ(LUSpace(ApproximationTuple{chain(1), one, one}).space().size(), 1u);
}

TEST(LUSpace, CpoAndChainSupOnAllSmallTuples) {
  for_each_tuple(4, [&](const ApproximationTuple& t) {
    if (!check_tuple(t).ok) {
      EXPECT_EQ(code_of([&] { LUSpace{t}; }), Errc::invalid_input);
      return;
    }
    LUSpace s(t);
    const Poset& p = s.space();
    ASSERT_TRUE(oracle::classify(p).is_cpo);
    ASSERT_TRUE(check_precision_order(s.pairs()));
    const std::size_t n = p.size();
    ASSERT_LE(n, 16u);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      auto c = oracle::members(m, n);
      if (!oracle::is_chain(p, c)) continue;
      const Element sup = chain_sup(s, c);
      ASSERT_EQ(sup, *oracle::lub(p, c));
      if (!c.empty()) ASSERT_NE(std::find(c.begin(), c.end(), sup), c.end());
    }
  });
}

TEST(LUExponential, BooleanWithBoolean) {
  LUSpace b = boolean_lu_space();
  LUExponential e = lu_exponential(b, b);
  EXPECT_EQ(e.space.space().size(), 11u);
  EXPECT_EQ(e.maps.poset().size(), 11u);
  EXPECT_TRUE(check_tuple(e.tuple).ok);
  EXPECT_EQ(tuple_oracle(e.tuple), 0);
  EXPECT_TRUE(find_isomorphism(e.space.space(), e.maps.poset()).has_value());
  EXPECT_EQ(e.nu.forward.source().size(), 11u);

  // L_C: monotone maps into {f<t}; U_C: antitone ones
  EXPECT_EQ(of(e.tuple.lower).size(), oracle::monotone_maps(b.space(), truth_poset()).size());
  EXPECT_EQ(of(e.tuple.upper).size(), oracle::monotone_maps(b.space(), opposite(truth_poset())).size());

  // the identity goes to (p1, p2)
  std::vector<Element> id{0, 1, 2};
  const Element img = e.nu.forward(*e.maps.find(id));
  const Poset& c = e.tuple.order;
  EXPECT_EQ(c.name(e.space.p1(img)), "{(f,f)->f, (f,t)->f, (t,t)->t}");
  EXPECT_EQ(c.name(e.space.p2(img)), "{(f,f)->f, (f,t)->t, (t,t)->t}");
}

TEST(LUExponential, OnePointSourceIsCopyOfTarget) {
  Bits one(1);
  one.set();
  LUSpace a(ApproximationTuple{chain(1), one, one});
  LUSpace b = boolean_lu_space();
  LUExponential e = lu_exponential(a, b);
  EXPECT_TRUE(find_isomorphism(e.space.space(), b.space()).has_value());
}

TEST(LUExponential, SmallTuplesSatisfyAllClauses) {
  std::vector<LUSpace> spaces;
  for_each_tuple(3, [&](const ApproximationTuple& t) {
    if (check_tuple(t).ok) spaces.emplace_back(t);
  });
  ASSERT_GT(spaces.size(), 3u);
  for (const auto& a : spaces)
    for (const auto& b : spaces) {
      LUExponential e = lu_exponential(a, b);
      ASSERT_TRUE(check_tuple(e.tuple).ok);
      if (e.tuple.order.size() <= 10) ASSERT_EQ(tuple_oracle(e.tuple), 0);
      ASSERT_EQ(e.space.space().size(), oracle::monotone_maps(a.space(), b.space()).size());
    }
}
