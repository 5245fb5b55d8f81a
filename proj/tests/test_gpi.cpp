#include <gtest/gtest.h>

#include <random>

#include "utgrad/error.hpp"
#include "utgrad/gpi.hpp"

using namespace utgrad;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec Q = FieldSpec::rational();
const AbelianGroup C2 = AbelianGroup::cyclic(2);
const GroupElement ONE{{0}};
const GroupElement U{{1}};

UTMatrix e(FieldSpec f, int n, int i, int j) { return UTMatrix::unit(f, n, i - 1, j - 1); }

LieTerm x(int i, GroupElement d) { return LieTerm::var({i, {std::move(d)}}); }

std::vector<int> identity_perm(int size) {
  std::vector<int> s(size);
  for (int i = 0; i < size; ++i) s[i] = i;
  return s;
}

/// All single-monomial polynomials the separator search may produce for these descriptors.
std::vector<GradedLiePolynomial> family(const GradingDescriptor& d) {
  std::vector<GradedLiePolynomial> out;
  auto sigma = identity_perm(d.n - 1);
  do {
    out.push_back(make_xi(d.group, d.eta, sigma));
    if (d.g) {
      out.push_back(make_xi_prime(d.group, *d.g, d.eta, sigma, XiPrimeVariant::summed));
      out.push_back(make_xi_prime(d.group, *d.g, d.eta, sigma, XiPrimeVariant::half_summed));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

Vector random_in(const GradedSpace& s, const GradedVariable& v, std::mt19937_64& rng) {
  Vector out = s.zero();
  for (const auto& d : v.degrees) {
    auto it = s.bases.find(d);
    if (it == s.bases.end()) continue;
    for (const auto& b : it->second) axpy(out, random_scalar(s.field, rng), b);
  }
  return out;
}

}  // namespace

TEST(MakeXi, Examples) {
  EXPECT_EQ(make_xi(C2, {U}, {0}).to_string(), "[x1^(0), x2^(1)]");
  const AbelianGroup c3 = AbelianGroup::cyclic(3);
  const GroupElement a{{1}}, b{{2}};
  EXPECT_EQ(make_xi(c3, {a, b}, {1, 0}).to_string(), "[[x3^(0), x4^(2)], [x1^(0), x2^(1)]]");
  EXPECT_THROW(make_xi(c3, {a, b}, {0, 0}), InputError);
}

TEST(MakeXi, PrimeVariants) {
  EXPECT_EQ(make_xi_prime(C2, U, {ONE, ONE, ONE}, {0, 1, 2}, XiPrimeVariant::half_summed).to_string(),
            "[[[x1^(0), x2^(0)+x2^(1)], [x3^(0), x4^(0)]], [x5^(0), x6^(0)+x6^(1)]]");
  EXPECT_EQ(make_xi_prime(C2, U, {U, U}, {0, 1}, XiPrimeVariant::summed).to_string(),
            "[[x1^(0)+x1^(1), x2^(1)+x2^(0)], [x3^(0)+x3^(1), x4^(1)+x4^(0)]]");
  EXPECT_EQ(adpower(3, U, ONE).to_string(), "ad(x1^(1))^3 x2^(0)");
}

TEST(Polynomial, Validation) {
  EXPECT_THROW(multilinear({{1, LieTerm::bracket(x(1, ONE), x(1, ONE))}}), InputError);
  EXPECT_THROW(multilinear({{1, LieTerm::bracket(x(1, ONE), x(2, ONE))}, {1, LieTerm::bracket(x(1, ONE), x(3, ONE))}}),
               InputError);
  EXPECT_THROW(multilinear({}), InputError);
}

TEST(HoldsMultilinear, TrivialGradingIsNotAbelian) {
  std::map<GroupElement, Subspace> m{{ONE, Subspace::whole(Q, 3)}};
  Grading g(2, Q, C2, m);
  auto p = multilinear({{1, LieTerm::bracket(x(1, ONE), x(2, ONE))}});
  auto r = holds_multilinear(p, g);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(UTMatrix(Q, 2, r.witness.at(1)), e(Q, 2, 1, 1));
  EXPECT_EQ(UTMatrix(Q, 2, r.witness.at(2)), e(Q, 2, 1, 2));
  EXPECT_FALSE(is_zero_vector(evaluate(p, graded_space(g), r.witness)));
}

TEST(HoldsMultilinear, Combinations) {
  auto g = build(elementary(C2, ONE, {U, ONE}), Q);
  auto a = LieTerm::bracket(x(1, ONE), x(2, U));
  auto b = LieTerm::bracket(x(2, U), x(1, ONE));
  EXPECT_TRUE(holds_multilinear(multilinear({{1, a}, {1, b}}), g).holds);
  EXPECT_FALSE(holds_multilinear(multilinear({{1, a}, {-1, b}}), g).holds);
  auto g2 = build(elementary(C2, ONE, {U, ONE}), F2);
  EXPECT_TRUE(holds_multilinear(multilinear({{1, a}, {-1, b}}), g2).holds);
  EXPECT_TRUE(holds_multilinear(multilinear({{2, a}}), g2).holds);
  // A variable whose component is zero makes every monomial vanish.
  auto g3 = build(elementary(C2, ONE, {ONE, ONE}), Q);
  EXPECT_TRUE(holds_multilinear(multilinear({{1, a}}), g3).holds);
  EXPECT_THROW(holds_multilinear(adpower(2, U, U), g3), InputError);
}

TEST(HoldsMultilinear, SpanMethodMatchesBruteForce) {
  std::mt19937_64 rng(23);
  const AbelianGroup c4 = AbelianGroup::cyclic(4);
  const auto els = c4.elements();
  for (auto f : {F2, F3, Q}) {
    for (int n = 2; n <= 4; ++n) {
      for (int k = 0; k < 3; ++k) {
        auto d = (n >= 3 && f != F2 && k % 2) ? type2(c4, els[rng() % 4], GroupElement{{2}}, random_eta(n, els, true, rng))
                                              : elementary(c4, els[rng() % 4], random_eta(n, els, false, rng));
        auto other = d.g ? type2(c4, d.t, *d.g, random_eta(n, els, true, rng))
                         : elementary(c4, d.t, random_eta(n, els, false, rng));
        auto space = graded_space(transport(random_automorphism(n, f, rng), build(d, f)));
        for (const auto& p : family(other)) {
          auto fast = holds_multilinear(p, space);
          auto slow = holds_multilinear_bruteforce(p, space);
          ASSERT_EQ(fast.holds, slow.holds) << p.to_string();
          if (!fast.holds) EXPECT_FALSE(is_zero_vector(evaluate(p, space, fast.witness)));
        }
      }
    }
  }
}

TEST(HoldsMultilinear, RandomSubstitutionsAgree) {
  std::mt19937_64 rng(29);
  const auto els = C2.elements();
  for (auto f : {F3, Q}) {
    for (int n = 2; n <= 4; ++n) {
      auto d = elementary(C2, ONE, random_eta(n, els, false, rng));
      auto space = graded_space(build(d, f));
      for (const auto& p : family(elementary(C2, ONE, random_eta(n, els, false, rng)))) {
        const bool holds = holds_multilinear(p, space).holds;
        const auto vars = p.terms.front().second.variables();
        int nonzero = 0;
        for (int t = 0; t < 100; ++t) {
          std::map<int, Vector> a;
          for (const auto& v : vars) a.emplace(v.index, random_in(space, v, rng));
          if (!is_zero_vector(evaluate(p, space, a))) ++nonzero;
        }
        if (holds) EXPECT_EQ(nonzero, 0) << p.to_string();
        if (!holds && f == Q) EXPECT_GT(nonzero, 0) << p.to_string();
      }
    }
  }
}

TEST(HoldsMultilinear, CentralQuotientInvariance) {
  std::mt19937_64 rng(31);
  const AbelianGroup c4 = AbelianGroup::cyclic(4);
  const auto els = c4.elements();
  for (int n = 2; n <= 4; ++n) {
    for (int k = 0; k < 4; ++k) {
      auto d = (n >= 3 && k % 2) ? type2(c4, els[rng() % 4], GroupElement{{2}}, random_eta(n, els, true, rng))
                                 : elementary(c4, els[rng() % 4], random_eta(n, els, false, rng));
      auto g = build(d, F3);
      auto full = graded_space(g);
      auto quot = quotient_grading(g, center(F3, n)).space();
      for (const auto& p : family(d)) EXPECT_EQ(holds_multilinear(p, full).holds, holds_multilinear(p, quot).holds);
    }
  }
}

TEST(HoldsAdpower, Examples) {
  for (auto f : {F3, Q}) {
    auto el = build(elementary(C2, U, {U, ONE, U}), f);
    EXPECT_TRUE(holds_adpower(U, el).identity_for_all_h);
    auto t2 = build(type2(C2, ONE, U, {ONE, ONE}), f);
    auto r = holds_adpower(U, t2);
    ASSERT_FALSE(r.identity_for_all_h);
    EXPECT_EQ(*r.x, e(f, 3, 1, 1) + e(f, 3, 3, 3));
    UTMatrix y = *r.y;
    for (int k = 0; k < 3; ++k) y = bracket(*r.x, y);
    EXPECT_FALSE(y.is_zero());
    EXPECT_TRUE(t2.component(*r.h).contains(r.y->coords()));
  }
  const AbelianGroup v4({2, 2});
  const GroupElement a{{0, 1}}, b{{1, 0}}, one{{0, 0}};
  auto t2 = build(type2(v4, one, b, {one, one}), Q);
  EXPECT_TRUE(holds_adpower(a, t2).identity_for_all_h);
  EXPECT_FALSE(holds_adpower(b, t2).identity_for_all_h);
}

TEST(FindSeparator, Examples) {
  for (auto f : {F3, Q}) {
    auto a = elementary(C2, ONE, {ONE, U}), b = elementary(C2, ONE, {U, U});
    auto s = find_separator(a, b, f);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->family, "xi");
    const bool ha = holds_multilinear_bruteforce(s->polynomial, graded_space(build(a, f))).holds;
    const bool hb = holds_multilinear_bruteforce(s->polynomial, graded_space(build(b, f))).holds;
    EXPECT_NE(ha, hb);
    EXPECT_EQ(ha, s->direction == Separator::Direction::holds_in_first);

    auto t = type2(C2, ONE, U, {ONE, ONE});
    s = find_separator(a, t, f);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->family, "f");
    EXPECT_EQ(s->direction, Separator::Direction::holds_in_first);

    EXPECT_FALSE(find_separator(a, a, f).has_value());
    EXPECT_FALSE(find_separator(a, elementary(C2, U, {U, ONE}), f).has_value());
  }
  EXPECT_THROW(find_separator(elementary(C2, ONE, {U}), elementary(C2, ONE, {U, U}), Q), MismatchError);
}

TEST(FindSeparator, MatchesPracticalIsomorphism) {
  const std::vector<AbelianGroup> groups{AbelianGroup::cyclic(2), AbelianGroup::cyclic(3), AbelianGroup::cyclic(4),
                                         AbelianGroup({2, 2})};
  for (auto f : {F2, F3}) {
    for (const auto& grp : groups) {
      for (int n = 2; n <= 4; ++n) {
        // t does not affect identities; one representative per practical class suffices plus a t-shift.
        std::vector<GradingDescriptor> ds;
        for (const auto& d : canonical_descriptors(n, grp, f.characteristic() == 2))
          if (grp.is_identity(d.t) || ds.size() < 3) ds.push_back(d);
        for (std::size_t i = 0; i < ds.size(); ++i) {
          for (std::size_t j = i; j < ds.size(); ++j) {
            auto s = search_separator(ds[i], ds[j], f);
            EXPECT_EQ(practically_isomorphic(ds[i], ds[j]), !s.has_value())
                << ds[i].to_string() << " vs " << ds[j].to_string() << " over " << f.name();
          }
        }
      }
    }
  }
}
