#include <gtest/gtest.h>

#include <random>
#include <set>

#include "utgrad/classify.hpp"
#include "utgrad/error.hpp"
#include "utgrad/oracle.hpp"

using namespace utgrad;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const AbelianGroup C2 = AbelianGroup::cyclic(2);
const AbelianGroup C3 = AbelianGroup::cyclic(3);
const GroupElement ONE{{0}};
const GroupElement U{{1}};

CensusConfig config(int n, FieldSpec f, AbelianGroup g, CensusMode m) {
  CensusConfig c;
  c.n = n;
  c.field = f;
  c.group = std::move(g);
  c.mode = m;
  return c;
}

/// Gaussian binomial [d choose k]_q summed over k.
std::uint64_t subspace_count(std::uint64_t q, int d) {
  std::uint64_t total = 0;
  for (int k = 0; k <= d; ++k) {
    std::uint64_t num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
      std::uint64_t qd = 1, qi = 1;
      for (int j = 0; j < d - i; ++j) qd *= q;
      for (int j = 0; j < i + 1; ++j) qi *= q;
      num *= qd - 1;
      den *= qi - 1;
    }
    total += num / den;
  }
  return total;
}

std::set<std::string> keys(const std::vector<Grading>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) {
    std::string k;
    for (const auto& [deg, s] : g.components()) {
      k += to_string(deg) + ":";
      for (const auto& v : s.basis())
        for (const auto& x : v) k += x.to_string() + ",";
      k += ";";
    }
    out.insert(k);
  }
  return out;
}

std::vector<Grading> collect(const CensusConfig& cfg) {
  std::vector<Grading> out;
  enumerate_gradings(cfg, [&](const Grading& g) { out.push_back(g); });
  return out;
}

}  // namespace

TEST(AllSubspaces, Counts) {
  EXPECT_EQ(all_subspaces(F3, 3).size(), 28u);
  EXPECT_EQ(all_subspaces(F2, 3).size(), 16u);
  for (auto [p, d] : {std::pair{2, 4}, {3, 2}, {5, 2}, {2, 1}})
    EXPECT_EQ(all_subspaces(FieldSpec::prime(p), d).size(), subspace_count(p, d));
  auto s = all_subspaces(F3, 3);
  std::set<std::string> distinct;
  for (const auto& w : s) {
    std::string k;
    for (const auto& v : w.basis())
      for (const auto& x : v) k += x.to_string();
    distinct.insert(std::to_string(w.dimension()) + k);
  }
  EXPECT_EQ(distinct.size(), s.size());
  EXPECT_THROW(all_subspaces(FieldSpec::rational(), 2), InputError);
}

TEST(Enumerate, FullAndPrunedAgree) {
  for (auto f : {F2, F3}) {
    for (const auto& grp : {C2, C3}) {
      auto full = collect(config(2, f, grp, CensusMode::full));
      auto pruned = collect(config(2, f, grp, CensusMode::pruned));
      EXPECT_EQ(full.size(), pruned.size()) << f.name() << " " << grp.name();
      EXPECT_EQ(keys(full), keys(pruned));
      for (const auto& g : pruned) EXPECT_TRUE(verify_grading(g).ok);
    }
  }
}

TEST(Enumerate, JobsDoNotChangeOrder) {
  auto cfg = config(3, F2, C2, CensusMode::pruned);
  auto one = collect(cfg);
  cfg.jobs = 3;
  auto many = collect(cfg);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i], many[i]);
}

TEST(Enumerate, BudgetAndInputErrors) {
  auto cfg = config(3, F2, C2, CensusMode::pruned);
  cfg.budget = 50;
  try {
    collect(cfg);
    FAIL() << "budget not enforced";
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.watermark(), 50u);
  }
  EXPECT_THROW(collect(config(2, FieldSpec::rational(), C2, CensusMode::full)), InputError);
  EXPECT_THROW(collect(config(2, F2, AbelianGroup({2}, 1), CensusMode::full)), InputError);
  EXPECT_THROW(collect(config(2, F2, C2, CensusMode::sampled)), InputError);
}

TEST(Search, Examples) {
  auto a = build(elementary(C2, ONE, {ONE, U}), F3);
  auto b = build(elementary(C2, ONE, {U, ONE}), F3);
  auto autos = automorphism_list(3, F3);
  EXPECT_EQ(autos.size(), 3888u);
  auto f = graded_isomorphic_search(a, b, autos);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(transport(*f, a), b);
  EXPECT_FALSE(graded_isomorphic_search(a, build(elementary(C2, ONE, {U, U}), F3), autos));
  // t differs: not graded isomorphic, but practically isomorphic.
  auto c = build(elementary(C2, U, {ONE, U}), F3);
  EXPECT_FALSE(graded_isomorphic_search(a, c, autos));
  EXPECT_TRUE(practical_isomorphic_search(a, c, autos));
  EXPECT_FALSE(practical_isomorphic_search(a, build(type2(C2, ONE, U, {ONE, ONE}), F3), autos));
  EXPECT_THROW(graded_isomorphic_search(a, build(elementary(C2, ONE, {U}), F3)), MismatchError);
}

TEST(Search, StabilizerMatchesOrbit) {
  auto autos = automorphism_list(2, F3);
  EXPECT_EQ(autos.size(), 36u);
  EXPECT_EQ(automorphism_list(2, F2).size(), 4u);
  std::uint64_t orbit_sum = 0;
  for (const auto& d : canonical_descriptors(2, C2, false))
    orbit_sum += autos.size() / stabilizer_size(build(d, F3), autos);
  EXPECT_EQ(orbit_sum, collect(config(2, F3, C2, CensusMode::full)).size());
}

TEST(Census, TwoByTwoF2) {
  auto r = census(config(2, F2, C2, CensusMode::full));
  EXPECT_TRUE(r.ok()) << r.report();
  EXPECT_EQ(r.classes.size(), 4u);
  EXPECT_EQ(r.practical_classes, 2u);
}

TEST(Census, TwoByTwoF3) {
  auto r = census(config(2, F3, C2, CensusMode::full));
  EXPECT_TRUE(r.ok()) << r.report();
  EXPECT_EQ(r.classes.size(), 4u);
  EXPECT_EQ(r.practical_classes, 2u);
}

TEST(Census, TwoByTwoCyclicThree) {
  for (auto f : {F2, F3}) {
    auto r = census(config(2, f, C3, CensusMode::full));
    EXPECT_TRUE(r.ok()) << r.report();
    auto want = count_classes(2, C3, f.characteristic() == 2);
    EXPECT_EQ(r.classes.size(), want.graded);
    EXPECT_EQ(r.practical_classes, want.practical);
  }
}

TEST(Census, ThreeByThreeF2) {
  auto r = census(config(3, F2, C2, CensusMode::pruned));
  EXPECT_TRUE(r.ok()) << r.report();
  EXPECT_EQ(r.classes.size(), 6u);
  EXPECT_EQ(r.practical_classes, 3u);
  EXPECT_EQ(r.type2_classes(), 0u);
  std::uint64_t found = 0;
  for (const auto& c : r.classes) found += c.found;
  EXPECT_EQ(found, r.total_gradings);
}

TEST(Census, ThreeByThreeF3Sampled) {
  auto cfg = config(3, F3, C2, CensusMode::sampled);
  cfg.twists = 5;
  auto r = census(cfg);
  EXPECT_TRUE(r.ok()) << r.report();
  EXPECT_EQ(r.automorphisms, 3888u);
  EXPECT_EQ(r.classes.size(), 8u);
  EXPECT_EQ(r.elementary_classes(), 6u);
  EXPECT_EQ(r.type2_classes(), 2u);
  EXPECT_EQ(r.practical_classes, 4u);
}

TEST(Census, ReportIsDeterministic) {
  auto a = census(config(2, F2, C2, CensusMode::full)).report();
  auto b = census(config(2, F2, C2, CensusMode::full)).report();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("graded classes: 4"), std::string::npos);
}

TEST(Census, ThreeByThreeF3PrunedMatchesSampled) {
  auto pruned = census(config(3, F3, C2, CensusMode::pruned));
  EXPECT_TRUE(pruned.ok()) << pruned.report();
  auto cfg = config(3, F3, C2, CensusMode::sampled);
  cfg.twists = 1;
  auto sampled = census(cfg);
  EXPECT_EQ(pruned.total_gradings, sampled.total_gradings);
  EXPECT_EQ(pruned.classes.size(), 8u);
}

TEST(Search, SpecExamples) {
  auto autos2 = automorphism_list(2, F2);
  EXPECT_FALSE(graded_isomorphic_search(build(elementary(C2, ONE, {U}), F2), build(elementary(C2, U, {U}), F2), autos2));
  auto autos = automorphism_list(3, F3);
  auto a = build(type2(C2, U, U, {ONE, ONE}), F3);
  auto b = build(type2(C2, U, U, {U, U}), F3);
  auto f = graded_isomorphic_search(a, b, autos);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(transport(*f, a), b);
  auto self = graded_isomorphic_search(a, a, autos);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(transport(*self, a), a);
  EXPECT_TRUE(practical_isomorphic_search(a, a, autos));
  EXPECT_FALSE(practical_isomorphic_search(build(elementary(C2, ONE, {U, ONE}), F3), a, autos));
}

TEST(Search, RandomTransportIsFound) {
  std::mt19937_64 rng(41);
  auto autos = automorphism_list(3, F3);
  for (int k = 0; k < 20; ++k) {
    auto d = canonical_descriptors(3, C2, false)[rng() % 8];
    auto g = build(d, F3);
    auto h = transport(random_automorphism(3, F3, rng), g);
    auto f = graded_isomorphic_search(g, h, autos);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(transport(*f, g), h);
  }
}

TEST(Search, AgreesWithDescriptorPredicates) {
  for (auto f : {F2, F3}) {
    auto cfg = config(3, f, C2, CensusMode::pruned);
    auto all = collect(cfg);
    auto autos = automorphism_list(3, f);
    std::mt19937_64 rng(43);
    for (int k = 0; k < 60; ++k) {
      const auto& a = all[rng() % all.size()];
      const auto& b = all[rng() % all.size()];
      auto da = classify(a).descriptor, db = classify(b).descriptor;
      EXPECT_EQ(graded_isomorphic_search(a, b, autos).has_value(), graded_isomorphic(da, db));
      EXPECT_EQ(practical_isomorphic_search(a, b, autos).has_value(), practically_isomorphic(da, db));
    }
  }
}
