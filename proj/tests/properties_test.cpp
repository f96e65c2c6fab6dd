// Copyright 2026 The scfv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scfv/properties.hpp"

#include <optional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"

namespace scfv {
namespace {

using testing::A;
using testing::B;
using testing::C;
using testing::order;
using testing::profile;

using namespace oracle;

DomainPtr weak3(std::size_t n) {
  return testing::uniform(3, n, testing::share(FeasibleSet::universal_weak(3)));
}

DomainPtr strict3(std::size_t n) {
  return testing::uniform(3, n, testing::share(FeasibleSet::universal_strict(3)));
}

Scf random_table(const DomainPtr& d, std::size_t range, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, range - 1);
  std::vector<Alternative> table(*d->profile_count());
  for (auto& x : table) x = alternative(pick(rng));
  return Scf::from_table(d, std::move(table));
}

// Tables biased toward strategy-proofness: mostly one voter's top.
Scf near_dictator_table(const DomainPtr& d, std::mt19937_64& rng) {
  const auto base = tabulate(builtin(d, {.name = "dictator-tiebreak"}));
  std::vector<Alternative> table = base.table();
  std::uniform_int_distribution<std::size_t> where(0, table.size() - 1), what(0, d->k() - 1);
  const std::size_t flips = rng() % 3;
  for (std::size_t i = 0; i < flips; ++i) table[where(rng)] = alternative(what(rng));
  return Scf::from_table(d, std::move(table));
}

void expect_matches_oracles(const Scf& f) {
  const auto isp = check_isp(f);
  const auto gsp = check_gsp(f);
  const auto rev = check_reversal(f);
  const auto dict = check_dictator(f);

  const auto isp_hit = isp_oracle(f);
  EXPECT_EQ(isp.holds, !isp_hit.has_value());
  if (isp_hit) {
    const auto& w = std::get<ManipulationWitness>(isp.witness);
    EXPECT_EQ(w.truthful, isp_hit->p);
    EXPECT_EQ(w.coalition, std::vector<std::size_t>{isp_hit->voter});
    EXPECT_EQ(w.deviation.front(), isp_hit->deviation);
  }

  const bool gsp_norm = gsp_oracle_normalized(f);
  EXPECT_EQ(gsp.holds, gsp_norm);

  const auto pr_hit = reversal_oracle(f, Reversal::kPr);
  EXPECT_EQ(rev.pr.holds, !pr_hit.has_value());
  if (pr_hit) {
    const auto& w = std::get<PrViolation>(rev.pr.witness);
    EXPECT_EQ(w.p, pr_hit->first);
    EXPECT_EQ(w.q, pr_hit->second);
  }
  const auto apr_hit = reversal_oracle(f, Reversal::kApr);
  EXPECT_EQ(rev.apr.holds, !apr_hit.has_value());
  if (apr_hit) {
    const auto& w = std::get<PrViolation>(rev.apr.witness);
    EXPECT_EQ(w.p, apr_hit->first);
    EXPECT_EQ(w.q, apr_hit->second);
  }

  const auto d = dictator_oracle(f);
  EXPECT_EQ(dict.holds, d.has_value());
  if (d) {
    EXPECT_EQ(std::get<DictatorEvidence>(dict.witness).dictator, d);
  }

  for (const auto* r : {&isp, &gsp, &rev.pr, &rev.apr, &dict}) {
    EXPECT_TRUE(validate_report(f, *r)) << property_name(r->property);
    if (!r->holds) {
      EXPECT_FALSE(std::holds_alternative<std::monostate>(r->witness));
    }
  }

  // Implication chain.
  if (rev.pr.holds) {
    EXPECT_TRUE(rev.apr.holds);
  }
  EXPECT_EQ(rev.apr.holds, gsp.holds);
  if (gsp.holds) {
    EXPECT_TRUE(isp.holds);
  }
}

TEST(PropertyNamesTest, RoundTrip) {
  for (auto p : {Property::kIsp, Property::kGsp, Property::kPr, Property::kApr, Property::kDictator})
    EXPECT_EQ(parse_property(property_name(p)), p);
  EXPECT_THROW(parse_property("nope"), ArgumentError);
}

TEST(CheckersTest, ConstantHoldsEverything) {
  const auto f = builtin(weak3(2), {.name = "constant", .constant = B});
  EXPECT_TRUE(check_isp(f).holds);
  EXPECT_TRUE(check_gsp(f).holds);
  EXPECT_TRUE(check_pr(f).holds);
  EXPECT_TRUE(check_apr(f).holds);
  EXPECT_EQ(check_isp(f).checked, 169u * 24u);
  EXPECT_EQ(check_pr(f).checked, 169u * 168u);
}

TEST(CheckersTest, ConstantIsNotDictatorialOnStrictDomain) {
  const auto f = builtin(strict3(2), {.name = "constant", .constant = C});
  const auto r = check_dictator(f);
  EXPECT_FALSE(r.holds);
  const auto& e = std::get<DictatorEvidence>(r.witness);
  ASSERT_EQ(e.counter_profiles.size(), 2u);
  for (const auto& c : e.counter_profiles) {
    EXPECT_EQ(c.outcome, C);
    EXPECT_NE(c.profile[c.voter].rank(C), 0u);
  }
  EXPECT_TRUE(validate_report(f, r));
}

TEST(CheckersTest, DictatorTiebreakIsStrategyProof) {
  const auto f = builtin(weak3(2), {.name = "dictator-tiebreak", .voter = 1});
  EXPECT_TRUE(check_isp(f).holds);
  EXPECT_TRUE(check_gsp(f).holds);
  EXPECT_TRUE(check_pr(f).holds);
  const auto d = check_dictator(f);
  EXPECT_TRUE(d.holds);
  EXPECT_EQ(std::get<DictatorEvidence>(d.witness).dictator, 1u);
}

TEST(CheckersTest, PluralityIsManipulableByACoalition) {
  const auto f = builtin(strict3(3), {.name = "plurality-tiebreak"});
  const auto gsp = check_gsp(f);
  EXPECT_FALSE(gsp.holds);
  EXPECT_TRUE(validate_report(f, gsp));
  EXPECT_FALSE(gsp_oracle_unrestricted(f));
  EXPECT_FALSE(check_isp(f).holds);
}

TEST(CheckersTest, InverseTiebreakRule) {
  const auto f = builtin(weak3(2), {.name = "dictator-inverse-tiebreak"});
  const auto isp = check_isp(f);
  EXPECT_FALSE(isp.holds);
  EXPECT_TRUE(validate_report(f, isp));
  EXPECT_FALSE(check_pr(f).holds);
  const auto d = check_dictator(f);
  EXPECT_TRUE(d.holds);
  EXPECT_EQ(std::get<DictatorEvidence>(d.witness).dictator, 0u);
}

TEST(CheckersTest, InverseTiebreakManipulationPattern) {
  // P1 = a~b>c, P2 with b above a, voter 2 reports the inverse of P2.
  const auto f = builtin(weak3(2), {.name = "dictator-inverse-tiebreak"});
  const auto p1 = order("a~b>c");
  CheckOptions opt;
  opt.accept_isp = [&](const Profile& truthful, std::size_t voter, const WeakOrder& dev) {
    return truthful[0] == p1 && voter == 1 && truthful[1].strictly_prefers(B, A) &&
           dev == truthful[1].inverted();
  };
  const auto r = check_isp(f, opt);
  ASSERT_FALSE(r.holds);
  const auto& w = std::get<ManipulationWitness>(r.witness);
  EXPECT_EQ(w.truthful[0], p1);
  EXPECT_EQ(w.coalition, std::vector<std::size_t>{1});
  EXPECT_EQ(w.deviation[0], w.truthful[1].inverted());
  EXPECT_EQ(w.outcome_true, A);
  EXPECT_EQ(w.outcome_dev, B);
  EXPECT_TRUE(validate_manipulation(f, w));

  // The concrete instance worked out by hand.
  EXPECT_EQ(f.evaluate(profile({"a~b>c", "b>a>c"})), A);
  EXPECT_EQ(f.evaluate(profile({"a~b>c", "c>a>b"})), B);
}

TEST(CheckersTest, NormalizedGspMatchesUnrestrictedSearch) {
  std::mt19937_64 rng(11);
  const auto d = testing::per_voter(
      3, {testing::listed({"a>b>c", "b>c>a", "c~a>b"}), testing::listed({"a>b>c", "c>b>a"}),
          testing::listed({"b>a>c", "a~b~c"})});
  std::size_t violated = 0;
  for (int s = 0; s < 60; ++s) {
    const auto f = s % 2 ? random_table(d, 3, rng) : near_dictator_table(d, rng);
    const bool a = gsp_oracle_unrestricted(f);
    EXPECT_EQ(a, gsp_oracle_normalized(f));
    EXPECT_EQ(check_gsp(f).holds, a);
    violated += !a;
  }
  EXPECT_GT(violated, 0u);
}

TEST(CheckersTest, RandomTablesMatchOracles) {
  std::mt19937_64 rng(3);
  const auto two = testing::per_voter(3, {testing::listed({"a>b>c", "b>a>c", "a~b>c"}),
                                          testing::listed({"c>a>b", "a>b>c", "b~c>a"})});
  for (int s = 0; s < 80; ++s) expect_matches_oracles(random_table(two, 3, rng));
  for (int s = 0; s < 40; ++s) expect_matches_oracles(near_dictator_table(two, rng));
  const auto three = testing::uniform(3, 3, testing::listed({"a>b>c", "c>b>a"}));
  for (int s = 0; s < 40; ++s) expect_matches_oracles(random_table(three, 2, rng));
  for (int s = 0; s < 40; ++s) expect_matches_oracles(near_dictator_table(three, rng));
}

TEST(CheckersTest, BuiltinsMatchOracles) {
  expect_matches_oracles(builtin(weak3(2), {.name = "dictator-inverse-tiebreak"}));
  expect_matches_oracles(builtin(strict3(2), {.name = "plurality-tiebreak"}));
  expect_matches_oracles(builtin(weak3(2), {.name = "dictator-tiebreak", .voter = 1}));
  const auto sp = testing::uniform(4, 2, testing::share(FeasibleSet::single_peaked(Axis::identity(4), true)));
  expect_matches_oracles(builtin(sp, {.name = "median-peaks"}));
}

TEST(CheckersTest, WitnessesAreScheduleIndependent) {
  std::mt19937_64 rng(5);
  const auto d = weak3(2);
  for (int s = 0; s < 10; ++s) {
    const auto f = s == 0 ? builtin(weak3(2), {.name = "dictator-inverse-tiebreak"})
                          : near_dictator_table(d, rng);
    CheckOptions serial, parallel;
    parallel.workers = 4;
    for (auto prop : {Property::kIsp, Property::kGsp, Property::kPr, Property::kApr, Property::kDictator}) {
      const auto a = check_property(f, prop, serial);
      const auto b = check_property(f, prop, parallel);
      EXPECT_EQ(a.holds, b.holds);
      EXPECT_EQ(a.checked, b.checked);
      EXPECT_EQ(a.witness.index(), b.witness.index());
      if (const auto* m = std::get_if<ManipulationWitness>(&a.witness)) {
        const auto& m2 = std::get<ManipulationWitness>(b.witness);
        EXPECT_EQ(m->truthful, m2.truthful);
        EXPECT_EQ(m->coalition, m2.coalition);
        EXPECT_EQ(m->deviation, m2.deviation);
      }
      if (const auto* v = std::get_if<PrViolation>(&a.witness)) {
        const auto& v2 = std::get<PrViolation>(b.witness);
        EXPECT_EQ(v->p, v2.p);
        EXPECT_EQ(v->q, v2.q);
      }
    }
  }
}

TEST(ValidatorsTest, RejectForgedWitnesses) {
  const auto f = builtin(weak3(2), {.name = "dictator-tiebreak"});
  ManipulationWitness forged{{1}, profile({"a>b>c", "c>b>a"}), {order("b>a>c")}, A, C};
  EXPECT_FALSE(validate_manipulation(f, forged));
  PrViolation fake{ReversalKind::kPr, profile({"a>b>c", "a>b>c"}), profile({"b>a>c", "a>b>c"}), A, B, {}};
  EXPECT_FALSE(validate_violation(f, fake));
  EXPECT_FALSE(validate_dictator(f, DictatorEvidence{1, {}}));
  EXPECT_TRUE(validate_dictator(f, DictatorEvidence{0, {}}));
}

TEST(CheckersTest, GuardIsEnforced) {
  const auto f = builtin(weak3(3), {.name = "constant", .constant = A});
  CheckOptions opt;
  opt.guard = 100;
  EXPECT_THROW(check_isp(f, opt), ResourceError);
}

}  // namespace
}  // namespace scfv
