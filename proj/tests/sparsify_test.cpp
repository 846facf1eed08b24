#include "fixtures.hpp"

#include "sparsecsp/error.hpp"
#include "sparsecsp/sparsify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace sparsecsp;

namespace {

PlanRequest request(ModelKind kind, int n, std::uint64_t m, Rational eps, bool complete) {
  PlanRequest req;
  req.kind = kind;
  req.n = n;
  req.m = m;
  req.total_weight = Rational(static_cast<std::int64_t>(m));
  req.eps = eps;
  req.complete = complete;
  return req;
}

std::uint64_t expected_samples(double kappa, int n, int exponent, int eps_power, double eps) {
  return static_cast<std::uint64_t>(
      std::ceil(kappa * std::pow(n, exponent) * std::log(n) / std::pow(eps, eps_power)));
}

} // namespace

TEST(Plan, RpartiteAndExample) {
  ClassificationReport rep = analyze(ValuedRelation::from_support(3, 2, {{0, 0, 0}, {0, 0, 1}}));
  SamplingPlan p = plan(rep, request(ModelKind::rpartite, 5, 125, Rational(1, 4), true));
  EXPECT_EQ(p.exponent, 2);
  EXPECT_EQ(p.eps_power, 3);
  EXPECT_EQ(p.recommended, expected_samples(8, 5, 2, 3, 0.25));
  EXPECT_EQ(p.mode, SamplerMode::keep_all);
  EXPECT_EQ(p.samples, 125u);

  p = plan(rep, request(ModelKind::rpartite, 20, 1000000, Rational(1, 2), true));
  EXPECT_EQ(p.mode, SamplerMode::iid);
  EXPECT_EQ(p.samples, expected_samples(8, 20, 2, 3, 0.5));
  EXPECT_EQ(p.weight * Rational(static_cast<std::int64_t>(p.samples)), Rational(1000000));
}

TEST(Plan, FullRelationKeepsOneConstraint) {
  ValuedRelation full = fixtures::full(3, 2);
  Instance inst = complete(ModelKind::uniform, 6, full);
  SamplingPlan p = plan(classify(full), plan_request_for(inst, Rational(1, 4), 8, true));
  EXPECT_EQ(p.mode, SamplerMode::single_constraint);
  EXPECT_EQ(p.weight, Rational(120));
  Instance one = apply_plan(p, inst, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.clauses()[0].weight, Rational(120));
}

TEST(Plan, CaseThreeThresholdsOnRandomInstances) {
  ClassificationReport rep = classify(fixtures::r2());
  const int n = 10;
  // n^(r-k+1) = 1000.
  SamplingPlan below = plan(rep, request(ModelKind::uniform, n, 25, Rational(1, 2), false));
  EXPECT_EQ(below.mode, SamplerMode::keep_all);
  EXPECT_TRUE(below.no_nontrivial);
  EXPECT_FALSE(below.indeterminate);

  SamplingPlan edge = plan(rep, request(ModelKind::uniform, n, 125, Rational(1, 2), false));
  EXPECT_TRUE(edge.no_nontrivial);

  SamplingPlan middle = plan(rep, request(ModelKind::uniform, n, 5000, Rational(1, 2), false));
  EXPECT_EQ(middle.mode, SamplerMode::keep_all);
  EXPECT_TRUE(middle.indeterminate);
  EXPECT_FALSE(middle.no_nontrivial);

  SamplingPlan above = plan(rep, request(ModelKind::uniform, n, 32000, Rational(1, 2), false));
  EXPECT_EQ(above.mode, SamplerMode::bundled);
  EXPECT_TRUE(above.whole_universe);
  EXPECT_EQ(above.samples, 210u);
  EXPECT_EQ(above.output_clauses, 5040u);
}

TEST(Plan, BundledSamplingAtLargeN) {
  ClassificationReport rep = classify(fixtures::r2());
  const std::uint64_t m = 100000000;
  SamplingPlan p = plan(rep, request(ModelKind::uniform, 100, m, Rational(1, 2), false));
  ASSERT_EQ(p.mode, SamplerMode::bundled);
  EXPECT_FALSE(p.whole_universe);
  EXPECT_EQ(p.samples, expected_samples(8, 100, 2, 3, 0.5));
  EXPECT_EQ(p.output_clauses, 24 * p.samples);
  EXPECT_EQ(p.weight * Rational(static_cast<std::int64_t>(p.output_clauses)),
            Rational(static_cast<std::int64_t>(m)));
}

TEST(Plan, Validation) {
  ClassificationReport rep = classify(fixtures::cut());
  EXPECT_THROW(plan(rep, request(ModelKind::uniform, 10, 90, Rational(0), true)),
               PreconditionError);
  EXPECT_THROW(plan(rep, request(ModelKind::uniform, 10, 90, Rational(1), true)),
               PreconditionError);
  ClassificationReport multi = analyze(ValuedRelation::from_support({2, 3}, {{0, 0}}));
  EXPECT_THROW(plan(multi, request(ModelKind::uniform, 10, 90, Rational(1, 4), true)),
               DomainError);
}

TEST(Plan, RecommendationIsMonotone) {
  std::vector<ValuedRelation> rels{fixtures::cut(), fixtures::r1(), fixtures::r2(),
                                   ValuedRelation::from_support(3, 2, {{0, 0, 0}, {1, 1, 1}})};
  std::vector<Rational> eps{Rational(1, 10), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                            Rational(9, 10)};
  for (const auto &rel : rels) {
    ClassificationReport rep = classify(rel);
    for (ModelKind kind : {ModelKind::uniform, ModelKind::rpartite})
      for (std::size_t e = 0; e < eps.size(); ++e) {
        std::uint64_t prev = 0;
        for (int n = 4; n <= 60; ++n) {
          SamplingPlan p = plan(rep, request(kind, n, 1000, eps[e], true));
          EXPECT_GE(p.recommended, prev);
          prev = p.recommended;
          if (e > 0) {
            SamplingPlan coarser = plan(rep, request(kind, n, 1000, eps[e - 1], true));
            EXPECT_LE(p.recommended, coarser.recommended);
          }
        }
      }
  }
}

TEST(IidSample, SingleDrawCarriesAllWeight) {
  Instance inst = complete(ModelKind::uniform, 5, 2);
  Instance one = iid_sample(inst, 1, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.clauses()[0].weight, Rational(20));
  EXPECT_EQ(iid_sample(inst, 7, 3), iid_sample(inst, 7, 3));
  EXPECT_THROW(iid_sample(inst, 0, 3), PreconditionError);
}

TEST(IidSample, WeightedClausesStayUnbiased) {
  Instance inst(ModelKind::uniform, 3, 2);
  inst.add({0, 1}, Rational(3));
  inst.add({1, 2}, Rational(1, 2));
  std::map<std::vector<int>, int> pick{{{0, 1}, 0}, {{1, 2}, 1}};
  Instance first = iid_sample_with(inst, 2, [](std::uint64_t, std::uint64_t) { return 0; });
  EXPECT_EQ(first.total_weight(), Rational(6));
  // Average over both clause choices of a one-draw sample equals the source.
  Rational mean = (iid_sample_with(inst, 1, [](auto, auto) { return 0; }).total_weight() +
                   iid_sample_with(inst, 1, [](auto, auto) { return 1; }).total_weight()) /
                  Rational(2);
  EXPECT_EQ(mean, inst.total_weight());
}

TEST(IidSample, MeanOverSeedsMatchesSource) {
  ValuedRelation rel = fixtures::cut();
  Instance inst = complete(ModelKind::uniform, 8, rel);
  const Assignment a{0, 1, 1, 0, 1, 0, 0, 0};
  const double truth = to_double(sat_value(rel, inst, a));
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed)
    sum += to_double(sat_value(rel, iid_sample(inst, 20, seed), a));
  EXPECT_LE(std::abs(sum / 200 - truth) / truth, 0.05);
}

TEST(BundledSample, MeanOverSeedsMatchesSource) {
  ValuedRelation rel = fixtures::r2();
  Instance inst = complete(ModelKind::uniform, 6, rel);
  const Assignment a{0, 0, 2, 2, 1, 2};
  const double truth = to_double(sat_value(rel, inst, a));
  ASSERT_GT(truth, 0);
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed)
    sum += to_double(sat_value(rel, bundled_sample(inst, 5, seed), a));
  EXPECT_LE(std::abs(sum / 200 - truth) / truth, 0.05);
}

namespace {

// Counts ordered w-tuples of universe clauses produced by drawing m clauses
// (all u^m outcomes) and then subsampling with every choice sequence of the
// given sampler.
std::map<std::vector<std::vector<int>>, std::uint64_t>
composed_counts(int n, int r, std::uint64_t m, std::uint64_t w, bool distinct) {
  const std::uint64_t u = universe_size(ModelKind::uniform, n, r);
  std::uint64_t outcomes = 1;
  for (std::uint64_t j = 0; j < m; ++j)
    outcomes *= u;
  std::vector<std::uint64_t> bounds;
  std::uint64_t choices = 1;
  for (std::uint64_t j = 0; j < w; ++j) {
    bounds.push_back(distinct ? m - j : m);
    choices *= bounds.back();
  }
  std::map<std::vector<std::vector<int>>, std::uint64_t> counts;
  for (std::uint64_t draws = 0; draws < outcomes; ++draws) {
    Instance inst(ModelKind::uniform, n, r);
    std::uint64_t rest = draws;
    for (std::uint64_t j = 0; j < m; ++j, rest /= u)
      inst.add(decode_clause(ModelKind::uniform, n, r, rest % u));
    for (std::uint64_t pick = 0; pick < choices; ++pick) {
      std::vector<std::uint64_t> digits;
      std::uint64_t p = pick;
      for (std::uint64_t b : bounds) {
        digits.push_back(p % b);
        p /= b;
      }
      auto source = [&](std::uint64_t j, std::uint64_t) { return digits[j]; };
      Instance s = distinct ? subsample_with(inst, w, source) : iid_sample_with(inst, w, source);
      std::vector<std::vector<int>> key;
      for (const auto &c : s.clauses()) {
        key.push_back(c.vars);
        EXPECT_EQ(c.weight, Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(w)));
      }
      ++counts[key];
    }
  }
  return counts;
}

} // namespace

// Drawing m clauses and keeping w distinct positions gives every ordered
// w-tuple of universe clauses the same probability as drawing w directly.
TEST(Subsample, ComposesExactlyWithDirectDraws) {
  const int n = 3, r = 2;
  const std::uint64_t u = universe_size(ModelKind::uniform, n, r);
  auto counts = composed_counts(n, r, 3, 2, true);
  ASSERT_EQ(counts.size(), u * u);
  std::uint64_t total = 0;
  for (const auto &[key, count] : counts)
    total += count;
  for (const auto &[key, count] : counts)
    EXPECT_EQ(count * u * u, total);
}

// Resampling the m draws with replacement repeats a clause more often than
// direct draws do.
TEST(Subsample, WithReplacementDoesNotCompose) {
  const int n = 3, r = 2;
  const std::uint64_t u = universe_size(ModelKind::uniform, n, r);
  auto counts = composed_counts(n, r, 3, 2, false);
  std::uint64_t total = 0, repeats = 0;
  for (const auto &[key, count] : counts) {
    total += count;
    if (key[0] == key[1])
      repeats += count;
  }
  // 1/3 + (2/3)(1/6) = 4/9 versus 1/6.
  EXPECT_EQ(repeats * 9, total * 4);
  EXPECT_NE(repeats * u, total);
}

TEST(Subsample, Validation) {
  Instance inst = complete(ModelKind::uniform, 4, 2);
  EXPECT_THROW(subsample(inst, 0, 1), PreconditionError);
  EXPECT_THROW(subsample(inst, 13, 1), PreconditionError);
  Instance all = subsample(inst, 12, 5);
  EXPECT_EQ(all.coalesced(), inst.coalesced());
}

TEST(BundledSample, EmitsEveryOrderingOfEachSet) {
  Instance inst = complete(ModelKind::uniform, 6, 3);
  Instance out = bundled_sample(inst, 4, 9);
  EXPECT_EQ(out.size(), 24u);
  for (const auto &c : out.clauses())
    EXPECT_EQ(c.weight, Rational(20, 4));
  Instance sets = bundled_sample(complete(ModelKind::symset, 6, 3), 4, 9);
  EXPECT_EQ(sets.size(), 4u);
  EXPECT_THROW(bundled_sample(random_instance(ModelKind::uniform, 6, 3, 10, 1), 4, 9),
               PreconditionError);
  EXPECT_THROW(bundled_sample(complete(ModelKind::rpartite, 3, 3), 4, 9), PreconditionError);
}

TEST(BundledSample, WholeUniverseIsExact) {
  ValuedRelation rel = fixtures::r2();
  Instance inst = complete(ModelKind::uniform, 6, rel);
  ClassificationReport rep = classify(rel);
  SamplingPlan p = plan(rep, plan_request_for(inst, Rational(1, 2), 8, true));
  // The whole-universe bundle is the instance itself, which keep-all covers.
  EXPECT_EQ(p.mode, SamplerMode::keep_all);
  p.mode = SamplerMode::bundled;
  p.whole_universe = true;
  Instance out = apply_plan(p, inst, 1);
  EXPECT_EQ(out.coalesced(), inst.coalesced());
}

TEST(FailureBound, PlugIn) {
  EXPECT_NEAR(failure_probability_bound(3, 1, 1, 1, 1), 2 * std::exp(-1.0), 1e-12);
  EXPECT_DOUBLE_EQ(failure_probability_bound(100, 0, 1, 10, 0.5), 2.0);
}

// With kappa*n*ln(n)/eps^2 draws from the complete cut instance, an
// assignment with w ones (cut weight 2w(n-w)) fails with probability at most
// 2 n^(-kappa*min(w, n-w)/3).
TEST(FailureBound, CutAssignmentsDecayWithCutSize) {
  const int n = 14;
  const double kappa = 8, eps = 0.25;
  const double samples = kappa * n * std::log(n) / (eps * eps);
  const double m = n * (n - 1);
  for (int w = 1; w < n; ++w) {
    double bound = failure_probability_bound(samples, 2.0 * w * (n - w), 1, m, eps);
    double shape = 2 * std::pow(n, -kappa * std::min(w, n - w) / 3);
    EXPECT_LE(bound, shape * (1 + 1e-9)) << "w=" << w;
  }
}
