#include "fixtures.hpp"

#include "sparsecsp/error.hpp"
#include "sparsecsp/histogram.hpp"
#include "sparsecsp/instance.hpp"
#include "sparsecsp/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

using namespace sparsecsp;

namespace {

Rational naive_sat(const ValuedRelation &rel, const Instance &inst, const Assignment &a) {
  SymmetricValuedRelation sym;
  if (inst.kind() == ModelKind::symset)
    sym = symmetrize(rel);
  Rational total(0);
  for (const Clause &c : inst.clauses()) {
    Tuple t;
    for (int i = 0; i < inst.arity(); ++i)
      t.push_back(a[inst.global_variable(i, c.vars[i])]);
    Value v = inst.kind() == ModelKind::symset ? sym(histogram_of(t, rel.shared_domain()))
                                               : rel(t);
    total += c.weight * Rational(static_cast<std::int64_t>(v));
  }
  return total;
}

Assignment random_assignment(std::mt19937_64 &gen, const std::vector<int> &domains) {
  Assignment a;
  for (int d : domains)
    a.push_back(std::uniform_int_distribution<int>(0, d - 1)(gen));
  return a;
}

} // namespace

TEST(ModelKind, Names) {
  EXPECT_EQ(parse_model_kind("uniform"), ModelKind::uniform);
  EXPECT_EQ(parse_model_kind("rpartite"), ModelKind::rpartite);
  EXPECT_EQ(parse_model_kind("r-partite"), ModelKind::rpartite);
  EXPECT_EQ(parse_model_kind("symset"), ModelKind::symset);
  EXPECT_EQ(to_string(ModelKind::symset), "symset");
  EXPECT_THROW(parse_model_kind("random"), ParseError);
}

TEST(Instance, ClauseValidation) {
  Instance u(ModelKind::uniform, 4, 2);
  EXPECT_NO_THROW(u.add({3, 0}));
  EXPECT_THROW(u.add({1, 1}), DomainError);
  EXPECT_THROW(u.add({0, 4}), DomainError);
  EXPECT_THROW(u.add({0, 1, 2}), DomainError);
  EXPECT_THROW(u.add({0, 1}, Rational(0)), DomainError);
  Instance s(ModelKind::symset, 4, 2);
  EXPECT_THROW(s.add({2, 1}), DomainError);
  Instance p(ModelKind::rpartite, 4, 2);
  EXPECT_NO_THROW(p.add({1, 1}));
  EXPECT_EQ(p.variable_count(), 8);
  EXPECT_EQ(p.global_variable(1, 1), 5);
  EXPECT_THROW(Instance(ModelKind::uniform, 2, 3), PreconditionError);
}

TEST(Instance, UniverseDecodingIsABijection) {
  for (ModelKind kind : {ModelKind::uniform, ModelKind::rpartite, ModelKind::symset})
    for (int n = 3; n <= 6; ++n)
      for (int r = 1; r <= 3; ++r) {
        const std::uint64_t u = universe_size(kind, n, r);
        std::set<std::vector<int>> seen;
        std::vector<int> prev;
        Instance inst(kind, n, r);
        for (std::uint64_t i = 0; i < u; ++i) {
          auto vars = decode_clause(kind, n, r, i);
          ASSERT_NO_THROW(inst.add(vars));
          EXPECT_TRUE(seen.insert(vars).second);
          if (i > 0) {
            EXPECT_LT(prev, vars);
          }
          prev = vars;
        }
        EXPECT_EQ(seen.size(), u);
      }
  EXPECT_EQ(universe_size(ModelKind::uniform, 10, 4), 5040u);
  EXPECT_EQ(universe_size(ModelKind::rpartite, 5, 3), 125u);
  EXPECT_EQ(universe_size(ModelKind::symset, 10, 4), 210u);
}

TEST(Instance, CompleteInstances) {
  Instance c = complete(ModelKind::uniform, 5, 2);
  EXPECT_EQ(c.size(), 20u);
  EXPECT_TRUE(is_complete(c));
  EXPECT_EQ(c.total_weight(), Rational(20));
  Instance scaled = c.scaled(Rational(1, 2));
  EXPECT_FALSE(is_complete(scaled));
  EXPECT_EQ(scaled.total_weight(), Rational(10));
  Instance doubled = c;
  doubled.add({0, 1});
  EXPECT_FALSE(is_complete(doubled));
  Instance merged = doubled.coalesced();
  EXPECT_EQ(merged.size(), 20u);
  EXPECT_EQ(merged.total_weight(), Rational(21));
}

TEST(Instance, RandomInstancesAreDeterministic) {
  Instance a = random_instance(ModelKind::uniform, 8, 3, 50, 9);
  Instance b = random_instance(ModelKind::uniform, 8, 3, 50, 9);
  Instance c = random_instance(ModelKind::uniform, 8, 3, 50, 10);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(a.size(), 50u);
  EXPECT_THROW(random_instance(ModelKind::uniform, 8, 3, 0, 1), PreconditionError);
}

TEST(Instance, RandomClauseFrequenciesAreUniform) {
  for (ModelKind kind : {ModelKind::uniform, ModelKind::rpartite, ModelKind::symset}) {
    const int n = 5, r = 2;
    const std::uint64_t m = 20000, u = universe_size(kind, n, r);
    Instance inst = random_instance(kind, n, r, m, 77);
    std::map<std::vector<int>, int> counts;
    for (const auto &c : inst.clauses())
      ++counts[c.vars];
    EXPECT_EQ(counts.size(), u);
    const double p = 1.0 / static_cast<double>(u);
    const double mean = static_cast<double>(m) * p;
    const double sigma = std::sqrt(static_cast<double>(m) * p * (1 - p));
    for (const auto &[vars, count] : counts)
      EXPECT_LE(std::abs(count - mean), 4 * sigma);
  }
}

TEST(CounterRng, DrawsDependOnlyOnCounter) {
  CounterRng a(5, 1), b(5, 1), c(5, 2);
  EXPECT_EQ(a(17), b(17));
  EXPECT_NE(a(17), c(17));
  for (std::uint64_t i = 0; i < 1000; ++i)
    EXPECT_LT(a.below(i, 7), 7u);
}

TEST(Instance, IoRoundTrip) {
  Instance inst(ModelKind::rpartite, 3, 2);
  inst.add({0, 2}, Rational(5, 3));
  inst.add({1, 1});
  inst.add({2, 0}, Rational(7));
  std::stringstream ss;
  write_instance(ss, inst);
  EXPECT_EQ(read_instance(ss), inst);

  std::istringstream defaulted("kind=uniform n=3 r=2\n0 1\n1 2 1/2\n");
  Instance d = read_instance(defaulted);
  EXPECT_EQ(d.clauses()[0].weight, Rational(1));
  EXPECT_EQ(d.clauses()[1].weight, Rational(1, 2));
}

TEST(Instance, IoErrors) {
  std::istringstream bad_kind("kind=triangle n=3 r=2\n");
  EXPECT_THROW(read_instance(bad_kind), ParseError);
  std::istringstream bad_line("kind=uniform n=3 r=2\n0 1\n0\n");
  try {
    read_instance(bad_line);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::istringstream repeated("kind=uniform n=3 r=2\n0 0\n");
  EXPECT_THROW(read_instance(repeated), ParseError);
}

TEST(Assignment, IoAndCounts) {
  Assignment a{0, 2, 1, 2};
  std::stringstream ss;
  write_assignment(ss, a);
  EXPECT_EQ(read_assignment(ss), a);
  EXPECT_EQ(symbol_counts(a, 3), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(part_counts(a, 2, {3, 3}), (std::vector<std::vector<int>>{{1, 0, 1}, {0, 1, 1}}));
}

TEST(Evaluator, MatchesNaiveSums) {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 60; ++trial) {
    ModelKind kind = static_cast<ModelKind>(trial % 3);
    const int r = 1 + trial % 3, D = 2 + trial % 2;
    ValuedRelation rel = fixtures::random_relation(gen, r, D, 3);
    Instance inst = random_instance(kind, 5, r, 30, static_cast<std::uint64_t>(trial));
    inst = inst.scaled(Rational(1 + trial % 4, 1 + trial % 3));
    Evaluator ev(rel, inst);
    for (int rep = 0; rep < 20; ++rep) {
      Assignment a = random_assignment(gen, ev.variable_domains());
      Rational expect = naive_sat(rel, inst, a);
      EXPECT_EQ(ev.sat(a), expect);
      EXPECT_EQ(Rational(ev.scaled_sat(a), ev.scale()), expect);
      EXPECT_EQ(ev.codeword(a).size(), inst.size());
    }
  }
}

TEST(Evaluator, DuplicateClausesAddUp) {
  ValuedRelation rel = fixtures::cut();
  Instance inst(ModelKind::uniform, 3, 2);
  inst.add({0, 1});
  inst.add({0, 1}, Rational(1, 2));
  EXPECT_EQ(sat_value(rel, inst, {0, 1, 0}), Rational(3, 2));
  EXPECT_EQ(codeword(rel, inst, {0, 1, 0}), (std::vector<Value>{1, 1}));
  EXPECT_THROW(sat_value(rel, inst, {0, 1}), DomainError);
  EXPECT_THROW(Evaluator(fixtures::r2(), inst), DomainError);
}

TEST(Evaluator, RpartiteUsesPerPartDomains) {
  ValuedRelation rel = ValuedRelation::from_support({2, 3}, {{1, 2}});
  Instance inst = complete(ModelKind::rpartite, 2, 2);
  Evaluator ev(rel, inst);
  EXPECT_EQ(ev.variable_domains(), (std::vector<int>{2, 2, 3, 3}));
  // Part 0 = (1, 0), part 1 = (2, 2): clauses (0,0),(0,1) hit 12.
  EXPECT_EQ(ev.sat({1, 0, 2, 2}), Rational(2));
}

// Complete uniform and complete symmetric-set instances agree for every
// assignment.
TEST(Evaluator, SymmetrizationPreservesSat) {
  std::mt19937_64 gen(67);
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 1 + trial % 3, D = 2 + trial % 2, n = 5;
    ValuedRelation rel = fixtures::random_relation(gen, r, D, 3);
    Evaluator full(rel, complete(ModelKind::uniform, n, r));
    Evaluator sets(rel, complete(ModelKind::symset, n, r));
    std::vector<int> domains(n, D);
    for_each_tuple(domains, [&](std::size_t, const Tuple &a) {
      ASSERT_EQ(full.scaled_sat(a), sets.scaled_sat(a));
    });
  }
}
