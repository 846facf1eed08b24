#pragma once

#include "sparsecsp/relation.hpp"

#include <random>

namespace fixtures {

using sparsecsp::Tuple;
using sparsecsp::ValuedRelation;

// Values 1, 2, 0, 1 on 00, 01, 10, 11.
inline ValuedRelation r1() {
  ValuedRelation rel(2, 2);
  rel.set({0, 0}, 1);
  rel.set({0, 1}, 2);
  rel.set({1, 1}, 1);
  return rel;
}

inline ValuedRelation r2() {
  return ValuedRelation::from_support(
      4, 3, {{0, 0, 2, 2}, {1, 1, 2, 2}, {0, 2, 2, 2}, {1, 2, 2, 2}, {0, 1, 2, 2}, {2, 2, 0, 1}});
}

// Three 4-tuples over {0,1,2,3}.
inline ValuedRelation four_symbol() {
  return ValuedRelation::from_support(4, 4, {{0, 1, 2, 3}, {0, 0, 2, 3}, {1, 1, 2, 3}});
}

inline ValuedRelation cut() { return ValuedRelation::from_support(2, 2, {{0, 1}, {1, 0}}); }

// Boolean relation whose support is the set bits of `mask` in index order.
inline ValuedRelation boolean_from_mask(int arity, unsigned mask) {
  ValuedRelation rel(arity, 2);
  for (std::size_t i = 0; i < rel.table_size(); ++i)
    if (mask >> i & 1u)
      rel.set_index(i, 1);
  return rel;
}

inline ValuedRelation full(int arity, int domain) {
  ValuedRelation rel(arity, domain);
  for (std::size_t i = 0; i < rel.table_size(); ++i)
    rel.set_index(i, 1);
  return rel;
}

// Random relation with nonempty support; values in [0, max_value].
inline ValuedRelation random_relation(std::mt19937_64 &gen, int arity, int domain,
                                      int max_value) {
  std::uniform_int_distribution<int> pick(0, max_value);
  for (;;) {
    ValuedRelation rel(arity, domain);
    for (std::size_t i = 0; i < rel.table_size(); ++i)
      rel.set_index(i, static_cast<sparsecsp::Value>(pick(gen)));
    if (!rel.empty_support())
      return rel;
  }
}

inline int weight(const Tuple &t) {
  int w = 0;
  for (int x : t)
    w += x != 0;
  return w;
}

} // namespace fixtures
