#pragma once

#include "sparsecsp/relation.hpp"

#include <vector>

namespace sparsecsp {

// Per-coordinate subsets E_i (sizes 1 or 2) plus a set of distinguished
// coordinates. For an AND witness the distinguished coordinates are those
// with |E_i| = 2 and `survivor` is the unique support tuple in the box. For a
// generalized AND, a box tuple is nonzero iff it carries `marked[i]` on
// every distinguished coordinate i.
struct RestrictionWitness {
  std::vector<std::vector<int>> sets;
  std::vector<int> distinguished;
  Tuple marked;
  Tuple survivor;
  bool uniform = true;

  int arity() const noexcept { return static_cast<int>(distinguished.size()); }
  bool operator==(const RestrictionWitness &) const = default;
};

struct AndRestriction {
  int c = 0;
  RestrictionWitness witness;
};

// Ties go to the smallest survivor, then the earliest distinguished coordinates.
AndRestriction max_and_arity(const ValuedRelation &rel);

// Checks that the box of `w` meets the support in exactly w.survivor.
bool is_and_witness(const ValuedRelation &rel, const RestrictionWitness &w);

// max(weight of lightest support tuple, r - weight of heaviest).
int boolean_uniform_exponent(const ValuedRelation &rel);

struct Extremality {
  int distance = 0;
  bool extreme = false;
};

Extremality distance_and_extremality(const Tuple &t, const ValuedRelation &rel);
Extremality distance_and_extremality(const Tuple &t, const ValuedRelation &rel,
                                     int c);
int distance_to_support(const Tuple &t, const ValuedRelation &rel);

struct IrrelevanceStructure {
  Tuple reference;
  int c = 0;
  // relabel[i][d]: symbol d of coordinate i after moving reference[i] to 0.
  // Each map is an involution.
  std::vector<std::vector<int>> relabel;
  // Support tuples at distance c from the reference, original symbols.
  std::vector<Tuple> nearest;
  // irrelevant[i][d], original symbols; irrelevant[i][reference[i]] is set.
  std::vector<std::vector<bool>> irrelevant;

  bool is_irrelevant(int i, int d) const { return irrelevant.at(i).at(d); }
  // Coordinates whose every non-reference symbol is irrelevant (for Boolean
  // relations this is the irrelevant coordinate set).
  std::vector<int> irrelevant_coordinates() const;
  // Coordinates where some nearest tuple differs from the reference.
  std::vector<int> covered_coordinates() const;
};

IrrelevanceStructure irrelevance_structure(const ValuedRelation &rel,
                                           const Tuple &t);

// Tuples that the closure property requires in the support but which are
// missing. Empty when the closure holds.
std::vector<Tuple> closure_violations(const ValuedRelation &rel,
                                      const IrrelevanceStructure &irr);

// Same as the tuple with every irrelevant symbol replaced by the reference.
Tuple collapse_irrelevant(const IrrelevanceStructure &irr, const Tuple &s);

bool is_decomposable(const ValuedRelation &rel, const Tuple &t);
bool is_decomposable(const ValuedRelation &rel, const IrrelevanceStructure &irr);

struct Sandwich {
  ValuedRelation lower;
  ValuedRelation upper;
};

Sandwich sandwich_decomposable(const ValuedRelation &rel, const Tuple &t);
Sandwich sandwich_decomposable(const ValuedRelation &rel,
                               const IrrelevanceStructure &irr);

std::vector<RestrictionWitness> generalized_ands(const ValuedRelation &rel,
                                                 int k);
int hat_c(const ValuedRelation &rel);

} // namespace sparsecsp
