#pragma once

#include "sparsecsp/histogram.hpp"
#include "sparsecsp/instance.hpp"
#include "sparsecsp/relation_core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sparsecsp {

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

struct EnumerationOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 0; // 0: hardware concurrency
};

// Number of assignments of an instance; throws BudgetError above the budget.
std::uint64_t assignment_count(const std::vector<int> &domains, std::uint64_t budget);

// Assignment number `index` in little-endian mixed radix (position 0 varies
// fastest).
Assignment assignment_at(const std::vector<int> &domains, std::uint64_t index);

struct VerifyReport {
  BigRational max_deviation{0};
  Assignment witness;
  // Assignments where exactly one of the two instances has value zero.
  std::uint64_t zero_violations = 0;
  std::uint64_t evaluated = 0;
  BigRational eps{0};
  bool pass = false;
};

VerifyReport exhaustive_verify(const ValuedRelation &rel, const Instance &original,
                               const Instance &sparse, const Rational &eps,
                               const EnumerationOptions &options = {});

struct WitnessFamily {
  int c = 0;
  int symbol = -1; // the counted symbol b for the uniform family
  std::vector<Assignment> members;
  std::vector<std::vector<std::size_t>> satisfied; // clause indices
  bool disjoint = false;
  std::size_t max_shared = 0;
  std::uint64_t implied_bound = 0;
};

WitnessFamily witness_family_uniform(const ValuedRelation &rel, int n);
WitnessFamily witness_family_rpartite(const ValuedRelation &rel,
                                      const RestrictionWitness &witness, int n);

// Per-symbol majority test: every part (r-partite) or the whole assignment
// (otherwise) has the dominant symbol as a most frequent one.
bool is_dominant(const Instance &inst, const Assignment &a, const Tuple &dominant,
                 const std::vector<int> &domains);

struct CensusOptions : EnumerationOptions {
  std::optional<Tuple> dominant;
};

struct CensusRow {
  std::uint64_t threshold = 0;
  std::uint64_t count = 0;
};

// Distinct nonzero codewords of total value at most each threshold.
std::vector<CensusRow> codeword_census(const ValuedRelation &rel, const Instance &inst,
                                       const std::vector<std::uint64_t> &thresholds,
                                       const CensusOptions &options = {});

// Distinct variable subsets of the given size contained in some clause.
std::uint64_t tight_coverage_statistic(const Instance &inst, int subset_size);

// Exact sat value of a Boolean relation on the complete uniform instance for
// the assignment with `w` ones, for w = 0..n.
std::vector<Rational> min_sat_profile(const ValuedRelation &rel, int n);

struct SeparationResult {
  int n = 0;
  Histogram high, low; // symbol-count profiles of the two assignments
  std::uint64_t sat_high = 0, sat_low = 0;
  int distance = 0;
  bool found = false;
  double delta() const {
    return sat_low ? static_cast<double>(sat_high) / sat_low - 1.0 : 0.0;
  }
};

// Over assignments of n variables to the predicate's symbols (identified by
// their symbol counts) on the complete symmetric instance, finds a pair at
// Hamming distance at most n/2 maximizing sat(high) / sat(low), sat(low) > 0.
SeparationResult value_separation_search(const SymmetricValuedRelation &predicate,
                                         int n);

} // namespace sparsecsp
