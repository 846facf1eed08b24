#pragma once

#include "sparsecsp/relation.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace sparsecsp {

// Per-symbol counts, indexed by symbol.
using Histogram = std::vector<int>;
// Sorted list of symbols.
using SymbolSet = std::vector<int>;

Histogram histogram_of(const Tuple &t, int domain_size);
int histogram_arity(const Histogram &h);
// Sum of h over the symbols in E.
int mass(const Histogram &h, const SymbolSet &symbols);

// All histograms with the given number of symbols summing to `arity`, in
// ascending lexicographic order.
std::vector<Histogram> all_histograms(int domain_size, int arity);
std::uint64_t histogram_count(int domain_size, int arity);

std::string format_histogram(const Histogram &h);

// g <= h on every coordinate except `free_symbol` (pass -1 to compare all).
bool below_except(const Histogram &g, const Histogram &h, int free_symbol);

// Overflow-checked arithmetic used by the exact counting code.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);
std::uint64_t falling_factorial(int n, int k);
std::uint64_t power(std::uint64_t base, int exp);

class SymmetricValuedRelation {
public:
  SymmetricValuedRelation() = default;
  SymmetricValuedRelation(int domain_size, int arity);

  int arity() const noexcept { return arity_; }
  int domain_size() const noexcept { return domain_size_; }
  const std::vector<Histogram> &histograms() const noexcept { return hists_; }
  std::size_t size() const noexcept { return hists_.size(); }

  std::size_t index_of(const Histogram &h) const;
  Value operator()(const Histogram &h) const { return values_[index_of(h)]; }
  Value at_index(std::size_t i) const { return values_[i]; }
  void set(const Histogram &h, Value v) { values_[index_of(h)] = v; }
  void set_index(std::size_t i, Value v) { values_[i] = v; }
  const std::vector<Value> &table() const noexcept { return values_; }

  std::vector<Histogram> support() const;
  bool empty_support() const noexcept;
  bool is_constant() const noexcept;

  bool operator==(const SymmetricValuedRelation &o) const {
    return domain_size_ == o.domain_size_ && arity_ == o.arity_ &&
           values_ == o.values_;
  }

private:
  int domain_size_ = 0;
  int arity_ = 0;
  std::vector<Histogram> hists_;
  std::map<Histogram, std::size_t> index_;
  std::vector<Value> values_;
};

// S(h) = prod_d h_d! * sum over tuples t with hist(t) = h of R(t).
SymmetricValuedRelation symmetrize(const ValuedRelation &rel);

// Dense table over D^r holding Sym(R)(hist(t)) at the index of t.
std::vector<Value> symmetric_tuple_table(const SymmetricValuedRelation &sym);

} // namespace sparsecsp
