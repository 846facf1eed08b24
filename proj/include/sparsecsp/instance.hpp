#pragma once

#include "sparsecsp/rational.hpp"
#include "sparsecsp/relation.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sparsecsp {

enum class ModelKind { uniform, rpartite, symset };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

// Uniform: r distinct variables in order. r-partite: one local index in
// [0, n) per part. Symmetric-set: r distinct variables in increasing order.
struct Clause {
  std::vector<int> vars;
  Rational weight{1};

  bool operator==(const Clause &) const = default;
};

class Instance {
public:
  Instance() = default;
  Instance(ModelKind kind, int n, int arity);

  ModelKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int arity() const noexcept { return arity_; }
  const std::vector<Clause> &clauses() const noexcept { return clauses_; }
  std::size_t size() const noexcept { return clauses_.size(); }

  // Validates the clause shape for the model kind and that weight > 0.
  void add(std::vector<int> vars, Rational weight = Rational(1));

  // n for uniform and symmetric-set instances, n*r for r-partite ones.
  int variable_count() const noexcept;
  // Assignment position of the j-th variable of a clause.
  int global_variable(int position, int var) const noexcept {
    return kind_ == ModelKind::rpartite ? position * n_ + var : var;
  }

  Rational total_weight() const;
  Instance scaled(const Rational &factor) const;
  // Identical variable tuples merged, weights summed, clauses sorted.
  Instance coalesced() const;

  bool operator==(const Instance &) const = default;

private:
  ModelKind kind_ = ModelKind::uniform;
  int n_ = 0;
  int arity_ = 0;
  std::vector<Clause> clauses_;
};

// Number of distinct clauses: P(n,r), n^r or C(n,r).
std::uint64_t universe_size(ModelKind kind, int n, int arity);
// Clause number `index` of the universe in lexicographic order.
std::vector<int> decode_clause(ModelKind kind, int n, int arity, std::uint64_t index);

Instance complete(ModelKind kind, int n, int arity);
Instance complete(ModelKind kind, int n, const ValuedRelation &rel);
// True if every universe clause appears exactly once with weight 1.
bool is_complete(const Instance &inst);

// m clauses drawn uniformly with replacement from the universe.
Instance random_instance(ModelKind kind, int n, int arity, std::uint64_t m,
                         std::uint64_t seed);

using Assignment = std::vector<int>;

std::vector<int> symbol_counts(const Assignment &a, int domain_size);
// Per-part counts for an r-partite assignment of n*r variables.
std::vector<std::vector<int>> part_counts(const Assignment &a, int n,
                                          const std::vector<int> &domains);

// Evaluates an instance exactly. Weights are scaled by a common denominator
// so every sat value is an integer multiple of 1/scale().
class Evaluator {
public:
  Evaluator(const ValuedRelation &rel, const Instance &inst);

  int variable_count() const noexcept { return variables_; }
  // Domain size of each assignment position.
  const std::vector<int> &variable_domains() const noexcept { return var_domains_; }
  std::int64_t scale() const noexcept { return scale_; }

  std::int64_t scaled_sat(const Assignment &a) const;
  std::int64_t scaled_sat(const int *a) const;
  Rational sat(const Assignment &a) const;
  // Per-clause values in clause order.
  std::vector<Value> codeword(const Assignment &a) const;
  void codeword(const int *a, std::vector<Value> &out) const;

private:
  void check(const Assignment &a) const;

  int arity_ = 0;
  int variables_ = 0;
  std::vector<int> var_domains_;
  std::vector<Value> table_;
  std::vector<std::size_t> strides_;
  std::int64_t scale_ = 1;
  // Merged clauses for sat, original clauses for codewords.
  std::vector<int> merged_vars_;
  std::vector<std::int64_t> merged_weights_;
  std::vector<int> vars_;
};

Rational sat_value(const ValuedRelation &rel, const Instance &inst,
                   const Assignment &a);
std::vector<Value> codeword(const ValuedRelation &rel, const Instance &inst,
                            const Assignment &a);

// Header "kind=<uniform|rpartite|symset> n=<int> r=<int>", then one clause per
// line "v_1 ... v_r <weight>".
Instance read_instance(std::istream &in);
void write_instance(std::ostream &out, const Instance &inst);
Instance load_instance(const std::string &path);
void save_instance(const std::string &path, const Instance &inst);

Assignment read_assignment(std::istream &in);
void write_assignment(std::ostream &out, const Assignment &a);

} // namespace sparsecsp
