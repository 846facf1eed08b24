#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sparsecsp {

using Tuple = std::vector<int>;
using Value = std::uint64_t;

constexpr int kMaxArity = 8;
constexpr int kMaxDomain = 6;

// A map D_1 x ... x D_r -> Z>=0 stored as a dense table. Index order is
// lexicographic in the tuple (coordinate 0 most significant).
class ValuedRelation {
public:
  ValuedRelation() = default;
  explicit ValuedRelation(std::vector<int> domains);
  ValuedRelation(int arity, int domain_size);

  // 0/1-valued relation over a shared domain.
  static ValuedRelation from_support(int arity, int domain_size,
                                     const std::vector<Tuple> &support);
  static ValuedRelation from_support(std::vector<int> domains,
                                     const std::vector<Tuple> &support);

  int arity() const noexcept { return static_cast<int>(domains_.size()); }
  const std::vector<int> &domains() const noexcept { return domains_; }
  int domain_size(int i) const { return domains_.at(i); }
  bool single_domain() const noexcept;
  // Shared domain size; throws DomainError for multi-sorted relations.
  int shared_domain() const;
  bool is_boolean() const noexcept;
  bool is_zero_one() const noexcept;

  std::size_t table_size() const noexcept { return values_.size(); }
  std::size_t index_of(const Tuple &t) const;
  Tuple tuple_at(std::size_t index) const;
  bool contains(const Tuple &t) const noexcept;

  Value operator()(const Tuple &t) const { return values_[index_of(t)]; }
  Value at_index(std::size_t index) const { return values_[index]; }
  void set(const Tuple &t, Value v) { values_[index_of(t)] = v; }
  void set_index(std::size_t index, Value v) { values_[index] = v; }
  const std::vector<Value> &table() const noexcept { return values_; }
  const std::vector<std::size_t> &strides() const noexcept { return strides_; }

  Value max_value() const noexcept;
  std::vector<Tuple> support() const;
  std::size_t support_size() const noexcept;
  bool empty_support() const noexcept { return support_size() == 0; }
  // All entries equal and nonzero.
  bool is_constant_nonzero() const noexcept;

  bool operator==(const ValuedRelation &other) const = default;

private:
  void init();

  std::vector<int> domains_;
  std::vector<std::size_t> strides_;
  std::vector<Value> values_;
};

// Calls f(index, tuple) for every tuple of the product domain in index order.
template <class F>
void for_each_tuple(const std::vector<int> &domains, F &&f) {
  Tuple t(domains.size(), 0);
  std::size_t index = 0;
  for (;;) {
    f(index, static_cast<const Tuple &>(t));
    ++index;
    int i = static_cast<int>(domains.size()) - 1;
    for (; i >= 0; --i) {
      if (++t[i] < domains[i])
        break;
      t[i] = 0;
    }
    if (i < 0)
      return;
  }
}

int hamming(const Tuple &a, const Tuple &b);

// "0022" when every symbol is a single digit.
std::string format_tuple(const Tuple &t);

// Text format: header "r=<int> domains=<d1,...,dr>", then one line per
// nonzero entry "t_1 ... t_r [value]". '#' starts a comment.
ValuedRelation read_relation(std::istream &in);
void write_relation(std::ostream &out, const ValuedRelation &rel);
ValuedRelation load_relation(const std::string &path);
void save_relation(const std::string &path, const ValuedRelation &rel);

} // namespace sparsecsp
