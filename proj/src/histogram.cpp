#include "sparsecsp/histogram.hpp"

#include "sparsecsp/error.hpp"

#include <numeric>

namespace sparsecsp {

Histogram histogram_of(const Tuple &t, int domain_size) {
  Histogram h(domain_size, 0);
  for (int s : t) {
    if (s < 0 || s >= domain_size)
      throw DomainError("symbol outside domain in histogram_of");
    ++h[s];
  }
  return h;
}

int histogram_arity(const Histogram &h) {
  return std::accumulate(h.begin(), h.end(), 0);
}

int mass(const Histogram &h, const SymbolSet &symbols) {
  int m = 0;
  for (int e : symbols)
    m += h[e];
  return m;
}

namespace {

void fill_histograms(int pos, int remaining, Histogram &cur,
                     std::vector<Histogram> &out) {
  if (pos + 1 == static_cast<int>(cur.size())) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    fill_histograms(pos + 1, remaining - v, cur, out);
  }
}

} // namespace

std::vector<Histogram> all_histograms(int domain_size, int arity) {
  std::vector<Histogram> out;
  if (domain_size <= 0 || arity < 0)
    return out;
  Histogram cur(domain_size, 0);
  fill_histograms(0, arity, cur, out);
  return out;
}

std::uint64_t histogram_count(int domain_size, int arity) {
  return binomial(arity + domain_size - 1, domain_size - 1);
}

std::string format_histogram(const Histogram &h) {
  std::string out = "(";
  for (std::size_t i = 0; i < h.size(); ++i)
    out += (i ? "," : "") + std::to_string(h[i]);
  return out + ")";
}

bool below_except(const Histogram &g, const Histogram &h, int free_symbol) {
  for (std::size_t e = 0; e < g.size(); ++e)
    if (static_cast<int>(e) != free_symbol && g[e] > h[e])
      return false;
  return true;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw DomainError("integer overflow in exact arithmetic");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw DomainError("integer overflow in exact arithmetic");
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i)
    f = checked_mul(f, static_cast<std::uint64_t>(i));
  return f;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  unsigned __int128 b = 1;
  for (int i = 1; i <= k; ++i) {
    b = b * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (b > UINT64_MAX)
      throw DomainError("integer overflow in binomial");
  }
  return static_cast<std::uint64_t>(b);
}

std::uint64_t falling_factorial(int n, int k) {
  if (k > n)
    return 0;
  std::uint64_t f = 1;
  for (int i = 0; i < k; ++i)
    f = checked_mul(f, static_cast<std::uint64_t>(n - i));
  return f;
}

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t p = 1;
  for (int i = 0; i < exp; ++i)
    p = checked_mul(p, base);
  return p;
}

SymmetricValuedRelation::SymmetricValuedRelation(int domain_size, int arity)
    : domain_size_(domain_size), arity_(arity),
      hists_(all_histograms(domain_size, arity)) {
  if (domain_size < 1 || arity < 0)
    throw DomainError("bad symmetric relation shape");
  for (std::size_t i = 0; i < hists_.size(); ++i)
    index_.emplace(hists_[i], i);
  values_.assign(hists_.size(), 0);
}

std::size_t SymmetricValuedRelation::index_of(const Histogram &h) const {
  auto it = index_.find(h);
  if (it == index_.end())
    throw DomainError("histogram " + format_histogram(h) +
                      " has the wrong shape for this relation");
  return it->second;
}

std::vector<Histogram> SymmetricValuedRelation::support() const {
  std::vector<Histogram> out;
  for (std::size_t i = 0; i < hists_.size(); ++i)
    if (values_[i] != 0)
      out.push_back(hists_[i]);
  return out;
}

bool SymmetricValuedRelation::empty_support() const noexcept {
  for (Value v : values_)
    if (v != 0)
      return false;
  return true;
}

bool SymmetricValuedRelation::is_constant() const noexcept {
  for (Value v : values_)
    if (v != values_.front())
      return false;
  return true;
}

SymmetricValuedRelation symmetrize(const ValuedRelation &rel) {
  const int D = rel.shared_domain();
  SymmetricValuedRelation sym(D, rel.arity());
  std::vector<Value> sums(sym.size(), 0);
  for_each_tuple(rel.domains(), [&](std::size_t idx, const Tuple &t) {
    Value v = rel.at_index(idx);
    if (v == 0)
      return;
    std::size_t h = sym.index_of(histogram_of(t, D));
    sums[h] = checked_add(sums[h], v);
  });
  for (std::size_t i = 0; i < sym.size(); ++i) {
    Value mult = 1;
    for (int c : sym.histograms()[i])
      mult = checked_mul(mult, factorial(c));
    sym.set_index(i, checked_mul(mult, sums[i]));
  }
  return sym;
}

std::vector<Value> symmetric_tuple_table(const SymmetricValuedRelation &sym) {
  std::vector<int> domains(sym.arity(), sym.domain_size());
  std::size_t size = 1;
  for (int d : domains)
    size *= static_cast<std::size_t>(d);
  std::vector<Value> table(size, 0);
  if (sym.arity() == 0)
    return table;
  for_each_tuple(domains, [&](std::size_t idx, const Tuple &t) {
    table[idx] = sym(histogram_of(t, sym.domain_size()));
  });
  return table;
}

} // namespace sparsecsp
