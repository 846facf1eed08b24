#include "sparsecsp/instance.hpp"

#include "sparsecsp/error.hpp"
#include "sparsecsp/histogram.hpp"
#include "sparsecsp/rng.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace sparsecsp {

std::string to_string(ModelKind kind) {
  switch (kind) {
  case ModelKind::uniform:
    return "uniform";
  case ModelKind::rpartite:
    return "rpartite";
  case ModelKind::symset:
    return "symset";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "uniform")
    return ModelKind::uniform;
  if (text == "rpartite" || text == "r-partite")
    return ModelKind::rpartite;
  if (text == "symset" || text == "symmetric-set")
    return ModelKind::symset;
  throw ParseError(0, "unknown model kind '" + std::string(text) + "'");
}

Instance::Instance(ModelKind kind, int n, int arity)
    : kind_(kind), n_(n), arity_(arity) {
  if (arity < 1 || arity > kMaxArity)
    throw DomainError("arity must be in 1.." + std::to_string(kMaxArity));
  if (n < arity)
    throw PreconditionError("need n >= r (n=" + std::to_string(n) +
                            ", r=" + std::to_string(arity) + ")");
}

void Instance::add(std::vector<int> vars, Rational weight) {
  if (static_cast<int>(vars.size()) != arity_)
    throw DomainError("clause has " + std::to_string(vars.size()) +
                      " variables, expected " + std::to_string(arity_));
  if (weight <= Rational(0))
    throw DomainError("clause weights must be positive");
  for (int v : vars)
    if (v < 0 || v >= n_)
      throw DomainError("variable index " + std::to_string(v) + " out of range");
  if (kind_ == ModelKind::uniform) {
    auto sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("uniform clauses need distinct variables");
  } else if (kind_ == ModelKind::symset) {
    for (std::size_t i = 1; i < vars.size(); ++i)
      if (vars[i - 1] >= vars[i])
        throw DomainError("symmetric-set clauses need strictly increasing variables");
  }
  clauses_.push_back({std::move(vars), weight});
}

int Instance::variable_count() const noexcept {
  return kind_ == ModelKind::rpartite ? n_ * arity_ : n_;
}

Rational Instance::total_weight() const {
  Rational sum(0);
  for (const auto &c : clauses_)
    sum += c.weight;
  return sum;
}

Instance Instance::scaled(const Rational &factor) const {
  Instance out = *this;
  for (auto &c : out.clauses_)
    c.weight *= factor;
  return out;
}

Instance Instance::coalesced() const {
  std::map<std::vector<int>, Rational> merged;
  for (const auto &c : clauses_)
    merged[c.vars] += c.weight;
  Instance out(kind_, n_, arity_);
  for (auto &[vars, w] : merged)
    out.clauses_.push_back({vars, w});
  return out;
}

std::uint64_t universe_size(ModelKind kind, int n, int arity) {
  switch (kind) {
  case ModelKind::uniform:
    return falling_factorial(n, arity);
  case ModelKind::rpartite:
    return power(static_cast<std::uint64_t>(n), arity);
  case ModelKind::symset:
    return binomial(n, arity);
  }
  return 0;
}

std::vector<int> decode_clause(ModelKind kind, int n, int arity,
                               std::uint64_t index) {
  std::vector<int> vars(arity);
  if (kind == ModelKind::rpartite) {
    for (int i = arity - 1; i >= 0; --i) {
      vars[i] = static_cast<int>(index % n);
      index /= n;
    }
  } else if (kind == ModelKind::uniform) {
    // Mixed radix (n, n-1, ..., n-r+1), most significant digit first; each
    // digit picks among the still unused variables.
    std::vector<int> digits(arity);
    for (int i = arity - 1; i >= 0; --i) {
      std::uint64_t base = static_cast<std::uint64_t>(n - i);
      digits[i] = static_cast<int>(index % base);
      index /= base;
    }
    std::vector<int> unused(n);
    std::iota(unused.begin(), unused.end(), 0);
    for (int i = 0; i < arity; ++i) {
      vars[i] = unused[digits[i]];
      unused.erase(unused.begin() + digits[i]);
    }
  } else {
    // Lexicographic unranking of combinations.
    int next = 0;
    for (int i = 0; i < arity; ++i) {
      for (;; ++next) {
        std::uint64_t block = binomial(n - next - 1, arity - i - 1);
        if (index < block)
          break;
        index -= block;
      }
      vars[i] = next++;
    }
  }
  return vars;
}

Instance complete(ModelKind kind, int n, int arity) {
  Instance inst(kind, n, arity);
  const std::uint64_t u = universe_size(kind, n, arity);
  for (std::uint64_t i = 0; i < u; ++i)
    inst.add(decode_clause(kind, n, arity, i));
  return inst;
}

Instance complete(ModelKind kind, int n, const ValuedRelation &rel) {
  return complete(kind, n, rel.arity());
}

bool is_complete(const Instance &inst) {
  if (inst.size() != universe_size(inst.kind(), inst.n(), inst.arity()))
    return false;
  std::vector<std::vector<int>> seen;
  seen.reserve(inst.size());
  for (const auto &c : inst.clauses()) {
    if (c.weight != Rational(1))
      return false;
    seen.push_back(c.vars);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

Instance random_instance(ModelKind kind, int n, int arity, std::uint64_t m,
                         std::uint64_t seed) {
  Instance inst(kind, n, arity);
  if (m < 1)
    throw PreconditionError("random instances need m >= 1");
  const std::uint64_t u = universe_size(kind, n, arity);
  const CounterRng rng(seed, 0x52414e44); // stream reserved for instances
  for (std::uint64_t j = 0; j < m; ++j)
    inst.add(decode_clause(kind, n, arity, rng.below(j, u)));
  return inst;
}

std::vector<int> symbol_counts(const Assignment &a, int domain_size) {
  std::vector<int> counts(domain_size, 0);
  for (int s : a)
    ++counts.at(s);
  return counts;
}

std::vector<std::vector<int>> part_counts(const Assignment &a, int n,
                                          const std::vector<int> &domains) {
  std::vector<std::vector<int>> counts(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) {
    counts[i].assign(domains[i], 0);
    for (int j = 0; j < n; ++j)
      ++counts[i].at(a.at(i * n + j));
  }
  return counts;
}

Evaluator::Evaluator(const ValuedRelation &rel, const Instance &inst)
    : arity_(inst.arity()), variables_(inst.variable_count()) {
  if (rel.arity() != inst.arity())
    throw DomainError("relation arity " + std::to_string(rel.arity()) +
                      " does not match instance arity " +
                      std::to_string(inst.arity()));
  if (inst.kind() == ModelKind::rpartite) {
    for (int i = 0; i < arity_; ++i)
      for (int j = 0; j < inst.n(); ++j)
        var_domains_.push_back(rel.domain_size(i));
  } else {
    var_domains_.assign(variables_, rel.shared_domain());
  }
  if (inst.kind() == ModelKind::symset)
    table_ = symmetric_tuple_table(symmetrize(rel));
  else
    table_ = rel.table();
  strides_ = rel.strides();

  std::int64_t lcm = 1;
  for (const auto &c : inst.clauses()) {
    std::int64_t den = c.weight.denominator();
    std::int64_t g = std::gcd(lcm, den);
    if (__builtin_mul_overflow(lcm / g, den, &lcm))
      throw DomainError("weight denominators overflow the common scale");
  }
  scale_ = lcm;

  const Instance merged = inst.coalesced();
  const Value maxv = *std::max_element(table_.begin(), table_.end());
  std::int64_t budget = 0;
  for (const auto &c : merged.clauses()) {
    std::int64_t w;
    if (__builtin_mul_overflow(c.weight.numerator(), scale_ / c.weight.denominator(), &w))
      throw DomainError("scaled weight overflow");
    std::int64_t top;
    if (__builtin_mul_overflow(w, static_cast<std::int64_t>(maxv), &top) ||
        __builtin_add_overflow(budget, top, &budget) || budget > (INT64_MAX >> 2))
      throw DomainError("instance too heavy for exact 64-bit evaluation");
    merged_weights_.push_back(w);
    for (int j = 0; j < arity_; ++j)
      merged_vars_.push_back(inst.global_variable(j, c.vars[j]));
  }
  for (const auto &c : inst.clauses())
    for (int j = 0; j < arity_; ++j)
      vars_.push_back(inst.global_variable(j, c.vars[j]));
}

void Evaluator::check(const Assignment &a) const {
  if (static_cast<int>(a.size()) != variables_)
    throw DomainError("assignment has " + std::to_string(a.size()) +
                      " symbols, instance needs " + std::to_string(variables_));
  for (int i = 0; i < variables_; ++i)
    if (a[i] < 0 || a[i] >= var_domains_[i])
      throw DomainError("assignment symbol out of range at position " +
                        std::to_string(i));
}

std::int64_t Evaluator::scaled_sat(const int *a) const {
  std::int64_t total = 0;
  const int *v = merged_vars_.data();
  for (std::size_t c = 0; c < merged_weights_.size(); ++c, v += arity_) {
    std::size_t idx = 0;
    for (int j = 0; j < arity_; ++j)
      idx += strides_[j] * static_cast<std::size_t>(a[v[j]]);
    total += merged_weights_[c] * static_cast<std::int64_t>(table_[idx]);
  }
  return total;
}

std::int64_t Evaluator::scaled_sat(const Assignment &a) const {
  check(a);
  return scaled_sat(a.data());
}

Rational Evaluator::sat(const Assignment &a) const {
  return Rational(scaled_sat(a), scale_);
}

void Evaluator::codeword(const int *a, std::vector<Value> &out) const {
  const std::size_t m = vars_.size() / arity_;
  out.resize(m);
  const int *v = vars_.data();
  for (std::size_t c = 0; c < m; ++c, v += arity_) {
    std::size_t idx = 0;
    for (int j = 0; j < arity_; ++j)
      idx += strides_[j] * static_cast<std::size_t>(a[v[j]]);
    out[c] = table_[idx];
  }
}

std::vector<Value> Evaluator::codeword(const Assignment &a) const {
  check(a);
  std::vector<Value> out;
  codeword(a.data(), out);
  return out;
}

Rational sat_value(const ValuedRelation &rel, const Instance &inst,
                   const Assignment &a) {
  return Evaluator(rel, inst).sat(a);
}

std::vector<Value> codeword(const ValuedRelation &rel, const Instance &inst,
                            const Assignment &a) {
  return Evaluator(rel, inst).codeword(a);
}

namespace {

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream ss(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok)
    out.push_back(tok);
  return out;
}

int parse_int(const std::string &tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

} // namespace

Instance read_instance(std::istream &in) {
  std::string line;
  int lineno = 0;
  std::vector<std::string> head;
  while (head.empty() && std::getline(in, line)) {
    ++lineno;
    head = tokens(line);
  }
  if (head.empty())
    throw ParseError(lineno, "missing header 'kind=... n=... r=...'");
  std::string kind;
  int n = -1, r = -1;
  for (const auto &tok : head) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, "malformed header token '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "kind")
      kind = val;
    else if (key == "n")
      n = parse_int(val, lineno);
    else if (key == "r")
      r = parse_int(val, lineno);
    else
      throw ParseError(lineno, "unknown header key '" + key + "'");
  }
  if (kind.empty() || n < 0 || r < 0)
    throw ParseError(lineno, "header needs kind, n and r");
  Instance inst = [&] {
    try {
      return Instance(parse_model_kind(kind), n, r);
    } catch (const Error &e) {
      throw ParseError(lineno, e.what());
    }
  }();
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens(line);
    if (toks.empty())
      continue;
    if (static_cast<int>(toks.size()) != r && static_cast<int>(toks.size()) != r + 1)
      throw ParseError(lineno, "expected " + std::to_string(r) +
                                   " variables and a weight");
    std::vector<int> vars(r);
    for (int j = 0; j < r; ++j)
      vars[j] = parse_int(toks[j], lineno);
    try {
      Rational w = static_cast<int>(toks.size()) == r + 1
                       ? parse_rational(toks.back())
                       : Rational(1);
      inst.add(std::move(vars), w);
    } catch (const Error &e) {
      throw ParseError(lineno, e.what());
    }
  }
  return inst;
}

void write_instance(std::ostream &out, const Instance &inst) {
  out << "kind=" << to_string(inst.kind()) << " n=" << inst.n()
      << " r=" << inst.arity() << '\n';
  for (const auto &c : inst.clauses()) {
    for (int v : c.vars)
      out << v << ' ';
    out << to_string(c.weight) << '\n';
  }
}

Instance load_instance(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(0, "cannot open instance file '" + path + "'");
  return read_instance(in);
}

void save_instance(const std::string &path, const Instance &inst) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write '" + path + "'");
  write_instance(out, inst);
}

Assignment read_assignment(std::istream &in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens(line);
    if (toks.empty())
      continue;
    Assignment a;
    for (const auto &t : toks)
      a.push_back(parse_int(t, lineno));
    return a;
  }
  throw ParseError(lineno, "empty assignment file");
}

void write_assignment(std::ostream &out, const Assignment &a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    out << (i ? " " : "") << a[i];
  out << '\n';
}

} // namespace sparsecsp
