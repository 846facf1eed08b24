#include "sparsecsp/relation.hpp"

#include "sparsecsp/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sparsecsp {

ValuedRelation::ValuedRelation(std::vector<int> domains)
    : domains_(std::move(domains)) {
  init();
}

ValuedRelation::ValuedRelation(int arity, int domain_size)
    : domains_(arity < 0 ? 0 : arity, domain_size) {
  init();
}

void ValuedRelation::init() {
  if (domains_.empty() || static_cast<int>(domains_.size()) > kMaxArity)
    throw DomainError("arity must be in 1.." + std::to_string(kMaxArity));
  for (int d : domains_)
    if (d < 1 || d > kMaxDomain)
      throw DomainError("domain sizes must be in 1.." +
                        std::to_string(kMaxDomain));
  strides_.assign(domains_.size(), 1);
  std::size_t size = 1;
  for (int i = arity() - 1; i >= 0; --i) {
    strides_[i] = size;
    size *= static_cast<std::size_t>(domains_[i]);
  }
  values_.assign(size, 0);
}

ValuedRelation ValuedRelation::from_support(int arity, int domain_size,
                                            const std::vector<Tuple> &support) {
  return from_support(std::vector<int>(arity, domain_size), support);
}

ValuedRelation ValuedRelation::from_support(std::vector<int> domains,
                                            const std::vector<Tuple> &support) {
  ValuedRelation rel(std::move(domains));
  for (const auto &t : support)
    rel.set(t, 1);
  return rel;
}

bool ValuedRelation::single_domain() const noexcept {
  return std::all_of(domains_.begin(), domains_.end(),
                     [&](int d) { return d == domains_.front(); });
}

int ValuedRelation::shared_domain() const {
  if (!single_domain())
    throw DomainError("relation is multi-sorted; a shared domain is required");
  return domains_.front();
}

bool ValuedRelation::is_boolean() const noexcept {
  return std::all_of(domains_.begin(), domains_.end(),
                     [](int d) { return d == 2; });
}

bool ValuedRelation::is_zero_one() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](Value v) { return v <= 1; });
}

std::size_t ValuedRelation::index_of(const Tuple &t) const {
  if (!contains(t))
    throw DomainError("tuple " + format_tuple(t) +
                      " is outside the product domain");
  std::size_t index = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    index += strides_[i] * static_cast<std::size_t>(t[i]);
  return index;
}

Tuple ValuedRelation::tuple_at(std::size_t index) const {
  Tuple t(domains_.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return t;
}

bool ValuedRelation::contains(const Tuple &t) const noexcept {
  if (t.size() != domains_.size())
    return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] >= domains_[i])
      return false;
  return true;
}

Value ValuedRelation::max_value() const noexcept {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

std::vector<Tuple> ValuedRelation::support() const {
  std::vector<Tuple> result;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != 0)
      result.push_back(tuple_at(i));
  return result;
}

std::size_t ValuedRelation::support_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](Value v) { return v != 0; }));
}

bool ValuedRelation::is_constant_nonzero() const noexcept {
  return !values_.empty() && values_.front() != 0 &&
         std::all_of(values_.begin(), values_.end(),
                     [&](Value v) { return v == values_.front(); });
}

int hamming(const Tuple &a, const Tuple &b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    d += a[i] != b[i];
  return d;
}

std::string format_tuple(const Tuple &t) {
  bool digits = std::all_of(t.begin(), t.end(), [](int s) { return s >= 0 && s < 10; });
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!digits && i > 0)
      out += ' ';
    out += std::to_string(t[i]);
  }
  return out;
}

namespace {

std::vector<std::string> split_ws(const std::string &line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok)
    out.push_back(tok);
  return out;
}

long long to_int(const std::string &tok, int line, const char *what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               tok + "'");
  return v;
}

std::string strip_comment(const std::string &line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

ValuedRelation read_relation(std::istream &in) {
  std::string line;
  int lineno = 0;
  int arity = -1;
  std::vector<int> domains;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(strip_comment(line));
    if (toks.empty())
      continue;
    for (const auto &tok : toks) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw ParseError(lineno, "expected header 'r=<int> domains=<d1,...>'");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "r") {
        arity = static_cast<int>(to_int(val, lineno, "arity"));
      } else if (key == "domains") {
        std::stringstream ss(val);
        std::string part;
        while (std::getline(ss, part, ','))
          domains.push_back(static_cast<int>(to_int(part, lineno, "domain size")));
      } else {
        throw ParseError(lineno, "unknown header key '" + key + "'");
      }
    }
    break;
  }
  if (arity < 0 || domains.empty())
    throw ParseError(lineno, "missing header 'r=<int> domains=<d1,...>'");
  if (domains.size() == 1 && arity > 1)
    domains.assign(arity, domains.front());
  if (static_cast<int>(domains.size()) != arity)
    throw ParseError(lineno, "domains list has " + std::to_string(domains.size()) +
                                 " entries, expected " + std::to_string(arity));
  ValuedRelation rel = [&] {
    try {
      return ValuedRelation(domains);
    } catch (const DomainError &e) {
      throw ParseError(lineno, e.what());
    }
  }();
  std::vector<bool> seen(rel.table_size(), false);
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(strip_comment(line));
    if (toks.empty())
      continue;
    if (static_cast<int>(toks.size()) != arity &&
        static_cast<int>(toks.size()) != arity + 1)
      throw ParseError(lineno, "expected " + std::to_string(arity) +
                                   " symbols and an optional value");
    Tuple t(arity);
    for (int i = 0; i < arity; ++i) {
      long long s = to_int(toks[i], lineno, "symbol");
      if (s < 0 || s >= domains[i])
        throw ParseError(lineno, "symbol " + toks[i] + " outside domain of coordinate " +
                                     std::to_string(i));
      t[i] = static_cast<int>(s);
    }
    long long v = 1;
    if (static_cast<int>(toks.size()) == arity + 1) {
      v = to_int(toks.back(), lineno, "value");
      if (v < 0)
        throw ParseError(lineno, "values must be non-negative");
    }
    std::size_t idx = rel.index_of(t);
    if (seen[idx])
      throw ParseError(lineno, "duplicate entry for tuple " + format_tuple(t));
    seen[idx] = true;
    rel.set_index(idx, static_cast<Value>(v));
  }
  return rel;
}

void write_relation(std::ostream &out, const ValuedRelation &rel) {
  out << "r=" << rel.arity() << " domains=";
  for (int i = 0; i < rel.arity(); ++i)
    out << (i ? "," : "") << rel.domain_size(i);
  out << '\n';
  bool zero_one = rel.is_zero_one();
  for (std::size_t i = 0; i < rel.table_size(); ++i) {
    if (rel.at_index(i) == 0)
      continue;
    Tuple t = rel.tuple_at(i);
    for (std::size_t j = 0; j < t.size(); ++j)
      out << (j ? " " : "") << t[j];
    if (!zero_one)
      out << ' ' << rel.at_index(i);
    out << '\n';
  }
}

ValuedRelation load_relation(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(0, "cannot open relation file '" + path + "'");
  return read_relation(in);
}

void save_relation(const std::string &path, const ValuedRelation &rel) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write '" + path + "'");
  write_relation(out, rel);
}

} // namespace sparsecsp
