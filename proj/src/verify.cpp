#include "sparsecsp/verify.hpp"

#include "sparsecsp/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>

namespace sparsecsp {

namespace {

using Int128 = __int128;
using BigInt = boost::multiprecision::cpp_int;

BigInt to_big_int(Int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  BigInt out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-out) : out;
}

unsigned thread_count(unsigned requested, std::uint64_t work) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(1, work)));
}

// Runs fn(shard, lo, hi) over a contiguous split of [0, total).
template <class F>
void run_sharded(std::uint64_t total, unsigned threads, F &&fn) {
  if (threads <= 1) {
    fn(0u, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (unsigned s = 0; s < threads; ++s) {
    std::uint64_t lo = std::min(total, s * chunk), hi = std::min(total, lo + chunk);
    pool.emplace_back([&fn, s, lo, hi] { fn(s, lo, hi); });
  }
  for (auto &t : pool)
    t.join();
}

void advance(Assignment &a, const std::vector<int> &domains) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (++a[i] < domains[i])
      return;
    a[i] = 0;
  }
}

struct Deviation {
  Int128 num = 0, den = 1; // |sat' - sat| scaled, sat scaled
  double approx = 0;
  std::uint64_t index = 0;
  bool set = false;
};

// Exact comparison; doubles decide unless the values are close.
bool greater(const Deviation &x, const Deviation &y) {
  if (!y.set)
    return true;
  double tol = 1e-9 * std::max(x.approx, y.approx);
  if (std::fabs(x.approx - y.approx) > tol)
    return x.approx > y.approx;
  BigInt lhs = to_big_int(x.num) * to_big_int(y.den);
  BigInt rhs = to_big_int(y.num) * to_big_int(x.den);
  if (lhs != rhs)
    return lhs > rhs;
  return x.index < y.index;
}

} // namespace

std::uint64_t assignment_count(const std::vector<int> &domains, std::uint64_t budget) {
  std::uint64_t count = 1;
  for (int d : domains) {
    if (__builtin_mul_overflow(count, static_cast<std::uint64_t>(d), &count) ||
        count > budget)
      throw BudgetError("exhaustive enumeration needs more than " +
                        std::to_string(budget) +
                        " assignments; use a smaller n or raise the budget");
  }
  return count;
}

Assignment assignment_at(const std::vector<int> &domains, std::uint64_t index) {
  Assignment a(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) {
    a[i] = static_cast<int>(index % domains[i]);
    index /= domains[i];
  }
  return a;
}

VerifyReport exhaustive_verify(const ValuedRelation &rel, const Instance &original,
                               const Instance &sparse, const Rational &eps,
                               const EnumerationOptions &options) {
  if (original.kind() != sparse.kind() || original.n() != sparse.n() ||
      original.arity() != sparse.arity())
    throw DomainError("original and sparsifier describe different variable sets");
  const Evaluator full(rel, original), thin(rel, sparse);
  const auto &domains = full.variable_domains();
  const std::uint64_t total = assignment_count(domains, options.budget);
  const unsigned threads = thread_count(options.threads, total);
  const Int128 full_scale = full.scale(), thin_scale = thin.scale();

  std::vector<Deviation> best(threads);
  std::vector<std::uint64_t> violations(threads, 0);
  std::vector<std::uint64_t> first_violation(threads, UINT64_MAX);
  run_sharded(total, threads, [&](unsigned s, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi)
      return;
    Assignment a = assignment_at(domains, lo);
    Deviation local;
    for (std::uint64_t idx = lo; idx < hi; ++idx, advance(a, domains)) {
      const Int128 x = thin.scaled_sat(a.data());
      const Int128 y = full.scaled_sat(a.data());
      if ((y == 0) != (x == 0)) {
        ++violations[s];
        first_violation[s] = std::min(first_violation[s], idx);
      }
      if (y == 0)
        continue;
      Deviation d;
      Int128 diff = x * full_scale - y * thin_scale;
      d.num = diff < 0 ? -diff : diff;
      d.den = y * thin_scale;
      d.approx = static_cast<double>(d.num) / static_cast<double>(d.den);
      d.index = idx;
      d.set = true;
      if (greater(d, local))
        local = d;
    }
    best[s] = local;
  });

  VerifyReport rep;
  rep.evaluated = total;
  rep.eps = to_big(eps);
  Deviation top;
  for (const auto &d : best)
    if (d.set && greater(d, top))
      top = d;
  for (std::uint64_t v : violations)
    rep.zero_violations += v;
  if (top.set) {
    rep.max_deviation = BigRational(to_big_int(top.num)) / BigRational(to_big_int(top.den));
    rep.witness = assignment_at(domains, top.index);
  }
  if (rep.zero_violations > 0) {
    std::uint64_t idx = *std::min_element(first_violation.begin(), first_violation.end());
    rep.witness = assignment_at(domains, idx);
  }
  rep.pass = rep.zero_violations == 0 && rep.max_deviation <= rep.eps;
  return rep;
}

namespace {

void fill_disjointness(WitnessFamily &fam, std::size_t clause_count) {
  std::vector<std::size_t> hits(clause_count, 0);
  for (const auto &sat : fam.satisfied)
    for (std::size_t c : sat)
      ++hits[c];
  fam.max_shared = hits.empty() ? 0 : *std::max_element(hits.begin(), hits.end());
  fam.disjoint = fam.max_shared <= 1;
  if (fam.max_shared > 0)
    fam.implied_bound = (fam.members.size() + fam.max_shared - 1) / fam.max_shared;
}

std::vector<std::size_t> satisfied_clauses(const Evaluator &ev, const Assignment &a) {
  std::vector<Value> word = ev.codeword(a);
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < word.size(); ++c)
    if (word[c] != 0)
      out.push_back(c);
  return out;
}

} // namespace

WitnessFamily witness_family_uniform(const ValuedRelation &rel, int n) {
  const int c = boolean_uniform_exponent(rel);
  if (c == 0)
    throw PreconditionError("the witness family needs c >= 1");
  const int r = rel.arity();
  int wmin = r;
  for (const Tuple &t : rel.support())
    wmin = std::min<int>(wmin, static_cast<int>(std::count(t.begin(), t.end(), 1)));
  WitnessFamily fam;
  fam.c = c;
  // Every support tuple has at least c ones when c is the lightest weight, so
  // the family places exactly c ones; otherwise exactly c zeros.
  fam.symbol = c == wmin ? 1 : 0;
  const Instance inst = complete(ModelKind::uniform, n, r);
  const Evaluator ev(rel, inst);
  const Instance positions = complete(ModelKind::symset, n, c);
  for (const auto &pick : positions.clauses()) {
    Assignment a(n, 1 - fam.symbol);
    for (int v : pick.vars)
      a[v] = fam.symbol;
    fam.satisfied.push_back(satisfied_clauses(ev, a));
    fam.members.push_back(std::move(a));
  }
  fill_disjointness(fam, inst.size());
  return fam;
}

WitnessFamily witness_family_rpartite(const ValuedRelation &rel,
                                      const RestrictionWitness &witness, int n) {
  if (!is_and_witness(rel, witness))
    throw PreconditionError("witness is not an AND restriction of the relation");
  const int c = witness.arity();
  if (c == 0)
    throw PreconditionError("the witness family needs c >= 1");
  const int r = rel.arity();
  const Instance inst = complete(ModelKind::rpartite, n, r);
  const Evaluator ev(rel, inst);
  const Tuple &a = witness.survivor;
  Tuple b = a;
  for (int i : witness.distinguished)
    b[i] = witness.sets[i][0] == a[i] ? witness.sets[i][1] : witness.sets[i][0];

  WitnessFamily fam;
  fam.c = c;
  const std::uint64_t expected = power(static_cast<std::uint64_t>(n), r - c);
  bool exact = true;
  for_each_tuple(std::vector<int>(c, n), [&](std::size_t, const Tuple &tau) {
    Assignment x(static_cast<std::size_t>(n) * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < n; ++j)
        x[i * n + j] = a[i];
    for (int p = 0; p < c; ++p) {
      int i = witness.distinguished[p];
      for (int j = 0; j < n; ++j)
        x[i * n + j] = j == tau[p] ? a[i] : b[i];
    }
    fam.satisfied.push_back(satisfied_clauses(ev, x));
    exact = exact && fam.satisfied.back().size() == expected;
    fam.members.push_back(std::move(x));
  });
  fill_disjointness(fam, inst.size());
  if (!exact || !fam.disjoint)
    throw std::logic_error("AND witness family is not disjoint with n^(r-c) clauses each");
  return fam;
}

bool is_dominant(const Instance &inst, const Assignment &a, const Tuple &dominant,
                 const std::vector<int> &domains) {
  if (inst.kind() == ModelKind::rpartite) {
    const int n = inst.n();
    for (int i = 0; i < inst.arity(); ++i) {
      std::vector<int> counts(domains[i * n], 0);
      for (int j = 0; j < n; ++j)
        ++counts[a[i * n + j]];
      for (int cnt : counts)
        if (cnt > counts[dominant[i]])
          return false;
    }
    return true;
  }
  std::vector<int> counts(domains.front(), 0);
  for (int s : a)
    ++counts[s];
  for (int cnt : counts)
    if (cnt > counts[dominant[0]])
      return false;
  return true;
}

namespace {

struct WordHash {
  std::size_t operator()(const std::vector<Value> &w) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (Value v : w)
      h = (h ^ v) * 0x100000001b3ULL;
    return h;
  }
};

} // namespace

std::vector<CensusRow> codeword_census(const ValuedRelation &rel, const Instance &inst,
                                       const std::vector<std::uint64_t> &thresholds,
                                       const CensusOptions &options) {
  const Evaluator ev(rel, inst);
  const auto &domains = ev.variable_domains();
  const std::uint64_t total = assignment_count(domains, options.budget);
  const unsigned threads = thread_count(options.threads, total);
  const std::uint64_t cap =
      thresholds.empty() ? 0 : *std::max_element(thresholds.begin(), thresholds.end());
  if (options.dominant && static_cast<int>(options.dominant->size()) != rel.arity())
    throw DomainError("dominant tuple has the wrong arity");

  using WordSet = std::unordered_set<std::vector<Value>, WordHash>;
  std::vector<WordSet> found(threads);
  run_sharded(total, threads, [&](unsigned s, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi)
      return;
    Assignment a = assignment_at(domains, lo);
    std::vector<Value> word;
    for (std::uint64_t idx = lo; idx < hi; ++idx, advance(a, domains)) {
      if (options.dominant && !is_dominant(inst, a, *options.dominant, domains))
        continue;
      ev.codeword(a.data(), word);
      std::uint64_t weight = 0;
      for (Value v : word)
        weight += v;
      if (weight == 0 || weight > cap)
        continue;
      found[s].insert(word);
    }
  });
  WordSet all;
  for (auto &f : found)
    all.merge(f);
  std::vector<CensusRow> rows;
  for (std::uint64_t t : thresholds) {
    CensusRow row{t, 0};
    for (const auto &w : all) {
      std::uint64_t weight = 0;
      for (Value v : w)
        weight += v;
      row.count += weight <= t;
    }
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t tight_coverage_statistic(const Instance &inst, int subset_size) {
  const int r = inst.arity();
  if (subset_size < 0 || subset_size > r)
    throw PreconditionError("subset size must lie in 0..r");
  std::set<std::vector<int>> covered;
  for (const auto &c : inst.clauses()) {
    std::vector<int> vars(r);
    for (int j = 0; j < r; ++j)
      vars[j] = inst.global_variable(j, c.vars[j]);
    std::sort(vars.begin(), vars.end());
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      if (__builtin_popcount(mask) != subset_size)
        continue;
      std::vector<int> sub;
      for (int j = 0; j < r; ++j)
        if (mask >> j & 1)
          sub.push_back(vars[j]);
      covered.insert(std::move(sub));
    }
  }
  return covered.size();
}

std::vector<Rational> min_sat_profile(const ValuedRelation &rel, int n) {
  if (!rel.is_boolean())
    throw DomainError("min_sat_profile needs a Boolean relation");
  const Evaluator ev(rel, complete(ModelKind::uniform, n, rel.arity()));
  std::vector<Rational> out;
  for (int w = 0; w <= n; ++w) {
    Assignment a(n, 0);
    std::fill(a.begin(), a.begin() + w, 1);
    out.push_back(ev.sat(a));
  }
  return out;
}

namespace {

std::uint64_t profile_sat(const SymmetricValuedRelation &pred, const Histogram &a) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred.at_index(i) == 0)
      continue;
    std::uint64_t ways = pred.at_index(i);
    const Histogram &g = pred.histograms()[i];
    for (std::size_t e = 0; e < g.size(); ++e)
      ways = checked_mul(ways, binomial(a[e], g[e]));
    total = checked_add(total, ways);
  }
  return total;
}

} // namespace

SeparationResult value_separation_search(const SymmetricValuedRelation &predicate,
                                         int n) {
  const auto profiles = all_histograms(predicate.domain_size(), n);
  std::vector<std::uint64_t> sats;
  for (const auto &p : profiles)
    sats.push_back(profile_sat(predicate, p));
  SeparationResult best;
  best.n = n;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      if (sats[j] == 0)
        continue;
      int moved = 0;
      for (std::size_t e = 0; e < profiles[i].size(); ++e)
        moved += std::abs(profiles[i][e] - profiles[j][e]);
      const int distance = moved / 2;
      if (2 * distance > n)
        continue;
      const bool better =
          !best.found || static_cast<unsigned __int128>(sats[i]) * best.sat_low >
                             static_cast<unsigned __int128>(best.sat_high) * sats[j];
      if (better) {
        best = {n, profiles[i], profiles[j], sats[i], sats[j], distance, true};
      }
    }
  return best;
}

} // namespace sparsecsp
