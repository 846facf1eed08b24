#include "sparsecsp/relation_core.hpp"

#include "sparsecsp/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace sparsecsp {

namespace {

void require_support(const ValuedRelation &rel) {
  if (rel.empty_support())
    throw EmptySupportError("relation has empty support");
}

// Enumerates the 2^|diff| tuples of the box spanned by a and b.
template <class F>
void for_each_in_box(const Tuple &a, const Tuple &b, const std::vector<int> &diff,
                     F &&f) {
  Tuple t = a;
  const std::size_t count = std::size_t{1} << diff.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t j = 0; j < diff.size(); ++j)
      t[diff[j]] = (mask >> j) & 1 ? b[diff[j]] : a[diff[j]];
    if (!f(static_cast<const Tuple &>(t)))
      return;
  }
}

ValuedRelation relabeled(const ValuedRelation &rel,
                         const std::vector<std::vector<int>> &relabel) {
  ValuedRelation out(rel.domains());
  for_each_tuple(rel.domains(), [&](std::size_t idx, const Tuple &t) {
    Tuple u(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      u[i] = relabel[i][t[i]];
    out.set(u, rel.at_index(idx));
  });
  return out;
}

int nonzero_count(const Tuple &t) {
  return static_cast<int>(std::count_if(t.begin(), t.end(), [](int s) { return s != 0; }));
}

} // namespace

AndRestriction max_and_arity(const ValuedRelation &rel) {
  require_support(rel);
  const auto support = rel.support();
  const int r = rel.arity();
  AndRestriction best;
  best.c = -1;
  std::vector<int> diff;
  diff.reserve(r);
  for (const Tuple &a : support) {
    for_each_tuple(rel.domains(), [&](std::size_t, const Tuple &b) {
      diff.clear();
      for (int i = 0; i < r; ++i)
        if (a[i] != b[i])
          diff.push_back(i);
      int k = static_cast<int>(diff.size());
      if (k < best.c || (k == best.c && !(a == best.witness.survivor &&
                                            diff < best.witness.distinguished)))
        return;
      int hits = 0;
      for_each_in_box(a, b, diff, [&](const Tuple &t) {
        if (rel(t) != 0)
          ++hits;
        return hits <= 1;
      });
      if (hits != 1)
        return;
      best.c = k;
      RestrictionWitness w;
      w.sets.resize(r);
      for (int i = 0; i < r; ++i) {
        w.sets[i] = {a[i]};
        if (a[i] != b[i])
          w.sets[i] = {std::min(a[i], b[i]), std::max(a[i], b[i])};
      }
      w.distinguished = diff;
      w.marked = a;
      w.survivor = a;
      best.witness = std::move(w);
    });
  }
  return best;
}

bool is_and_witness(const ValuedRelation &rel, const RestrictionWitness &w) {
  const int r = rel.arity();
  if (static_cast<int>(w.sets.size()) != r || !rel.contains(w.survivor))
    return false;
  int pairs = 0;
  for (int i = 0; i < r; ++i) {
    if (w.sets[i].empty() || w.sets[i].size() > 2)
      return false;
    if (std::find(w.sets[i].begin(), w.sets[i].end(), w.survivor[i]) == w.sets[i].end())
      return false;
    pairs += w.sets[i].size() == 2;
  }
  if (pairs != w.arity())
    return false;
  Tuple other = w.survivor;
  std::vector<int> diff;
  for (int i = 0; i < r; ++i)
    if (w.sets[i].size() == 2) {
      other[i] = w.sets[i][0] == w.survivor[i] ? w.sets[i][1] : w.sets[i][0];
      diff.push_back(i);
    }
  int hits = 0;
  bool survivor_hit = false;
  for_each_in_box(w.survivor, other, diff, [&](const Tuple &t) {
    if (rel(t) != 0) {
      ++hits;
      survivor_hit = survivor_hit || t == w.survivor;
    }
    return true;
  });
  return hits == 1 && survivor_hit;
}

int boolean_uniform_exponent(const ValuedRelation &rel) {
  if (!rel.is_boolean())
    throw DomainError("boolean_uniform_exponent needs a Boolean relation");
  require_support(rel);
  int wmin = rel.arity(), wmax = 0;
  for (const Tuple &t : rel.support()) {
    int w = nonzero_count(t);
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  return std::max(wmin, rel.arity() - wmax);
}

int distance_to_support(const Tuple &t, const ValuedRelation &rel) {
  require_support(rel);
  if (!rel.contains(t))
    throw DomainError("tuple " + format_tuple(t) + " is outside the product domain");
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < rel.table_size(); ++i)
    if (rel.at_index(i) != 0)
      best = std::min(best, hamming(t, rel.tuple_at(i)));
  return best;
}

Extremality distance_and_extremality(const Tuple &t, const ValuedRelation &rel,
                                     int c) {
  Extremality e;
  e.distance = distance_to_support(t, rel);
  // A distance above c would give an AND restriction of larger arity.
  if (e.distance > c)
    throw std::logic_error("distance to support exceeds the maximum AND arity");
  e.extreme = e.distance == c;
  return e;
}

Extremality distance_and_extremality(const Tuple &t, const ValuedRelation &rel) {
  return distance_and_extremality(t, rel, max_and_arity(rel).c);
}

std::vector<int> IrrelevanceStructure::irrelevant_coordinates() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < irrelevant.size(); ++i) {
    bool all = true;
    for (std::size_t d = 0; d < irrelevant[i].size(); ++d)
      all = all && irrelevant[i][d];
    if (all)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> IrrelevanceStructure::covered_coordinates() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < reference.size(); ++i)
    for (const Tuple &u : nearest)
      if (u[i] != reference[i]) {
        out.push_back(static_cast<int>(i));
        break;
      }
  return out;
}

IrrelevanceStructure irrelevance_structure(const ValuedRelation &rel,
                                           const Tuple &t) {
  const int c = max_and_arity(rel).c;
  if (!distance_and_extremality(t, rel, c).extreme)
    throw PreconditionError("tuple " + format_tuple(t) + " is not extreme");
  const int r = rel.arity();
  IrrelevanceStructure irr;
  irr.reference = t;
  irr.c = c;
  irr.relabel.resize(r);
  for (int i = 0; i < r; ++i) {
    irr.relabel[i].resize(rel.domain_size(i));
    for (int d = 0; d < rel.domain_size(i); ++d)
      irr.relabel[i][d] = d == t[i] ? 0 : d == 0 ? t[i] : d;
  }
  const ValuedRelation origin = relabeled(rel, irr.relabel);

  std::vector<std::vector<bool>> used(r);
  for (int i = 0; i < r; ++i)
    used[i].assign(rel.domain_size(i), false);
  for (const Tuple &u : origin.support()) {
    if (nonzero_count(u) != c)
      continue;
    Tuple back(r);
    for (int i = 0; i < r; ++i) {
      back[i] = irr.relabel[i][u[i]];
      used[i][u[i]] = true;
    }
    irr.nearest.push_back(back);
  }
  std::sort(irr.nearest.begin(), irr.nearest.end());
  irr.irrelevant.resize(r);
  for (int i = 0; i < r; ++i) {
    irr.irrelevant[i].resize(rel.domain_size(i));
    for (int d = 0; d < rel.domain_size(i); ++d) {
      int e = irr.relabel[i][d];
      irr.irrelevant[i][d] = e == 0 || !used[i][e];
    }
  }
  return irr;
}

std::vector<Tuple> closure_violations(const ValuedRelation &rel,
                                      const IrrelevanceStructure &irr) {
  const int r = rel.arity();
  std::set<Tuple> missing;
  for (const Tuple &u : irr.nearest) {
    std::vector<std::vector<int>> choices(r);
    for (int i = 0; i < r; ++i) {
      if (u[i] != irr.reference[i]) {
        choices[i] = {u[i]};
      } else {
        for (int d = 0; d < rel.domain_size(i); ++d)
          if (irr.irrelevant[i][d])
            choices[i].push_back(d);
      }
    }
    std::vector<int> radix(r);
    for (int i = 0; i < r; ++i)
      radix[i] = static_cast<int>(choices[i].size());
    for_each_tuple(radix, [&](std::size_t, const Tuple &pick) {
      Tuple s(r);
      for (int i = 0; i < r; ++i)
        s[i] = choices[i][pick[i]];
      if (rel(s) == 0)
        missing.insert(s);
    });
  }
  return {missing.begin(), missing.end()};
}

Tuple collapse_irrelevant(const IrrelevanceStructure &irr, const Tuple &s) {
  Tuple out = s;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (irr.irrelevant[i][s[i]])
      out[i] = irr.reference[i];
  return out;
}

bool is_decomposable(const ValuedRelation &rel, const IrrelevanceStructure &irr) {
  bool ok = true;
  for_each_tuple(rel.domains(), [&](std::size_t idx, const Tuple &s) {
    if (ok && rel.at_index(idx) != rel(collapse_irrelevant(irr, s)))
      ok = false;
  });
  return ok;
}

bool is_decomposable(const ValuedRelation &rel, const Tuple &t) {
  return is_decomposable(rel, irrelevance_structure(rel, t));
}

Sandwich sandwich_decomposable(const ValuedRelation &rel,
                               const IrrelevanceStructure &irr) {
  const std::size_t size = rel.table_size();
  std::vector<Value> lo(size, std::numeric_limits<Value>::max()), hi(size, 0);
  std::vector<std::size_t> rep(size);
  for_each_tuple(rel.domains(), [&](std::size_t idx, const Tuple &s) {
    std::size_t key = rel.index_of(collapse_irrelevant(irr, s));
    rep[idx] = key;
    lo[key] = std::min(lo[key], rel.at_index(idx));
    hi[key] = std::max(hi[key], rel.at_index(idx));
  });
  Sandwich out{ValuedRelation(rel.domains()), ValuedRelation(rel.domains())};
  for (std::size_t idx = 0; idx < size; ++idx) {
    out.lower.set_index(idx, lo[rep[idx]]);
    out.upper.set_index(idx, hi[rep[idx]]);
  }
  return out;
}

Sandwich sandwich_decomposable(const ValuedRelation &rel, const Tuple &t) {
  return sandwich_decomposable(rel, irrelevance_structure(rel, t));
}

std::vector<RestrictionWitness> generalized_ands(const ValuedRelation &rel,
                                                 int k) {
  const int r = rel.arity();
  std::vector<RestrictionWitness> found;
  if (k < 0 || k > r)
    return found;
  // Per-coordinate options in lexicographic order: {0},{0,1},{0,2},...,{1},...
  std::vector<std::vector<std::vector<int>>> options(r);
  for (int i = 0; i < r; ++i)
    for (int d = 0; d < rel.domain_size(i); ++d) {
      options[i].push_back({d});
      for (int e = d + 1; e < rel.domain_size(i); ++e)
        options[i].push_back({d, e});
    }
  std::vector<int> radix(r);
  for (int i = 0; i < r; ++i)
    radix[i] = static_cast<int>(options[i].size());

  for_each_tuple(radix, [&](std::size_t, const Tuple &pick) {
    std::vector<std::vector<int>> sets(r);
    std::vector<int> pairs;
    for (int i = 0; i < r; ++i) {
      sets[i] = options[i][pick[i]];
      if (sets[i].size() == 2)
        pairs.push_back(i);
    }
    const int p = static_cast<int>(pairs.size());
    if (p < k)
      return;
    Tuple base(r), alt(r);
    for (int i = 0; i < r; ++i) {
      base[i] = sets[i][0];
      alt[i] = sets[i].back();
    }
    for (unsigned subset = 0; subset < (1u << p); ++subset) {
      if (__builtin_popcount(subset) != k)
        continue;
      std::vector<int> chosen;
      for (int j = 0; j < p; ++j)
        if (subset >> j & 1)
          chosen.push_back(pairs[j]);
      for (unsigned orient = 0; orient < (1u << k); ++orient) {
        Tuple marked = base;
        for (int j = 0; j < k; ++j)
          marked[chosen[j]] = orient >> j & 1 ? sets[chosen[j]][1] : sets[chosen[j]][0];
        bool ok = true;
        Value first = 0;
        bool uniform = true;
        for_each_in_box(base, alt, pairs, [&](const Tuple &t) {
          bool match = true;
          for (int i : chosen)
            match = match && t[i] == marked[i];
          Value v = rel(t);
          if ((v != 0) != match) {
            ok = false;
            return false;
          }
          if (v != 0) {
            if (first == 0)
              first = v;
            else if (v != first)
              uniform = false;
          }
          return true;
        });
        if (!ok)
          continue;
        RestrictionWitness w;
        w.sets = sets;
        w.distinguished = chosen;
        w.marked = marked;
        w.uniform = uniform;
        found.push_back(std::move(w));
      }
    }
  });
  return found;
}

int hat_c(const ValuedRelation &rel) {
  const int c = max_and_arity(rel).c;
  for (const auto &w : generalized_ands(rel, c))
    if (!w.uniform)
      return c + 1;
  return c;
}

} // namespace sparsecsp
