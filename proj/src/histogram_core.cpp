#include "sparsecsp/histogram_core.hpp"

#include "sparsecsp/error.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace sparsecsp {

namespace {

std::vector<SymbolSet> subsets_containing(int domain_size, int d) {
  std::vector<SymbolSet> out;
  for (unsigned mask = 1; mask < (1u << domain_size); ++mask) {
    if (!(mask >> d & 1))
      continue;
    SymbolSet e;
    for (int s = 0; s < domain_size; ++s)
      if (mask >> s & 1)
        e.push_back(s);
    out.push_back(std::move(e));
  }
  return out;
}

bool contains(const SymbolSet &symbols, int s) {
  return std::find(symbols.begin(), symbols.end(), s) != symbols.end();
}

void require_support(const SymmetricValuedRelation &sym) {
  if (sym.empty_support())
    throw EmptySupportError("symmetric relation has empty support");
}

} // namespace

int precise_plentifulness(const SymmetricValuedRelation &sym) {
  require_support(sym);
  const auto supp = sym.support();
  int k = std::numeric_limits<int>::max();
  for (int d = 0; d < sym.domain_size(); ++d)
    for (const Histogram &h : supp) {
      int best = 0;
      for (const Histogram &g : supp)
        if (below_except(g, h, d))
          best = std::max(best, g[d]);
      k = std::min(k, best);
    }
  return k;
}

bool is_tight(const SymmetricValuedRelation &sym, const Histogram &h, int d) {
  if (sym(h) == 0)
    return false;
  for (const Histogram &g : sym.support())
    if (g != h && below_except(g, h, d))
      return false;
  return true;
}

std::vector<Histogram> tight_set(const SymmetricValuedRelation &sym, int d, int k) {
  std::vector<Histogram> out;
  for (const Histogram &h : sym.support())
    if (h[d] == k && is_tight(sym, h, d))
      out.push_back(h);
  return out;
}

bool is_rigid(const SymmetricValuedRelation &sym, const Histogram &h, int d,
              const SymbolSet &symbols) {
  if (!contains(symbols, d))
    throw PreconditionError("rigidity needs d in E");
  for (int e : symbols)
    if (e != d && h[e] != 0)
      return false;
  for (const Histogram &g : sym.support()) {
    bool below = true;
    for (int e = 0; e < sym.domain_size() && below; ++e)
      if (!contains(symbols, e) && g[e] > h[e])
        below = false;
    if (below && mass(g, symbols) != h[d])
      return false;
  }
  return true;
}

Histogram swap_symbols(const Histogram &h, int d, int e) {
  Histogram out = h;
  std::swap(out[d], out[e]);
  return out;
}

SymbolSet uncontrolled(const SymmetricValuedRelation &sym, const Histogram &h,
                       int d) {
  if (!is_tight(sym, h, d))
    throw PreconditionError("histogram " + format_histogram(h) +
                            " is not tight for symbol " + std::to_string(d));
  SymbolSet out;
  for (int e = 0; e < sym.domain_size(); ++e) {
    SymbolSet pair = e == d ? SymbolSet{d} : SymbolSet{std::min(d, e), std::max(d, e)};
    if (is_rigid(sym, h, d, pair))
      out.push_back(e);
  }
  // Swap property: when h sits at the plentifulness level, every uncontrolled
  // symbol receives a tight histogram by exchanging counts.
  if (h[d] == precise_plentifulness(sym))
    for (int e : out)
      if (!is_tight(sym, swap_symbols(h, d, e), e))
        throw std::logic_error("swap property violated for " + format_histogram(h));
  return out;
}

Histogram splice(const Histogram &g, const SymbolSet &symbols, const Histogram &h) {
  Histogram out = h;
  for (std::size_t j = 0; j < symbols.size(); ++j)
    out[symbols[j]] = g[j];
  return out;
}

MarginalPredicate marginal_predicate(const SymmetricValuedRelation &sym,
                                     const Histogram &h, const SymbolSet &symbols) {
  int anchor = -1;
  for (int d : symbols)
    if (is_tight(sym, h, d) && is_rigid(sym, h, d, symbols)) {
      anchor = d;
      break;
    }
  if (anchor < 0)
    throw PreconditionError("histogram " + format_histogram(h) +
                            " is not rigid for any tight symbol of E");
  const int k = h[anchor];
  MarginalPredicate mp;
  mp.symbols = symbols;
  mp.table = SymmetricValuedRelation(static_cast<int>(symbols.size()), k);
  for (std::size_t i = 0; i < mp.table.size(); ++i)
    mp.table.set_index(i, sym(splice(mp.table.histograms()[i], symbols, h)));
  mp.uniform = mp.table.is_constant();
  return mp;
}

SvrUniformity is_marginally_uniform_svr(const SymmetricValuedRelation &sym, int k) {
  SvrUniformity out;
  for (int d = 0; d < sym.domain_size(); ++d)
    for (const Histogram &h : tight_set(sym, d, k))
      for (const SymbolSet &e : subsets_containing(sym.domain_size(), d)) {
        if (!is_rigid(sym, h, d, e))
          continue;
        MarginalPredicate mp = marginal_predicate(sym, h, e);
        if (mp.uniform)
          continue;
        const auto &hs = mp.table.histograms();
        for (std::size_t i = 1; i < hs.size(); ++i)
          if (mp.table.at_index(i) != mp.table.at_index(0)) {
            out.uniform = false;
            out.certificate = SvrCertificate{h, d, e, hs[0], hs[i],
                                             mp.table.at_index(0),
                                             mp.table.at_index(i)};
            return out;
          }
      }
  return out;
}

SvrUniformity is_marginally_uniform_svr(const SymmetricValuedRelation &sym) {
  return is_marginally_uniform_svr(sym, precise_plentifulness(sym));
}

bool tuple_equivalent(const Tuple &s, const Tuple &t, const SymbolSet &symbols) {
  if (s.size() != t.size())
    return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool in_s = contains(symbols, s[i]), in_t = contains(symbols, t[i]);
    if (in_s != in_t || (!in_s && s[i] != t[i]))
      return false;
  }
  return true;
}

VrUniformity is_marginally_uniform_vr(const ValuedRelation &rel) {
  const SymmetricValuedRelation sym = symmetrize(rel);
  const int k = precise_plentifulness(sym);
  const int D = sym.domain_size();
  const int r = rel.arity();
  VrUniformity out;
  for (int d = 0; d < D; ++d)
    for (const Histogram &h : tight_set(sym, d, k))
      for (const SymbolSet &e : subsets_containing(D, d)) {
        if (!is_rigid(sym, h, d, e))
          continue;
        std::optional<VrCertificate> cert;
        for_each_tuple(rel.domains(), [&](std::size_t sidx, const Tuple &s) {
          if (cert || histogram_of(s, D) != h)
            return;
          std::vector<int> radix(r, 1);
          for (int i = 0; i < r; ++i)
            if (contains(e, s[i]))
              radix[i] = static_cast<int>(e.size());
          for_each_tuple(radix, [&](std::size_t, const Tuple &pick) {
            if (cert)
              return;
            Tuple t = s;
            for (int i = 0; i < r; ++i)
              if (radix[i] > 1)
                t[i] = e[pick[i]];
            if (rel(t) != rel.at_index(sidx))
              cert = VrCertificate{h, d, e, s, t, rel.at_index(sidx), rel(t)};
          });
        });
        if (cert) {
          out.uniform = false;
          out.certificate = std::move(cert);
          return out;
        }
      }
  return out;
}

SymmetricSandwich svr_sandwich(const SymmetricValuedRelation &sym,
                               const SymbolSet &symbols) {
  std::map<Histogram, std::pair<Value, Value>> bounds;
  auto key = [&](const Histogram &h) {
    Histogram k = h;
    for (int e : symbols)
      k[e] = 0;
    return k;
  };
  for (std::size_t i = 0; i < sym.size(); ++i) {
    auto [it, fresh] = bounds.try_emplace(key(sym.histograms()[i]),
                                          sym.at_index(i), sym.at_index(i));
    if (!fresh) {
      it->second.first = std::min(it->second.first, sym.at_index(i));
      it->second.second = std::max(it->second.second, sym.at_index(i));
    }
  }
  SymmetricSandwich out{SymmetricValuedRelation(sym.domain_size(), sym.arity()),
                        SymmetricValuedRelation(sym.domain_size(), sym.arity())};
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const auto &b = bounds.at(key(sym.histograms()[i]));
    out.lower.set_index(i, b.first);
    out.upper.set_index(i, b.second);
  }
  return out;
}

Sandwich vr_sandwich(const ValuedRelation &rel, const SymbolSet &symbols) {
  std::map<Tuple, std::pair<Value, Value>> bounds;
  auto key = [&](const Tuple &t) {
    Tuple k = t;
    for (int &s : k)
      if (contains(symbols, s))
        s = -1;
    return k;
  };
  for_each_tuple(rel.domains(), [&](std::size_t idx, const Tuple &t) {
    Value v = rel.at_index(idx);
    auto [it, fresh] = bounds.try_emplace(key(t), v, v);
    if (!fresh) {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  });
  Sandwich out{ValuedRelation(rel.domains()), ValuedRelation(rel.domains())};
  for_each_tuple(rel.domains(), [&](std::size_t idx, const Tuple &t) {
    const auto &b = bounds.at(key(t));
    out.lower.set_index(idx, b.first);
    out.upper.set_index(idx, b.second);
  });
  return out;
}

namespace {

std::string power_of_n(int e) {
  if (e == 0)
    return "1";
  if (e == 1)
    return "n";
  return "n^" + std::to_string(e);
}

void fill_rpartite(const ValuedRelation &rel, ClassificationReport &rep) {
  rep.arity = rel.arity();
  rep.domains = rel.domains();
  rep.max_value = rel.max_value();
  rep.support_size = rel.support_size();
  rep.constant_relation = rel.is_constant_nonzero();
  AndRestriction andr = max_and_arity(rel);
  rep.and_arity = andr.c;
  rep.and_witness = andr.witness;
  rep.and_arity_hat = hat_c(rel);
  if (rel.is_boolean() && rel.is_zero_one())
    rep.boolean_exponent = boolean_uniform_exponent(rel);

  ExponentRule &rule = rep.rpartite_rule;
  if (rep.constant_relation) {
    rule = {0, 2, "single-constraint", "single-constraint"};
  } else if (rep.and_arity_hat == rep.and_arity) {
    rule = {rep.and_arity, 3, "and-arity", "iid"};
  } else {
    rule = {rep.and_arity_hat, 2, "and-arity-plus-one", "iid"};
  }
  rep.random_rpartite_size = "min(m, " + power_of_n(rule.exponent) + ")";
}

} // namespace

ClassificationReport classify_rpartite(const ValuedRelation &rel) {
  ClassificationReport rep;
  fill_rpartite(rel, rep);
  return rep;
}

ClassificationReport classify(const ValuedRelation &rel) {
  if (rel.empty_support())
    throw EmptySupportError("relation has empty support");
  const SymmetricValuedRelation sym = symmetrize(rel);
  ClassificationReport rep;
  fill_rpartite(rel, rep);
  rep.uniform_model = true;
  const int r = rel.arity();
  const int D = sym.domain_size();
  const int k = precise_plentifulness(sym);
  rep.plentifulness = k;

  for (int d = 0; d < D; ++d)
    for (int kk = 0; kk <= r; ++kk) {
      auto members = tight_set(sym, d, kk);
      if (!members.empty())
        rep.tight.push_back({d, kk, std::move(members)});
    }
  for (int d = 0; d < D; ++d)
    for (const Histogram &h : tight_set(sym, d, k))
      for (const SymbolSet &e : subsets_containing(D, d))
        if (is_rigid(sym, h, d, e))
          rep.rigid.push_back({h, d, e, marginal_predicate(sym, h, e)});

  rep.svr = is_marginally_uniform_svr(sym, k);
  rep.vr = is_marginally_uniform_vr(rel);
  if (rep.vr.uniform && !rep.svr.uniform)
    throw std::logic_error("valued marginal uniformity without symmetric uniformity");
  rep.case_id = !rep.svr.uniform ? 1 : rep.vr.uniform ? 2 : 3;

  ExponentRule &rule = rep.uniform_rule;
  if (rep.constant_relation) {
    rule = {0, 2, "single-constraint", "single-constraint"};
  } else if (rep.boolean_exponent) {
    // Boolean 0/1 relations: the degree bound gives the same exponent as the
    // histogram analysis with a quadratic eps dependence.
    int e = *rep.boolean_exponent == 0 ? 1 : *rep.boolean_exponent;
    int expected = rep.case_id == 1 ? r - k + 1 : r - k;
    if (e != expected)
      throw std::logic_error("Boolean exponent disagrees with histogram exponent");
    rule = {e, 2, "boolean-degree", "iid"};
  } else if (rep.case_id == 1) {
    rule = {r - k + 1, 2, "coarse-iid", "iid"};
  } else if (rep.case_id == 2) {
    rule = {r - k, 3, "marginal-iid", "iid"};
  } else {
    rule = {r - k, 3, "marginal-bundled", "bundled"};
  }
  if (rep.case_id == 3 && !rep.constant_relation) {
    std::string hi = power_of_n(r - k + 1);
    rep.random_uniform_size = "m <= " + hi + "/kappa: m (keep-all); m >= kappa*" + hi +
                              "/eps^2: " + power_of_n(r - k) +
                              " (bundled); otherwise indeterminate";
  } else {
    rep.random_uniform_size = "min(m, " + power_of_n(rule.exponent) + ")";
  }
  return rep;
}

ClassificationReport analyze(const ValuedRelation &rel) {
  if (rel.empty_support())
    throw EmptySupportError("relation has empty support");
  if (!rel.single_domain())
    return classify_rpartite(rel);
  return classify(rel);
}

} // namespace sparsecsp
