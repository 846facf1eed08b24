#pragma once

#include "sparsecsp/histogram.hpp"
#include "sparsecsp/relation_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sparsecsp {

int precise_plentifulness(const SymmetricValuedRelation &sym);

bool is_tight(const SymmetricValuedRelation &sym, const Histogram &h, int d);
std::vector<Histogram> tight_set(const SymmetricValuedRelation &sym, int d, int k);

bool is_rigid(const SymmetricValuedRelation &sym, const Histogram &h, int d,
              const SymbolSet &symbols);

// h with the counts of d and e exchanged.
Histogram swap_symbols(const Histogram &h, int d, int e);

SymbolSet uncontrolled(const SymmetricValuedRelation &sym, const Histogram &h,
                       int d);

// g spliced into h on the given symbols: counts from g (indexed by position in
// `symbols`) on those symbols, from h elsewhere.
Histogram splice(const Histogram &g, const SymbolSet &symbols, const Histogram &h);

struct MarginalPredicate {
  SymbolSet symbols;
  // Over |symbols| local symbols; local symbol j stands for symbols[j].
  SymmetricValuedRelation table;
  bool uniform = true;
};

MarginalPredicate marginal_predicate(const SymmetricValuedRelation &sym,
                                     const Histogram &h, const SymbolSet &symbols);

struct SvrCertificate {
  Histogram h;
  int symbol = 0;
  SymbolSet symbols;
  Histogram g, g_alt;
  Value value = 0, value_alt = 0;
};

struct SvrUniformity {
  bool uniform = true;
  std::optional<SvrCertificate> certificate;
};

SvrUniformity is_marginally_uniform_svr(const SymmetricValuedRelation &sym);
SvrUniformity is_marginally_uniform_svr(const SymmetricValuedRelation &sym, int k);

struct VrCertificate {
  Histogram h;
  int symbol = 0;
  SymbolSet symbols;
  Tuple s, t;
  Value value_s = 0, value_t = 0;
};

struct VrUniformity {
  bool uniform = true;
  std::optional<VrCertificate> certificate;
};

VrUniformity is_marginally_uniform_vr(const ValuedRelation &rel);

// Tuple equivalence used by the valued sandwich: same positions carry symbols
// of E, and positions outside E agree.
bool tuple_equivalent(const Tuple &s, const Tuple &t, const SymbolSet &symbols);

struct SymmetricSandwich {
  SymmetricValuedRelation lower;
  SymmetricValuedRelation upper;
};

SymmetricSandwich svr_sandwich(const SymmetricValuedRelation &sym,
                               const SymbolSet &symbols);
Sandwich vr_sandwich(const ValuedRelation &rel, const SymbolSet &symbols);

struct TightGroup {
  int symbol = 0;
  int count = 0;
  std::vector<Histogram> members;
};

struct RigidRecord {
  Histogram h;
  int symbol = 0;
  SymbolSet symbols;
  MarginalPredicate marginal;
};

struct ExponentRule {
  int exponent = 0;
  int eps_power = 2;
  std::string source;
  std::string sampler; // iid | bundled | single-constraint
};

struct ClassificationReport {
  int arity = 0;
  std::vector<int> domains;
  bool uniform_model = false; // false for multi-sorted relations
  Value max_value = 0;
  std::size_t support_size = 0;
  bool constant_relation = false;

  int and_arity = 0;
  int and_arity_hat = 0;
  RestrictionWitness and_witness;
  std::optional<int> boolean_exponent;

  int plentifulness = 0;
  std::vector<TightGroup> tight;
  std::vector<RigidRecord> rigid;
  SvrUniformity svr;
  VrUniformity vr;
  int case_id = 0;

  ExponentRule uniform_rule;
  ExponentRule rpartite_rule;
  std::string random_uniform_size;
  std::string random_rpartite_size;
};

// Full analysis; needs a shared domain.
ClassificationReport classify(const ValuedRelation &rel);
// AND-arity part only; works for multi-sorted relations.
ClassificationReport classify_rpartite(const ValuedRelation &rel);
// classify when possible, classify_rpartite otherwise.
ClassificationReport analyze(const ValuedRelation &rel);

} // namespace sparsecsp
