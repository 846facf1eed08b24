#include "sparsecsp/demo.hpp"

#include "sparsecsp/error.hpp"

#include <cmath>
#include <map>
#include <ostream>

namespace sparsecsp {

namespace {

ValuedRelation r2_relation() {
  return ValuedRelation::from_support(
      4, 3, {{0, 0, 2, 2}, {1, 1, 2, 2}, {0, 2, 2, 2}, {1, 2, 2, 2}, {0, 1, 2, 2}, {2, 2, 0, 1}});
}

DemoTrial run_trial(const std::string &regime, std::uint64_t seed,
                    const ValuedRelation &rel, const ClassificationReport &rep,
                    const Instance &inst, bool complete_inst, const DemoConfig &cfg,
                    const Rational &eps) {
  DemoTrial t;
  t.regime = regime;
  t.seed = seed;
  t.m = inst.size();
  t.plan = plan(rep, plan_request_for(inst, eps, cfg.kappa, complete_inst));
  Instance sparse = apply_plan(t.plan, inst, seed);
  t.sparsifier_clauses = sparse.coalesced().size();
  t.verify = exhaustive_verify(rel, inst, sparse, eps, cfg.enumeration);
  return t;
}

std::size_t needed(std::size_t seeds, std::size_t num, std::size_t den) {
  return (seeds * num + den - 1) / den;
}

DemoResult demo_r2(const DemoConfig &cfg) {
  DemoResult res;
  res.name = "r2-nonmonotone";
  res.n = cfg.n ? cfg.n : 10;
  res.eps = cfg.eps != Rational(0) ? cfg.eps : Rational(1, 2);
  const ValuedRelation rel = r2_relation();
  const ClassificationReport rep = classify(rel);
  const int r = rel.arity(), k = rep.plentifulness, n = res.n;
  const double eps = to_double(res.eps);
  const double upper = std::pow(n, r - k + 1);
  const auto m_low = static_cast<std::uint64_t>(std::floor(upper / cfg.kappa));
  const auto m_high = static_cast<std::uint64_t>(std::ceil(cfg.kappa * upper / (eps * eps)));
  const double size_bound = factorial(r) * cfg.kappa * std::pow(n, r - k) * std::log(n);
  res.notes.push_back("relation: 4-ary over {0,1,2}, case " + std::to_string(rep.case_id) +
                      ", k = " + std::to_string(k));
  res.notes.push_back("predicted: keep-all for m <= n^" + std::to_string(r - k + 1) +
                      "/kappa = " + std::to_string(m_low) + ", bundled of size <= " +
                      std::to_string(static_cast<long long>(size_bound)) +
                      " for m >= kappa*n^" + std::to_string(r - k + 1) +
                      "/eps^2 = " + std::to_string(m_high));
  for (std::uint64_t seed : cfg.seeds) {
    Instance low = random_instance(ModelKind::uniform, n, r, m_low, seed);
    DemoTrial a = run_trial("below", seed, rel, rep, low, false, cfg, res.eps);
    a.ok = a.plan.mode == SamplerMode::keep_all && a.plan.no_nontrivial && a.verify.pass;
    Instance high = random_instance(ModelKind::uniform, n, r, m_high, seed);
    DemoTrial b = run_trial("above", seed, rel, rep, high, false, cfg, res.eps);
    b.ok = b.plan.mode == SamplerMode::bundled &&
           static_cast<double>(b.sparsifier_clauses) <= size_bound && b.verify.pass;
    res.seeds_ok += a.ok && b.ok;
    res.trials.push_back(std::move(a));
    res.trials.push_back(std::move(b));
  }
  res.seeds_needed = needed(cfg.seeds.size(), 8, 10);
  res.ok = res.seeds_ok >= res.seeds_needed;
  return res;
}

DemoResult demo_cut(const DemoConfig &cfg) {
  DemoResult res;
  res.name = "cut";
  res.n = cfg.n ? cfg.n : 14;
  res.eps = cfg.eps != Rational(0) ? cfg.eps : Rational(1, 4);
  const ValuedRelation rel = ValuedRelation::from_support(2, 2, {{0, 1}, {1, 0}});
  const ClassificationReport rep = classify(rel);
  const Instance inst = complete(ModelKind::uniform, res.n, rel);
  res.notes.push_back("relation: cut, complete uniform instance with " +
                      std::to_string(inst.size()) + " clauses");
  std::size_t sampled_ok = 0;
  for (std::uint64_t seed : cfg.seeds) {
    DemoTrial planned = run_trial("planned", seed, rel, rep, inst, true, cfg, res.eps);
    planned.ok = planned.verify.pass;
    // The sampler run at the recommended draw count, without the cap at m.
    DemoTrial drawn = planned;
    drawn.regime = "draws";
    drawn.plan.mode = SamplerMode::iid;
    drawn.plan.samples = planned.plan.recommended;
    Instance sparse = iid_sample(inst, planned.plan.recommended, seed);
    drawn.sparsifier_clauses = sparse.coalesced().size();
    drawn.verify = exhaustive_verify(rel, inst, sparse, res.eps, cfg.enumeration);
    drawn.ok = drawn.verify.pass;
    res.seeds_ok += planned.ok;
    sampled_ok += drawn.ok;
    res.trials.push_back(std::move(planned));
    res.trials.push_back(std::move(drawn));
  }
  res.notes.push_back("uncapped draws passing: " + std::to_string(sampled_ok) + "/" +
                      std::to_string(cfg.seeds.size()));
  res.seeds_needed = needed(cfg.seeds.size(), 9, 10);
  res.ok = res.seeds_ok >= res.seeds_needed && sampled_ok >= res.seeds_needed;
  return res;
}

DemoResult demo_full(const DemoConfig &cfg) {
  DemoResult res;
  res.name = "full-relation";
  res.n = cfg.n ? cfg.n : 8;
  res.eps = cfg.eps != Rational(0) ? cfg.eps : Rational(1, 4);
  ValuedRelation rel(3, 2);
  for (std::size_t i = 0; i < rel.table_size(); ++i)
    rel.set_index(i, 1);
  const ClassificationReport rep = classify(rel);
  const Instance inst = complete(ModelKind::uniform, res.n, rel);
  res.notes.push_back("relation: all of {0,1}^3, complete uniform instance with " +
                      std::to_string(inst.size()) + " clauses");
  for (std::uint64_t seed : cfg.seeds) {
    DemoTrial t = run_trial("planned", seed, rel, rep, inst, true, cfg, res.eps);
    t.ok = t.plan.mode == SamplerMode::single_constraint && t.verify.pass &&
           t.verify.max_deviation == 0;
    res.seeds_ok += t.ok;
    res.trials.push_back(std::move(t));
  }
  res.seeds_needed = cfg.seeds.size();
  res.ok = res.seeds_ok == res.seeds_needed;
  return res;
}

} // namespace

const std::vector<std::string> &demo_names() {
  static const std::vector<std::string> names{"r2-nonmonotone", "cut", "full-relation"};
  return names;
}

DemoResult run_demo(const std::string &name, const DemoConfig &config) {
  if (name == "r2-nonmonotone")
    return demo_r2(config);
  if (name == "cut")
    return demo_cut(config);
  if (name == "full-relation")
    return demo_full(config);
  throw PreconditionError("unknown demo '" + name + "'");
}

void print_demo(std::ostream &out, const DemoResult &res) {
  out << "demo " << res.name << " (n=" << res.n << ", eps=" << to_string(res.eps) << ")\n";
  for (const auto &note : res.notes)
    out << "  " << note << '\n';
  for (const auto &t : res.trials) {
    out << "  seed " << t.seed << " " << t.regime << ": m=" << t.m
        << " plan=" << to_string(t.plan.mode);
    if (t.plan.no_nontrivial)
      out << " (no nontrivial sparsifier)";
    if (t.plan.indeterminate)
      out << " (indeterminate band)";
    out << " recommended=" << t.plan.recommended << " kept=" << t.sparsifier_clauses
        << " deviation=" << t.verify.max_deviation.convert_to<double>()
        << (t.ok ? " ok" : " MISMATCH") << '\n';
  }
  out << "  seeds as predicted: " << res.seeds_ok << "/"
      << (res.trials.empty() ? 0 : res.trials.size() / (res.name == "full-relation" ? 1 : 2))
      << " (need " << res.seeds_needed << ")\n";
  out << (res.ok ? "result: as predicted\n" : "result: NOT as predicted\n");
}

} // namespace sparsecsp
