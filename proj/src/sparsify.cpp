#include "sparsecsp/sparsify.hpp"

#include "sparsecsp/error.hpp"
#include "sparsecsp/histogram.hpp"
#include "sparsecsp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparsecsp {

std::string to_string(SamplerMode mode) {
  switch (mode) {
  case SamplerMode::iid:
    return "iid";
  case SamplerMode::bundled:
    return "bundled";
  case SamplerMode::keep_all:
    return "keep-all";
  case SamplerMode::single_constraint:
    return "single-constraint";
  }
  return "?";
}

namespace {

std::uint64_t recommended_samples(double kappa, int n, int exponent, int eps_power,
                                  const Rational &eps) {
  long double x = kappa * std::pow(static_cast<long double>(n), exponent) *
                  std::log(static_cast<long double>(n)) /
                  std::pow(static_cast<long double>(to_double(eps)), eps_power);
  if (!(x < 4e18L))
    return static_cast<std::uint64_t>(4e18);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(x)));
}

SamplingPlan keep_all(SamplingPlan p, std::uint64_t m) {
  p.mode = SamplerMode::keep_all;
  p.samples = m;
  p.output_clauses = m;
  p.weight = Rational(1);
  p.whole_universe = false;
  return p;
}

} // namespace

PlanRequest plan_request_for(const Instance &inst, const Rational &eps,
                             double kappa, bool complete) {
  PlanRequest req;
  req.kind = inst.kind();
  req.n = inst.n();
  req.m = inst.size();
  req.total_weight = inst.total_weight();
  req.eps = eps;
  req.kappa = kappa;
  req.complete = complete;
  return req;
}

SamplingPlan plan(const ClassificationReport &report, const PlanRequest &req) {
  if (req.eps <= Rational(0) || req.eps >= Rational(1))
    throw PreconditionError("eps must lie in (0, 1)");
  if (req.kappa <= 0)
    throw PreconditionError("kappa must be positive");
  if (req.m == 0)
    throw PreconditionError("cannot plan for an empty instance");
  if (req.kind != ModelKind::rpartite && !report.uniform_model)
    throw DomainError("uniform-model planning needs a single-domain relation");
  const ExponentRule &rule =
      req.kind == ModelKind::rpartite ? report.rpartite_rule : report.uniform_rule;
  const int r = report.arity;

  SamplingPlan p;
  p.source = rule.source;
  p.exponent = rule.exponent;
  p.eps_power = rule.eps_power;
  p.kappa = req.kappa;
  p.eps = req.eps;

  if (rule.sampler == "single-constraint") {
    p.mode = SamplerMode::single_constraint;
    p.samples = 1;
    p.recommended = 1;
    p.output_clauses = 1;
    p.weight = req.total_weight;
    return p;
  }

  p.recommended = recommended_samples(req.kappa, req.n, p.exponent, p.eps_power, req.eps);
  bool bundled = rule.sampler == "bundled" && req.kind != ModelKind::rpartite;
  if (bundled && !req.complete) {
    const int k = report.plentifulness;
    const long double upper = std::pow(static_cast<long double>(req.n), r - k + 1);
    const long double eps = to_double(req.eps);
    const long double m = static_cast<long double>(req.m);
    if (m < req.kappa * upper / (eps * eps)) {
      p = keep_all(p, req.m);
      if (m <= upper / req.kappa)
        p.no_nontrivial = true;
      else
        p.indeterminate = true;
      return p;
    }
  }

  if (bundled) {
    const std::uint64_t sets = binomial(req.n, r);
    const std::uint64_t per_set = req.kind == ModelKind::uniform ? factorial(r) : 1;
    p.mode = SamplerMode::bundled;
    p.samples = std::min(p.recommended, sets);
    p.whole_universe = p.recommended >= sets;
    p.output_clauses = checked_mul(p.samples, per_set);
    if (p.output_clauses >= req.m)
      return keep_all(p, req.m);
    p.weight = req.total_weight /
               Rational(static_cast<std::int64_t>(p.output_clauses));
    return p;
  }

  if (p.recommended >= req.m)
    return keep_all(p, req.m);
  p.mode = SamplerMode::iid;
  p.samples = p.recommended;
  p.output_clauses = p.samples;
  p.weight = req.total_weight / Rational(static_cast<std::int64_t>(p.samples));
  return p;
}

Instance iid_sample_with(const Instance &inst, std::uint64_t samples,
                         const ChoiceSource &draw) {
  if (samples < 1)
    throw PreconditionError("need at least one sample");
  if (inst.size() == 0)
    throw PreconditionError("cannot sample from an empty instance");
  const auto m = static_cast<std::int64_t>(inst.size());
  const Rational factor(m, static_cast<std::int64_t>(samples));
  Instance out(inst.kind(), inst.n(), inst.arity());
  for (std::uint64_t j = 0; j < samples; ++j) {
    const Clause &c = inst.clauses()[draw(j, inst.size())];
    out.add(c.vars, c.weight * factor);
  }
  return out;
}

Instance iid_sample(const Instance &inst, std::uint64_t samples, std::uint64_t seed) {
  const CounterRng rng(seed, 0x494944);
  return iid_sample_with(inst, samples, [&](std::uint64_t j, std::uint64_t bound) {
    return rng.below(j, bound);
  });
}

Instance subsample_with(const Instance &inst, std::uint64_t samples,
                        const ChoiceSource &draw) {
  if (samples < 1 || samples > inst.size())
    throw PreconditionError("subsample size must lie in [1, |C|]");
  const auto m = static_cast<std::int64_t>(inst.size());
  const Rational factor(m, static_cast<std::int64_t>(samples));
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Instance out(inst.kind(), inst.n(), inst.arity());
  // Partial Fisher-Yates: draw j picks among the positions not yet taken.
  for (std::uint64_t j = 0; j < samples; ++j) {
    std::swap(order[j], order[j + draw(j, inst.size() - j)]);
    const Clause &c = inst.clauses()[order[j]];
    out.add(c.vars, c.weight * factor);
  }
  return out;
}

Instance subsample(const Instance &inst, std::uint64_t samples, std::uint64_t seed) {
  const CounterRng rng(seed, 0x535542);
  return subsample_with(inst, samples, [&](std::uint64_t j, std::uint64_t bound) {
    return rng.below(j, bound);
  });
}

Instance bundled_sample(const Instance &complete_inst, std::uint64_t samples,
                        std::uint64_t seed) {
  if (complete_inst.kind() == ModelKind::rpartite || !is_complete(complete_inst))
    throw PreconditionError(
        "bundled sampling needs a complete uniform or symmetric-set instance");
  if (samples < 1)
    throw PreconditionError("need at least one sample");
  const int n = complete_inst.n(), r = complete_inst.arity();
  const std::uint64_t sets = binomial(n, r);
  const Rational weight(static_cast<std::int64_t>(sets),
                        static_cast<std::int64_t>(samples));
  const CounterRng rng(seed, 0x42554e44);
  Instance out(complete_inst.kind(), n, r);
  for (std::uint64_t j = 0; j < samples; ++j) {
    std::vector<int> set = decode_clause(ModelKind::symset, n, r, rng.below(j, sets));
    if (complete_inst.kind() == ModelKind::symset) {
      out.add(set, weight);
      continue;
    }
    do {
      out.add(set, weight);
    } while (std::next_permutation(set.begin(), set.end()));
  }
  return out;
}

Instance apply_plan(const SamplingPlan &p, const Instance &inst, std::uint64_t seed) {
  switch (p.mode) {
  case SamplerMode::keep_all:
    return inst;
  case SamplerMode::single_constraint: {
    Instance out(inst.kind(), inst.n(), inst.arity());
    out.add(inst.clauses().front().vars, inst.total_weight());
    return out;
  }
  case SamplerMode::iid:
    return iid_sample(inst, p.samples, seed);
  case SamplerMode::bundled: {
    const ModelKind kind =
        inst.kind() == ModelKind::symset ? ModelKind::symset : ModelKind::uniform;
    const Instance base = complete(kind, inst.n(), inst.arity());
    Instance sample = p.whole_universe ? base : bundled_sample(base, p.samples, seed);
    return sample.scaled(inst.total_weight() / base.total_weight());
  }
  }
  return inst;
}

double failure_probability_bound(double samples, double wt, double max_value,
                                 double m, double eps) {
  return 2.0 * std::exp(-(eps * eps * samples * wt) / (3.0 * max_value * m));
}

} // namespace sparsecsp
