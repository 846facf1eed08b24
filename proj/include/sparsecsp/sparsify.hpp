#pragma once

#include "sparsecsp/histogram_core.hpp"
#include "sparsecsp/instance.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace sparsecsp {

enum class SamplerMode { iid, bundled, keep_all, single_constraint };

std::string to_string(SamplerMode mode);

constexpr double kDefaultKappa = 8.0;

struct PlanRequest {
  ModelKind kind = ModelKind::uniform;
  int n = 0;
  std::uint64_t m = 0;
  Rational total_weight{0};
  Rational eps{1, 4};
  double kappa = kDefaultKappa;
  // Complete instances use the complete-instance exponent; random ones the
  // random-model thresholds.
  bool complete = true;
};

struct SamplingPlan {
  SamplerMode mode = SamplerMode::keep_all;
  // Draws: clauses for iid, r-sets for bundled, m for keep-all.
  std::uint64_t samples = 0;
  // Uncapped kappa * n^exponent * ln n / eps^p.
  std::uint64_t recommended = 0;
  // Weight given to each output clause.
  Rational weight{1};
  std::uint64_t output_clauses = 0;
  std::string source;
  int exponent = 0;
  int eps_power = 2;
  double kappa = kDefaultKappa;
  Rational eps{1, 4};
  // Bundled plans whose sample count reached the number of r-sets keep every
  // r-set once instead of sampling.
  bool whole_universe = false;
  bool indeterminate = false;
  bool no_nontrivial = false;
};

SamplingPlan plan(const ClassificationReport &report, const PlanRequest &request);
PlanRequest plan_request_for(const Instance &inst, const Rational &eps,
                             double kappa, bool complete);

// draw(j, bound) returns the j-th choice in [0, bound).
using ChoiceSource = std::function<std::uint64_t(std::uint64_t, std::uint64_t)>;

// `samples` clauses drawn uniformly with replacement from the clause list;
// a kept clause of weight w gets weight w * |C| / samples.
Instance iid_sample(const Instance &inst, std::uint64_t samples, std::uint64_t seed);
Instance iid_sample_with(const Instance &inst, std::uint64_t samples,
                         const ChoiceSource &draw);

// `samples` distinct clause positions chosen uniformly without replacement;
// a kept clause of weight w gets weight w * |C| / samples. Applied to m
// i.i.d. draws this gives the same distribution as `samples` direct draws.
Instance subsample(const Instance &inst, std::uint64_t samples, std::uint64_t seed);
Instance subsample_with(const Instance &inst, std::uint64_t samples,
                        const ChoiceSource &draw);

// `samples` r-sets drawn with replacement from a complete uniform or
// symmetric-set instance; every ordering of each set is emitted for uniform
// output. Each output clause has weight C(n,r) / samples.
Instance bundled_sample(const Instance &complete_inst, std::uint64_t samples,
                        std::uint64_t seed);

// Carries out a plan on `inst`. For bundled plans the r-sets come from the
// complete instance and are rescaled to the total weight of `inst`.
Instance apply_plan(const SamplingPlan &p, const Instance &inst, std::uint64_t seed);

double failure_probability_bound(double samples, double wt, double max_value,
                                 double m, double eps);

} // namespace sparsecsp
