#pragma once

#include "sparsecsp/sparsify.hpp"
#include "sparsecsp/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsecsp {

struct DemoConfig {
  int n = 0;           // 0: the demo's default
  Rational eps{0};     // 0: the demo's default
  double kappa = kDefaultKappa;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EnumerationOptions enumeration;
};

struct DemoTrial {
  std::string regime;
  std::uint64_t seed = 0;
  std::uint64_t m = 0;
  SamplingPlan plan;
  std::size_t sparsifier_clauses = 0;
  VerifyReport verify;
  bool ok = false;
};

struct DemoResult {
  std::string name;
  int n = 0;
  Rational eps{0};
  std::vector<std::string> notes;
  std::vector<DemoTrial> trials;
  // Seeds for which every regime of the demo behaved as predicted.
  std::size_t seeds_ok = 0;
  std::size_t seeds_needed = 0;
  bool ok = false;
};

const std::vector<std::string> &demo_names();
// Throws PreconditionError for unknown names.
DemoResult run_demo(const std::string &name, const DemoConfig &config);
void print_demo(std::ostream &out, const DemoResult &result);

} // namespace sparsecsp
