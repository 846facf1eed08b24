#include "sparsecsp/demo.hpp"
#include "sparsecsp/error.hpp"
#include "sparsecsp/histogram_core.hpp"
#include "sparsecsp/instance.hpp"
#include "sparsecsp/relation_core.hpp"
#include "sparsecsp/report_io.hpp"
#include "sparsecsp/sparsify.hpp"
#include "sparsecsp/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

using namespace sparsecsp;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kSemantic = 3 };

struct Options {
  std::string relation, instance, sparsifier, out;
  int n = 0;
  std::uint64_t m = 0;
  int arity = 0;
  std::string eps = "1/4";
  std::uint64_t seed = 1;
  double kappa = kDefaultKappa;
  std::string kind = "uniform";
  unsigned threads = 0;
  std::uint64_t budget = kDefaultBudget;
  bool json = false;
  bool members = false;
  std::vector<std::uint64_t> thresholds;
  double lambda = 0;
  std::string dominant;
  std::string demo;
  int seeds = 10;
};

// Writes to --out when given, stdout otherwise.
template <class F> void emit(const Options &o, F &&write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(o.out);
  if (!f)
    throw Error("cannot write '" + o.out + "'");
  write(f);
}

void emit_doc(const Options &o, const nlohmann::ordered_json &doc) {
  emit(o, [&](std::ostream &out) {
    if (o.json)
      out << doc.dump(2) << '\n';
    else
      write_text(out, doc);
  });
}

EnumerationOptions enumeration(const Options &o) {
  EnumerationOptions e;
  e.budget = o.budget;
  e.threads = o.threads;
  return e;
}

Tuple parse_compact_tuple(const std::string &text) {
  Tuple t;
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      throw ParseError(0, "tuple '" + text + "' must be a string of digits");
    t.push_back(ch - '0');
  }
  return t;
}

int cmd_analyze(const Options &o) {
  ValuedRelation rel = load_relation(o.relation);
  emit_doc(o, to_json(analyze(rel)));
  return kOk;
}

int cmd_gen(const Options &o) {
  ModelKind kind = parse_model_kind(o.kind);
  int arity = o.arity;
  ValuedRelation rel;
  if (!o.relation.empty()) {
    rel = load_relation(o.relation);
    arity = rel.arity();
  }
  if (arity <= 0)
    throw PreconditionError("gen needs --arity or --relation");
  Instance inst = o.m == 0 ? complete(kind, o.n, arity)
                           : random_instance(kind, o.n, arity, o.m, o.seed);
  emit(o, [&](std::ostream &out) { write_instance(out, inst); });
  return kOk;
}

int cmd_sparsify(const Options &o) {
  ValuedRelation rel = load_relation(o.relation);
  Instance inst = load_instance(o.instance);
  if (inst.arity() != rel.arity())
    throw DomainError("instance arity does not match the relation");
  ClassificationReport rep = analyze(rel);
  SamplingPlan p =
      plan(rep, plan_request_for(inst, parse_rational(o.eps), o.kappa, is_complete(inst)));
  Instance sparse = apply_plan(p, inst, o.seed);
  emit(o, [&](std::ostream &out) { write_instance(out, sparse); });
  nlohmann::ordered_json doc = to_json(p);
  if (o.json)
    std::cerr << doc.dump(2) << '\n';
  else
    write_text(std::cerr, doc);
  return kOk;
}

int cmd_verify(const Options &o) {
  ValuedRelation rel = load_relation(o.relation);
  Instance inst = load_instance(o.instance);
  Instance sparse = load_instance(o.sparsifier);
  VerifyReport rep =
      exhaustive_verify(rel, inst, sparse, parse_rational(o.eps), enumeration(o));
  emit_doc(o, to_json(rep));
  return rep.pass ? kOk : kVerifyFail;
}

int cmd_census(const Options &o) {
  ValuedRelation rel = load_relation(o.relation);
  Instance inst = load_instance(o.instance);
  std::vector<std::uint64_t> thresholds = o.thresholds;
  if (o.lambda > 0) {
    // lambda * (n / max domain)^(r - c)
    int max_domain = 0;
    for (int d : rel.domains())
      max_domain = std::max(max_domain, d);
    int c = max_and_arity(rel).c;
    double base = static_cast<double>(inst.n()) / max_domain;
    thresholds.push_back(
        static_cast<std::uint64_t>(std::floor(o.lambda * std::pow(base, rel.arity() - c) + 1e-9)));
  }
  if (thresholds.empty())
    throw PreconditionError("census needs --thresholds or --lambda");
  std::sort(thresholds.begin(), thresholds.end());
  CensusOptions opts;
  static_cast<EnumerationOptions &>(opts) = enumeration(o);
  if (!o.dominant.empty())
    opts.dominant = parse_compact_tuple(o.dominant);
  auto rows = codeword_census(rel, inst, thresholds, opts);
  emit(o, [&](std::ostream &out) {
    if (o.json) {
      out << to_json(rows).dump(2) << '\n';
      return;
    }
    out << "threshold count\n";
    for (const auto &row : rows)
      out << row.threshold << ' ' << row.count << '\n';
  });
  return kOk;
}

int cmd_witness(const Options &o) {
  ValuedRelation rel = load_relation(o.relation);
  ModelKind kind = parse_model_kind(o.kind);
  WitnessFamily fam;
  if (kind == ModelKind::rpartite) {
    AndRestriction a = max_and_arity(rel);
    fam = witness_family_rpartite(rel, a.witness, o.n);
  } else {
    fam = witness_family_uniform(rel, o.n);
  }
  emit_doc(o, to_json(fam, o.members));
  return kOk;
}

int cmd_demo(const Options &o) {
  const auto &names = demo_names();
  if (std::find(names.begin(), names.end(), o.demo) == names.end()) {
    std::cerr << "unknown demo '" << o.demo << "'; available:";
    for (const auto &name : names)
      std::cerr << ' ' << name;
    std::cerr << '\n';
    return kUsage;
  }
  DemoConfig cfg;
  cfg.n = o.n;
  if (o.eps != "default")
    cfg.eps = parse_rational(o.eps);
  cfg.kappa = o.kappa;
  cfg.seeds.clear();
  for (int s = 1; s <= o.seeds; ++s)
    cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  cfg.enumeration = enumeration(o);
  DemoResult res = run_demo(o.demo, cfg);
  emit(o, [&](std::ostream &out) { print_demo(out, res); });
  return res.ok ? kOk : kVerifyFail;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sparsifiability analysis and sparsifier construction for CSP predicates"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_flag("--json", o.json, "JSON output instead of structured text");
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    sub->add_option("--budget", o.budget, "Maximum assignments to enumerate");
  };

  auto *analyze_cmd = app.add_subcommand("analyze", "Classify a relation");
  analyze_cmd->add_option("--relation", o.relation)->required();
  common(analyze_cmd);

  auto *gen = app.add_subcommand("gen", "Generate a complete (no --m) or random instance");
  gen->add_option("--kind", o.kind, "uniform | rpartite | symset");
  gen->add_option("--n", o.n)->required();
  gen->add_option("--m", o.m, "Clause count of a random instance");
  gen->add_option("--arity", o.arity);
  gen->add_option("--relation", o.relation, "Take the arity from this relation");
  gen->add_option("--seed", o.seed);
  common(gen);

  auto *sparsify = app.add_subcommand("sparsify", "Plan and build a sparsifier");
  sparsify->add_option("--relation", o.relation)->required();
  sparsify->add_option("--instance", o.instance)->required();
  sparsify->add_option("--eps", o.eps, "Accuracy, e.g. 1/4");
  sparsify->add_option("--kappa", o.kappa);
  sparsify->add_option("--seed", o.seed);
  common(sparsify);

  auto *verify = app.add_subcommand("verify", "Exhaustively check a sparsifier");
  verify->add_option("--relation", o.relation)->required();
  verify->add_option("--instance", o.instance)->required();
  verify->add_option("--sparsifier", o.sparsifier)->required();
  verify->add_option("--eps", o.eps);
  common(verify);

  auto *census = app.add_subcommand("census", "Count distinct nonzero codewords by weight");
  census->add_option("--relation", o.relation)->required();
  census->add_option("--instance", o.instance)->required();
  census->add_option("--thresholds", o.thresholds)->delimiter(',');
  census->add_option("--lambda", o.lambda, "Adds threshold lambda*(n/|D|)^(r-c)");
  census->add_option("--dominant", o.dominant, "Only assignments dominated by this tuple");
  common(census);

  auto *witness = app.add_subcommand("witness", "Lower-bound witness family");
  witness->add_option("--relation", o.relation)->required();
  witness->add_option("--n", o.n)->required();
  witness->add_option("--kind", o.kind, "uniform | rpartite");
  witness->add_flag("--members", o.members, "List the family members");
  common(witness);

  auto *demo = app.add_subcommand("demo", "Run a bundled end-to-end scenario");
  demo->add_option("name", o.demo)->required();
  demo->add_option("--n", o.n, "Override the demo's n");
  demo->add_option("--eps", o.eps, "Override the demo's eps");
  demo->add_option("--kappa", o.kappa);
  demo->add_option("--seeds", o.seeds, "Run seeds 1..N");
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (demo->parsed() && demo->count("--eps") == 0)
    o.eps = "default";

  try {
    if (analyze_cmd->parsed())
      return cmd_analyze(o);
    if (gen->parsed())
      return cmd_gen(o);
    if (sparsify->parsed())
      return cmd_sparsify(o);
    if (verify->parsed())
      return cmd_verify(o);
    if (census->parsed())
      return cmd_census(o);
    if (witness->parsed())
      return cmd_witness(o);
    if (demo->parsed())
      return cmd_demo(o);
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::logic_error &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kSemantic;
  }
  return kUsage;
}
