#include "sparsecsp/report_io.hpp"

#include <ostream>
#include <string>

namespace sparsecsp {

using nlohmann::ordered_json;

namespace {

std::string symbols_text(const SymbolSet &e) {
  std::string out = "{";
  for (std::size_t i = 0; i < e.size(); ++i)
    out += (i ? "," : "") + std::to_string(e[i]);
  return out + "}";
}

ordered_json rule_json(const ExponentRule &rule) {
  ordered_json j;
  j["exponent"] = rule.exponent;
  j["eps_power"] = rule.eps_power;
  j["source"] = rule.source;
  j["sampler"] = rule.sampler;
  return j;
}

ordered_json witness_json(const RestrictionWitness &w) {
  ordered_json j;
  ordered_json sets = ordered_json::array();
  for (const auto &s : w.sets)
    sets.push_back(symbols_text(s));
  j["sets"] = sets;
  j["distinguished"] = w.distinguished;
  if (!w.survivor.empty())
    j["survivor"] = format_tuple(w.survivor);
  return j;
}

} // namespace

ordered_json to_json(const ClassificationReport &rep) {
  ordered_json j;
  j["arity"] = rep.arity;
  j["domains"] = rep.domains;
  j["support_size"] = rep.support_size;
  j["max_value"] = rep.max_value;
  j["constant_relation"] = rep.constant_relation;
  j["and_arity"] = rep.and_arity;
  j["and_arity_hat"] = rep.and_arity_hat;
  j["and_witness"] = witness_json(rep.and_witness);
  if (rep.boolean_exponent)
    j["boolean_exponent"] = *rep.boolean_exponent;
  j["rpartite"] = rule_json(rep.rpartite_rule);
  j["rpartite"]["random_size"] = rep.random_rpartite_size;
  j["uniform_model"] = rep.uniform_model;
  if (!rep.uniform_model)
    return j;

  j["plentifulness"] = rep.plentifulness;
  ordered_json tight = ordered_json::array();
  for (const auto &g : rep.tight) {
    ordered_json t;
    t["symbol"] = g.symbol;
    t["count"] = g.count;
    ordered_json members = ordered_json::array();
    for (const auto &h : g.members)
      members.push_back(format_histogram(h));
    t["histograms"] = members;
    tight.push_back(t);
  }
  j["tight"] = tight;
  ordered_json rigid = ordered_json::array();
  for (const auto &r : rep.rigid) {
    ordered_json x;
    x["histogram"] = format_histogram(r.h);
    x["symbol"] = r.symbol;
    x["symbols"] = symbols_text(r.symbols);
    ordered_json marginal = ordered_json::object();
    for (std::size_t i = 0; i < r.marginal.table.size(); ++i)
      marginal[format_histogram(r.marginal.table.histograms()[i])] =
          r.marginal.table.at_index(i);
    x["marginal"] = marginal;
    x["uniform"] = r.marginal.uniform;
    rigid.push_back(x);
  }
  j["rigid"] = rigid;

  j["svr_marginally_uniform"] = rep.svr.uniform;
  if (rep.svr.certificate) {
    const auto &c = *rep.svr.certificate;
    ordered_json x;
    x["histogram"] = format_histogram(c.h);
    x["symbol"] = c.symbol;
    x["symbols"] = symbols_text(c.symbols);
    x["g"] = format_histogram(c.g);
    x["g_value"] = c.value;
    x["g_alt"] = format_histogram(c.g_alt);
    x["g_alt_value"] = c.value_alt;
    j["svr_certificate"] = x;
  }
  j["vr_marginally_uniform"] = rep.vr.uniform;
  if (rep.vr.certificate) {
    const auto &c = *rep.vr.certificate;
    ordered_json x;
    x["histogram"] = format_histogram(c.h);
    x["symbol"] = c.symbol;
    x["symbols"] = symbols_text(c.symbols);
    x["s"] = format_tuple(c.s);
    x["s_value"] = c.value_s;
    x["t"] = format_tuple(c.t);
    x["t_value"] = c.value_t;
    j["vr_certificate"] = x;
  }
  j["case"] = rep.case_id;
  j["uniform"] = rule_json(rep.uniform_rule);
  j["uniform"]["random_size"] = rep.random_uniform_size;
  return j;
}

ordered_json to_json(const SamplingPlan &p) {
  ordered_json j;
  j["mode"] = to_string(p.mode);
  j["samples"] = p.samples;
  j["recommended"] = p.recommended;
  j["weight"] = to_string(p.weight);
  j["output_clauses"] = p.output_clauses;
  j["source"] = p.source;
  j["exponent"] = p.exponent;
  j["eps_power"] = p.eps_power;
  j["kappa"] = p.kappa;
  j["eps"] = to_string(p.eps);
  j["whole_universe"] = p.whole_universe;
  j["indeterminate"] = p.indeterminate;
  j["no_nontrivial"] = p.no_nontrivial;
  return j;
}

ordered_json to_json(const VerifyReport &rep) {
  ordered_json j;
  j["pass"] = rep.pass;
  j["max_deviation"] = to_string(rep.max_deviation);
  j["max_deviation_approx"] = rep.max_deviation.convert_to<double>();
  j["eps"] = to_string(rep.eps);
  j["zero_violations"] = rep.zero_violations;
  j["evaluated"] = rep.evaluated;
  std::string w;
  for (std::size_t i = 0; i < rep.witness.size(); ++i)
    w += (i ? " " : "") + std::to_string(rep.witness[i]);
  j["witness"] = w;
  return j;
}

ordered_json to_json(const WitnessFamily &fam, bool with_members) {
  ordered_json j;
  j["c"] = fam.c;
  if (fam.symbol >= 0)
    j["symbol"] = fam.symbol;
  j["size"] = fam.members.size();
  j["disjoint"] = fam.disjoint;
  j["max_shared"] = fam.max_shared;
  j["implied_bound"] = fam.implied_bound;
  if (with_members) {
    ordered_json members = ordered_json::array();
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      ordered_json m;
      std::string a;
      for (int s : fam.members[i])
        a += std::to_string(s);
      m["assignment"] = a;
      m["satisfied"] = fam.satisfied[i].size();
      members.push_back(m);
    }
    j["members"] = members;
  }
  return j;
}

ordered_json to_json(const std::vector<CensusRow> &rows) {
  ordered_json j = ordered_json::array();
  for (const auto &r : rows)
    j.push_back({{"threshold", r.threshold}, {"count", r.count}});
  return j;
}

void write_text(std::ostream &out, const ordered_json &doc, int indent) {
  const std::string pad(indent, ' ');
  auto scalar = [](const ordered_json &v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto is_flat = [](const ordered_json &v) {
    if (!v.is_array())
      return false;
    for (const auto &x : v)
      if (x.is_structured())
        return false;
    return true;
  };
  if (doc.is_array()) {
    for (const auto &item : doc) {
      if (item.is_structured()) {
        out << pad << "-\n";
        write_text(out, item, indent + 2);
      } else {
        out << pad << "- " << scalar(item) << '\n';
      }
    }
    return;
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto &v = it.value();
    if (is_flat(v)) {
      out << pad << it.key() << ":";
      for (const auto &x : v)
        out << ' ' << scalar(x);
      out << '\n';
    } else if (v.is_structured()) {
      out << pad << it.key() << ":\n";
      write_text(out, v, indent + 2);
    } else {
      out << pad << it.key() << ": " << scalar(v) << '\n';
    }
  }
}

} // namespace sparsecsp
