#pragma once

#include "sparsecsp/histogram_core.hpp"
#include "sparsecsp/sparsify.hpp"
#include "sparsecsp/verify.hpp"

#include <json.hpp>

#include <iosfwd>

namespace sparsecsp {

nlohmann::ordered_json to_json(const ClassificationReport &rep);
nlohmann::ordered_json to_json(const SamplingPlan &plan);
nlohmann::ordered_json to_json(const VerifyReport &rep);
nlohmann::ordered_json to_json(const WitnessFamily &fam, bool with_members);
nlohmann::ordered_json to_json(const std::vector<CensusRow> &rows);

// Structured text: "key: value" lines, nested blocks indented by two spaces.
void write_text(std::ostream &out, const nlohmann::ordered_json &doc, int indent = 0);

} // namespace sparsecsp
