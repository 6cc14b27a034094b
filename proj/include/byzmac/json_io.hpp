#pragma once

#include <string>

#include "json.hpp"

#include "byzmac/attack.hpp"
#include "byzmac/classifier.hpp"
#include "byzmac/codec.hpp"
#include "byzmac/mac.hpp"
#include "byzmac/region.hpp"
#include "byzmac/sim.hpp"

namespace byzmac {

using Json = nlohmann::json;

// channel files: {label, nx, ny, nz, w[x][y][z]}; AV-MACs add ns, w[x][y][s][z]
Json mac_to_json(const Mac& ch);
Mac mac_from_json(const Json& j);
Json avmac_to_json(const AvMac& ch);
AvMac avmac_from_json(const Json& j);
bool json_is_avmac(const Json& j);

Json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const Json& j);

// code files: {n, N1, N2, words1, words2, comp1, comp2}
Json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const Json& j);

// randomized-code files add encoder lists and weights (no decoder)
Json randomized_code_to_json(const RandomizedCode& rc);
RandomizedCode randomized_code_from_json(const Json& j);  // decode left empty

Json outcome_to_json(const FeasibilityOutcome& out);
Json classification_to_json(const ClassificationReport& report);
Json decoder_output_to_json(const DecoderOutput& out);
Json error_report_to_json(const ErrorReport& report);
ErrorReport error_report_from_json(const Json& j);
Json audit_records_to_json(const std::vector<AuditRecord>& records);
Json converse_report_to_json(const ConverseBoundReport& report);
Json polytope_to_json(const std::vector<PolytopeVertex>& vertices);
Json jahn_grid_to_json(const std::vector<JahnGridPoint>& grid);

Word word_from_json(const Json& j, const char* what = "word");

}  // namespace byzmac
