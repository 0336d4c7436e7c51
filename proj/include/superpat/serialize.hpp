#pragma once

// JSON and CSV forms of the library's results. JSON is the canonical machine
// format; CSV is used only for per-trial simulation tables.

#include <string>
#include <vector>

#include <json.hpp>

#include "superpat/certificate.hpp"
#include "superpat/pattern.hpp"
#include "superpat/perm_encoding.hpp"
#include "superpat/prob.hpp"
#include "superpat/seq_encoding.hpp"

namespace superpat {

using Json = nlohmann::ordered_json;

Json census_json(const PatternCensus& census);
Json universality_json(int k, const UniversalityReport& report);
Json occurrence_json(const std::optional<Occurrence>& occ);

Json perm_encoding_json(const PermEncoding& enc);
PermEncoding perm_encoding_from_json(const Json& j);
Json width_profile_json(const WidthProfile& profile, const EncodingParams& params);
Json encoding_census_json(const EncodingCensus& census);
Json ledger_json(const LedgerReport& report);

Json seq_encoding_json(const SeqEncoding& enc);
SeqEncoding seq_encoding_from_json(const Json& j);
Json seq_census_json(const SeqEncodingCensus& census);
Json split_report_json(const SplitReport& report);
Json gap_structure_json(const GapStructure& gaps);
Json fullgap_lemma_json(const FullGapLemmaReport& report);

Json certificate_json(const Certificate& cert);
Json trivial_bounds_json(const TrivialBounds& bounds);

// High-precision decimal text of a Real.
std::string real_text(const Real& x, int digits = 30);

std::string widths_csv(const std::vector<WidthRow>& rows);
std::string compositions_csv(const std::vector<CompositionRow>& rows);
std::string splits_csv(const std::vector<SplitTrialRow>& rows);

// Dumps with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace superpat
