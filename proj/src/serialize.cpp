#include "superpat/serialize.hpp"

#include <sstream>

#include "superpat/error.hpp"

namespace superpat {

namespace {

Json values_json(std::span<const int> v) { return Json(std::vector<int>(v.begin(), v.end())); }

std::vector<int> int_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    fail(ErrorCode::MalformedEncoding, std::string("encoding lacks array '") + key + "'");
  }
  std::vector<int> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number_integer()) {
      fail(ErrorCode::MalformedEncoding, std::string("non-integer entry in '") + key + "'");
    }
    out.push_back(x.get<int>());
  }
  return out;
}

Json step_json(const CertificateStep& s) {
  Json j;
  j["name"] = s.name;
  j["lhs_log"] = real_text(s.lhs.log_magnitude());
  j["rhs_log"] = real_text(s.rhs.log_magnitude());
  j["direction"] = direction_name(s.direction);
  j["strict"] = s.strict;
  j["margin_log"] = real_text(s.margin_log);
  j["satisfied"] = s.satisfied;
  return j;
}

}  // namespace

std::string real_text(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Json census_json(const PatternCensus& census) {
  Json j;
  j["n"] = census.n;
  j["k"] = census.k;
  j["binom_n_k"] = to_decimal(census.binom_n_k);
  j["distinct"] = census.distinct;
  j["universal"] = census.universal();
  const auto missing = census.first_missing();
  j["missing_pattern"] = missing ? values_json(missing->values()) : Json(nullptr);
  return j;
}

Json universality_json(int k, const UniversalityReport& report) {
  Json j;
  j["k"] = k;
  j["universal"] = report.universal;
  j["missing_pattern"] = report.missing ? values_json(report.missing->values()) : Json(nullptr);
  return j;
}

Json occurrence_json(const std::optional<Occurrence>& occ) {
  Json j;
  j["contained"] = occ.has_value();
  j["occurrence"] = occ ? Json(occ->indices) : Json(nullptr);
  return j;
}

Json perm_encoding_json(const PermEncoding& enc) {
  Json j;
  if (const auto* idx = std::get_if<IndexEncoding>(&enc)) {
    j["case"] = 1;
    j["indices"] = idx->indices;
  } else {
    const auto& mixed = std::get<MixedEncoding>(enc);
    j["case"] = 2;
    j["I"] = mixed.value_indices;
    j["kept"] = mixed.kept;
    j["relvals"] = mixed.relvals;
  }
  return j;
}

PermEncoding perm_encoding_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("case") || !j.at("case").is_number_integer()) {
    fail(ErrorCode::MalformedEncoding, "encoding needs an integer 'case'");
  }
  const int which = j.at("case").get<int>();
  if (which == 1) return IndexEncoding{int_list(j, "indices")};
  if (which == 2) return MixedEncoding{int_list(j, "I"), int_list(j, "kept"), int_list(j, "relvals")};
  fail(ErrorCode::MalformedEncoding, "encoding case must be 1 or 2");
}

Json width_profile_json(const WidthProfile& profile, const EncodingParams& params) {
  Json j;
  j["n"] = params.n;
  j["k"] = params.k;
  j["threshold"] = profile.threshold;
  Json widths = Json::array();
  for (const auto& w : profile.widths) {
    widths.push_back({{"i", w.index}, {"b_i", w.value}, {"qualifies", params.qualifies(w.value)}});
  }
  j["widths"] = std::move(widths);
  j["qualifying"] = profile.qualifying;
  j["value_slots"] = params.value_slot_count();
  const auto selected = select_value_indices(profile, params);
  j["case"] = selected ? 2 : 1;
  return j;
}

Json encoding_census_json(const EncodingCensus& census) {
  Json j;
  j["distinct_patterns"] = census.distinct_patterns;
  j["distinct_encodings"] = census.distinct_encodings;
  j["case1_encodings"] = census.index_encodings;
  j["case2_encodings"] = census.mixed_encodings;
  j["occurrences_checked"] = census.occurrences_checked;
  j["roundtrip_failures"] = census.roundtrip_failures;
  j["injective"] = census.injective();
  return j;
}

Json ledger_json(const LedgerReport& report) {
  Json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["subsets"] = report.subsets;
  j["case2_subsets"] = report.mixed_subsets;
  j["pairs"] = report.entries.size();
  j["width_bound"] = report.width_bound;
  j["completions_cover_product"] = report.completions_cover_product;
  j["product_meets_bound"] = report.product_meets_bound;
  return j;
}

Json seq_encoding_json(const SeqEncoding& enc) {
  Json j;
  j["prefix"] = enc.prefix;
  Json rel = Json::array();
  for (const auto& psi : enc.relpos) {
    Json bits = Json::array();
    for (bool b : psi) bits.push_back(b ? 1 : 0);
    rel.push_back(std::move(bits));
  }
  j["relpos"] = std::move(rel);
  return j;
}

SeqEncoding seq_encoding_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::MalformedEncoding, "encoding must be a JSON object");
  SeqEncoding enc;
  enc.prefix = int_list(j, "prefix");
  if (!j.contains("relpos") || !j.at("relpos").is_array()) {
    fail(ErrorCode::MalformedEncoding, "encoding lacks array 'relpos'");
  }
  for (const auto& psi : j.at("relpos")) {
    if (!psi.is_array()) fail(ErrorCode::MalformedEncoding, "relpos entries must be arrays");
    std::vector<bool> bits;
    for (const auto& b : psi) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
        fail(ErrorCode::MalformedEncoding, "relpos bits must be 0 or 1");
      }
      bits.push_back(b.get<int>() == 1);
    }
    enc.relpos.push_back(std::move(bits));
  }
  return enc;
}

Json seq_census_json(const SeqEncodingCensus& census) {
  Json j;
  j["distinct_patterns"] = census.distinct_patterns;
  j["distinct_encodings"] = census.distinct_encodings;
  j["occurrences_checked"] = census.occurrences_checked;
  j["roundtrip_failures"] = census.roundtrip_failures;
  j["injective"] = census.injective();
  return j;
}

Json split_report_json(const SplitReport& report) {
  Json j;
  j["m"] = report.symbol;
  j["a_m"] = report.count;
  j["splits"] = report.splits;
  j["full_gaps"] = report.full_gaps;
  j["common"] = report.common;
  return j;
}

Json gap_structure_json(const GapStructure& gaps) {
  Json j;
  j["m"] = gaps.symbol;
  j["positions"] = gaps.positions;
  Json list = Json::array();
  for (const auto& g : gaps.gaps) {
    Json occ = Json::object();
    for (const auto& [sym, count] : g.occupancy) occ[std::to_string(sym)] = count;
    Json entry;
    entry["j"] = g.j;
    entry["start"] = g.start;
    entry["end"] = g.end;
    entry["occupancy"] = std::move(occ);
    entry["full"] = g.full;
    entry["filled_by"] = g.full ? Json(g.filled_by) : Json(nullptr);
    list.push_back(std::move(entry));
  }
  j["gaps"] = std::move(list);
  j["full_count"] = gaps.full_count();
  return j;
}

Json fullgap_lemma_json(const FullGapLemmaReport& report) {
  Json j;
  j["applicable"] = report.applicable;
  j["common_count"] = report.common_count;
  j["witnesses"] = report.witnesses;
  j["required"] = report.required;
  j["meets_bound"] = report.meets_bound;
  return j;
}

Json certificate_json(const Certificate& cert) {
  Json j;
  j["name"] = cert.name;
  Json params = Json::object();
  for (const auto& [key, value] : cert.params) params[key] = value;
  j["params"] = std::move(params);
  j["lhs_log"] = real_text(cert.lhs.log_magnitude());
  j["rhs_log"] = real_text(cert.rhs.log_magnitude());
  j["lhs"] = real_text(cert.lhs.value(), 20);
  j["rhs"] = real_text(cert.rhs.value(), 20);
  j["direction"] = direction_name(cert.direction);
  j["strict"] = cert.strict;
  j["satisfied"] = cert.satisfied;
  j["margin_log"] = real_text(cert.margin_log);
  Json steps = Json::array();
  for (const auto& s : cert.steps) steps.push_back(step_json(s));
  j["steps"] = std::move(steps);
  return j;
}

Json trivial_bounds_json(const TrivialBounds& bounds) {
  Json j;
  j["n"] = bounds.n;
  j["k"] = bounds.k;
  j["binom_n_k"] = to_decimal(bounds.binom_n_k);
  j["k_factorial"] = to_decimal(bounds.k_factorial);
  j["permutation_condition"] = bounds.permutation_condition;
  if (bounds.r) {
    j["r"] = *bounds.r;
    j["sequence_count_log"] = real_text(bounds.sequence_count->log_magnitude());
    j["k_factorial_log"] = real_text(log(Real(bounds.k_factorial)));
    j["sequence_condition"] = *bounds.sequence_condition;
  } else {
    j["r"] = nullptr;
  }
  return j;
}

std::string widths_csv(const std::vector<WidthRow>& rows) {
  std::ostringstream os;
  os << "trial,i,b_i,qualifies\n";
  for (const auto& r : rows) {
    os << r.trial << ',' << r.index << ',' << r.width << ',' << (r.qualifies ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string compositions_csv(const std::vector<CompositionRow>& rows) {
  std::ostringstream os;
  os << "trial,i,a_i\n";
  for (const auto& r : rows) os << r.trial << ',' << r.index << ',' << r.gap << '\n';
  return os.str();
}

std::string splits_csv(const std::vector<SplitTrialRow>& rows) {
  std::ostringstream os;
  os << "trial,m,a_m,splits\n";
  for (const auto& r : rows) {
    os << r.trial << ',' << r.symbol << ',' << r.count << ',' << r.splits << '\n';
  }
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace superpat
