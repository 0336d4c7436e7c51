#include "superpat/superpat.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "superpat/error.hpp"
#include "superpat/serialize.hpp"

struct sp_host {
  superpat::Host host;
};

namespace {

using namespace superpat;

thread_local std::string last_error;

sp_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SP_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SP_PARSE_ERROR;
    case ErrorCode::Domain: return SP_DOMAIN_ERROR;
    case ErrorCode::Capacity: return SP_CAPACITY_EXCEEDED;
    case ErrorCode::Budget: return SP_BUDGET_EXCEEDED;
    case ErrorCode::MalformedEncoding: return SP_MALFORMED_ENCODING;
    case ErrorCode::Io: return SP_IO_ERROR;
  }
  return SP_INTERNAL_ERROR;
}

template <class F>
sp_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return SP_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const Json::exception& e) {
    last_error = e.what();
    return SP_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SP_CAPACITY_EXCEEDED;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SP_INTERNAL_ERROR;
  }
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_out(const void* out) {
  if (out == nullptr) fail(ErrorCode::InvalidArgument, "output pointer is null");
}

const Host& host_of(const sp_host* h) {
  if (h == nullptr) fail(ErrorCode::InvalidArgument, "host handle is null");
  return h->host;
}

const Permutation& permutation_of(const sp_host* h) {
  const auto* p = std::get_if<Permutation>(&host_of(h));
  if (p == nullptr) fail(ErrorCode::InvalidArgument, "operation needs a permutation host");
  return *p;
}

const RarySequence& sequence_of(const sp_host* h) {
  const auto* s = std::get_if<RarySequence>(&host_of(h));
  if (s == nullptr) fail(ErrorCode::InvalidArgument, "operation needs a sequence host");
  return *s;
}

std::vector<int> int_array(const int* data, std::size_t n) {
  if (data == nullptr && n > 0) fail(ErrorCode::InvalidArgument, "array pointer is null");
  return std::vector<int>(data, data + n);
}

void emit(char** out, const Json& j) { *out = copy_string(dump(j)); }

sp_host* new_host(Host h) { return new sp_host{std::move(h)}; }

Json parse_json(const char* text) {
  if (text == nullptr) fail(ErrorCode::InvalidArgument, "JSON text is null");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

EncodingParams encoding_params(int n, int k, double c, double d) {
  EncodingParams p{c, d, n, k};
  p.validate();
  return p;
}

}  // namespace

extern "C" {

const char* sp_status_name(sp_status status) {
  switch (status) {
    case SP_OK: return "ok";
    case SP_INVALID_ARGUMENT: return error_code_name(ErrorCode::InvalidArgument);
    case SP_PARSE_ERROR: return error_code_name(ErrorCode::Parse);
    case SP_DOMAIN_ERROR: return error_code_name(ErrorCode::Domain);
    case SP_CAPACITY_EXCEEDED: return error_code_name(ErrorCode::Capacity);
    case SP_BUDGET_EXCEEDED: return error_code_name(ErrorCode::Budget);
    case SP_MALFORMED_ENCODING: return error_code_name(ErrorCode::MalformedEncoding);
    case SP_IO_ERROR: return error_code_name(ErrorCode::Io);
    case SP_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* sp_last_error_message(void) { return last_error.c_str(); }

void sp_free_string(char* s) { std::free(s); }

sp_status sp_host_parse(const char* text, sp_host** out) {
  return guarded([&] {
    require_out(out);
    if (text == nullptr) fail(ErrorCode::InvalidArgument, "host text is null");
    *out = new_host(parse_host(text));
  });
}

sp_status sp_host_load(const char* path, sp_host** out) {
  return guarded([&] {
    require_out(out);
    if (path == nullptr) fail(ErrorCode::InvalidArgument, "path is null");
    *out = new_host(load_host(path));
  });
}

sp_status sp_host_from_values(const int* values, size_t n, int alphabet, sp_host** out) {
  return guarded([&] {
    require_out(out);
    auto v = int_array(values, n);
    if (alphabet == 0) {
      *out = new_host(Permutation(std::move(v)));
    } else {
      *out = new_host(RarySequence(std::move(v), alphabet));
    }
  });
}

void sp_host_free(sp_host* host) { delete host; }

size_t sp_host_length(const sp_host* host) {
  return host == nullptr ? 0 : host_values(host->host).size();
}

int sp_host_alphabet(const sp_host* host) {
  if (host == nullptr) return 0;
  const auto* s = std::get_if<RarySequence>(&host->host);
  return s == nullptr ? 0 : s->alphabet();
}

size_t sp_host_values(const sp_host* host, int* out, size_t capacity) {
  if (host == nullptr) return 0;
  const auto v = host_values(host->host);
  if (out != nullptr) std::copy_n(v.begin(), std::min(capacity, v.size()), out);
  return v.size();
}

sp_status sp_host_to_text(const sp_host* host, char** out) {
  return guarded([&] {
    require_out(out);
    *out = copy_string(format_host(host_of(host)));
  });
}

sp_status sp_host_lift(const sp_host* host, sp_host** out) {
  return guarded([&] {
    require_out(out);
    const Host& h = host_of(host);
    if (const auto* s = std::get_if<RarySequence>(&h)) {
      *out = new_host(lift(*s));
    } else {
      *out = new_host(h);
    }
  });
}

sp_status sp_construct_repeated_identity(int k, sp_host** out) {
  return guarded([&] {
    require_out(out);
    *out = new_host(construct_repeated_identity(k));
  });
}

sp_status sp_random_permutation(int n, uint64_t seed, sp_host** out) {
  return guarded([&] {
    require_out(out);
    *out = new_host(random_permutation(n, seed));
  });
}

sp_status sp_contains(const sp_host* host, const int* pattern, size_t k, char** json) {
  return guarded([&] {
    require_out(json);
    const Permutation pi(int_array(pattern, k));
    const auto values = host_values(host_of(host));
    if (pi.size() > static_cast<int>(values.size())) {
      fail(ErrorCode::Domain, "pattern is longer than the host");
    }
    emit(json, occurrence_json(contains(values, pi)));
  });
}

sp_status sp_count_patterns(const sp_host* host, int k, int parallelism, uint64_t budget,
                            char** json) {
  return guarded([&] {
    require_out(json);
    CensusOptions options;
    options.parallelism = parallelism;
    if (budget != 0) options.budget = budget;
    emit(json, census_json(count_distinct_patterns(host_values(host_of(host)), k, options)));
  });
}

sp_status sp_universal(const sp_host* host, int k, char** json) {
  return guarded([&] {
    require_out(json);
    emit(json, universality_json(k, is_universal(host_values(host_of(host)), k)));
  });
}

sp_status sp_widths(const sp_host* host, const int* occurrence, size_t k, double c, double d,
                    char** json) {
  return guarded([&] {
    require_out(json);
    const Permutation& p = permutation_of(host);
    const auto params = encoding_params(p.size(), static_cast<int>(k), c, d);
    const auto occ = Occurrence::positional(int_array(occurrence, k));
    emit(json, width_profile_json(compute_widths(occ, params), params));
  });
}

sp_status sp_encode_perm(const sp_host* host, const int* occurrence, size_t k, double c,
                         double d, char** json) {
  return guarded([&] {
    require_out(json);
    const Permutation& p = permutation_of(host);
    const auto params = encoding_params(p.size(), static_cast<int>(k), c, d);
    const auto occ = Occurrence::positional(int_array(occurrence, k));
    emit(json, perm_encoding_json(encode_perm(p, occ, params)));
  });
}

sp_status sp_decode_perm(const sp_host* host, const char* encoding_json, double c, double d,
                         char** json) {
  return guarded([&] {
    require_out(json);
    const Permutation& p = permutation_of(host);
    const PermEncoding enc = perm_encoding_from_json(parse_json(encoding_json));
    const std::size_t k = std::visit(
        [](const auto& e) -> std::size_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(e)>, IndexEncoding>) {
            return e.indices.size();
          } else {
            return e.value_indices.size() + e.kept.size();
          }
        },
        enc);
    const auto params = encoding_params(p.size(), static_cast<int>(k), c, d);
    const Permutation pi = decode_perm(p, enc, params);
    Json out;
    out["pattern"] = std::vector<int>(pi.values().begin(), pi.values().end());
    emit(json, out);
  });
}

sp_status sp_counting_ledger(int n, int k, double c, double d, char** json) {
  return guarded([&] {
    require_out(json);
    emit(json, ledger_json(audit_counting_ledger(encoding_params(n, k, c, d))));
  });
}

sp_status sp_encode_seq(const sp_host* host, const int* occurrence, size_t k, double c,
                        char** json) {
  return guarded([&] {
    require_out(json);
    const auto occ = Occurrence::value_indexed(int_array(occurrence, k));
    emit(json, seq_encoding_json(encode_seq(sequence_of(host), occ, c)));
  });
}

sp_status sp_decode_seq(const sp_host* host, const char* encoding_json, double c,
                        char** json) {
  return guarded([&] {
    require_out(json);
    const SeqEncoding enc = seq_encoding_from_json(parse_json(encoding_json));
    const SeqDecoding dec = decode_seq(sequence_of(host), enc, c);
    Json out;
    out["pattern"] = std::vector<int>(dec.pattern.values().begin(), dec.pattern.values().end());
    out["positions"] = dec.positions;
    emit(json, out);
  });
}

sp_status sp_roundtrip_test(const sp_host* host, int k, double c, double d, int parallelism,
                            uint64_t budget, char** json) {
  return guarded([&] {
    require_out(json);
    const Host& h = host_of(host);
    CensusOptions options;
    options.parallelism = parallelism;
    if (budget != 0) options.budget = budget;
    if (const auto* p = std::get_if<Permutation>(&h)) {
      const auto params = encoding_params(p->size(), k, c, d);
      Json out = encoding_census_json(census_encodings(*p, params, options, true));
      out["kind"] = "permutation";
      emit(json, out);
    } else {
      Json out = seq_census_json(
          census_seq_encodings(std::get<RarySequence>(h), c, options.budget));
      out["kind"] = "sequence";
      emit(json, out);
    }
  });
}

sp_status sp_splits(const sp_host* host, const int* prefix, size_t prefix_len, int m, int k,
                    char** json) {
  return guarded([&] {
    require_out(json);
    const RarySequence& s = sequence_of(host);
    const auto t = int_array(prefix, prefix_len);
    if (m != 0) {
      emit(json, split_report_json(split_report(s, m, t, k)));
      return;
    }
    Json out = Json::array();
    for (int sym = static_cast<int>(prefix_len) + 1; sym <= s.alphabet(); ++sym) {
      out.push_back(split_report_json(split_report(s, sym, t, k)));
    }
    emit(json, out);
  });
}

sp_status sp_full_gaps(const sp_host* host, int m, double full_fraction, char** json) {
  return guarded([&] {
    require_out(json);
    emit(json, gap_structure_json(full_gaps(sequence_of(host), m, full_fraction)));
  });
}

sp_status sp_fullgap_lemma(const sp_host* host, int k, double common_fraction,
                           double full_fraction, char** json) {
  return guarded([&] {
    require_out(json);
    SequenceThresholds th;
    th.common_fraction = common_fraction;
    th.full_fraction = full_fraction;
    emit(json, fullgap_lemma_json(verify_fullgap_lemma(sequence_of(host), k, th)));
  });
}

sp_status sp_simulate_widths(int n, int k, double d, uint64_t trials, uint64_t seed,
                             int parallelism, char** csv) {
  return guarded([&] {
    require_out(csv);
    *csv = copy_string(widths_csv(simulate_widths(n, k, d, trials, seed, parallelism)));
  });
}

sp_status sp_simulate_composition(int n, int k, uint64_t trials, uint64_t seed, int parallelism,
                                  char** csv) {
  return guarded([&] {
    require_out(csv);
    *csv = copy_string(compositions_csv(simulate_compositions(n, k, trials, seed, parallelism)));
  });
}

sp_status sp_simulate_splits(const sp_host* host, double c, uint64_t trials, uint64_t seed,
                             int parallelism, char** csv) {
  return guarded([&] {
    require_out(csv);
    const auto sim = simulate_splits(sequence_of(host), c, trials, seed, parallelism);
    *csv = copy_string(splits_csv(sim.rows));
  });
}

sp_status sp_width_tail(int n, int k, double d, uint64_t trials, uint64_t seed, int parallelism,
                        char** json) {
  return guarded([&] {
    require_out(json);
    const TailEstimate est = empirical_width_tail(n, k, d, trials, seed, parallelism);
    Json out;
    out["n"] = n;
    out["k"] = k;
    out["d"] = d;
    out["fraction"] = est.fraction;
    out["standard_error"] = est.standard_error;
    out["widths"] = est.widths;
    out["survival"] = width_survival(d);
    emit(json, out);
  });
}

sp_status sp_certificate_names(char** json) {
  return guarded([&] {
    require_out(json);
    emit(json, Json(certificate_names()));
  });
}

sp_status sp_certify(const char* name, const char* params_json, char** json) {
  return guarded([&] {
    require_out(json);
    if (name == nullptr) fail(ErrorCode::InvalidArgument, "certificate name is null");
    CertificateParams overrides;
    if (params_json != nullptr) {
      const Json p = parse_json(params_json);
      if (!p.is_object()) fail(ErrorCode::InvalidArgument, "parameters must be a JSON object");
      for (const auto& [key, value] : p.items()) {
        if (value.is_string()) {
          overrides[key] = value.get<std::string>();
        } else if (value.is_number()) {
          overrides[key] = value.dump();
        } else {
          fail(ErrorCode::InvalidArgument, "parameter " + key + " must be a number or string");
        }
      }
    }
    emit(json, certificate_json(certify(name, overrides)));
  });
}

sp_status sp_trivial_bounds(int64_t n, int64_t k, int64_t r, char** json) {
  return guarded([&] {
    require_out(json);
    const auto bounds =
        trivial_bounds(n, k, r > 0 ? std::optional<std::int64_t>(r) : std::nullopt);
    emit(json, trivial_bounds_json(bounds));
  });
}

}  // extern "C"
