#include "superpat/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "superpat/error.hpp"

namespace superpat {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::Capacity: return "capacity_exceeded";
    case ErrorCode::Budget: return "budget_exceeded";
    case ErrorCode::MalformedEncoding: return "malformed_encoding";
    case ErrorCode::Io: return "io_error";
  }
  return "unknown";
}

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const auto n = values_.size();
  if (n == 0) fail(ErrorCode::Domain, "permutation must have length >= 1");
  std::vector<bool> seen(n + 1, false);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      fail(ErrorCode::Domain, "permutation value " + std::to_string(v) + " outside 1.." +
                                  std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      fail(ErrorCode::Domain, "permutation value " + std::to_string(v) + " repeated");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

RarySequence::RarySequence(std::vector<int> values, int alphabet)
    : values_(std::move(values)), alphabet_(alphabet) {
  if (alphabet_ < 1) fail(ErrorCode::Domain, "alphabet size r must be >= 1");
  for (int v : values_) {
    if (v < 1 || v > alphabet_) {
      fail(ErrorCode::Domain, "sequence entry " + std::to_string(v) + " outside 1.." +
                                  std::to_string(alphabet_));
    }
  }
}

std::span<const int> host_values(const Host& host) noexcept {
  return std::visit([](const auto& h) { return h.values(); }, host);
}

void validate_occurrence(const Occurrence& occ, int n) {
  const auto& idx = occ.indices;
  for (int t : idx) {
    if (t < 1 || t > n) {
      fail(ErrorCode::InvalidArgument,
           "occurrence index " + std::to_string(t) + " outside 1.." + std::to_string(n));
    }
  }
  if (occ.mode == OccurrenceMode::PositionOrdered) {
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (idx[i - 1] >= idx[i]) {
        fail(ErrorCode::InvalidArgument, "positional occurrence must be strictly increasing");
      }
    }
  } else {
    std::vector<int> sorted(idx);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorCode::InvalidArgument, "value-indexed occurrence repeats a position");
    }
  }
}

std::uint64_t factorial_u64(int k) {
  if (k < 0 || k > kMaxRankedLength) {
    fail(ErrorCode::Capacity, "factorial only tracked for 0 <= k <= 20");
  }
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Permutation standardize(std::span<const int> values) {
  const auto k = values.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> out(k);
  for (std::size_t r = 0; r < k; ++r) {
    if (r > 0 && values[order[r]] == values[order[r - 1]]) {
      fail(ErrorCode::Domain, "standardize requires pairwise distinct values");
    }
    out[order[r]] = static_cast<int>(r) + 1;
  }
  return Permutation(std::move(out));
}

Permutation extract_pattern(std::span<const int> host, const Occurrence& occ) {
  validate_occurrence(occ, static_cast<int>(host.size()));
  std::vector<int> positions(occ.indices);
  if (occ.mode == OccurrenceMode::ValueIndexed) std::sort(positions.begin(), positions.end());
  std::vector<int> selected;
  selected.reserve(positions.size());
  for (int t : positions) selected.push_back(host[static_cast<std::size_t>(t - 1)]);
  std::vector<int> sorted(selected);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::Domain, "selected entries repeat a symbol; no pattern is witnessed");
  }
  return standardize(selected);
}

Permutation lift(const RarySequence& seq) {
  const auto v = seq.values();
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<int> out(v.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = static_cast<int>(r) + 1;
  return Permutation(std::move(out));
}

std::uint64_t rank_of_values(std::span<const int> values) noexcept {
  const std::size_t k = values.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j) smaller += values[j] < values[i] ? 1 : 0;
    rank = rank * (k - i) + smaller;
  }
  return rank;
}

PatternRank rank_pattern(const Permutation& p) {
  if (p.size() > kMaxRankedLength) {
    fail(ErrorCode::Capacity, "pattern ranks only cover k <= 20");
  }
  return PatternRank{rank_of_values(p.values())};
}

Permutation unrank_pattern(PatternRank rank, int k) {
  if (k < 1 || k > kMaxRankedLength) {
    fail(ErrorCode::Capacity, "pattern ranks only cover 1 <= k <= 20");
  }
  if (rank.value >= factorial_u64(k)) {
    fail(ErrorCode::InvalidArgument, "rank out of range for length " + std::to_string(k));
  }
  std::vector<int> digits(static_cast<std::size_t>(k));
  std::uint64_t r = rank.value;
  for (int i = k - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(k - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(r % base);
    r /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(k));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int d : digits) {
    out.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + d);
  }
  return Permutation(std::move(out));
}

namespace {

std::vector<int> parse_ints(std::string_view body) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i >= body.size()) break;
    std::size_t j = i;
    while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
    int value = 0;
    const auto* first = body.data() + i;
    const auto* last = body.data() + j;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      fail(ErrorCode::Parse, "not an integer: '" + std::string(first, last) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

Host parse_host(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  text.remove_prefix(start);
  if (!text.empty() && text.front() == '#') {
    const auto eol = text.find('\n');
    std::string_view header = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    header.remove_prefix(1);
    while (!header.empty() && std::isspace(static_cast<unsigned char>(header.front()))) {
      header.remove_prefix(1);
    }
    while (!header.empty() && std::isspace(static_cast<unsigned char>(header.back()))) {
      header.remove_suffix(1);
    }
    if (header.substr(0, 2) != "r=") fail(ErrorCode::Parse, "header must read '# r=<int>'");
    header.remove_prefix(2);
    int r = 0;
    auto [ptr, ec] = std::from_chars(header.data(), header.data() + header.size(), r);
    if (ec != std::errc{} || ptr != header.data() + header.size()) {
      fail(ErrorCode::Parse, "bad alphabet size in header");
    }
    return RarySequence(parse_ints(text), r);
  }
  return Permutation(parse_ints(text));
}

std::string format_host(const Host& host) {
  std::ostringstream os;
  if (const auto* seq = std::get_if<RarySequence>(&host)) os << "# r=" << seq->alphabet() << '\n';
  bool first = true;
  for (int v : host_values(host)) {
    if (!first) os << ' ';
    os << v;
    first = false;
  }
  os << '\n';
  return os.str();
}

Host load_host(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_host(buf.str());
}

}  // namespace superpat
