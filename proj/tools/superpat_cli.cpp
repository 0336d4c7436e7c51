// Command-line front end. Everything goes through the C API in superpat.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "superpat/superpat.h"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& message) {
  throw Failure{kExitUsage, "usage_error", message};
}

void check(sp_status status) {
  if (status != SP_OK) throw Failure{kExitDomain, sp_status_name(status), sp_last_error_message()};
}

class HostHandle {
 public:
  HostHandle() = default;
  HostHandle(const HostHandle&) = delete;
  HostHandle& operator=(const HostHandle&) = delete;
  ~HostHandle() { sp_host_free(host_); }
  sp_host** out() { return &host_; }
  const sp_host* get() const { return host_; }

 private:
  sp_host* host_ = nullptr;
};

std::string take(char* s) {
  std::string out(s);
  sp_free_string(s);
  return out;
}

std::vector<int> parse_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      usage_error(std::string("cannot read ") + what + " list '" + text + "'");
    }
  }
  return out;
}

// Accepts a decimal or exp(<decimal>).
double parse_number(const std::string& text, const char* what) {
  std::string body = text;
  bool exponential = false;
  if (body.rfind("exp(", 0) == 0 && body.size() > 5 && body.back() == ')') {
    body = body.substr(4, body.size() - 5);
    exponential = true;
  }
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != body.size()) usage_error(std::string("cannot read ") + what + " '" + text + "'");
  return exponential ? std::exp(x) : x;
}

struct HostInput {
  std::string sigma;
  int r = 0;
  std::string path;

  void attach(CLI::App* app) {
    app->add_option("--sigma", sigma, "Inline host, comma-separated values");
    app->add_option("--r", r, "Alphabet size; makes --sigma a sequence over [r]");
    app->add_option("--host", path, "Host file: optional '# r=<int>' line, then integers");
  }

  void load(HostHandle& h) const {
    if (sigma.empty() == path.empty()) usage_error("give exactly one of --sigma and --host");
    if (!path.empty()) {
      check(sp_host_load(path.c_str(), h.out()));
      return;
    }
    const auto values = parse_list(sigma, "--sigma");
    check(sp_host_from_values(values.data(), values.size(), r, h.out()));
  }
};

struct Output {
  std::string path;

  void attach(CLI::App* app) { app->add_option("--out", path, "Write output here instead of stdout"); }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{kExitDomain, "io_error", "cannot open '" + path + "' for writing"};
    f << text;
    if (!f) throw Failure{kExitDomain, "io_error", "cannot write '" + path + "'"};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation superpatterns: containment, pattern counts, encodings, gap and "
               "split statistics, simulations and numeric certificates."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  HostInput host;
  Output output;
  int k = 0;
  int n = 0;
  int m = 0;
  int parallelism = 1;
  std::uint64_t budget = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 1000;
  std::string c_text;
  std::string d_text = "8.180";
  std::string pattern_text;
  std::string occ_text;
  std::string prefix_text;
  std::string encoding_text;
  std::string encoding_path;
  std::string kind = "repeated-identity";
  std::string cert_name;
  std::vector<std::string> cert_params;
  std::int64_t big_n = 0;
  std::int64_t big_k = 0;
  std::int64_t big_r = 0;
  double full_fraction = 0.9;
  double common_fraction = 0.1;
  bool lemma = false;

  auto add_k = [&](CLI::App* sub, const char* help) { sub->add_option("--k", k, help)->required(); };
  auto add_parallel = [&](CLI::App* sub) {
    sub->add_option("--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_c = [&](CLI::App* sub, const char* fallback) {
    c_text = fallback;
    sub->add_option("--c", c_text, "Fraction c; accepts exp(x)")->capture_default_str();
  };
  auto add_d = [&](CLI::App* sub) {
    sub->add_option("--d", d_text, "Width threshold multiplier d")->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "64-bit master seed (required)"); };

  auto* construct = app.add_subcommand(
      "construct", "Build a host: the k^2 repeated-identity sequence (1..k repeated k times) or "
                   "a seeded uniform random permutation");
  construct->add_option("--kind", kind, "repeated-identity | random-permutation")
      ->check(CLI::IsMember({"repeated-identity", "random-permutation"}));
  construct->add_option("--k", k, "Block length for repeated-identity");
  construct->add_option("--n", n, "Length for random-permutation");
  add_seed(construct);
  output.attach(construct);

  auto* contains = app.add_subcommand(
      "contains", "Leftmost occurrence of a pattern: a subsequence order-isomorphic to it");
  host.attach(contains);
  contains->add_option("--pi", pattern_text, "Pattern, comma-separated")->required();
  output.attach(contains);

  auto* count = app.add_subcommand(
      "count-patterns", "Exact number of distinct k-patterns over all C(n,k) index subsets");
  host.attach(count);
  add_k(count, "Pattern length (<= 20)");
  add_parallel(count);
  count->add_option("--budget", budget, "Maximum subsets to enumerate (default 1e9)");
  output.attach(count);

  auto* universal = app.add_subcommand(
      "universal", "Whether the host contains every pattern of length k (k-superpattern)");
  host.attach(universal);
  add_k(universal, "Pattern length (<= 12)");
  output.attach(universal);

  auto* encode_perm = app.add_subcommand(
      "encode-perm",
      "Encode the pattern at a position-ordered occurrence: all indices, or indices plus the "
      "relative values at floor(ck) wide even slots");
  host.attach(encode_perm);
  encode_perm->add_option("--occ", occ_text, "Increasing indices t_1..t_k (k odd)")->required();
  add_c(encode_perm, "0.00075");
  add_d(encode_perm);
  output.attach(encode_perm);

  auto* decode_perm =
      app.add_subcommand("decode-perm", "Recover the pattern from a permutation encoding");
  host.attach(decode_perm);
  decode_perm->add_option("--encoding", encoding_text, "Encoding JSON");
  decode_perm->add_option("--encoding-file", encoding_path, "File holding the encoding JSON");
  add_c(decode_perm, "0.00075");
  add_d(decode_perm);
  output.attach(decode_perm);

  auto* encode_seq = app.add_subcommand(
      "encode-seq",
      "Encode the pattern at a value-indexed occurrence of a sequence over [k]: the first "
      "k - floor(ck) indices plus relative-position vectors for the rest");
  host.attach(encode_seq);
  encode_seq->add_option("--occ", occ_text, "Positions t_1..t_k with sigma(t_i) = i")->required();
  add_c(encode_seq, "exp(-290)");
  output.attach(encode_seq);

  auto* decode_seq =
      app.add_subcommand("decode-seq", "Recover the pattern from a sequence encoding");
  host.attach(decode_seq);
  decode_seq->add_option("--encoding", encoding_text, "Encoding JSON");
  decode_seq->add_option("--encoding-file", encoding_path, "File holding the encoding JSON");
  add_c(decode_seq, "exp(-290)");
  output.attach(decode_seq);

  auto* widths = app.add_subcommand(
      "widths", "Widths b_i = t_{i+1} - t_{i-1} at even i and which reach d*n/k");
  host.attach(widths);
  widths->add_option("--occ", occ_text, "Increasing indices t_1..t_k (k odd)")->required();
  add_c(widths, "0.00075");
  add_d(widths);
  output.attach(widths);

  auto* splits = app.add_subcommand(
      "splits", "Adjacent occurrence pairs of a symbol separated by a prefix index");
  host.attach(splits);
  splits->add_option("--prefix", prefix_text, "Positions t_1..t_L with sigma(t_i) = i")->required();
  splits->add_option("--m", m, "Symbol (default: every symbol after the prefix)");
  splits->add_option("--k", k, "Pattern length for the common-symbol test (default r)");
  output.attach(splits);

  auto* gaps = app.add_subcommand(
      "full-gaps", "Gaps between consecutive occurrences of a symbol and which are full");
  host.attach(gaps);
  gaps->add_option("--m", m, "Symbol whose gaps are listed");
  gaps->add_option("--full", full_fraction, "Fullness fraction")->capture_default_str();
  gaps->add_flag("--lemma", lemma, "Report common symbols with few full gaps instead");
  gaps->add_option("--k", k, "Pattern length for --lemma (default r)");
  gaps->add_option("--common", common_fraction, "Common-symbol fraction")->capture_default_str();
  output.attach(gaps);

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo tables as CSV");
  simulate->require_subcommand(1);
  auto* sim_widths = simulate->add_subcommand(
      "widths", "Widths at even i of uniform random k-subsets of [n]: trial,i,b_i,qualifies");
  sim_widths->add_option("--n", n, "Host length")->required();
  add_k(sim_widths, "Subset size");
  add_d(sim_widths);
  sim_widths->add_option("--trials", trials, "Number of trials")->capture_default_str();
  add_seed(sim_widths);
  add_parallel(sim_widths);
  output.attach(sim_widths);
  auto* sim_comp = simulate->add_subcommand(
      "composition", "Gaps a_0..a_k of uniform random k-subsets of [n]: trial,i,a_i");
  sim_comp->add_option("--n", n, "Host length")->required();
  add_k(sim_comp, "Subset size");
  sim_comp->add_option("--trials", trials, "Number of trials")->capture_default_str();
  add_seed(sim_comp);
  add_parallel(sim_comp);
  output.attach(sim_comp);
  auto* sim_splits = simulate->add_subcommand(
      "splits", "Split counts under independent uniform prefix draws: trial,m,a_m,splits");
  host.attach(sim_splits);
  sim_splits->add_option("--c", c_text, "Suffix fraction c; accepts exp(x)")->required();
  sim_splits->add_option("--trials", trials, "Number of trials")->capture_default_str();
  add_seed(sim_splits);
  add_parallel(sim_splits);
  output.attach(sim_splits);

  auto* certify = app.add_subcommand(
      "certify", "Check a constant inequality used by the lower bounds, with its log margin");
  certify->add_option("name", cert_name, "Certificate name, or 'all'")->required();
  certify->add_option("--param", cert_params, "Override as key=value (value may be exp(x))");
  output.attach(certify);

  auto* trivial = app.add_subcommand(
      "trivial-bounds", "Counting conditions C(n,k) >= k! and C(r,k)(n/k)^k >= k!");
  trivial->add_option("--n", big_n, "Host length")->required();
  trivial->add_option("--k", big_k, "Pattern length")->required();
  trivial->add_option("--r", big_r, "Alphabet size for the sequence bound");
  output.attach(trivial);

  auto* roundtrip = app.add_subcommand(
      "roundtrip-test",
      "Encode and decode every occurrence; compare distinct encodings with distinct patterns");
  host.attach(roundtrip);
  roundtrip->add_option("--k", k, "Pattern length (permutation hosts)");
  add_c(roundtrip, "0.4");
  add_d(roundtrip);
  add_parallel(roundtrip);
  roundtrip->add_option("--budget", budget, "Maximum subsets to enumerate (default 1e9)");
  output.attach(roundtrip);

  auto* ledger = app.add_subcommand(
      "ledger", "Group mixed-case subsets of [n] by (I, kept) and compare group sizes with the "
                "product of (b_i - 1)");
  ledger->add_option("--n", n, "Host length")->required();
  add_k(ledger, "Pattern length (odd)");
  add_c(ledger, "0.4");
  add_d(ledger);
  output.attach(ledger);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      usage_error(e.what());
    }

    auto require_seed = [&] {
      if (!seed) usage_error("--seed is required for simulations");
      return *seed;
    };
    auto read_encoding = [&] {
      if (encoding_text.empty() == encoding_path.empty()) {
        usage_error("give exactly one of --encoding and --encoding-file");
      }
      if (!encoding_path.empty()) {
        std::ifstream f(encoding_path, std::ios::binary);
        if (!f) throw Failure{kExitDomain, "io_error", "cannot read '" + encoding_path + "'"};
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
      }
      return encoding_text;
    };
    char* text = nullptr;

    if (construct->parsed()) {
      HostHandle h;
      if (kind == "repeated-identity") {
        if (k < 1) usage_error("--k >= 1 is required");
        check(sp_construct_repeated_identity(k, h.out()));
      } else {
        if (n < 1) usage_error("--n >= 1 is required");
        check(sp_random_permutation(n, require_seed(), h.out()));
      }
      check(sp_host_to_text(h.get(), &text));
      output.write(take(text));
    } else if (contains->parsed()) {
      HostHandle h;
      host.load(h);
      const auto pi = parse_list(pattern_text, "--pi");
      check(sp_contains(h.get(), pi.data(), pi.size(), &text));
      output.write(take(text));
    } else if (count->parsed()) {
      HostHandle h;
      host.load(h);
      check(sp_count_patterns(h.get(), k, parallelism, budget, &text));
      output.write(take(text));
    } else if (universal->parsed()) {
      HostHandle h;
      host.load(h);
      check(sp_universal(h.get(), k, &text));
      output.write(take(text));
    } else if (encode_perm->parsed() || widths->parsed()) {
      HostHandle h;
      host.load(h);
      const auto occ = parse_list(occ_text, "--occ");
      const double c = parse_number(c_text, "--c");
      const double d = parse_number(d_text, "--d");
      if (encode_perm->parsed()) {
        check(sp_encode_perm(h.get(), occ.data(), occ.size(), c, d, &text));
      } else {
        check(sp_widths(h.get(), occ.data(), occ.size(), c, d, &text));
      }
      output.write(take(text));
    } else if (decode_perm->parsed()) {
      HostHandle h;
      host.load(h);
      const std::string enc = read_encoding();
      check(sp_decode_perm(h.get(), enc.c_str(), parse_number(c_text, "--c"),
                           parse_number(d_text, "--d"), &text));
      output.write(take(text));
    } else if (encode_seq->parsed()) {
      HostHandle h;
      host.load(h);
      const auto occ = parse_list(occ_text, "--occ");
      check(sp_encode_seq(h.get(), occ.data(), occ.size(), parse_number(c_text, "--c"), &text));
      output.write(take(text));
    } else if (decode_seq->parsed()) {
      HostHandle h;
      host.load(h);
      const std::string enc = read_encoding();
      check(sp_decode_seq(h.get(), enc.c_str(), parse_number(c_text, "--c"), &text));
      output.write(take(text));
    } else if (splits->parsed()) {
      HostHandle h;
      host.load(h);
      const auto prefix = parse_list(prefix_text, "--prefix");
      const int kk = k > 0 ? k : sp_host_alphabet(h.get());
      check(sp_splits(h.get(), prefix.data(), prefix.size(), m, kk, &text));
      output.write(take(text));
    } else if (gaps->parsed()) {
      HostHandle h;
      host.load(h);
      if (lemma) {
        const int kk = k > 0 ? k : sp_host_alphabet(h.get());
        check(sp_fullgap_lemma(h.get(), kk, common_fraction, full_fraction, &text));
      } else {
        if (m < 1) usage_error("--m >= 1 is required");
        check(sp_full_gaps(h.get(), m, full_fraction, &text));
      }
      output.write(take(text));
    } else if (sim_widths->parsed()) {
      const std::uint64_t s = require_seed();
      check(sp_simulate_widths(n, k, parse_number(d_text, "--d"), trials, s, parallelism, &text));
      output.write(take(text));
    } else if (sim_comp->parsed()) {
      const std::uint64_t s = require_seed();
      check(sp_simulate_composition(n, k, trials, s, parallelism, &text));
      output.write(take(text));
    } else if (sim_splits->parsed()) {
      const std::uint64_t s = require_seed();
      HostHandle h;
      host.load(h);
      check(sp_simulate_splits(h.get(), parse_number(c_text, "--c"), trials, s, parallelism,
                               &text));
      output.write(take(text));
    } else if (certify->parsed()) {
      std::string params = "{";
      for (std::size_t i = 0; i < cert_params.size(); ++i) {
        const auto eq = cert_params[i].find('=');
        if (eq == std::string::npos || eq == 0) usage_error("--param needs key=value");
        const std::string key = cert_params[i].substr(0, eq);
        const std::string value = cert_params[i].substr(eq + 1);
        if (key.find_first_of("\"\\") != std::string::npos ||
            value.find_first_of("\"\\") != std::string::npos) {
          usage_error("--param keys and values may not contain quotes or backslashes");
        }
        params += (i ? "," : "") + std::string("\"") + key + "\":\"" + value + "\"";
      }
      params += "}";
      if (cert_name == "all") {
        if (!cert_params.empty()) usage_error("--param cannot be combined with 'all'");
        check(sp_certificate_names(&text));
        const std::string names = take(text);
        std::string all = "[\n";
        bool first = true;
        std::size_t pos = 0;
        while ((pos = names.find('"', pos)) != std::string::npos) {
          const std::size_t end = names.find('"', pos + 1);
          const std::string name = names.substr(pos + 1, end - pos - 1);
          pos = end + 1;
          check(sp_certify(name.c_str(), nullptr, &text));
          all += (first ? "" : ",\n") + take(text);
          first = false;
        }
        output.write(all + "]\n");
      } else {
        check(sp_certify(cert_name.c_str(), params.c_str(), &text));
        output.write(take(text));
      }
    } else if (trivial->parsed()) {
      check(sp_trivial_bounds(big_n, big_k, big_r, &text));
      output.write(take(text));
    } else if (roundtrip->parsed()) {
      HostHandle h;
      host.load(h);
      check(sp_roundtrip_test(h.get(), k, parse_number(c_text, "--c"),
                              parse_number(d_text, "--d"), parallelism, budget, &text));
      output.write(take(text));
    } else if (ledger->parsed()) {
      check(sp_counting_ledger(n, k, parse_number(c_text, "--c"), parse_number(d_text, "--d"),
                               &text));
      output.write(take(text));
    }
  } catch (const Failure& f) {
    std::string message = f.message;
    for (char& ch : message) {
      if (ch == '\n') ch = ' ';
    }
    std::cerr << "error: " << f.code << ": " << message << '\n';
    return f.exit_code;
  }
  return 0;
}
