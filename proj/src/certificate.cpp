#include "superpat/certificate.hpp"

#include <algorithm>

#include <boost/math/special_functions/log1p.hpp>

#include "superpat/error.hpp"
#include "superpat/prob.hpp"

namespace superpat {

namespace {

using boost::math::log1p;

struct Definition {
  std::string name;
  CertificateParams defaults;
};

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = {
      {"thm1", {{"c", "0.00075"}, {"d", "8.180"}, {"rho", "1.000076"}}},
      {"lam_binom", {{"lambda", "0.999924"}, {"rho", "1.000076"}}},
      {"lem31_chernoff", {{"d", "8.180"}, {"d_prime", "8.282"}, {"lambda", "0.999924"}}},
      {"lem31_binomial",
       {{"c", "0.00075"}, {"d_prime", "8.282"}, {"d_double_prime", "8.283"},
        {"lambda", "0.999924"}}},
      {"prop41",
       {{"c", "exp(-290)"}, {"split", "exp(-280)"}, {"bad_prefix", "exp(-560)"},
        {"rate", "exp(-580)"}, {"slack", "exp(-600)"}}},
      {"thm2", {{"tau", "exp(-1000)"}, {"rate", "exp(-600)"}}},
      {"lem51_expected",
       {{"c", "exp(-290)"}, {"common", "0.1"}, {"full", "0.9"}, {"open_fraction", "0.1"},
        {"decay", "2.6"}, {"target", "exp(-270)"}}},
      {"lem51_azuma",
       {{"c", "exp(-290)"}, {"common", "0.1"}, {"expected", "exp(-270)"},
        {"split", "exp(-280)"}, {"rate", "exp(-560)"}}},
      {"lem52",
       {{"common", "0.1"}, {"rare_fraction", "0.01"}, {"ceiling", "0.988"},
        {"slack", "exp(-600)"}, {"rate", "exp(-600)"}}},
  };
  return defs;
}

const Definition& find_definition(std::string_view name) {
  for (const auto& def : definitions()) {
    if (def.name == name) return def;
  }
  fail(ErrorCode::InvalidArgument, "unknown certificate '" + std::string(name) + "'");
}

class Params {
 public:
  explicit Params(CertificateParams values) : values_(std::move(values)) {}

  TinyLog number(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) fail(ErrorCode::InvalidArgument, "missing parameter " + key);
    try {
      return TinyLog::parse(it->second);
    } catch (const Error& e) {
      fail(ErrorCode::Parse, "parameter " + key + ": " + e.what());
    }
  }

  TinyLog positive(const std::string& key) const {
    TinyLog x = number(key);
    if (x.sign() <= 0) fail(ErrorCode::Domain, "parameter " + key + " must be positive");
    return x;
  }

  // Positive and below 1.
  TinyLog fraction(const std::string& key) const {
    TinyLog x = positive(key);
    if (x.log_magnitude() >= 0) fail(ErrorCode::Domain, "parameter " + key + " must be < 1");
    return x;
  }

  Real real(const std::string& key) const { return number(key).value(); }

 private:
  CertificateParams values_;
};

CertificateStep compare(std::string name, TinyLog lhs, TinyLog rhs, Direction direction,
                        bool strict) {
  CertificateStep s;
  s.name = std::move(name);
  if (lhs.sign() <= 0 || rhs.sign() <= 0) {
    fail(ErrorCode::Domain, "certificate sides must be positive in step " + s.name);
  }
  s.margin_log = lhs.log_magnitude() - rhs.log_magnitude();
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  s.direction = direction;
  s.strict = strict;
  if (direction == Direction::AtMost) {
    s.satisfied = strict ? s.margin_log < 0 : s.margin_log <= 0;
  } else {
    s.satisfied = strict ? s.margin_log > 0 : s.margin_log >= 0;
  }
  return s;
}

TinyLog exp_of(const Real& x) { return TinyLog::from_log(x); }

Certificate from_headline(CertificateStep head, std::vector<CertificateStep> steps = {}) {
  Certificate cert;
  cert.lhs = head.lhs;
  cert.rhs = head.rhs;
  cert.direction = head.direction;
  cert.strict = head.strict;
  cert.margin_log = head.margin_log;
  cert.satisfied = head.satisfied;
  for (const auto& s : steps) cert.satisfied = cert.satisfied && s.satisfied;
  cert.steps = std::move(steps);
  return cert;
}

Certificate build(std::string_view name, const Params& p) {
  if (name == "thm1") {
    const Real c = p.fraction("c").value();
    const Real d = p.positive("d").value();
    const Real rho = p.positive("rho").value();
    const Real base_log = (1 - c) * log(rho) + c - c * log(d) - (1 - c) * log1p(Real(-c));
    return from_headline(
        compare("base_below_one", exp_of(base_log), TinyLog::one(), Direction::AtMost, true));
  }
  if (name == "lam_binom") {
    const TinyLog lambda = p.fraction("lambda");
    const TinyLog rho = p.positive("rho");
    return from_headline(compare("inverse_lambda_exceeds_rho", TinyLog::one() / lambda, rho,
                                 Direction::AtLeast, true));
  }
  if (name == "lem31_chernoff") {
    const TinyLog d = p.positive("d");
    const TinyLog d_prime = p.positive("d_prime");
    const TinyLog lambda = p.fraction("lambda");
    // Per-k rate; the (k+1) exponent contributes one extra constant factor.
    const TinyLog rate = chernoff_exp_sum(0, (d / d_prime).value());
    return from_headline(compare("rate_below_lambda", rate, lambda, Direction::AtMost, true),
                         {compare("d_prime_exceeds_d", d_prime, d, Direction::AtLeast, true)});
  }
  if (name == "lem31_binomial") {
    const TinyLog c = p.fraction("c");
    const TinyLog d_prime = p.positive("d_prime");
    const TinyLog d_double_prime = p.positive("d_double_prime");
    const TinyLog lambda = p.fraction("lambda");
    const Real dd = d_double_prime.value();
    const TinyLog prob = TinyLog::from_log(-dd + log1p(dd));
    if (prob.log_magnitude() >= 0) fail(ErrorCode::Domain, "width probability must be < 1");
    std::vector<CertificateStep> steps;
    steps.push_back(compare("p_exceeds_2c", prob, TinyLog::from_value(2) * c, Direction::AtLeast,
                            true));
    steps.push_back(
        compare("d_double_prime_exceeds_d_prime", d_double_prime, d_prime, Direction::AtLeast,
                true));
    if (!steps.front().satisfied) {
      // The bound needs the threshold below the mean.
      return from_headline(compare("rate_below_lambda", TinyLog::one(), lambda,
                                   Direction::AtMost, true),
                           std::move(steps));
    }
    const Real pv = prob.value();
    const Real half_gap = pv / 2 - c.value();
    const TinyLog rate = TinyLog::from_log(-(half_gap * half_gap) / pv);
    return from_headline(compare("rate_below_lambda", rate, lambda, Direction::AtMost, true),
                         std::move(steps));
  }
  if (name == "prop41") {
    const TinyLog c = p.fraction("c");
    const TinyLog split = p.fraction("split");
    const TinyLog bad_prefix = p.positive("bad_prefix");
    const TinyLog rate = p.positive("rate");
    const TinyLog slack = p.positive("slack");
    std::vector<CertificateStep> steps;
    // a_m(1 - split) + ck <= a_m(1 - split + 10c) < a_m(1 - c) once a_m >= 0.1k.
    steps.push_back(compare("relative_positions_shrink", TinyLog::from_value(11) * c, split,
                            Direction::AtMost, true));
    // (1 - c)^{ck} <= exp(-c^2 k).
    steps.push_back(compare("encoding_rate", c * c, rate, Direction::AtLeast, false));
    steps.push_back(compare("bad_prefixes_negligible", bad_prefix, rate, Direction::AtLeast,
                            false));
    const Real lhs_log = -rate.value() + log1p(slack.value());
    return from_headline(compare("per_k_total", exp_of(lhs_log), exp_of(-slack.value()),
                                 Direction::AtMost, true),
                         std::move(steps));
  }
  if (name == "thm2") {
    const Real tau = p.positive("tau").value();
    const Real rate = p.positive("rate").value();
    // Per-k log of (k+t)^{k+t} / (k^k t^t) with t = tau k.
    const Real choose_log = (1 + tau) * log1p(tau) - tau * log(tau);
    return from_headline(compare("per_k_total", exp_of(-rate + choose_log), TinyLog::one(),
                                 Direction::AtMost, true));
  }
  if (name == "lem51_expected") {
    const Real c = p.fraction("c").value();
    const TinyLog common = p.fraction("common");
    const TinyLog full = p.fraction("full");
    const TinyLog open = p.fraction("open_fraction");
    const Real decay = p.positive("decay").value();
    const TinyLog target = p.fraction("target");
    // 1 - x >= exp(-decay x) on [0, full] reduces to the endpoint by concavity.
    std::vector<CertificateStep> steps;
    steps.push_back(compare("decay_covers_full_gaps", exp_of(-decay * full.value()),
                            TinyLog::one() - full, Direction::AtMost, false));
    // Worst case |J| = open * a_m with a_m = common * k.
    const TinyLog spread = open * common;
    const TinyLog survivor = open * exp_of(-decay * (1 - c) / spread.value());
    return from_headline(compare("expected_splits_margin", target, survivor, Direction::AtMost,
                                 true),
                         std::move(steps));
  }
  if (name == "lem51_azuma") {
    const Real c = p.fraction("c").value();
    const Real common = p.fraction("common").value();
    const TinyLog expected = p.fraction("expected");
    const TinyLog split = p.fraction("split");
    const TinyLog rate = p.positive("rate");
    std::vector<CertificateStep> steps;
    steps.push_back(compare("deviation_positive", split, expected, Direction::AtMost, true));
    const Real deviation = common * (expected - split).value();
    const Real exponent = -(deviation * deviation) / (2 * (1 - c));
    return from_headline(compare("tail_rate", exp_of(exponent), exp_of(-rate.value()),
                                 Direction::AtMost, true),
                         std::move(steps));
  }
  if (name == "lem52") {
    const Real common = p.fraction("common").value();
    const Real rare = p.fraction("rare_fraction").value();
    const TinyLog ceiling = p.positive("ceiling");
    const Real slack = p.positive("slack").value();
    const Real rate = p.positive("rate").value();
    const Real base_log = rare * log(common) - (1 - rare) * log1p(Real(-rare));
    std::vector<CertificateStep> steps;
    steps.push_back(compare("ceiling_to_rate",
                            exp_of(ceiling.log_magnitude() + log1p(slack)), exp_of(-rate),
                            Direction::AtMost, true));
    // Direct per-k log of the rare-symbol bound against k! >= (k/e)^k at the
    // largest admissible n.
    const Real bridge_log = base_log + 1 + (1 - rare) * (log1p(slack) - 1);
    steps.push_back(compare("exponent_bridge", exp_of(bridge_log), exp_of(-rate),
                            Direction::AtMost, true));
    return from_headline(
        compare("base_below_ceiling", exp_of(base_log), ceiling, Direction::AtMost, true),
        std::move(steps));
  }
  fail(ErrorCode::InvalidArgument, "unknown certificate '" + std::string(name) + "'");
}

}  // namespace

const char* direction_name(Direction d) noexcept {
  return d == Direction::AtMost ? "at_most" : "at_least";
}

const std::vector<std::string>& certificate_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& def : definitions()) out.push_back(def.name);
    return out;
  }();
  return names;
}

CertificateParams certificate_defaults(std::string_view name) {
  return find_definition(name).defaults;
}

Certificate certify(std::string_view name, const CertificateParams& overrides) {
  const Definition& def = find_definition(name);
  CertificateParams merged = def.defaults;
  for (const auto& [key, value] : overrides) {
    if (!def.defaults.contains(key)) {
      fail(ErrorCode::InvalidArgument,
           "certificate " + def.name + " has no parameter '" + key + "'");
    }
    merged[key] = value;
  }
  Certificate cert = build(def.name, Params(merged));
  cert.name = def.name;
  cert.params = std::move(merged);
  return cert;
}

}  // namespace superpat
