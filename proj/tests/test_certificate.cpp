#include <doctest.h>

#include <set>

#include "superpat/certificate.hpp"
#include "superpat/error.hpp"

using namespace superpat;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

double margin(const Certificate& c) { return static_cast<double>(c.margin_log); }

const CertificateStep& step(const Certificate& c, const std::string& name) {
  for (const auto& s : c.steps) {
    if (s.name == name) return s;
  }
  FAIL("missing step " << name);
  return c.steps.front();
}

}  // namespace

TEST_CASE("all default certificates hold") {
  const auto& names = certificate_names();
  CHECK(names == std::vector<std::string>{"thm1", "lam_binom", "lem31_chernoff", "lem31_binomial", "prop41",
                                          "thm2", "lem51_expected", "lem51_azuma", "lem52"});
  for (const auto& name : names) {
    const auto c = certify(name);
    INFO(name);
    CHECK(c.satisfied);
    CHECK(c.name == name);
    CHECK(c.params == certificate_defaults(name));
    for (const auto& s : c.steps) {
      INFO(s.name);
      CHECK(s.satisfied);
    }
    // The margin is ln lhs - ln rhs and its sign matches the direction.
    CHECK(c.margin_log == c.lhs.log_magnitude() - c.rhs.log_magnitude());
    if (c.direction == Direction::AtMost) {
      CHECK(c.margin_log <= 0);
    } else {
      CHECK(c.margin_log >= 0);
    }
  }
}

TEST_CASE("headline margins") {
  CHECK(std::abs(margin(certify("thm1")) - (-6.1e-7)) < 2e-7);
  CHECK(margin(certify("thm1")) == doctest::Approx(-6.10318987663568e-07).epsilon(1e-9));

  const auto lam = certify("lam_binom");
  CHECK(lam.direction == Direction::AtLeast);
  CHECK(lam.strict);
  CHECK(margin(lam) == doctest::Approx(5.8e-9).epsilon(0.01));
  CHECK(lam.lhs.to_double() == doctest::Approx(1.0000760058).epsilon(1e-10));

  const auto ch = certify("lem31_chernoff");
  CHECK(ch.lhs.to_double() == doctest::Approx(0.9999235).epsilon(1e-7));
  const auto bi = certify("lem31_binomial");
  CHECK(bi.lhs.to_double() == doctest::Approx(0.9999237).epsilon(1e-7));
  CHECK(step(bi, "p_exceeds_2c").satisfied);

  for (const char* name : {"prop41", "thm2", "lem51_expected", "lem51_azuma", "lem52"}) {
    INFO(name);
    CHECK(certify(name).margin_log < 0);
  }

  const auto l52 = certify("lem52");
  CHECK(static_cast<double>(l52.lhs.log_magnitude()) == doctest::Approx(-0.0130760184).epsilon(1e-8));
  CHECK(l52.lhs.to_double() == doctest::Approx(0.98701).epsilon(1e-5));
  CHECK(l52.lhs.to_double() <= 0.988);
}

TEST_CASE("overrides change the verdict") {
  // Near c = 0.00075 the base behaves like c (2 - ln d) + ln rho, so a
  // smaller fraction c loses.
  const auto bad = certify("thm1", {{"c", "0.0005"}});
  CHECK_FALSE(bad.satisfied);
  CHECK(bad.margin_log > 0);
  CHECK(bad.params.at("c") == "0.0005");
  CHECK(bad.params.at("d") == certificate_defaults("thm1").at("d"));

  CHECK_FALSE(certify("lam_binom", {{"rho", "1.0000761"}}).satisfied);
  CHECK_FALSE(certify("lem52", {{"ceiling", "0.987"}}).satisfied);
  // Steps fail independently of the headline.
  const auto ch = certify("lem31_chernoff", {{"d_prime", "8.1"}});
  CHECK_FALSE(ch.satisfied);
  CHECK_FALSE(step(ch, ch.steps.front().name).satisfied);
  CHECK_FALSE(certify("thm2", {{"rate", "exp(-2000)"}}).satisfied);
  CHECK(certify("thm2", {{"tau", "exp(-1100)"}}).satisfied);
}

TEST_CASE("certificate input errors") {
  CHECK(code_of([] { certify("thm9"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { certificate_defaults("nope"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { certify("thm1", {{"e", "1"}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { certify("thm1", {{"c", "abc"}}); }) == ErrorCode::Parse);
  for (const char* text : {"exp(-)", "-", ".", "1e", "e5", "1.2.3", "exp()", "exp(1"}) {
    INFO(text);
    CHECK(code_of([&] { certify("prop41", {{"rate", text}}); }) == ErrorCode::Parse);
  }
}
