#pragma once

// Named checks of the constant inequalities behind the lower bounds. Each
// compares two positive quantities in log space and reports the margin
// ln(lhs) - ln(rhs), so precision regressions show up as drifting margins.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "superpat/tiny_log.hpp"

namespace superpat {

enum class Direction { AtMost, AtLeast };

const char* direction_name(Direction d) noexcept;

struct CertificateStep {
  std::string name;
  TinyLog lhs;
  TinyLog rhs;
  Direction direction = Direction::AtMost;
  bool strict = false;
  Real margin_log = 0;
  bool satisfied = false;
};

struct Certificate {
  std::string name;
  std::map<std::string, std::string> params;
  TinyLog lhs;
  TinyLog rhs;
  Direction direction = Direction::AtMost;
  bool strict = false;
  Real margin_log = 0;
  // Headline comparison and every step hold.
  bool satisfied = false;
  std::vector<CertificateStep> steps;
};

using CertificateParams = std::map<std::string, std::string>;

// Names accepted by certify, in a fixed order.
const std::vector<std::string>& certificate_names();

// Default parameter values for a certificate, as text ("exp(-290)" style
// accepted wherever a number is).
CertificateParams certificate_defaults(std::string_view name);

// Overrides must name known parameters; unknown names or unparseable values
// raise InvalidArgument or Parse.
Certificate certify(std::string_view name, const CertificateParams& overrides = {});

}  // namespace superpat
