#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace superpat {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t k);

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace superpat
