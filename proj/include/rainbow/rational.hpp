#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <sstream>
#include <string>

#include <json.hpp>

namespace rainbow {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

inline BigInt factorial(std::uint64_t k) {
    BigInt f = 1;
    for (std::uint64_t i = 2; i <= k; ++i) f *= i;
    return f;
}

inline BigInt big_pow(const BigInt& base, std::uint64_t exponent) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

inline Rational rational_pow(const Rational& base, std::uint64_t exponent) {
    return Rational(big_pow(boost::multiprecision::numerator(base), exponent),
                    big_pow(boost::multiprecision::denominator(base), exponent));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Decimal rendering with `digits` significant digits (scientific for very
/// large or small magnitudes).
inline std::string to_decimal(const Rational& v, int digits = 17) {
    using Dec = boost::multiprecision::cpp_dec_float_50;
    if (v == 0) return "0";
    Dec d = Dec(boost::multiprecision::numerator(v)) / Dec(boost::multiprecision::denominator(v));
    std::string s = d.str(digits, std::ios_base::fmtflags(0));
    return s;
}

inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// {"num": "...", "den": "...", "decimal": "..."}; numerator and denominator
/// are strings because they routinely exceed 64 bits.
inline nlohmann::ordered_json rational_json(const Rational& v) {
    nlohmann::ordered_json j;
    j["num"] = boost::multiprecision::numerator(v).str();
    j["den"] = boost::multiprecision::denominator(v).str();
    j["decimal"] = to_decimal(v);
    return j;
}

inline std::string rational_string(const Rational& v) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(v);
    if (boost::multiprecision::denominator(v) != 1) os << "/" << boost::multiprecision::denominator(v);
    return os.str();
}

}  // namespace rainbow
