#ifndef QFIX_NUMERIC_HPP
#define QFIX_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace qfix {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

// 2^k as a rational, k may be negative.
inline BigRat pow2_rat(long k) {
    if (k >= 0) return BigRat(BigInt(1) << static_cast<unsigned>(k));
    return BigRat(1, BigInt(1) << static_cast<unsigned>(-k));
}

// Number of bits in the binary representation; bit_length(0) == 0.
inline unsigned bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
}

// Smallest s with 2^s >= v, for v >= 1.
inline unsigned ceil_log2(const BigInt& v) {
    unsigned bl = bit_length(v);
    return (v == (BigInt(1) << (bl - 1))) ? bl - 1 : bl;
}

inline unsigned ceil_log2(unsigned v) { return ceil_log2(BigInt(v)); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    return -floor_div(-a, b);
}

inline BigInt floor_rat(const BigRat& r) {
    return floor_div(boost::multiprecision::numerator(r),
                     boost::multiprecision::denominator(r));
}

// Floor of v * 2^k for signed k.
inline BigInt floor_scale2(const BigRat& v, long k) {
    return floor_rat(v * pow2_rat(k));
}

inline BigInt isqrt(const BigInt& v) { return boost::multiprecision::sqrt(v); }

std::string to_decimal_string(const BigRat& v, unsigned significant_digits);

// Exponent E with 10^E <= v < 10^(E+1), for v > 0.
long dec_exponent(const BigRat& v);

// Digit string (length == digits, half-up rounding) plus leading-digit
// exponent, for v > 0.
std::pair<std::string, long> round_significant(const BigRat& v, unsigned digits);

}  // namespace qfix

#endif
