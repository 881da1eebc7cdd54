#include <qfix/numeric.hpp>

#include <string>

namespace qfix {

namespace {

BigInt pow10(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) r *= 10;
    return r;
}

}  // namespace

// Leading decimal exponent E with 10^E <= v < 10^(E+1), v > 0.
long dec_exponent(const BigRat& v) {
    const BigInt& num = boost::multiprecision::numerator(v);
    const BigInt& den = boost::multiprecision::denominator(v);
    // Initial estimate from bit lengths: log10(v) ~ 0.30103 * log2(v).
    long e = static_cast<long>(
        (static_cast<double>(bit_length(num)) - static_cast<double>(bit_length(den))) * 0.30103);
    auto cmp_pow10 = [&](long k) {
        // sign of v - 10^k
        BigInt lhs = num, rhs = den;
        if (k >= 0) rhs *= pow10(static_cast<unsigned>(k));
        else lhs *= pow10(static_cast<unsigned>(-k));
        return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
    };
    while (cmp_pow10(e) < 0) --e;
    while (cmp_pow10(e + 1) >= 0) ++e;
    return e;
}

// Round v > 0 to `digits` significant decimal digits (half up).
// Returns the digit string (length == digits) and the exponent E of the
// leading digit: v ~ 0.digits * 10^(E+1).
std::pair<std::string, long> round_significant(const BigRat& v, unsigned digits) {
    long e = dec_exponent(v);
    // q = round(v * 10^(digits-1-e)), an integer with `digits` digits.
    long k = static_cast<long>(digits) - 1 - e;
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    if (k >= 0) num *= pow10(static_cast<unsigned>(k));
    else den *= pow10(static_cast<unsigned>(-k));
    BigInt q = floor_div(2 * num + den, 2 * den);  // floor(num/den + 1/2)
    std::string s = q.str();
    if (s.size() > digits) {  // 999.. rounded up to 1000..
        ++e;
        s = s.substr(0, digits);
    }
    return {s, e};
}

std::string to_decimal_string(const BigRat& v, unsigned significant_digits) {
    if (significant_digits == 0) significant_digits = 1;
    if (v == 0) return "0";
    std::string sign = v < 0 ? "-" : "";
    BigRat av = v < 0 ? BigRat(-v) : v;
    auto [digits, e] = round_significant(av, significant_digits);
    // strip trailing zeros but keep at least one digit
    size_t last = digits.find_last_not_of('0');
    digits = digits.substr(0, std::max<size_t>(last + 1, 1));
    long nd = static_cast<long>(digits.size());
    if (e >= -4 && e < 21) {
        std::string out;
        if (e >= 0) {
            if (nd > e + 1) {
                out = digits.substr(0, e + 1) + "." + digits.substr(e + 1);
            } else {
                out = digits + std::string(e + 1 - nd, '0');
            }
        } else {
            out = "0." + std::string(-e - 1, '0') + digits;
        }
        return sign + out;
    }
    std::string mant = digits.substr(0, 1);
    if (nd > 1) mant += "." + digits.substr(1);
    return sign + mant + "e" + (e >= 0 ? "+" : "") + std::to_string(e);
}

}  // namespace qfix
