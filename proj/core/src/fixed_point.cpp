#include <qfix/fixed_point.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qfix {

namespace {

void check_format(const FpFormat& fmt) {
    if (fmt.width() < 1) throw parameter_error("format needs int_bits + frac_bits >= 1");
}

}  // namespace

FixedPoint::FixedPoint(BigInt mantissa, FpFormat fmt)
    : mantissa_(std::move(mantissa)), fmt_(fmt) {
    check_format(fmt_);
    if (mantissa_ < 0) throw overflow_error("mantissa must be nonnegative");
    if (bit_length(mantissa_) > fmt_.width())
        throw overflow_error("mantissa does not fit " + std::to_string(fmt_.int_bits) + "." +
                             std::to_string(fmt_.frac_bits) + " register");
}

FixedPoint FixedPoint::from_decimal_string(std::string_view text, FpFormat fmt) {
    check_format(fmt);
    size_t i = 0;
    BigInt digits = 0;
    unsigned frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) throw parse_error("two decimal points in \"" + std::string(text) + "\"");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw parse_error("malformed decimal \"" + std::string(text) + "\"");
        }
    }
    if (!seen_digit) throw parse_error("malformed decimal \"" + std::string(text) + "\"");

    BigInt den = 1;
    for (unsigned d = 0; d < frac_digits; ++d) den *= 10;
    // overflow iff digits/den >= 2^int_bits
    if (digits >= (BigInt(1) << fmt.int_bits) * den)
        throw overflow_error("\"" + std::string(text) + "\" needs more than " +
                             std::to_string(fmt.int_bits) + " integer bits");
    BigInt mant = floor_div(digits << fmt.frac_bits, den);
    return FixedPoint(std::move(mant), fmt);
}

FixedPoint FixedPoint::from_bit_string(std::string_view text) {
    BigInt mant = 0;
    unsigned int_bits = 0, frac_bits = 0;
    bool seen_dot = false, seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw parse_error("two points in bit string");
            seen_dot = true;
        } else if (c == '0' || c == '1') {
            mant = (mant << 1) | (c - '0');
            seen_digit = true;
            if (seen_dot) ++frac_bits; else ++int_bits;
        } else {
            throw parse_error("malformed bit string \"" + std::string(text) + "\"");
        }
    }
    if (!seen_digit) throw parse_error("empty bit string");
    if (int_bits + frac_bits == 0) throw parse_error("empty bit string");
    return FixedPoint(std::move(mant), FpFormat{int_bits, frac_bits});
}

FixedPoint FixedPoint::from_integer(const BigInt& v, FpFormat fmt) {
    check_format(fmt);
    if (v < 0) throw overflow_error("negative value");
    return FixedPoint(v << fmt.frac_bits, fmt);
}

FixedPoint FixedPoint::power_of_two(int k, FpFormat fmt) {
    check_format(fmt);
    int pos = k + static_cast<int>(fmt.frac_bits);
    if (pos < 0 || pos >= static_cast<int>(fmt.width()))
        throw overflow_error("2^" + std::to_string(k) + " not representable");
    return FixedPoint(BigInt(1) << static_cast<unsigned>(pos), fmt);
}

BigRat FixedPoint::value() const {
    return BigRat(mantissa_) / pow2_rat(fmt_.frac_bits);
}

std::string FixedPoint::to_bit_string() const {
    std::string bits(fmt_.width(), '0');
    for (unsigned i = 0; i < fmt_.width(); ++i)
        if (boost::multiprecision::bit_test(mantissa_, i)) bits[fmt_.width() - 1 - i] = '1';
    std::string out = bits.substr(0, fmt_.int_bits);
    if (out.empty()) out = "0";
    if (fmt_.frac_bits > 0) out += "." + bits.substr(fmt_.int_bits);
    return out;
}

std::string FixedPoint::decimal(unsigned significant_digits) const {
    return to_decimal_string(value(), significant_digits);
}

FixedPoint mul_add(const FixedPoint& x, const FixedPoint& y, const FixedPoint& z) {
    unsigned rfrac = std::max(x.frac_bits() + y.frac_bits(), z.frac_bits());
    unsigned rint = std::max(x.int_bits() + y.int_bits(), z.int_bits()) + 1;
    BigInt mant = (x.mantissa() * y.mantissa())
                      << (rfrac - x.frac_bits() - y.frac_bits());
    mant += z.mantissa() << (rfrac - z.frac_bits());
    return FixedPoint(std::move(mant), FpFormat{rint, rfrac});
}

FixedPoint truncate(const FixedPoint& x, unsigned frac_bits_new) {
    if (frac_bits_new >= x.frac_bits()) return x;
    return FixedPoint(x.mantissa() >> (x.frac_bits() - frac_bits_new),
                      FpFormat{x.int_bits(), frac_bits_new});
}

FixedPoint shift(const FixedPoint& x, int k) {
    if (k == 0) return x;
    if (k > 0) {
        BigInt mant = x.mantissa() << static_cast<unsigned>(k);
        if (bit_length(mant) > x.format().width())
            throw overflow_error("left shift by " + std::to_string(k) + " overflows int_bits");
        return FixedPoint(std::move(mant), x.format());
    }
    unsigned r = static_cast<unsigned>(-k);
    BigInt low = x.mantissa() & ((BigInt(1) << r) - 1);
    if (low != 0) throw overflow_error("right shift by " + std::to_string(-k) +
                                       " drops nonzero bits");
    return FixedPoint(x.mantissa() >> r, x.format());
}

int msb_exponent(const FixedPoint& x) {
    if (x.is_zero()) throw domain_error("msb_exponent of zero");
    return static_cast<int>(bit_length(x.mantissa())) - static_cast<int>(x.frac_bits());
}

FixedPoint add_exact(const FixedPoint& a, const FixedPoint& b) {
    unsigned rfrac = std::max(a.frac_bits(), b.frac_bits());
    BigInt mant = (a.mantissa() << (rfrac - a.frac_bits())) +
                  (b.mantissa() << (rfrac - b.frac_bits()));
    unsigned rint = std::max(a.int_bits(), b.int_bits()) + 1;
    return FixedPoint(std::move(mant), FpFormat{rint, rfrac});
}

FixedPoint sub_exact(const FixedPoint& a, const FixedPoint& b) {
    unsigned rfrac = std::max(a.frac_bits(), b.frac_bits());
    BigInt mant = (a.mantissa() << (rfrac - a.frac_bits())) -
                  (b.mantissa() << (rfrac - b.frac_bits()));
    if (mant < 0) throw domain_error("sub_exact result would be negative");
    unsigned rint = std::max(std::max(a.int_bits(), b.int_bits()), 1u);
    return FixedPoint(std::move(mant), FpFormat{rint, rfrac});
}

FixedPoint mul_exact(const FixedPoint& a, const FixedPoint& b) {
    return FixedPoint(a.mantissa() * b.mantissa(),
                      FpFormat{a.int_bits() + b.int_bits(), a.frac_bits() + b.frac_bits()});
}

FixedPoint scale2_exact(const FixedPoint& x, int k) {
    if (k == 0) return x;
    int fb = static_cast<int>(x.frac_bits());
    int ib = static_cast<int>(x.int_bits());
    if (k > 0) {
        unsigned pad = fb >= k ? 0u : static_cast<unsigned>(k - fb);
        unsigned rfrac = fb >= k ? static_cast<unsigned>(fb - k) : 0u;
        unsigned rint = static_cast<unsigned>(ib + k);
        return FixedPoint(x.mantissa() << pad, FpFormat{rint, rfrac});
    }
    unsigned rfrac = static_cast<unsigned>(fb - k);
    unsigned rint = static_cast<unsigned>(std::max(ib + k, 0));
    return FixedPoint(x.mantissa(), FpFormat{rint, rfrac});
}

FixedPoint reformat(const FixedPoint& x, FpFormat fmt) {
    check_format(fmt);
    BigInt mant = x.mantissa();
    if (fmt.frac_bits >= x.frac_bits()) {
        mant <<= (fmt.frac_bits - x.frac_bits());
    } else {
        unsigned drop = x.frac_bits() - fmt.frac_bits;
        if ((mant & ((BigInt(1) << drop) - 1)) != 0)
            throw overflow_error("reformat drops nonzero fraction bits");
        mant >>= drop;
    }
    return FixedPoint(std::move(mant), fmt);  // int overflow checked by ctor
}

int cmp_value(const FixedPoint& a, const FixedPoint& b) {
    unsigned rfrac = std::max(a.frac_bits(), b.frac_bits());
    BigInt am = a.mantissa() << (rfrac - a.frac_bits());
    BigInt bm = b.mantissa() << (rfrac - b.frac_bits());
    return am < bm ? -1 : (am == bm ? 0 : 1);
}

}  // namespace qfix
