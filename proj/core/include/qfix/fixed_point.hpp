#ifndef QFIX_FIXED_POINT_HPP
#define QFIX_FIXED_POINT_HPP

#include <qfix/errors.hpp>
#include <qfix/numeric.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace qfix {

/// Register format: m integer bits, b fraction bits. Width must be >= 1.
struct FpFormat {
    unsigned int_bits = 0;
    unsigned frac_bits = 0;

    unsigned width() const { return int_bits + frac_bits; }
    friend bool operator==(const FpFormat&, const FpFormat&) = default;
};

/// Exact nonnegative dyadic rational: mantissa / 2^frac_bits with
/// mantissa < 2^(int_bits + frac_bits). Mantissas are arbitrary-width
/// integers; the format is an enforced contract, not a storage limit.
/// Immutable after construction.
class FixedPoint {
  public:
    FixedPoint() : mantissa_(0), fmt_{1, 0} {}
    FixedPoint(BigInt mantissa, FpFormat fmt);

    /// Truncates (floor) a nonnegative decimal literal into the format.
    /// Throws parse_error on malformed text, overflow_error if the value
    /// needs more than int_bits integer bits.
    static FixedPoint from_decimal_string(std::string_view text, FpFormat fmt);

    /// Binary literal "mmmm.ffff"; the format is implied by the digits.
    static FixedPoint from_bit_string(std::string_view text);

    static FixedPoint from_integer(const BigInt& v, FpFormat fmt);

    /// 2^k in the given format; throws overflow_error if not representable.
    static FixedPoint power_of_two(int k, FpFormat fmt);

    const BigInt& mantissa() const { return mantissa_; }
    const FpFormat& format() const { return fmt_; }
    unsigned int_bits() const { return fmt_.int_bits; }
    unsigned frac_bits() const { return fmt_.frac_bits; }

    BigRat value() const;
    bool is_zero() const { return mantissa_ == 0; }

    std::string to_bit_string() const;
    std::string decimal(unsigned significant_digits) const;

    /// Representation equality: same mantissa and same format.
    friend bool operator==(const FixedPoint&, const FixedPoint&) = default;

  private:
    BigInt mantissa_;
    FpFormat fmt_;
};

/// res <- x*y + z, exact. Output format widened so no rounding can occur:
/// (max(ix+iy, iz)+1, max(bx+by, bz)); for equal operand formats this is
/// (2m+1, 2b).
FixedPoint mul_add(const FixedPoint& x, const FixedPoint& y, const FixedPoint& z);

/// Floor at granularity 2^-frac_bits_new. Values already at <= frac_bits_new
/// fraction bits are returned unchanged.
FixedPoint truncate(const FixedPoint& x, unsigned frac_bits_new);

/// value * 2^k in the *same* format. Throws overflow_error if a left shift
/// overflows int_bits or a right shift would drop a nonzero bit.
FixedPoint shift(const FixedPoint& x, int k);

/// The unique p with 2^p > value(x) >= 2^(p-1). Requires x > 0.
int msb_exponent(const FixedPoint& x);

// Exact helper arithmetic used to compose the elementary modules. These are
// value-level operations; formats widen as needed and stay exact.
FixedPoint add_exact(const FixedPoint& a, const FixedPoint& b);
FixedPoint sub_exact(const FixedPoint& a, const FixedPoint& b);  // requires a >= b
FixedPoint mul_exact(const FixedPoint& a, const FixedPoint& b);

/// value * 2^k with the format adjusted so the result is always exact.
FixedPoint scale2_exact(const FixedPoint& x, int k);

/// Same value in the requested format. Throws overflow_error if the integer
/// part does not fit or fraction bits would be lost.
FixedPoint reformat(const FixedPoint& x, FpFormat fmt);

int cmp_value(const FixedPoint& a, const FixedPoint& b);
inline bool value_equal(const FixedPoint& a, const FixedPoint& b) {
    return cmp_value(a, b) == 0;
}

}  // namespace qfix

#endif
