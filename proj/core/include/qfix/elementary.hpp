#ifndef QFIX_ELEMENTARY_HPP
#define QFIX_ELEMENTARY_HPP

#include <qfix/fixed_point.hpp>
#include <qfix/trace.hpp>

#include <vector>

namespace qfix {

/// Result magnitude plus sign; only ln_any can come out negative.
struct SignedFixed {
    bool negative = false;
    FixedPoint magnitude;

    BigRat value() const {
        BigRat v = magnitude.value();
        return negative ? BigRat(-v) : v;
    }
};

template <typename Value>
struct AlgoResult {
    Value result;
    IterationTrace trace;
};

/// Reciprocal of w >= 1 by Newton iteration x_i = -w*x^2 + 2x seeded with
/// 2^-p, s = ceil(log2 b) steps, every iterate truncated to b fraction bits.
/// Requires w representable in (m, n-m) and b >= n. The returned value
/// underestimates 1/w and satisfies |x_s - 1/w| <= (2 + log2 b)/2^b.
AlgoResult<FixedPoint> inv(const FixedPoint& w, unsigned n, unsigned m, unsigned b);

/// Square root of w >= 1: reciprocal stage followed by the inverse-sqrt
/// iteration y_j = (3y - x_s*y^3)/2 seeded with 2^floor((q-1)/2).
/// Requires b >= max{2m, 4}. |y_s - sqrt(w)| <= (3/4)^(b-2m) (2+b+log2 b).
AlgoResult<FixedPoint> sqrt(const FixedPoint& w, unsigned n, unsigned m, unsigned b);

/// w^(1/2^i) for i = 1..k by iterated sqrt; each |z_i - w^(1/2^i)| is within
/// twice the sqrt bound.
AlgoResult<std::vector<FixedPoint>> pow2_roots(const FixedPoint& w, unsigned k,
                                               unsigned n, unsigned m, unsigned b);

/// Natural log of w >= 1: reduce to w_p in [1,2), take the 2^l-th root,
/// apply d - d^2/2, scale back by 2^l and add (p-1) * r with r the stored
/// ln2 register. b = max{5l, 25}; requires l >= ceil(log2 8n).
AlgoResult<FixedPoint> ln(const FixedPoint& w, unsigned n, unsigned m, unsigned l);

/// w^f for w >= 1 and an n_f-bit fraction f: product of w^(1/2^i) over the
/// set bits of f. |z - w^f| <= 2^(1-l).
AlgoResult<FixedPoint> frac_pow(const FixedPoint& w, const FixedPoint& f, unsigned n,
                                unsigned m, unsigned nf, unsigned l);

/// w^f for 0 <= w < 1: rescale x = 2^k w >= 1, compute x^f, divide by
/// 2^floor(c) and an approximate 2^{c} with c = k*f. |t - w^f| <= 2^(3-l).
AlgoResult<FixedPoint> frac_pow2(const FixedPoint& w, const FixedPoint& f, unsigned n,
                                 unsigned m, unsigned nf, unsigned l);

/// sqrt for any w > 0: values below one are shifted left by the smallest
/// even nu with 2^nu w >= 1, rooted, and shifted back by nu/2 (exact).
/// sqrt_any(0) = 0.
AlgoResult<FixedPoint> sqrt_any(const FixedPoint& w, unsigned n, unsigned m, unsigned b);

/// pow2_roots for any w > 0; for w < 1 each root applies its own even shift.
AlgoResult<std::vector<FixedPoint>> roots_any(const FixedPoint& w, unsigned k,
                                              unsigned n, unsigned m, unsigned b);

/// ln for any w > 0; for w < 1 returns ln(2^nu w) - nu*r, which is negative
/// except within rounding of zero.
AlgoResult<SignedFixed> ln_any(const FixedPoint& w, unsigned n, unsigned m, unsigned l);

/// w^(p/q) for 0 <= p <= q: builds the n_f-bit exponent from inv(q) and one
/// exact multiply, then dispatches frac_pow or frac_pow2 on w.
AlgoResult<FixedPoint> pow_rational(const FixedPoint& w, const BigInt& p_num,
                                    const BigInt& q_den, unsigned n, unsigned m,
                                    unsigned nf, unsigned l);

/// r = floor(ln2 * 2^b) / 2^b, computed from the reference oracle at guard
/// precision; |r - ln 2| <= 2^-b.
FixedPoint ln2_constant(unsigned b);

/// b used by frac_pow: max{n, n_f, ceil(5(l + 2m + log2 n_f)), 40}.
unsigned frac_pow_precision(unsigned n, unsigned m, unsigned nf, unsigned l);

/// b used by frac_pow2: max{n, n_f, ceil(2l + 6m + 2 log2 n_f), 40}.
unsigned frac_pow2_precision(unsigned n, unsigned m, unsigned nf, unsigned l);

}  // namespace qfix

#endif
