#include <qfix/bounds.hpp>

#include <qfix/errors.hpp>
#include <qfix/oracle.hpp>

namespace qfix::bounds {

namespace {

BigRat rat_pow(const BigRat& base, unsigned e) {
    BigRat r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

// Rational upper bound on sqrt(3)/2, rounded up at `guard` bits.
BigRat sqrt3_half_upper(unsigned guard) {
    BigInt r = isqrt(BigInt(3) << (2 * guard));
    return BigRat(r + 1) / pow2_rat(static_cast<long>(guard) + 1);
}

// Rational upper bound on (3/4)^(e/2).
BigRat pow_3q_half_upper(unsigned e, unsigned guard) {
    BigRat whole = rat_pow(BigRat(3, 4), e / 2);
    if (e % 2 == 0) return whole;
    return whole * sqrt3_half_upper(guard);
}

// Rational upper bound on 1/ln2 from the oracle's certified interval.
BigRat inv_ln2_upper(unsigned guard) {
    oracle::GuardValue ln2 = oracle::ref_ln2(guard);
    BigRat lower = ln2.lower();
    return BigRat(1) / lower;
}

std::string u(unsigned v) { return std::to_string(v); }

}  // namespace

std::string ErrorBound::decimal(unsigned significant_digits) const {
    return to_decimal_string(bound, significant_digits);
}

ErrorBound bound_inv(unsigned b) {
    if (b < 1) throw parameter_error("bound_inv: b >= 1 required");
    BigRat v = BigRat(2 + ceil_log2(BigInt(b))) / pow2_rat(b);
    return {"inv", {{"b", u(b)}}, v};
}

ErrorBound bound_sqrt(unsigned b, unsigned m) {
    if (m < 1 || b < std::max(2 * m, 4u))
        throw parameter_error("bound_sqrt: b >= max{2m, 4} required");
    BigRat v = rat_pow(BigRat(3, 4), b - 2 * m) * BigRat(2 + b + ceil_log2(BigInt(b)));
    return {"sqrt", {{"b", u(b)}, {"m", u(m)}}, v};
}

ErrorBound bound_pow2roots(unsigned b, unsigned m) {
    ErrorBound s = bound_sqrt(b, m);
    return {"pow2_roots", s.params, 2 * s.bound};
}

ErrorBound bound_ln(unsigned l, unsigned n, unsigned m, unsigned guard) {
    unsigned floor_l = ceil_log2(BigInt(8) * n);
    if (l < floor_l)
        throw parameter_error("bound_ln: l >= ceil(log2 8n) = " + u(floor_l) + " required");
    BigRat inner = BigRat(32, 9) + BigRat(n) * inv_ln2_upper(guard);
    BigRat v = pow_3q_half_upper(5 * l, guard) *
               (BigRat(m) + BigRat(32, 9) + 2 * rat_pow(inner, 3));
    return {"ln", {{"l", u(l)}, {"n", u(n)}, {"m", u(m)}}, v};
}

ErrorBound bound_fracpow(unsigned l) {
    if (l < 2) throw parameter_error("bound_fracpow: l >= 2 required");
    return {"frac_pow", {{"l", u(l)}}, pow2_rat(1 - static_cast<long>(l))};
}

ErrorBound bound_fracpow2(unsigned l) {
    if (l < 2) throw parameter_error("bound_fracpow2: l >= 2 required");
    return {"frac_pow2", {{"l", u(l)}}, pow2_rat(3 - static_cast<long>(l))};
}

ErrorBound bound_rational(unsigned l, unsigned nf, const BigRat& w, Regime regime,
                          unsigned guard) {
    if (nf < 1) throw parameter_error("bound_rational: n_f >= 1 required");
    if (w <= 0) throw parameter_error("bound_rational: w > 0 required");
    BigRat base;
    BigRat lnw_term;
    if (regime == Regime::w_ge_one) {
        if (w < 1) throw parameter_error("bound_rational: w >= 1 regime mismatch");
        base = bound_fracpow(l).bound;
        lnw_term = w == 1 ? BigRat(0) : w * oracle::ref_ln(w, guard).upper();
    } else {
        if (w >= 1) throw parameter_error("bound_rational: w < 1 regime mismatch");
        base = bound_fracpow2(l).bound;
        lnw_term = -oracle::ref_ln(w, guard).lower();  // |ln w| upper bound
    }
    BigRat v = base + lnw_term / pow2_rat(nf);
    return {"pow_rational",
            {{"l", u(l)}, {"nf", u(nf)}, {"w", to_decimal_string(w, 20)},
             {"regime", regime == Regime::w_ge_one ? "w>=1" : "w<1"}},
            v};
}

}  // namespace qfix::bounds
