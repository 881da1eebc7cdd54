#ifndef QFIX_BOUNDS_HPP
#define QFIX_BOUNDS_HPP

#include <qfix/numeric.hpp>

#include <map>
#include <string>

namespace qfix::bounds {

/// Closed-form worst-case bound, evaluated as an exact rational (irrational
/// subexpressions replaced by rational upper bounds at guard precision with
/// directed rounding; a bound evaluator never rounds down).
struct ErrorBound {
    std::string algorithm;
    std::map<std::string, std::string> params;
    BigRat bound;

    std::string decimal(unsigned significant_digits = 30) const;
};

/// (2 + ceil(log2 b)) / 2^b
ErrorBound bound_inv(unsigned b);

/// (3/4)^(b-2m) (2 + b + ceil(log2 b)); requires b >= max{2m, 4}
ErrorBound bound_sqrt(unsigned b, unsigned m);

/// Twice the sqrt bound
ErrorBound bound_pow2roots(unsigned b, unsigned m);

/// (3/4)^(5l/2) (m + 32/9 + 2(32/9 + n/ln2)^3); requires l >= ceil(log2 8n)
ErrorBound bound_ln(unsigned l, unsigned n, unsigned m, unsigned guard = 128);

/// 2^(1-l)
ErrorBound bound_fracpow(unsigned l);

/// 2^(3-l)
ErrorBound bound_fracpow2(unsigned l);

enum class Regime { w_ge_one, w_below_one };

/// Rational-exponent corollaries: the fractional-power bound plus the
/// exponent-representation term. For w >= 1 the extra term is w ln w / 2^nf;
/// for w < 1 it is |ln w| / 2^nf (compare decisions notes).
ErrorBound bound_rational(unsigned l, unsigned nf, const BigRat& w, Regime regime,
                          unsigned guard = 128);

}  // namespace qfix::bounds

#endif
