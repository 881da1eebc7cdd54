#ifndef QFIX_ORACLE_HPP
#define QFIX_ORACLE_HPP

#include <qfix/errors.hpp>
#include <qfix/numeric.hpp>

#include <string>
#include <vector>

namespace qfix::oracle {

/// High-precision interval value: |true - num/2^guard_bits| <= err_ulps/2^guard_bits.
/// Every ref_* result is normalized so the radius is at most 2^(1-guard_bits).
class GuardValue {
  public:
    GuardValue(BigInt num, unsigned guard_bits, BigInt err_ulps);

    const BigInt& num() const { return num_; }
    unsigned guard_bits() const { return guard_; }
    const BigInt& err_ulps() const { return err_; }

    BigRat midpoint() const { return BigRat(num_) / pow2_rat(guard_); }
    BigRat radius() const { return BigRat(err_) / pow2_rat(guard_); }
    BigRat lower() const { return BigRat(num_ - err_) / pow2_rat(guard_); }
    BigRat upper() const { return BigRat(num_ + err_) / pow2_rat(guard_); }
    bool exact() const { return err_ == 0; }

    std::string decimal(unsigned significant_digits) const;

  private:
    BigInt num_;
    unsigned guard_;
    BigInt err_;
};

/// Raised when the requested radius cannot be certified.
struct precision_error : error {
    using error::error;
};

unsigned default_guard_bits();  // 256, or QFIX_GUARD_BITS when set

// Reference implementations, structurally independent of the fixed-point
// Newton pipelines: integer square roots, argument reduction to [1,2) plus
// the atanh series for ln, and a Taylor exp. Inputs are exact rationals.
GuardValue ref_sqrt(const BigRat& w, unsigned guard);
GuardValue ref_root2k(const BigRat& w, unsigned k, unsigned guard);
std::vector<GuardValue> ref_root2k_all(const BigRat& w, unsigned k, unsigned guard);
GuardValue ref_ln(const BigRat& w, unsigned guard);
GuardValue ref_exp(const BigRat& a, unsigned guard);
GuardValue ref_pow(const BigRat& w, const BigRat& f, unsigned guard);
GuardValue ref_ln2(unsigned guard);

/// Largest d <= cap such that rounding both values to d significant decimal
/// digits yields identical digit strings with matching exponents. Returns 0
/// on sign or zero mismatch; returns cap when both are exactly equal.
unsigned digit_agreement(const BigRat& a, const BigRat& b, unsigned cap = 40);
unsigned digit_agreement(const std::string& a, const std::string& b, unsigned cap = 40);

}  // namespace qfix::oracle

#endif
