#include <doctest.h>

#include <qfix/bounds.hpp>
#include <qfix/elementary.hpp>
#include <qfix/oracle.hpp>

#include "support/replay.hpp"

#include <random>

using namespace qfix;
using qfix_test::replay_inv;
using qfix_test::replay_sqrt;
using qfix_test::verify_trace;

namespace {

FixedPoint dec(const std::string& s, unsigned m, unsigned fb) {
    return FixedPoint::from_decimal_string(s, FpFormat{m, fb});
}

FixedPoint integer(unsigned long v, unsigned m) {
    return FixedPoint::from_integer(v, FpFormat{m, 0});
}

unsigned digits_vs_oracle(const BigRat& got, const oracle::GuardValue& want) {
    return oracle::digit_agreement(got, want.midpoint());
}

}  // namespace

TEST_CASE("inv: unit input returns one exactly") {
    auto r = inv(integer(1, 4), 8, 4, 16);
    CHECK(r.result.value() == 1);
}

TEST_CASE("inv: w=4 replays the stated iteration") {
    auto r = inv(integer(4, 3), 3, 3, 32);
    auto iterates = replay_inv(BigRat(4), 32);
    REQUIRE(iterates.size() == 6);  // seed + ceil(log2 32) = 5 steps
    CHECK(iterates[0] == BigRat(1, 8));
    CHECK(iterates[1] == BigRat(3, 16));  // -4*0.015625 + 0.25
    CHECK(r.result.value() == iterates.back());
    CHECK(abs(r.result.value() - BigRat(1, 4)) <= BigRat(7) / pow2_rat(32));
    // trace carries the same iterates
    unsigned found = 0;
    for (const auto& s : r.trace.steps)
        if (s.label.rfind("xhat_", 0) == 0) {
            CHECK(s.truncated.value() == iterates[found]);
            ++found;
        }
    CHECK(found == 6);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("inv: w=2 lands in the worst-case band") {
    auto r = inv(integer(2, 2), 2, 2, 32);
    CHECK(r.result.value() == replay_inv(BigRat(2), 32).back());
    CHECK(r.result.value() <= BigRat(1, 2));
    CHECK(r.result.value() >= BigRat(1, 2) - BigRat(7) / pow2_rat(32));
}

TEST_CASE("inv: domain and parameter errors") {
    CHECK_THROWS_AS(inv(dec("0.5", 1, 4), 5, 1, 8), domain_error);
    CHECK_THROWS_AS(inv(integer(4, 3), 3, 3, 2), parameter_error);  // b < n
    CHECK_THROWS_AS(inv(integer(9, 4), 3, 3, 32), overflow_error);  // does not fit (3,0)
}

TEST_CASE("sqrt: table row w=48") {
    auto r = sqrt(integer(48, 32), 64, 32, 64);
    CHECK(r.result.value() == replay_sqrt(BigRat(48), 64));
    oracle::GuardValue want = oracle::ref_sqrt(BigRat(48), 256);
    CHECK(digits_vs_oracle(r.result.value(), want) >= 14);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("sqrt: unit input") {
    CHECK(sqrt(integer(1, 2), 4, 2, 8).result.value() == 1);
}

TEST_CASE("sqrt: small case inside the worst-case bound") {
    // w = 4 needs three integer bits; the (3/4)^12 (2+16+4) envelope still holds
    auto r = sqrt(integer(4, 3), 3, 3, 16);
    CHECK(r.result.value() == replay_sqrt(BigRat(4), 16));
    BigRat envelope = BigRat(22);
    for (int i = 0; i < 12; ++i) envelope *= BigRat(3, 4);
    CHECK(abs(r.result.value() - 2) <= envelope);
    CHECK(abs(r.result.value() - 2) <= bounds::bound_sqrt(16, 3).bound);
}

TEST_CASE("sqrt: stage step counts match ceil(log2 b)") {
    auto r = sqrt(integer(7, 3), 6, 3, 20);
    unsigned s = ceil_log2(BigInt(20));
    unsigned xs = 0, ys = 0;
    for (const auto& st : r.trace.steps) {
        if (st.label.rfind("xhat_", 0) == 0) ++xs;
        if (st.label.rfind("yhat_", 0) == 0) ++ys;
    }
    CHECK(xs == s + 1);
    CHECK(ys == s + 1);
    // forward mul_add count: 2 per recip step + 4 per invsqrt step
    CHECK(r.trace.total_muladds() == 6 * s);
}

TEST_CASE("sqrt: parameter gate names the constraint") {
    try {
        sqrt(dec("91338", 17, 0), 17, 17, 16);
        FAIL("expected parameter_error");
    } catch (const parameter_error& e) {
        CHECK(std::string(e.what()).find("max{2m, 4}") != std::string::npos);
    }
}

TEST_CASE("pow2_roots: table row w=28, k=10") {
    auto r = pow2_roots(integer(28, 32), 10, 64, 32, 64);
    auto roots = r.result;
    REQUIRE(roots.size() == 10);
    oracle::GuardValue want = oracle::ref_root2k(BigRat(28), 10, 256);
    CHECK(digits_vs_oracle(roots.back().value(), want) >= 15);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("pow2_roots: w=1 gives all ones") {
    auto r = pow2_roots(integer(1, 2), 4, 2, 2, 8);
    for (const auto& z : r.result) CHECK(z.value() == 1);
}

TEST_CASE("pow2_roots: all outputs inside the doubled bound") {
    auto r = pow2_roots(integer(256, 9), 3, 9, 9, 64);
    BigRat bound = bounds::bound_pow2roots(64, 9).bound;
    CHECK(abs(r.result[2].value() - 2) <= bound);  // 256^(1/8) = 2
    for (unsigned i = 0; i < 3; ++i) {
        oracle::GuardValue want = oracle::ref_root2k(BigRat(256), i + 1, 256);
        CHECK(abs(r.result[i].value() - want.midpoint()) <= bound + want.radius());
    }
}

TEST_CASE("ln: table row w=96") {
    auto r = ln(integer(96, 32), 64, 32, 50);
    oracle::GuardValue want = oracle::ref_ln(BigRat(96), 256);
    CHECK(digits_vs_oracle(r.result.value(), want) >= 15);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("ln: unit input returns zero") {
    CHECK(ln(integer(1, 4), 8, 4, 7).result.value() == 0);
}

TEST_CASE("ln: exact powers of two use the stored constant") {
    unsigned l = 10, b = 50;
    auto r = ln(integer(32, 6), 6, 6, l);
    FixedPoint reg = ln2_constant(b);
    CHECK(r.result.value() == 5 * reg.value());
    oracle::GuardValue ln2 = oracle::ref_ln2(256);
    CHECK(abs(r.result.value() - 5 * ln2.midpoint()) <=
          BigRat(5) / pow2_rat(b) + 5 * ln2.radius());
}

TEST_CASE("ln: parameter floor on l") {
    CHECK_THROWS_AS(ln(integer(96, 32), 64, 32, 8), parameter_error);  // needs >= 9
}

TEST_CASE("frac_pow: table row w=76") {
    FixedPoint w = integer(76, 32);
    FixedPoint f = dec("0.7431", 1, 64);
    auto r = frac_pow(w, f, 64, 32, 64, 50);
    oracle::GuardValue want = oracle::ref_pow(BigRat(76), f.value(), 256);
    CHECK(digits_vs_oracle(r.result.value(), want) >= 14);
    CHECK(abs(r.result.value() - want.midpoint()) <=
          bounds::bound_fracpow(50).bound + want.radius());
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("frac_pow: endpoint exponents") {
    FixedPoint w = integer(7, 3);
    auto r1 = frac_pow(w, FixedPoint::from_bit_string("1.0000"), 6, 3, 4, 10);
    CHECK(r1.result.value() == 7);
    auto r0 = frac_pow(w, FixedPoint(BigInt(0), FpFormat{1, 4}), 6, 3, 4, 10);
    CHECK(r0.result.value() == 1);
}

TEST_CASE("frac_pow: f = one half") {
    auto r = frac_pow(integer(4, 3), FixedPoint::from_bit_string("0.1"), 3, 3, 1, 20);
    CHECK(abs(r.result.value() - 2) <= pow2_rat(-19));
}

TEST_CASE("frac_pow: exponent bit decomposition") {
    FixedPoint f = dec("0.7431", 1, 64);
    BigRat sum = 0;
    for (unsigned i = 1; i <= 64; ++i)
        if (boost::multiprecision::bit_test(f.mantissa(), 64 - i)) sum += pow2_rat(-(int)i);
    CHECK(sum == f.value());
}

TEST_CASE("frac_pow2: table row w=0.7706") {
    FixedPoint w = dec("0.7706", 32, 60);
    FixedPoint f = dec("0.1839", 1, 64);
    auto r = frac_pow2(w, f, 92, 32, 64, 50);
    oracle::GuardValue want = oracle::ref_pow(w.value(), f.value(), 256);
    CHECK(digits_vs_oracle(r.result.value(), want) >= 14);
    CHECK(abs(r.result.value() - want.midpoint()) <=
          bounds::bound_fracpow2(50).bound + want.radius());
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("frac_pow2: zero base and simple half power") {
    FixedPoint zero(BigInt(0), FpFormat{1, 4});
    CHECK(frac_pow2(zero, FixedPoint::from_bit_string("0.1000"), 5, 1, 4, 5)
              .result.value() == 0);
    auto r = frac_pow2(dec("0.25", 1, 4), FixedPoint::from_bit_string("0.1"), 5, 1, 1, 20);
    CHECK(abs(r.result.value() - BigRat(1, 2)) <= pow2_rat(-17));
}

TEST_CASE("frac_pow: rejects exponents above one") {
    CHECK_THROWS_AS(frac_pow(integer(7, 3), FixedPoint::from_bit_string("1.1"), 6, 3, 1, 10),
                    domain_error);
}

TEST_CASE("frac_pow2: rejects w >= 1") {
    CHECK_THROWS_AS(frac_pow2(integer(2, 2), FixedPoint::from_bit_string("0.1"), 6, 2, 1, 10),
                    domain_error);
}

TEST_CASE("sqrt_any: table row w=0.0198") {
    FixedPoint w = dec("0.0198", 32, 60);
    auto r = sqrt_any(w, 92, 32, 64);
    oracle::GuardValue want = oracle::ref_sqrt(w.value(), 256);
    CHECK(digits_vs_oracle(r.result.value(), want) >= 15);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("sqrt_any: exact dyadic chain and zero") {
    auto r = sqrt_any(dec("0.25", 1, 4), 5, 1, 16);
    CHECK(r.result.value() == BigRat(1, 2));
    CHECK(sqrt_any(FixedPoint(BigInt(0), FpFormat{1, 4}), 5, 1, 16).result.value() == 0);
}

TEST_CASE("roots_any: below-one input tracks the oracle") {
    FixedPoint w = dec("0.3175", 32, 60);
    auto r = roots_any(w, 6, 92, 32, 64);
    oracle::GuardValue want = oracle::ref_root2k(w.value(), 6, 256);
    CHECK(digits_vs_oracle(r.result.back().value(), want) >= 15);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("ln_any: w = 1/2 is minus the ln2 register") {
    FixedPoint w = dec("0.5", 1, 4);
    auto r = ln_any(w, 5, 1, 10);
    CHECK(r.result.negative);
    FixedPoint reg = ln2_constant(50);
    CHECK(r.result.magnitude.value() == reg.value());
    oracle::GuardValue ln2 = oracle::ref_ln2(256);
    CHECK(abs(r.result.value() + ln2.midpoint()) <= pow2_rat(-50) + ln2.radius());
    CHECK(verify_trace(r.trace).empty());
    CHECK_THROWS_AS(ln_any(FixedPoint(BigInt(0), FpFormat{1, 4}), 5, 1, 10), domain_error);
}

TEST_CASE("pow_rational: cube root of eight") {
    auto r = pow_rational(integer(8, 4), 1, 3, 8, 4, 64, 50);
    BigRat bound = bounds::bound_rational(50, 64, BigRat(8), bounds::Regime::w_ge_one).bound;
    CHECK(abs(r.result.value() - 2) <= bound);
    oracle::GuardValue want = oracle::ref_pow(BigRat(8), BigRat(1, 3), 256);
    CHECK(digits_vs_oracle(r.result.value(), want) >= 13);
    CHECK(verify_trace(r.trace).empty());
}

TEST_CASE("pow_rational: dyadic exponent matches frac_pow exactly") {
    auto a = pow_rational(integer(7, 3), 1, 2, 6, 3, 16, 20);
    auto b = frac_pow(integer(7, 3), FixedPoint::from_bit_string("0.1000"), 6, 3, 16, 20);
    CHECK(a.result.value() == b.result.value());
    auto zero = pow_rational(integer(7, 3), 0, 1, 6, 3, 16, 20);
    CHECK(zero.result.value() == 1);
    CHECK_THROWS_AS(pow_rational(integer(7, 3), 1, 0, 6, 3, 16, 20), domain_error);
}

TEST_CASE("ln2_constant: floor of the true constant") {
    CHECK(ln2_constant(1).value() == BigRat(1, 2));
    CHECK(ln2_constant(10).mantissa() == 709);
    CHECK(ln2_constant(60).mantissa() == BigInt("799144290325165978"));
    oracle::GuardValue ln2 = oracle::ref_ln2(512);
    for (unsigned b : {10u, 25u, 60u, 100u}) {
        FixedPoint r = ln2_constant(b);
        CHECK(abs(r.value() - ln2.midpoint()) <= pow2_rat(-(long)b) + ln2.radius());
        CHECK(r.value() <= ln2.upper());
    }
}

TEST_CASE("underestimation: reciprocal iterates never overshoot") {
    std::mt19937_64 rng(0xabc1);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned m = 2 + rng() % 10;
        unsigned fb = rng() % 8;
        unsigned n = m + fb;
        BigInt mant = (BigInt(rng()) % (pow2(n) - pow2(fb))) + pow2(fb);  // value >= 1
        FixedPoint w(mant, FpFormat{m, fb});
        unsigned b = n + rng() % 40;
        auto r = inv(w, n, m, b);
        for (const auto& st : r.trace.steps)
            if (st.label.rfind("xhat_", 0) == 0)
                CHECK(st.truncated.value() * w.value() <= 1);
    }
}

TEST_CASE("determinism: identical runs produce identical traces") {
    auto a = sqrt(integer(48, 8), 10, 8, 24);
    auto b = sqrt(integer(48, 8), 10, 8, 24);
    CHECK(a.trace == b.trace);
    CHECK(a.result == b.result);
}

TEST_CASE("trace replay across every algorithm") {
    CHECK(verify_trace(inv(integer(11, 4), 8, 4, 16).trace).empty());
    CHECK(verify_trace(sqrt(dec("5.5", 3, 2), 5, 3, 12).trace).empty());
    CHECK(verify_trace(pow2_roots(integer(12, 4), 3, 6, 4, 10).trace).empty());
    CHECK(verify_trace(ln(integer(12, 4), 6, 4, 6).trace).empty());
    CHECK(verify_trace(frac_pow(integer(12, 4), dec("0.625", 1, 6), 6, 4, 6, 4).trace).empty());
    CHECK(verify_trace(
              frac_pow2(dec("0.625", 1, 6), dec("0.625", 1, 6), 7, 1, 6, 4).trace).empty());
    CHECK(verify_trace(ln_any(dec("0.125", 1, 6), 7, 1, 7).trace).empty());
    CHECK(verify_trace(pow_rational(integer(12, 4), 2, 5, 6, 4, 12, 8).trace).empty());
}

TEST_CASE("sqrt stage-2 iterates stay under the target plus truncation slack") {
    // yhat_j <= 1/sqrt(x_s) + 2^(1-b) (3/2)^j, checked as the exact rational
    // inequality x_s * (yhat_j - slack)^2 <= 1.
    std::mt19937_64 gen(0x51a9e2);
    for (int trial = 0; trial < 50; ++trial) {
        unsigned m = 2 + gen() % 8;
        unsigned b = std::max(2 * (m + 1), 4u) + gen() % 24;
        BigInt mant = (BigInt(gen()) % ((BigInt(1) << m) - 2)) + 2;  // w > 1
        FixedPoint w(mant << 1 | (gen() & 1), FpFormat{m + 1, 1});
        if (w.value() <= 1) continue;
        auto r = sqrt(w, m + 2, m + 1, b);
        BigRat xs;
        unsigned j = 0;
        for (const auto& s : r.trace.steps) {
            if (s.label.rfind("xhat_", 0) == 0) xs = s.truncated.value();
            if (s.label.rfind("yhat_", 0) != 0) continue;
            BigRat slack = pow2_rat(1 - static_cast<long>(b));
            for (unsigned i = 0; i < j; ++i) slack *= BigRat(3, 2);
            BigRat y = s.truncated.value();
            BigRat base = y > slack ? y - slack : BigRat(0);
            CHECK(xs * base * base <= 1);
            ++j;
        }
        CHECK(j == ceil_log2(BigInt(b)) + 1);
    }
}

TEST_CASE("small-parameter edges") {
    // b = 1 admits only w = 1 (b >= n); zero Newton steps
    CHECK(inv(integer(1, 1), 1, 1, 1).result.value() == 1);
    // minimal accuracy parameter for ln
    unsigned n = 6;
    unsigned l_floor = ceil_log2(BigInt(8) * n);
    CHECK(ln(integer(48, 6), n, 6, l_floor).result.value() > 0);
    // a single root is exactly sqrt
    auto r1 = pow2_roots(integer(48, 6), 1, 6, 6, 24);
    auto s1 = sqrt(integer(48, 6), 6, 6, 24);
    CHECK(r1.result[0] == s1.result);
    // odd minimal shift for a below-one sqrt rounds nu up to even
    auto odd = sqrt_any(dec("0.7", 1, 10), 11, 1, 16);
    oracle::GuardValue want = oracle::ref_sqrt(dec("0.7", 1, 10).value(), 128);
    CHECK(oracle::digit_agreement(odd.result.value(), want.midpoint()) >= 4);
    // leading fraction bit in the lowest position
    FixedPoint tiny(BigInt(1), FpFormat{1, 6});  // 2^-6
    auto fp2 = frac_pow2(tiny, FixedPoint::from_bit_string("0.1"), 7, 1, 1, 12);
    CHECK(abs(fp2.result.value() - BigRat(1, 8)) <= pow2_rat(-9));  // sqrt(2^-6)
}
