#include <doctest.h>

#include <qfix/fixed_point.hpp>
#include <qfix/json_io.hpp>

#include <random>

using namespace qfix;

namespace {

std::mt19937_64 rng(0x5eed0001);

BigInt random_bits(unsigned bits) {
    BigInt v = 0;
    for (unsigned got = 0; got < bits; got += 64) {
        v <<= 64;
        v += BigInt(rng());
    }
    return v & ((BigInt(1) << bits) - 1);
}

}  // namespace

TEST_CASE("decimal ingestion truncates into the format") {
    FixedPoint one = FixedPoint::from_decimal_string("1.0", FpFormat{2, 4});
    CHECK(one.mantissa() == 16);

    // independent decimal-to-binary floor: 0.0198 = 198/10^4
    FixedPoint w = FixedPoint::from_decimal_string("0.0198", FpFormat{32, 60});
    BigInt expect = (BigInt(198) << 60) / BigInt(10000);
    CHECK(w.mantissa() == expect);
    CHECK(w.value() <= BigRat(198, 10000));
    CHECK(BigRat(198, 10000) - w.value() < pow2_rat(-60));

    CHECK_THROWS_AS(FixedPoint::from_decimal_string("4.0", FpFormat{2, 4}), overflow_error);
    CHECK_THROWS_AS(FixedPoint::from_decimal_string("1.2.3", FpFormat{4, 4}), parse_error);
    CHECK_THROWS_AS(FixedPoint::from_decimal_string("", FpFormat{4, 4}), parse_error);
    CHECK_THROWS_AS(FixedPoint::from_decimal_string("3x", FpFormat{4, 4}), parse_error);
}

TEST_CASE("bit-string literals") {
    FixedPoint x = FixedPoint::from_bit_string("101.0011");
    CHECK(x.int_bits() == 3);
    CHECK(x.frac_bits() == 4);
    CHECK(x.value() == BigRat(83, 16));
    CHECK(x.to_bit_string() == "101.0011");
    CHECK_THROWS_AS(FixedPoint::from_bit_string("10.12"), parse_error);
}

TEST_CASE("mul_add identity and forced small case") {
    FixedPoint one = FixedPoint::from_integer(1, FpFormat{2, 2});
    FixedPoint v = FixedPoint::from_bit_string("10.01");
    FixedPoint zero(BigInt(0), FpFormat{2, 2});
    FixedPoint r = mul_add(one, v, zero);
    CHECK(value_equal(r, v));
    CHECK(r.int_bits() == 5);
    CHECK(r.frac_bits() == 4);

    FixedPoint a = FixedPoint::from_decimal_string("1.5", FpFormat{2, 2});
    FixedPoint b = FixedPoint::from_decimal_string("2.5", FpFormat{2, 2});
    FixedPoint c = FixedPoint::from_decimal_string("0.25", FpFormat{2, 2});
    CHECK(mul_add(a, b, c).value() == BigRat(4));
}

TEST_CASE("mul_add is exact against the rational oracle") {
    for (int trial = 0; trial < 500; ++trial) {
        FpFormat fmt{16, 16};
        FixedPoint x(random_bits(32), fmt);
        FixedPoint y(random_bits(32), fmt);
        FixedPoint z(random_bits(32), fmt);
        FixedPoint r = mul_add(x, y, z);
        CHECK(r.value() == x.value() * y.value() + z.value());
    }
}

TEST_CASE("mul_add mixed formats widen exactly") {
    FixedPoint x(random_bits(12), FpFormat{8, 4});
    FixedPoint y(random_bits(9), FpFormat{3, 6});
    FixedPoint z(random_bits(5), FpFormat{2, 3});
    FixedPoint r = mul_add(x, y, z);
    CHECK(r.int_bits() == 8 + 3 + 1);
    CHECK(r.frac_bits() == 4 + 6);
    CHECK(r.value() == x.value() * y.value() + z.value());
}

TEST_CASE("truncate drops trailing bits") {
    FixedPoint x = FixedPoint::from_bit_string("0.101101");
    FixedPoint t = truncate(x, 3);
    CHECK(t.to_bit_string() == "0.101");

    // already at or below the requested width: unchanged
    FixedPoint y = FixedPoint::from_bit_string("11.01");
    CHECK(truncate(y, 2) == y);
    CHECK(truncate(y, 7) == y);
}

TEST_CASE("truncate equals integer floor division") {
    for (int trial = 0; trial < 200; ++trial) {
        FixedPoint x(random_bits(128), FpFormat{0, 128});
        FixedPoint t = truncate(x, 40);
        CHECK(t.mantissa() == x.mantissa() >> 88);
        CHECK(t.value() <= x.value());
        CHECK(x.value() - t.value() < pow2_rat(-40));
        CHECK(truncate(t, 40) == t);
    }
}

TEST_CASE("shift is exact in the declared format") {
    FixedPoint w = FixedPoint::from_decimal_string("0.0198", FpFormat{32, 60});
    FixedPoint s = shift(w, 6);
    CHECK(s.value() == w.value() * 64);
    CHECK(s.format() == w.format());

    CHECK(shift(w, 0) == w);

    FixedPoint x = FixedPoint::from_bit_string("0.101000");
    FixedPoint r = shift(x, -3);
    CHECK(r.value() * 8 == x.value());

    CHECK_THROWS_AS(shift(FixedPoint::from_bit_string("10.0"), 1), overflow_error);
    CHECK_THROWS_AS(shift(FixedPoint::from_bit_string("0.101"), -1), overflow_error);
}

TEST_CASE("shift/truncate commute for k >= 0 (exhaustive small widths)") {
    FpFormat fmt{6, 4};
    for (unsigned mant = 0; mant < (1u << 10); ++mant) {
        FixedPoint x(BigInt(mant), fmt);
        for (int k = 0; k <= 3; ++k) {
            if (bit_length(BigInt(mant) << k) > fmt.width()) continue;
            for (unsigned b = 0; b <= 4; ++b) {
                FixedPoint lhs = truncate(shift(x, k), b);
                FixedPoint rhs = shift(truncate(x, b + k), k);
                CHECK(value_equal(lhs, rhs));
            }
        }
    }
}

TEST_CASE("msb_exponent brackets the value") {
    CHECK(msb_exponent(FixedPoint::from_integer(48, FpFormat{8, 0})) == 6);
    CHECK(msb_exponent(FixedPoint::from_integer(1, FpFormat{1, 0})) == 1);
    CHECK(msb_exponent(FixedPoint::from_decimal_string("0.140625", FpFormat{1, 8})) == -2);
    CHECK_THROWS_AS(msb_exponent(FixedPoint(BigInt(0), FpFormat{4, 4})), domain_error);

    // exhaustive over all mantissas at width <= 16
    for (unsigned ib = 0; ib <= 8; ib += 4) {
        for (unsigned fb = 0; fb <= 8; fb += 2) {
            if (ib + fb < 1 || ib + fb > 16) continue;
            for (unsigned mant = 1; mant < (1u << (ib + fb)); ++mant) {
                FixedPoint x(BigInt(mant), FpFormat{ib, fb});
                int p = msb_exponent(x);
                CHECK(x.value() >= pow2_rat(p - 1));
                CHECK(x.value() < pow2_rat(p));
            }
        }
    }
}

TEST_CASE("exact helpers agree with rational arithmetic") {
    for (int trial = 0; trial < 200; ++trial) {
        FixedPoint a(random_bits(20), FpFormat{10, 10});
        FixedPoint b(random_bits(18), FpFormat{12, 6});
        CHECK(add_exact(a, b).value() == a.value() + b.value());
        CHECK(mul_exact(a, b).value() == a.value() * b.value());
        if (cmp_value(a, b) >= 0) CHECK(sub_exact(a, b).value() == a.value() - b.value());
        CHECK(scale2_exact(a, 5).value() == a.value() * 32);
        CHECK(scale2_exact(a, -7).value() == a.value() / 128);
    }
    CHECK_THROWS_AS(sub_exact(FixedPoint::from_integer(1, FpFormat{2, 0}),
                              FixedPoint::from_integer(2, FpFormat{2, 0})),
                    domain_error);
}

TEST_CASE("canonical JSON round-trips") {
    FixedPoint w = FixedPoint::from_decimal_string("0.0198", FpFormat{32, 60});
    nlohmann::json j = to_json(w);
    CHECK(j["int_bits"] == 32);
    CHECK(j["frac_bits"] == 60);
    CHECK(fixed_point_from_json(j) == w);
}

TEST_CASE("decimal emission") {
    FixedPoint w = FixedPoint::from_decimal_string("6.9282", FpFormat{4, 20});
    CHECK(w.decimal(5).substr(0, 6) == "6.9282");
    CHECK(to_decimal_string(BigRat(1, 3), 4) == "0.3333");
    CHECK(to_decimal_string(BigRat(2), 4) == "2");
    CHECK(to_decimal_string(BigRat(0), 8) == "0");
    CHECK(to_decimal_string(BigRat(1, BigInt(1) << 40), 3) == "9.09e-13");
    CHECK(to_decimal_string(BigRat(19999, 10000), 3) == "2");
}
