#include <qfix/oracle.hpp>

#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

namespace qfix::oracle {

namespace {

// Interval value at an implicit working guard G: true in [v-e, v+e] * 2^-G.
struct Fix {
    BigInt v;
    BigInt e;
};

Fix fix_from_rat(const BigRat& x, unsigned G) {
    BigInt num = boost::multiprecision::numerator(x) << G;
    const BigInt& den = boost::multiprecision::denominator(x);
    BigInt q = floor_div(num, den);
    return {q, BigInt(num % den == 0 ? 0 : 1)};
}

Fix mul_fix(const Fix& a, const Fix& b, unsigned G) {
    BigInt v = floor_div(a.v * b.v, pow2(G));
    BigInt e = ceil_div(abs(a.v) * b.e + abs(b.v) * a.e + a.e * b.e, pow2(G)) + 1;
    return {std::move(v), std::move(e)};
}

Fix div_uint(const Fix& a, unsigned long d) {
    return {floor_div(a.v, BigInt(d)), ceil_div(a.e, BigInt(d)) + 1};
}

// atanh(x) for exact rational 0 <= x <= 1/2: sum of x^(2j+1)/(2j+1).
Fix atanh_fix(const BigRat& x, unsigned G) {
    Fix X = fix_from_rat(x, G);
    Fix X2 = mul_fix(X, X, G);
    Fix P = X;
    Fix S{0, 0};
    unsigned long j = 1;
    while (true) {
        if (P.v <= P.e + 8) {
            // tail including the pending term: sum_{i>=j} x^i/i <= x^j/(1-x^2) <= 2 x^j
            S.e += 2 * (P.v + P.e) + 2;
            break;
        }
        Fix term = div_uint(P, j);
        S.v += term.v;
        S.e += term.e;
        P = mul_fix(P, X2, G);
        j += 2;
    }
    return S;
}

std::mutex ln2_mutex;
std::map<unsigned, Fix> ln2_cache;

// ln 2 = 2 atanh(1/3)
Fix ln2_fix(unsigned G) {
    std::lock_guard<std::mutex> lock(ln2_mutex);
    auto it = ln2_cache.find(G);
    if (it != ln2_cache.end()) return it->second;
    Fix a = atanh_fix(BigRat(1, 3), G);
    Fix r{a.v * 2, a.e * 2};
    ln2_cache[G] = r;
    return r;
}

long floor_log2_rat(const BigRat& w) {
    const BigInt& num = boost::multiprecision::numerator(w);
    const BigInt& den = boost::multiprecision::denominator(w);
    long c = static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(den));
    auto ge_pow2 = [&](long k) {
        return k >= 0 ? num >= (den << static_cast<unsigned>(k))
                      : (num << static_cast<unsigned>(-k)) >= den;
    };
    while (!ge_pow2(c)) --c;
    while (ge_pow2(c + 1)) ++c;
    return c;
}

// ln w = nu*ln2 + 2 atanh((u-1)/(u+1)), u = w/2^nu in [1,2)
Fix ln_fix(const BigRat& w, unsigned G) {
    long nu = floor_log2_rat(w);
    BigRat u = w * pow2_rat(-nu);
    BigInt unum = boost::multiprecision::numerator(u);
    BigInt uden = boost::multiprecision::denominator(u);
    Fix l = atanh_fix(BigRat(unum - uden, unum + uden), G);
    l.v *= 2;
    l.e *= 2;
    if (nu != 0) {
        Fix ln2 = ln2_fix(G);
        l.v += nu * ln2.v;
        l.e += abs(BigInt(nu)) * ln2.e;
    }
    return l;
}

// exp(a) for an interval a of either sign: reduce a = j ln2 + rho,
// rho in [0, ln2), Taylor on rho, exact scale by 2^j.
Fix exp_fix(Fix a, unsigned G) {
    Fix ln2 = ln2_fix(G);
    BigInt j = floor_div(a.v, ln2.v);
    Fix rho{a.v - j * ln2.v, a.e + abs(j) * ln2.e};
    while (rho.v < 0) {
        --j;
        rho.v += ln2.v;
        rho.e += ln2.e;
    }
    while (rho.v >= ln2.v) {
        ++j;
        rho.v -= ln2.v;
        rho.e += ln2.e;
    }
    Fix T{pow2(G), 0};
    Fix S = T;
    unsigned long k = 1;
    while (true) {
        T = mul_fix(T, rho, G);
        T = div_uint(T, k);
        if (T.v <= T.e + 8) {
            S.e += 2 * (T.v + T.e) + 2;  // tail <= term_k * e^rho <= 2 term_k
            break;
        }
        S.v += T.v;
        S.e += T.e;
        ++k;
    }
    if (j >= 0) {
        unsigned uj = static_cast<unsigned>(j);
        S.v <<= uj;
        S.e <<= uj;
    } else {
        unsigned uj = static_cast<unsigned>(-j);
        S.e = ceil_div(S.e, pow2(uj)) + 1;
        S.v = floor_div(S.v, pow2(uj));
    }
    return S;
}

// Round an internal (v, e at Gw) down to the public guard G. Succeeds when
// the accumulated error fits in the margin; radius then <= 2 ulps = 2^(1-G).
bool normalize(const Fix& f, unsigned Gw, unsigned G, GuardValue* out) {
    unsigned shift = Gw - G;
    if (f.e > pow2(shift)) return false;
    BigInt num = floor_div(f.v + pow2(shift - 1), pow2(shift));
    *out = GuardValue(std::move(num), G, ceil_div(f.e, pow2(shift)) + 1);
    return true;
}

template <typename Body>
GuardValue with_retries(unsigned G, const char* what, Body body) {
    for (unsigned margin : {64u, 192u, 512u, 1408u}) {
        Fix f = body(G + margin);
        GuardValue out(0, G, 0);
        if (normalize(f, G + margin, G, &out)) return out;
    }
    throw precision_error(std::string(what) + ": cannot certify requested radius");
}

void require_guard(unsigned G) {
    if (G < 64) throw parameter_error("guard precision must be >= 64 bits");
}

}  // namespace

GuardValue::GuardValue(BigInt num, unsigned guard_bits, BigInt err_ulps)
    : num_(std::move(num)), guard_(guard_bits), err_(std::move(err_ulps)) {
    if (err_ < 0) throw parameter_error("negative error radius");
}

std::string GuardValue::decimal(unsigned significant_digits) const {
    return to_decimal_string(midpoint(), significant_digits);
}

unsigned default_guard_bits() {
    if (const char* s = std::getenv("QFIX_GUARD_BITS")) {
        long v = std::atol(s);
        if (v >= 64) return static_cast<unsigned>(v);
    }
    return 256;
}

GuardValue ref_sqrt(const BigRat& w, unsigned guard) {
    require_guard(guard);
    if (w < 0) throw domain_error("ref_sqrt of negative value");
    if (w == 0) return GuardValue(0, guard, 0);
    const BigInt& p = boost::multiprecision::numerator(w);
    const BigInt& q = boost::multiprecision::denominator(w);
    BigInt scaled = floor_div(p << (2 * guard), q);
    BigInt r = isqrt(scaled);
    if (r * r * q == (p << (2 * guard))) return GuardValue(std::move(r), guard, 0);
    return GuardValue(std::move(r), guard, 2);
}

std::vector<GuardValue> ref_root2k_all(const BigRat& w, unsigned k, unsigned guard) {
    require_guard(guard);
    if (w <= 0) throw domain_error("ref_root2k needs w > 0");
    if (k < 1) throw parameter_error("ref_root2k needs k >= 1");
    long nu = floor_log2_rat(w);
    unsigned margin = 2 * k + 32 + (nu < 0 ? static_cast<unsigned>(-nu) : 0u);
    unsigned Gw = guard + margin;
    Fix cur = fix_from_rat(w, Gw);
    std::vector<GuardValue> out;
    out.reserve(k);
    for (unsigned i = 0; i < k; ++i) {
        BigInt r = isqrt(cur.v << Gw);
        BigInt denom = 2 * (r - cur.e - 2);
        if (denom < 1) denom = 1;
        BigInt e = ceil_div(cur.e << Gw, denom) + 2;
        cur = Fix{std::move(r), std::move(e)};
        GuardValue gv(0, guard, 0);
        if (!normalize(cur, Gw, guard, &gv))
            throw precision_error("ref_root2k: cannot certify requested radius");
        out.push_back(gv);
    }
    return out;
}

GuardValue ref_root2k(const BigRat& w, unsigned k, unsigned guard) {
    return ref_root2k_all(w, k, guard).back();
}

GuardValue ref_ln(const BigRat& w, unsigned guard) {
    require_guard(guard);
    if (w <= 0) throw domain_error("ref_ln needs w > 0");
    if (w == 1) return GuardValue(0, guard, 0);
    return with_retries(guard, "ref_ln", [&](unsigned Gw) { return ln_fix(w, Gw); });
}

GuardValue ref_exp(const BigRat& a, unsigned guard) {
    require_guard(guard);
    if (a == 0) return GuardValue(pow2(guard), guard, 0);
    return with_retries(guard, "ref_exp",
                        [&](unsigned Gw) { return exp_fix(fix_from_rat(a, Gw), Gw); });
}

GuardValue ref_pow(const BigRat& w, const BigRat& f, unsigned guard) {
    require_guard(guard);
    if (w < 0) throw domain_error("ref_pow needs w >= 0");
    if (f < 0 || f > 1) throw domain_error("ref_pow needs 0 <= f <= 1");
    if (f == 0 || w == 1) return GuardValue(pow2(guard), guard, 0);
    if (w == 0) return GuardValue(0, guard, 0);
    if (f == 1) {
        Fix fx = fix_from_rat(w, guard + 64);
        GuardValue out(0, guard, 0);
        normalize(fx, guard + 64, guard, &out);
        return out;
    }
    return with_retries(guard, "ref_pow", [&](unsigned Gw) {
        Fix l = ln_fix(w, Gw);
        const BigInt& fn = boost::multiprecision::numerator(f);
        const BigInt& fd = boost::multiprecision::denominator(f);
        Fix a{floor_div(l.v * fn, fd), ceil_div(l.e * fn, fd) + 1};
        return exp_fix(a, Gw);
    });
}

GuardValue ref_ln2(unsigned guard) {
    require_guard(guard);
    return with_retries(guard, "ref_ln2", [&](unsigned Gw) { return ln2_fix(Gw); });
}

unsigned digit_agreement(const BigRat& a, const BigRat& b, unsigned cap) {
    if (a == 0 && b == 0) return cap;
    if (a == 0 || b == 0) return 0;
    if ((a < 0) != (b < 0)) return 0;
    BigRat aa = a < 0 ? BigRat(-a) : a;
    BigRat ab = b < 0 ? BigRat(-b) : b;
    if (aa == ab) return cap;
    for (unsigned d = cap; d >= 1; --d) {
        auto ra = round_significant(aa, d);
        auto rb = round_significant(ab, d);
        if (ra == rb) return d;
    }
    return 0;
}

unsigned digit_agreement(const std::string& a, const std::string& b, unsigned cap) {
    auto parse = [](const std::string& s) {
        bool neg = !s.empty() && s[0] == '-';
        std::string t = neg ? s.substr(1) : s;
        BigInt digits = 0, den = 1;
        bool dot = false;
        for (char c : t) {
            if (c == '.') {
                dot = true;
            } else if (c >= '0' && c <= '9') {
                digits = digits * 10 + (c - '0');
                if (dot) den *= 10;
            } else {
                throw parse_error("malformed decimal \"" + s + "\"");
            }
        }
        BigRat v(digits, den);
        return neg ? BigRat(-v) : v;
    };
    return digit_agreement(parse(a), parse(b), cap);
}

}  // namespace qfix::oracle
