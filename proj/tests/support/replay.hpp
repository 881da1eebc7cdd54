#ifndef QFIX_TESTS_REPLAY_HPP
#define QFIX_TESTS_REPLAY_HPP

// Test-side oracles. Everything here works on plain rationals with explicit
// floors so it shares no code path with the fixed-point implementation.

#include <qfix/elementary.hpp>
#include <qfix/trace.hpp>

#include <string>
#include <vector>

namespace qfix_test {

using qfix::BigInt;
using qfix::BigRat;

inline BigRat floor_at(const BigRat& v, unsigned b) {
    return BigRat(qfix::floor_rat(v * qfix::pow2_rat(b))) / qfix::pow2_rat(b);
}

inline BigRat round_at(const BigRat& v, unsigned b) {
    return BigRat(qfix::floor_rat(v * qfix::pow2_rat(b) + BigRat(1, 2))) / qfix::pow2_rat(b);
}

// p with 2^p > v >= 2^(p-1), v > 0
inline int msb_rat(const BigRat& v) {
    int p = 0;
    while (qfix::pow2_rat(p) <= v) ++p;
    while (qfix::pow2_rat(p - 1) > v) --p;
    return p;
}

inline unsigned ceil_log2_u(unsigned v) { return qfix::ceil_log2(BigInt(v)); }

// Reciprocal Newton iteration replayed in exact rational arithmetic:
// returns xhat_0 .. xhat_s (post-truncation values).
inline std::vector<BigRat> replay_inv(const BigRat& w, unsigned b) {
    std::vector<BigRat> out;
    if (w == 1) {
        out.push_back(BigRat(1));
        return out;
    }
    BigRat x = qfix::pow2_rat(-msb_rat(w));
    out.push_back(x);
    unsigned s = ceil_log2_u(b);
    for (unsigned i = 1; i <= s; ++i) {
        BigRat xi = 2 * x - w * x * x;
        x = floor_at(xi, b);
        out.push_back(x);
    }
    return out;
}

// Both sqrt stages replayed in exact rational arithmetic; returns yhat_s.
inline BigRat replay_sqrt(const BigRat& w, unsigned b) {
    if (w == 1) return BigRat(1);
    BigRat xs = replay_inv(w, b).back();
    int q = 1 - msb_rat(xs);
    BigRat y = qfix::pow2_rat((q - 1) / 2);
    unsigned s = ceil_log2_u(b);
    for (unsigned j = 1; j <= s; ++j) {
        BigRat yj = (3 * y - xs * y * y * y) / 2;
        y = floor_at(yj, b);
    }
    return y;
}

// Recomputes a step's pre-truncation value from its dependencies' truncated
// values; mirrors the documented StepOp semantics.
inline BigRat replay_step(const qfix::IterationTrace& t, size_t idx) {
    const qfix::TraceStep& s = t.steps[idx];
    auto dep = [&](size_t i) { return t.steps[s.deps.at(i)].truncated.value(); };
    switch (s.op) {
        case qfix::StepOp::input:
        case qfix::StepOp::constant:
            return s.exact;
        case qfix::StepOp::recip_seed:
            return qfix::pow2_rat(-msb_rat(dep(0)));
        case qfix::StepOp::recip_step: {
            BigRat w = dep(0), x = dep(1);
            return 2 * x - w * x * x;
        }
        case qfix::StepOp::invsqrt_seed: {
            int q = 1 - msb_rat(dep(0));
            return qfix::pow2_rat((q - 1) / 2);
        }
        case qfix::StepOp::invsqrt_step: {
            BigRat xs = dep(0), y = dep(1);
            return (3 * y - xs * y * y * y) / 2;
        }
        case qfix::StepOp::copy:
            return dep(0);
        case qfix::StepOp::scale:
            return dep(0) * qfix::pow2_rat(s.aux_k);
        case qfix::StepOp::product:
            return dep(0) * dep(1);
        case qfix::StepOp::ln_poly: {
            BigRat d = dep(0) - 1;
            return d - d * d / 2;
        }
        case qfix::StepOp::ln_combine:
            return dep(0) + BigRat(s.aux_k) * dep(1);
        case qfix::StepOp::sub_one:
            return dep(0) - 1;
        case qfix::StepOp::frac_split: {
            BigRat v = dep(0);
            return v - BigRat(qfix::floor_rat(v));
        }
        case qfix::StepOp::int_split:
            return BigRat(qfix::floor_rat(dep(0)));
        case qfix::StepOp::round_nearest:
            return BigRat(s.aux_k) * dep(0);
    }
    return s.exact;
}

// Replays an entire trace: every step's exact value must reproduce from its
// deps, and the truncated value must be its floor (round for round_nearest)
// at trunc_bits. Returns a failure description or the empty string.
inline std::string verify_trace(const qfix::IterationTrace& t) {
    for (size_t i = 0; i < t.steps.size(); ++i) {
        const qfix::TraceStep& s = t.steps[i];
        BigRat redo = replay_step(t, i);
        if (redo != s.exact) return "step " + s.label + ": exact value does not replay";
        BigRat expect_trunc;
        if (s.op == qfix::StepOp::round_nearest) {
            expect_trunc = round_at(s.exact, s.trunc_bits);
        } else if (s.exact < 0) {
            // sign carried separately (ln results); magnitude recorded
            expect_trunc = -s.exact;
        } else {
            expect_trunc = floor_at(s.exact, s.trunc_bits);
        }
        if (s.truncated.value() != expect_trunc)
            return "step " + s.label + ": truncated value is not the floor of exact";
    }
    return "";
}

}  // namespace qfix_test

#endif
