#ifndef QFIX_TRACE_HPP
#define QFIX_TRACE_HPP

#include <qfix/fixed_point.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qfix {

/// How a trace step's pre-truncation value is derived from its dependencies.
/// Replay tests recompute `exact` from the deps' truncated values.
enum class StepOp {
    input,         // algorithm input, recorded as-is
    constant,      // fixed value (e.g. the ln2 register)
    recip_seed,    // 2^-p from deps[0]
    recip_step,    // 2*v1 - v0*v1^2          (deps: w, previous iterate)
    invsqrt_seed,  // 2^floor((q-1)/2) from deps[0]
    invsqrt_step,  // (3*v1 - v0*v1^3)/2      (deps: x_s, previous iterate)
    copy,          // deps[0], possibly re-truncated
    scale,         // deps[0] * 2^aux_k
    product,       // deps[0] * deps[1]
    ln_poly,       // d - d^2/2 with d = deps[0] - 1
    ln_combine,    // deps[0] + aux_k * deps[1]
    sub_one,       // deps[0] - 1
    frac_split,    // fractional part of deps[0]
    int_split,     // integer part of deps[0]
    round_nearest, // deps[0] * deps[1] rounded (not floored) at trunc_bits
};

std::string step_op_name(StepOp op);
std::optional<StepOp> step_op_from_name(const std::string& name);

struct TraceStep {
    std::string label;     // e.g. "xhat_3", "z2/yhat_1"
    StepOp op;
    std::vector<int> deps;  // indices of earlier steps
    long aux_k = 0;         // shift amount / integer coefficient, op-dependent
    BigRat exact;           // pre-truncation value
    FixedPoint truncated;   // post-truncation register value
    unsigned trunc_bits = 0;
    unsigned muladds = 0;   // multiply-add module invocations in this step
};

struct TraceParams {
    std::optional<unsigned> n, m, b, l, nf, k;
    friend bool operator==(const TraceParams&, const TraceParams&) = default;
};

/// Ordered record of every intermediate value an algorithm produced.
struct IterationTrace {
    std::string algorithm;
    TraceParams params;
    std::vector<TraceStep> steps;
    FixedPoint result;
    bool result_negative = false;  // ln of w < 1 only

    unsigned total_muladds() const {
        unsigned t = 0;
        for (const auto& s : steps) t += s.muladds;
        return t;
    }

    friend bool operator==(const IterationTrace&, const IterationTrace&);
};

bool operator==(const TraceStep&, const TraceStep&);

}  // namespace qfix

#endif
