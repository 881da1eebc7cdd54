#include <qfix/trace.hpp>

#include <array>

namespace qfix {

namespace {

constexpr std::array<std::pair<StepOp, const char*>, 15> kOpNames{{
    {StepOp::input, "input"},
    {StepOp::constant, "constant"},
    {StepOp::recip_seed, "recip_seed"},
    {StepOp::recip_step, "recip_step"},
    {StepOp::invsqrt_seed, "invsqrt_seed"},
    {StepOp::invsqrt_step, "invsqrt_step"},
    {StepOp::copy, "copy"},
    {StepOp::scale, "scale"},
    {StepOp::product, "product"},
    {StepOp::ln_poly, "ln_poly"},
    {StepOp::ln_combine, "ln_combine"},
    {StepOp::sub_one, "sub_one"},
    {StepOp::frac_split, "frac_split"},
    {StepOp::int_split, "int_split"},
    {StepOp::round_nearest, "round_nearest"},
}};

}  // namespace

std::string step_op_name(StepOp op) {
    for (const auto& [o, n] : kOpNames)
        if (o == op) return n;
    return "unknown";
}

std::optional<StepOp> step_op_from_name(const std::string& name) {
    for (const auto& [o, n] : kOpNames)
        if (name == n) return o;
    return std::nullopt;
}

bool operator==(const TraceStep& a, const TraceStep& b) {
    return a.label == b.label && a.op == b.op && a.deps == b.deps && a.aux_k == b.aux_k &&
           a.exact == b.exact && a.truncated == b.truncated && a.trunc_bits == b.trunc_bits &&
           a.muladds == b.muladds;
}

bool operator==(const IterationTrace& a, const IterationTrace& b) {
    return a.algorithm == b.algorithm && a.params == b.params && a.steps == b.steps &&
           a.result == b.result && a.result_negative == b.result_negative;
}

}  // namespace qfix
