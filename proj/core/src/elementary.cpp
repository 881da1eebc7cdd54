#include <qfix/elementary.hpp>

#include <qfix/oracle.hpp>

#include <algorithm>
#include <cassert>
#include <utility>

namespace qfix {

namespace {

FixedPoint one_in(FpFormat fmt) { return FixedPoint::from_integer(1, fmt); }

// Appends steps into a flat trace; nested stages prefix their labels.
class Tracer {
  public:
    Tracer(std::string algorithm, TraceParams params) {
        trace_.algorithm = std::move(algorithm);
        trace_.params = params;
    }

    int record(const std::string& label, StepOp op, std::vector<int> deps, long aux,
               BigRat exact, FixedPoint truncated, unsigned trunc_bits, unsigned muladds) {
        TraceStep s;
        s.label = prefix_ + label;
        s.op = op;
        s.deps = std::move(deps);
        s.aux_k = aux;
        s.exact = std::move(exact);
        s.truncated = std::move(truncated);
        s.trunc_bits = trunc_bits;
        s.muladds = muladds;
        trace_.steps.push_back(std::move(s));
        return static_cast<int>(trace_.steps.size()) - 1;
    }

    int record_value(const std::string& label, StepOp op, std::vector<int> deps, long aux,
                     const FixedPoint& v, unsigned muladds = 0) {
        return record(label, op, std::move(deps), aux, v.value(), v, v.frac_bits(), muladds);
    }

    IterationTrace take(FixedPoint result, bool negative = false) {
        trace_.result = std::move(result);
        trace_.result_negative = negative;
        return std::move(trace_);
    }

    class Scope {
      public:
        Scope(Tracer& t, const std::string& p) : t_(t), saved_(t.prefix_) {
            t_.prefix_ += p;
        }
        ~Scope() { t_.prefix_ = saved_; }

      private:
        Tracer& t_;
        std::string saved_;
    };

  private:
    IterationTrace trace_;
    std::string prefix_;
    friend class Scope;
};

struct Staged {
    FixedPoint value;
    int step;
};

void check_fits(const FixedPoint& w, unsigned n, unsigned m, const char* who) {
    if (n < m) throw parameter_error(std::string(who) + ": n >= m required");
    if (n == 0) throw parameter_error(std::string(who) + ": n >= 1 required");
    // value < 2^m and no fraction bits beyond n-m
    reformat(w, FpFormat{m, n - m});
}

FixedPoint fit(const FixedPoint& w, unsigned n, unsigned m) {
    return reformat(w, FpFormat{m, n - m});
}

// Steps 4-9 of the reciprocal/sqrt algorithms: Newton iteration for 1/w with
// every iterate truncated to b fraction bits. Input value >= 1; the w = 1
// fast path returns 1 directly.
Staged newton_recip_core(Tracer& tr, const FixedPoint& w, int w_step, unsigned b) {
    FpFormat it_fmt{1, b};
    if (value_equal(w, one_in(w.format()))) {
        FixedPoint one = one_in(it_fmt);
        int idx = tr.record_value("xhat_0", StepOp::copy, {w_step}, 0, one);
        return {one, idx};
    }
    int p = msb_exponent(w);
    if (static_cast<unsigned>(p) > b)
        throw parameter_error("reciprocal seed 2^-" + std::to_string(p) +
                              " not representable at b=" + std::to_string(b));
    FixedPoint x = FixedPoint::power_of_two(-p, it_fmt);
    int x_idx = tr.record_value("xhat_0", StepOp::recip_seed, {w_step}, 0, x);
    unsigned s = ceil_log2(BigInt(b));
    for (unsigned i = 1; i <= s; ++i) {
        FixedPoint sq = mul_exact(x, x);
        FixedPoint t = mul_exact(w, sq);
        FixedPoint xi = sub_exact(scale2_exact(x, 1), t);
        x = reformat(truncate(xi, b), it_fmt);
        x_idx = tr.record("xhat_" + std::to_string(i), StepOp::recip_step, {w_step, x_idx},
                          0, xi.value(), x, b, 2);
    }
    return {x, x_idx};
}

// Full SQRT body on an already-recorded input: reciprocal stage then the
// inverse-sqrt stage. m is the integer-bit count of the input register.
Staged sqrt_core(Tracer& tr, const FixedPoint& w, int w_step, unsigned m, unsigned b) {
    FpFormat out_fmt{m, b};
    if (value_equal(w, one_in(w.format()))) {
        FixedPoint one = one_in(out_fmt);
        int idx = tr.record_value("yhat_0", StepOp::copy, {w_step}, 0, one);
        return {one, idx};
    }
    Staged xs = newton_recip_core(tr, w, w_step, b);
    if (xs.value.is_zero()) throw error("sqrt: reciprocal stage collapsed to zero");
    int q = 1 - msb_exponent(xs.value);
    assert(q >= 1);
    int e0 = (q - 1) / 2;
    FixedPoint y = FixedPoint::power_of_two(e0, out_fmt);
    int y_idx = tr.record_value("yhat_0", StepOp::invsqrt_seed, {xs.step}, 0, y);
    const FixedPoint three = FixedPoint::from_integer(3, FpFormat{2, 0});
    unsigned s = ceil_log2(BigInt(b));
    for (unsigned j = 1; j <= s; ++j) {
        FixedPoint cube = mul_exact(mul_exact(y, y), y);
        FixedPoint t = mul_exact(xs.value, cube);
        FixedPoint yj = scale2_exact(sub_exact(mul_exact(three, y), t), -1);
        y = reformat(truncate(yj, b), out_fmt);
        y_idx = tr.record("yhat_" + std::to_string(j), StepOp::invsqrt_step,
                          {xs.step, y_idx}, 0, yj.value(), y, b, 4);
    }
    return {y, y_idx};
}

struct RootsStaged {
    std::vector<FixedPoint> values;
    std::vector<int> steps;
};

RootsStaged pow2_roots_core(Tracer& tr, const FixedPoint& w, int w_step, unsigned k,
                            unsigned m, unsigned b) {
    RootsStaged out;
    FixedPoint z = w;
    int z_idx = w_step;
    for (unsigned i = 1; i <= k; ++i) {
        Staged zi;
        {
            Tracer::Scope scope(tr, "z" + std::to_string(i) + "/");
            zi = sqrt_core(tr, z, z_idx, m, b);
        }
        z_idx = tr.record_value("zhat_" + std::to_string(i), StepOp::copy, {zi.step}, 0,
                                zi.value);
        z = zi.value;
        out.values.push_back(z);
        out.steps.push_back(z_idx);
    }
    return out;
}

void check_sqrt_params(unsigned m, unsigned b, const char* who) {
    if (m < 1) throw parameter_error(std::string(who) + ": m >= 1 required");
    unsigned floor_b = std::max(2 * m, 4u);
    if (b < floor_b)
        throw parameter_error(std::string(who) + ": b >= max{2m, 4} = " +
                              std::to_string(floor_b) + " required, got b = " +
                              std::to_string(b));
}

unsigned ln_int_bits(unsigned m) { return std::max(1u, bit_length(BigInt(m))); }

// LN body for an input already >= 1. Returns z_p + (p-1) r and the trace via tr.
Staged ln_core(Tracer& tr, const FixedPoint& w, int w_step, unsigned n, unsigned m,
               unsigned l, unsigned b, const FixedPoint& r, int r_step) {
    FpFormat out_fmt{ln_int_bits(m), b};
    if (value_equal(w, one_in(w.format()))) {
        FixedPoint zero(BigInt(0), out_fmt);
        int idx = tr.record_value("result", StepOp::constant, {}, 0, zero);
        (void)w_step;
        return {zero, idx};
    }
    int p = msb_exponent(w);
    FixedPoint w_p;
    int wp_idx;
    if (p == 1) {
        w_p = reformat(w, FpFormat{1, n - 1});
        wp_idx = tr.record_value("w_p", StepOp::scale, {w_step}, 0, w_p);
    } else {
        w_p = reformat(scale2_exact(w, 1 - p), FpFormat{1, n - 1});
        wp_idx = tr.record_value("w_p", StepOp::scale, {w_step}, 1 - p, w_p);
    }
    FixedPoint x_p = sub_exact(w_p, one_in(w_p.format()));
    tr.record_value("x_p", StepOp::sub_one, {wp_idx}, 0, x_p);
    FixedPoint z_p(BigInt(0), FpFormat{1, b});
    int zp_idx;
    if (x_p.is_zero()) {
        zp_idx = tr.record_value("z_p", StepOp::constant, {}, 0, z_p);
    } else {
        RootsStaged roots;
        {
            Tracer::Scope scope(tr, "roots/");
            roots = pow2_roots_core(tr, w_p, wp_idx, l, 1, b);
        }
        const FixedPoint& t_p = roots.values.back();
        int tp_idx = tr.record_value("that_p", StepOp::copy, {roots.steps.back()}, 0, t_p);
        FixedPoint d = sub_exact(t_p, one_in(t_p.format()));
        FixedPoint y_exact = sub_exact(d, scale2_exact(mul_exact(d, d), -1));
        FixedPoint y_p = reformat(truncate(y_exact, b), FpFormat{1, b});
        int yp_idx = tr.record("yhat_p", StepOp::ln_poly, {tp_idx}, 0, y_exact.value(),
                               y_p, b, 1);
        z_p = scale2_exact(y_p, static_cast<int>(l));
        zp_idx = tr.record_value("z_p", StepOp::scale, {yp_idx}, static_cast<long>(l), z_p);
    }
    FixedPoint pr = mul_exact(FixedPoint::from_integer(p - 1, FpFormat{bit_length(BigInt(p)), 0}), r);
    FixedPoint res = reformat(add_exact(z_p, pr), out_fmt);
    int res_idx = tr.record_value("result", StepOp::ln_combine, {zp_idx, r_step}, p - 1,
                                  res, 1);
    return {res, res_idx};
}

unsigned ceil_log2_pow(unsigned base, unsigned exp) {
    BigInt v = 1;
    for (unsigned i = 0; i < exp; ++i) v *= base;
    return ceil_log2(v);
}

// frac_pow body; w already >= 1 and recorded. Returns the product over the
// set bits of f of the matching power-of-two roots.
Staged frac_pow_core(Tracer& tr, const FixedPoint& w, int w_step, const FixedPoint& f,
                     unsigned m, unsigned nf, unsigned b) {
    FpFormat out_fmt{m, b};
    FixedPoint fone = one_in(f.format());
    if (value_equal(f, fone)) {
        FixedPoint res = reformat(w, out_fmt);
        int idx = tr.record_value("result", StepOp::copy, {w_step}, 0, res);
        return {res, idx};
    }
    if (f.is_zero()) {
        FixedPoint res = one_in(out_fmt);
        int idx = tr.record_value("result", StepOp::constant, {}, 0, res);
        return {res, idx};
    }
    RootsStaged roots;
    {
        Tracer::Scope scope(tr, "roots/");
        roots = pow2_roots_core(tr, w, w_step, nf, m, b);
    }
    FixedPoint z = one_in(out_fmt);
    int z_idx = tr.record_value("prod_0", StepOp::constant, {}, 0, z);
    for (unsigned i = 1; i <= nf; ++i) {
        if (!boost::multiprecision::bit_test(f.mantissa(), nf - i)) continue;
        FixedPoint prod = mul_exact(z, roots.values[i - 1]);
        z = reformat(truncate(prod, b), out_fmt);
        z_idx = tr.record("prod_" + std::to_string(i), StepOp::product,
                          {z_idx, roots.steps[i - 1]}, 0, prod.value(), z, b, 1);
    }
    return {z, z_idx};
}

void check_exponent(const FixedPoint& f, unsigned nf, const char* who) {
    if (nf < 1) throw parameter_error(std::string(who) + ": n_f >= 1 required");
    if (f.value() > 1) throw domain_error(std::string(who) + ": exponent f must be <= 1");
    reformat(f, FpFormat{1, nf});  // throws if f carries more than nf fraction bits
}

// frac_pow2 body; 0 <= w < 1 and f in [0,1] already validated.
Staged frac_pow2_core(Tracer& tr, const FixedPoint& w, int w_step, const FixedPoint& f,
                      int f_step, unsigned n, unsigned m, unsigned nf, unsigned l,
                      unsigned b) {
    FpFormat out_fmt{1, b};
    if (w.is_zero()) {
        FixedPoint zero(BigInt(0), out_fmt);
        int idx = tr.record_value("result", StepOp::copy, {w_step}, 0, zero);
        return {zero, idx};
    }
    if (value_equal(f, one_in(f.format()))) {
        FixedPoint res = reformat(w, FpFormat{1, std::max(b, w.frac_bits())});
        int idx = tr.record_value("result", StepOp::copy, {w_step}, 0, res);
        return {res, idx};
    }
    if (f.is_zero()) {
        FixedPoint res = one_in(out_fmt);
        int idx = tr.record_value("result", StepOp::constant, {}, 0, res);
        return {res, idx};
    }
    unsigned k = static_cast<unsigned>(1 - msb_exponent(w));
    FixedPoint x = reformat(scale2_exact(w, static_cast<int>(k)),
                            FpFormat{1, n > m ? n - m : 1});
    int x_idx = tr.record_value("x", StepOp::scale, {w_step}, static_cast<long>(k), x);

    unsigned kbits = bit_length(BigInt(k));
    FixedPoint k_fx = FixedPoint::from_integer(k, FpFormat{kbits, 0});
    int k_idx = tr.record_value("k", StepOp::constant, {}, static_cast<long>(k), k_fx);
    FixedPoint c = mul_exact(k_fx, reformat(f, FpFormat{1, nf}));
    int c_idx = tr.record_value("c", StepOp::product, {k_idx, f_step}, 0, c, 1);

    BigInt c_floor = c.mantissa() >> nf;
    FixedPoint c_frac(c.mantissa() & ((BigInt(1) << nf) - 1), FpFormat{1, nf});
    tr.record_value("c_frac", StepOp::frac_split, {c_idx}, 0, c_frac);
    tr.record("c_floor", StepOp::int_split, {c_idx}, 0, BigRat(c_floor),
              FixedPoint::from_integer(c_floor, FpFormat{std::max(1u, bit_length(c_floor)), 0}),
              0, 0);

    unsigned m_x = std::max(m, 1u);
    unsigned b_x = frac_pow_precision(std::max(n, m_x + 1), m_x, nf, l);
    Staged z;
    {
        Tracer::Scope scope(tr, "z/");
        z = frac_pow_core(tr, x, x_idx, f, m_x, nf, b_x);
    }
    unsigned m_y = std::max(m, 2u);
    unsigned b_y = frac_pow_precision(std::max(n, m_y), m_y, nf, l);
    FixedPoint two = FixedPoint::from_integer(2, FpFormat{2, 0});
    int two_idx = tr.record_value("two", StepOp::constant, {}, 2, two);
    Staged y;
    {
        Tracer::Scope scope(tr, "y/");
        y = frac_pow_core(tr, two, two_idx, c_frac, m_y, nf, b_y);
    }
    Staged s;
    {
        Tracer::Scope scope(tr, "s/");
        s = newton_recip_core(tr, y.value, y.step, 2 * l);
    }
    long cf = c_floor.convert_to<long>();
    FixedPoint v = scale2_exact(z.value, -static_cast<int>(cf));
    int v_idx = tr.record_value("v", StepOp::scale, {z.step}, -cf, v);
    FixedPoint t = mul_exact(v, s.value);
    FixedPoint t_hat = reformat(truncate(t, b), out_fmt);
    int t_idx = tr.record("that", StepOp::product, {v_idx, s.step}, 0, t.value(), t_hat,
                          b, 1);
    return {t_hat, t_idx};
}

}  // namespace

unsigned frac_pow_precision(unsigned n, unsigned m, unsigned nf, unsigned l) {
    unsigned core = 5 * l + 10 * m + ceil_log2_pow(nf, 5);
    return std::max({n, nf, core, 40u});
}

unsigned frac_pow2_precision(unsigned n, unsigned m, unsigned nf, unsigned l) {
    unsigned core = 2 * l + 6 * m + ceil_log2_pow(nf, 2);
    return std::max({n, nf, core, 40u});
}

AlgoResult<FixedPoint> inv(const FixedPoint& w, unsigned n, unsigned m, unsigned b) {
    if (m < 1) throw parameter_error("inv: m >= 1 required");
    check_fits(w, n, m, "inv");
    if (b < n)
        throw parameter_error("inv: b >= n required, got b = " + std::to_string(b) +
                              ", n = " + std::to_string(n));
    if (w.value() < 1) throw domain_error("inv: w >= 1 required");
    Tracer tr("inv", TraceParams{n, m, b, {}, {}, {}});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    Staged out = newton_recip_core(tr, wf, w_idx, b);
    return {out.value, tr.take(out.value)};
}

AlgoResult<FixedPoint> sqrt(const FixedPoint& w, unsigned n, unsigned m, unsigned b) {
    check_sqrt_params(m, b, "sqrt");
    check_fits(w, n, m, "sqrt");
    if (w.value() < 1) throw domain_error("sqrt: w >= 1 required");
    Tracer tr("sqrt", TraceParams{n, m, b, {}, {}, {}});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    Staged out = sqrt_core(tr, wf, w_idx, m, b);
    return {out.value, tr.take(out.value)};
}

AlgoResult<std::vector<FixedPoint>> pow2_roots(const FixedPoint& w, unsigned k, unsigned n,
                                               unsigned m, unsigned b) {
    if (k < 1) throw parameter_error("pow2_roots: k >= 1 required");
    check_sqrt_params(m, b, "pow2_roots");
    check_fits(w, n, m, "pow2_roots");
    if (w.value() < 1) throw domain_error("pow2_roots: w >= 1 required");
    Tracer tr("pow2_roots", TraceParams{n, m, b, {}, {}, k});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    RootsStaged out = pow2_roots_core(tr, wf, w_idx, k, m, b);
    return {out.values, tr.take(out.values.back())};
}

AlgoResult<FixedPoint> ln(const FixedPoint& w, unsigned n, unsigned m, unsigned l) {
    if (m < 1) throw parameter_error("ln: m >= 1 required");
    check_fits(w, n, m, "ln");
    if (w.value() < 1) throw domain_error("ln: w >= 1 required");
    unsigned l_floor = ceil_log2(BigInt(8) * n);
    if (l < l_floor)
        throw parameter_error("ln: l >= ceil(log2 8n) = " + std::to_string(l_floor) +
                              " required, got l = " + std::to_string(l));
    unsigned b = std::max(5 * l, 25u);
    Tracer tr("ln", TraceParams{n, m, b, l, {}, {}});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    FixedPoint r = ln2_constant(b);
    int r_idx = tr.record_value("r", StepOp::constant, {}, 0, r);
    Staged out = ln_core(tr, wf, w_idx, n, m, l, b, r, r_idx);
    return {out.value, tr.take(out.value)};
}

AlgoResult<FixedPoint> frac_pow(const FixedPoint& w, const FixedPoint& f, unsigned n,
                                unsigned m, unsigned nf, unsigned l) {
    if (m < 1) throw parameter_error("frac_pow: m >= 1 required");
    if (l < 1) throw parameter_error("frac_pow: l >= 1 required");
    check_fits(w, n, m, "frac_pow");
    check_exponent(f, nf, "frac_pow");
    if (w.value() < 1) throw domain_error("frac_pow: w >= 1 required");
    unsigned b = frac_pow_precision(n, m, nf, l);
    Tracer tr("frac_pow", TraceParams{n, m, b, l, nf, {}});
    FixedPoint wf = fit(w, n, m);
    FixedPoint ff = reformat(f, FpFormat{1, nf});
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    int f_idx = tr.record_value("f", StepOp::input, {}, 0, ff);
    Staged out = frac_pow_core(tr, wf, w_idx, ff, m, nf, b);
    (void)f_idx;
    return {out.value, tr.take(out.value)};
}

AlgoResult<FixedPoint> frac_pow2(const FixedPoint& w, const FixedPoint& f, unsigned n,
                                 unsigned m, unsigned nf, unsigned l) {
    if (l < 2) throw parameter_error("frac_pow2: l >= 2 required");
    check_fits(w, n, m, "frac_pow2");
    check_exponent(f, nf, "frac_pow2");
    if (w.value() >= 1) throw domain_error("frac_pow2: w < 1 required");
    unsigned b = frac_pow2_precision(n, m, nf, l);
    Tracer tr("frac_pow2", TraceParams{n, m, b, l, nf, {}});
    FixedPoint wf = fit(w, n, m);
    FixedPoint ff = reformat(f, FpFormat{1, nf});
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    int f_idx = tr.record_value("f", StepOp::input, {}, 0, ff);
    Staged out = frac_pow2_core(tr, wf, w_idx, ff, f_idx, n, m, nf, l, b);
    return {out.value, tr.take(out.value)};
}

namespace {

// Shift w < 1 left by the smallest even nu with 2^nu w >= 1, run the sqrt
// body, undo with an exact halving shift, truncate back to b. The body runs
// at 4b fraction bits: the seed 2^floor((q-1)/2) can start ~50% off and
// ceil(log2 b) steps then converge only to ~(3/4)^b, so the shifted calls
// carry a guard margin. Outputs and the inherited sqrt bound stay at b.
Staged sqrt_any_core(Tracer& tr, const FixedPoint& w, int w_step, unsigned b) {
    unsigned k = static_cast<unsigned>(1 - msb_exponent(w));
    unsigned nu = k % 2 == 0 ? k : k + 1;
    FixedPoint shifted = reformat(scale2_exact(w, static_cast<int>(nu)),
                                  FpFormat{2, w.frac_bits()});
    int sh_idx = tr.record_value("w_shift", StepOp::scale, {w_step},
                                 static_cast<long>(nu), shifted);
    Staged z = sqrt_core(tr, shifted, sh_idx, 2, 4 * b);
    FixedPoint res = scale2_exact(z.value, -static_cast<int>(nu / 2));
    FixedPoint out = reformat(truncate(res, b), FpFormat{1, b});
    int res_idx = tr.record("unshift", StepOp::scale, {z.step},
                            -static_cast<long>(nu / 2), res.value(), out, b, 0);
    return {out, res_idx};
}

}  // namespace

AlgoResult<FixedPoint> sqrt_any(const FixedPoint& w, unsigned n, unsigned m, unsigned b) {
    check_fits(w, n, m, "sqrt_any");
    Tracer tr("sqrt_any", TraceParams{n, m, b, {}, {}, {}});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    if (wf.is_zero()) {
        FixedPoint zero(BigInt(0), FpFormat{1, b});
        tr.record_value("result", StepOp::copy, {w_idx}, 0, zero);
        return {zero, tr.take(zero)};
    }
    if (wf.value() >= 1) {
        check_sqrt_params(std::max(m, 1u), b, "sqrt_any");
        Staged out = sqrt_core(tr, wf, w_idx, std::max(m, 1u), b);
        return {out.value, tr.take(out.value)};
    }
    if (b < 4) throw parameter_error("sqrt_any: b >= 4 required");
    Staged out = sqrt_any_core(tr, wf, w_idx, b);
    return {out.value, tr.take(out.value)};
}

AlgoResult<std::vector<FixedPoint>> roots_any(const FixedPoint& w, unsigned k, unsigned n,
                                              unsigned m, unsigned b) {
    if (k < 1) throw parameter_error("roots_any: k >= 1 required");
    check_fits(w, n, m, "roots_any");
    if (w.is_zero()) throw domain_error("roots_any: w > 0 required");
    if (w.value() >= 1) return pow2_roots(w, k, n, m, b);
    if (b < 4) throw parameter_error("roots_any: b >= 4 required");
    Tracer tr("roots_any", TraceParams{n, m, b, {}, {}, k});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    std::vector<FixedPoint> out;
    FixedPoint z = wf;
    int z_idx = w_idx;
    for (unsigned i = 1; i <= k; ++i) {
        Staged zi;
        if (z.value() >= 1) {
            Tracer::Scope scope(tr, "z" + std::to_string(i) + "/");
            zi = sqrt_core(tr, z, z_idx, 2, b);
        } else {
            Tracer::Scope scope(tr, "z" + std::to_string(i) + "/");
            zi = sqrt_any_core(tr, z, z_idx, b);
        }
        FixedPoint trunc = reformat(truncate(zi.value, b), FpFormat{2, b});
        z_idx = tr.record("zhat_" + std::to_string(i), StepOp::copy, {zi.step}, 0,
                          zi.value.value(), trunc, b, 0);
        z = trunc;
        out.push_back(trunc);
    }
    return {out, tr.take(out.back())};
}

AlgoResult<SignedFixed> ln_any(const FixedPoint& w, unsigned n, unsigned m, unsigned l) {
    check_fits(w, n, m, "ln_any");
    if (w.is_zero()) throw domain_error("ln_any: w > 0 required");
    if (w.value() >= 1) {
        if (m < 1) throw parameter_error("ln_any: m >= 1 required for w >= 1");
        auto r = ln(w, n, m, l);
        return {SignedFixed{false, r.result}, std::move(r.trace)};
    }
    unsigned nprime = (n - m) + 1;
    unsigned l_floor = ceil_log2(BigInt(8) * std::max(n, nprime));
    if (l < l_floor)
        throw parameter_error("ln_any: l >= ceil(log2 8n) = " + std::to_string(l_floor) +
                              " required");
    unsigned b = std::max(5 * l, 25u);
    Tracer tr("ln_any", TraceParams{n, m, b, l, {}, {}});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);
    FixedPoint r = ln2_constant(b);
    int r_idx = tr.record_value("r", StepOp::constant, {}, 0, r);
    unsigned nu = static_cast<unsigned>(1 - msb_exponent(wf));
    FixedPoint shifted = reformat(scale2_exact(wf, static_cast<int>(nu)),
                                  FpFormat{1, n > m ? n - m : 1});
    int sh_idx = tr.record_value("w_shift", StepOp::scale, {w_idx},
                                 static_cast<long>(nu), shifted);
    Staged z;
    {
        Tracer::Scope scope(tr, "ln/");
        z = ln_core(tr, shifted, sh_idx, shifted.frac_bits() + 1, 1, l, b, r, r_idx);
    }
    FixedPoint nur = mul_exact(FixedPoint::from_integer(nu, FpFormat{bit_length(BigInt(nu)), 0}), r);
    BigRat exact = z.value.value() - nur.value();
    SignedFixed out;
    if (cmp_value(z.value, nur) >= 0) {
        out = SignedFixed{false, sub_exact(z.value, nur)};
    } else {
        out = SignedFixed{true, sub_exact(nur, z.value)};
    }
    tr.record("result", StepOp::ln_combine, {z.step, r_idx}, -static_cast<long>(nu),
              exact, out.magnitude, out.magnitude.frac_bits(), 1);
    return {out, tr.take(out.magnitude, out.negative)};
}

AlgoResult<FixedPoint> pow_rational(const FixedPoint& w, const BigInt& p_num,
                                    const BigInt& q_den, unsigned n, unsigned m,
                                    unsigned nf, unsigned l) {
    if (q_den == 0) throw domain_error("pow_rational: q = 0");
    if (p_num < 0 || p_num > q_den) throw domain_error("pow_rational: 0 <= p <= q required");
    if (nf < 1) throw parameter_error("pow_rational: n_f >= 1 required");
    check_fits(w, n, m, "pow_rational");
    if (w.is_zero()) throw domain_error("pow_rational: w > 0 required");
    Tracer tr("pow_rational", TraceParams{n, m, {}, l, nf, {}});
    FixedPoint wf = fit(w, n, m);
    int w_idx = tr.record_value("w", StepOp::input, {}, 0, wf);

    FixedPoint f;
    int f_idx;
    if (p_num == 0) {
        f = FixedPoint(BigInt(0), FpFormat{1, nf});
        f_idx = tr.record_value("f", StepOp::constant, {}, 0, f);
    } else if (p_num == q_den) {
        f = one_in(FpFormat{1, nf});
        f_idx = tr.record_value("f", StepOp::constant, {}, 0, f);
    } else {
        unsigned qbits = bit_length(q_den);
        FixedPoint q_fx = FixedPoint::from_integer(q_den, FpFormat{qbits, 0});
        int q_idx = tr.record_value("q", StepOp::constant, {}, 0, q_fx);
        unsigned b_q = nf + 2 * qbits + 8;
        Staged qinv;
        {
            Tracer::Scope scope(tr, "invq/");
            qinv = newton_recip_core(tr, q_fx, q_idx, b_q);
        }
        FixedPoint p_fx = FixedPoint::from_integer(p_num, FpFormat{bit_length(p_num), 0});
        FixedPoint f_exact = mul_exact(p_fx, qinv.value);
        // round (not floor) so |f - p/q| <= 2^-nf holds and dyadic q stays exact
        BigInt fm;
        if (f_exact.frac_bits() > nf) {
            unsigned drop = f_exact.frac_bits() - nf;
            fm = (f_exact.mantissa() + (BigInt(1) << (drop - 1))) >> drop;
        } else {
            fm = f_exact.mantissa() << (nf - f_exact.frac_bits());
        }
        f = FixedPoint(fm, FpFormat{1, nf});
        f_idx = tr.record("f", StepOp::round_nearest, {qinv.step}, p_num.convert_to<long>(),
                          f_exact.value(), f, nf, 1);
    }

    Staged out;
    if (wf.value() >= 1) {
        if (m < 1) throw parameter_error("pow_rational: m >= 1 required for w >= 1");
        unsigned b = frac_pow_precision(n, m, nf, l);
        Tracer::Scope scope(tr, "pow/");
        out = frac_pow_core(tr, wf, w_idx, f, m, nf, b);
    } else {
        if (l < 2) throw parameter_error("pow_rational: l >= 2 required for w < 1");
        unsigned b = frac_pow2_precision(n, m, nf, l);
        Tracer::Scope scope(tr, "pow/");
        out = frac_pow2_core(tr, wf, w_idx, f, f_idx, n, m, nf, l, b);
    }
    return {out.value, tr.take(out.value)};
}

FixedPoint ln2_constant(unsigned b) {
    if (b < 1) throw parameter_error("ln2_constant: b >= 1 required");
    for (unsigned guard = b + 64;; guard += 192) {
        oracle::GuardValue gv = oracle::ref_ln2(guard);
        unsigned shift = guard - b;
        BigInt lo = floor_div(gv.num() - gv.err_ulps(), pow2(shift));
        BigInt hi = floor_div(gv.num() + gv.err_ulps(), pow2(shift));
        if (lo == hi) return FixedPoint(lo, FpFormat{1, b});
        if (guard > b + 2048) throw oracle::precision_error("ln2_constant: no convergence");
    }
}

}  // namespace qfix
