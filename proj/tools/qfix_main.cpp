// qfix: fixed-point elementary functions with worst-case bounds, reversible
// circuits, resource estimates, and oracle-backed verification.

#include <qfix/bounds.hpp>
#include <qfix/circuits.hpp>
#include <qfix/elementary.hpp>
#include <qfix/json_io.hpp>
#include <qfix/oracle.hpp>
#include <qfix/resources.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace qfix;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitParameter = 3;
constexpr int kExitIo = 4;

struct EvalOptions {
    std::string algorithm;
    std::string w_text;
    std::optional<std::string> f_text;
    long p_num = 0;
    long q_den = 0;
    unsigned m = 32;
    std::optional<unsigned> n;
    unsigned b = 64;
    unsigned l = 50;
    unsigned nf = 64;
    unsigned k = 5;
    unsigned w_frac = 60;
    bool verify = false;
    bool as_json = false;
    std::string trace_path;
};

FixedPoint parse_value(const std::string& text, unsigned int_bits, unsigned frac_bits) {
    if (text.rfind("0b", 0) == 0) return FixedPoint::from_bit_string(text.substr(2));
    return FixedPoint::from_decimal_string(text, FpFormat{int_bits, frac_bits});
}

struct EvalOutcome {
    SignedFixed result;
    IterationTrace trace;
    bounds::ErrorBound bound;
    BigRat oracle_mid;
    BigRat oracle_radius;
    std::vector<FixedPoint> roots;  // pow2roots only
};

// Worst-case bound applicable to the run, including the below-one wrappers'
// exact-shift terms.
bounds::ErrorBound bound_for(const std::string& alg, const FixedPoint& w, unsigned n,
                             unsigned m, unsigned b, unsigned l, unsigned nf) {
    if (alg == "inv") return bounds::bound_inv(b);
    bool below = !w.is_zero() && w.value() < 1;
    unsigned nu = below ? static_cast<unsigned>(1 - msb_exponent(w)) : 0;
    if (alg == "sqrt") {
        if (!below) return bounds::bound_sqrt(b, m);
        unsigned nu_even = nu % 2 == 0 ? nu : nu + 1;
        bounds::ErrorBound e = bounds::bound_sqrt(b, 2);
        e.params["nu"] = std::to_string(nu_even);
        e.bound = e.bound / pow2_rat(nu_even / 2) + pow2_rat(-static_cast<long>(b));
        return e;
    }
    if (alg == "pow2roots") {
        if (!below) return bounds::bound_pow2roots(b, m);
        bounds::ErrorBound e = bounds::bound_pow2roots(b, 2);
        e.bound += pow2_rat(1 - static_cast<long>(b));
        return e;
    }
    if (alg == "ln") {
        unsigned bb = std::max(5 * l, 25u);
        if (!below) return bounds::bound_ln(l, n, m);
        bounds::ErrorBound e = bounds::bound_ln(l, (n > m ? n - m : 1) + 1, 1);
        e.params["nu"] = std::to_string(nu);
        e.bound += BigRat(nu) / pow2_rat(bb);
        return e;
    }
    if (alg == "fracpow") return bounds::bound_fracpow(l);
    if (alg == "fracpow2") return bounds::bound_fracpow2(l);
    if (alg == "powrat")
        return bounds::bound_rational(l, nf, w.value(),
                                      w.value() >= 1 ? bounds::Regime::w_ge_one
                                                     : bounds::Regime::w_below_one);
    throw parameter_error("unknown algorithm \"" + alg + "\"");
}

EvalOutcome run_eval(const EvalOptions& o) {
    unsigned guard = oracle::default_guard_bits();
    // an explicit --n fixes the register: decimal parsing truncates into it
    unsigned w_frac = o.n && *o.n > o.m ? *o.n - o.m : o.w_frac;
    FixedPoint w = parse_value(o.w_text, o.m, w_frac);
    unsigned n = o.n ? *o.n : o.m + w.frac_bits();
    EvalOutcome out;
    if (o.algorithm == "inv") {
        auto r = inv(w, n, o.m, o.b);
        out.result = {false, r.result};
        out.trace = std::move(r.trace);
        out.oracle_mid = BigRat(1) / w.value();
        out.oracle_radius = 0;
    } else if (o.algorithm == "sqrt") {
        auto r = w.value() >= 1 ? sqrt(w, n, o.m, o.b) : sqrt_any(w, n, o.m, o.b);
        out.result = {false, r.result};
        out.trace = std::move(r.trace);
        auto gv = oracle::ref_sqrt(w.value(), guard);
        out.oracle_mid = gv.midpoint();
        out.oracle_radius = gv.radius();
    } else if (o.algorithm == "pow2roots") {
        auto r = roots_any(w, o.k, n, o.m, o.b);
        out.roots = r.result;
        out.result = {false, r.result.back()};
        out.trace = std::move(r.trace);
        auto gv = oracle::ref_root2k(w.value(), o.k, guard);
        out.oracle_mid = gv.midpoint();
        out.oracle_radius = gv.radius();
    } else if (o.algorithm == "ln") {
        auto r = ln_any(w, n, o.m, o.l);
        out.result = r.result;
        out.trace = std::move(r.trace);
        auto gv = oracle::ref_ln(w.value(), guard);
        out.oracle_mid = gv.midpoint();
        out.oracle_radius = gv.radius();
    } else if (o.algorithm == "fracpow" || o.algorithm == "fracpow2") {
        if (!o.f_text) throw parameter_error(o.algorithm + ": --f required");
        FixedPoint f = parse_value(*o.f_text, 1, o.nf);
        auto r = o.algorithm == "fracpow" ? frac_pow(w, f, n, o.m, o.nf, o.l)
                                          : frac_pow2(w, f, n, o.m, o.nf, o.l);
        out.result = {false, r.result};
        out.trace = std::move(r.trace);
        auto gv = oracle::ref_pow(w.value(), f.value(), guard);
        out.oracle_mid = gv.midpoint();
        out.oracle_radius = gv.radius();
    } else if (o.algorithm == "powrat") {
        if (o.q_den <= 0) throw domain_error("powrat: --q must be positive");
        auto r = pow_rational(w, BigInt(o.p_num), BigInt(o.q_den), n, o.m, o.nf, o.l);
        out.result = {false, r.result};
        out.trace = std::move(r.trace);
        auto gv = oracle::ref_pow(w.value(), BigRat(o.p_num, o.q_den), guard);
        out.oracle_mid = gv.midpoint();
        out.oracle_radius = gv.radius();
    } else {
        throw parameter_error("unknown algorithm \"" + o.algorithm + "\"");
    }
    out.bound = bound_for(o.algorithm, w, n, o.m, o.b, o.l, o.nf);
    return out;
}

json eval_report(const EvalOptions& o, const EvalOutcome& out) {
    json j;
    j["algorithm"] = o.algorithm;
    j["input"] = {{"w", o.w_text}};
    if (!out.trace.steps.empty() && out.trace.steps.front().op == StepOp::input)
        j["input"]["w_dyadic"] = to_json(out.trace.steps.front().truncated);
    if (o.f_text) j["input"]["f"] = *o.f_text;
    j["params"] = json::object();
    if (out.trace.params.n) j["params"]["n"] = *out.trace.params.n;
    if (out.trace.params.m) j["params"]["m"] = *out.trace.params.m;
    if (out.trace.params.b) j["params"]["b"] = *out.trace.params.b;
    if (out.trace.params.l) j["params"]["l"] = *out.trace.params.l;
    if (out.trace.params.nf) j["params"]["nf"] = *out.trace.params.nf;
    if (out.trace.params.k) j["params"]["k"] = *out.trace.params.k;
    j["result"] = {{"decimal", to_decimal_string(out.result.value(), 20)},
                   {"dyadic", to_json(out.result.magnitude)},
                   {"negative", out.result.negative}};
    if (!out.roots.empty()) {
        json roots = json::array();
        for (const auto& z : out.roots) roots.push_back(z.decimal(20));
        j["roots"] = roots;
    }
    j["bound"] = to_json(out.bound);
    if (o.verify) {
        BigRat err = abs(out.result.value() - out.oracle_mid);
        bool bound_ok = err + out.oracle_radius <= out.bound.bound;
        j["verify"] = {{"oracle", to_decimal_string(out.oracle_mid, 20)},
                       {"abs_error", to_decimal_string(err, 6)},
                       {"digits", oracle::digit_agreement(out.result.value(),
                                                          out.oracle_mid)},
                       {"bound_ok", bound_ok}};
    }
    return j;
}

void print_eval_human(const EvalOptions& o, const EvalOutcome& out, const json& j) {
    std::cout << o.algorithm << "(" << o.w_text;
    if (o.f_text) std::cout << ", f=" << *o.f_text;
    if (o.algorithm == "powrat") std::cout << ", " << o.p_num << "/" << o.q_den;
    std::cout << ")\n";
    std::cout << "  result = " << (out.result.negative ? "-" : "")
              << out.result.magnitude.decimal(20) << "\n";
    std::cout << "  dyadic = " << (out.result.negative ? "-" : "")
              << out.result.magnitude.mantissa().str() << " / 2^"
              << out.result.magnitude.frac_bits() << "\n";
    if (!out.roots.empty()) {
        for (size_t i = 0; i < out.roots.size(); ++i)
            std::cout << "  z_" << i + 1 << " = " << out.roots[i].decimal(20) << "\n";
    }
    std::cout << "  worst-case bound (" << out.bound.algorithm
              << ") = " << out.bound.decimal(10) << "\n";
    if (o.verify) {
        std::cout << "  oracle = " << j["verify"]["oracle"].get<std::string>() << "\n"
                  << "  abs error = " << j["verify"]["abs_error"].get<std::string>()
                  << "  digits = " << j["verify"]["digits"].get<unsigned>()
                  << "  bound_ok = "
                  << (j["verify"]["bound_ok"].get<bool>() ? "yes" : "NO") << "\n";
    }
}

int cmd_eval(const EvalOptions& o) {
    EvalOutcome out = run_eval(o);
    json j = eval_report(o, out);
    if (!o.trace_path.empty()) {
        std::ofstream f(o.trace_path);
        if (!f) throw std::ios_base::failure("cannot write " + o.trace_path);
        f << to_json(out.trace).dump(2) << "\n";
    }
    if (o.as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        print_eval_human(o, out, j);
    }
    if (o.verify && !j["verify"]["bound_ok"].get<bool>()) return kExitVerifyFail;
    return kExitOk;
}

struct CaseResult {
    json row;
    bool pass;
};

CaseResult run_case(const json& c) {
    EvalOptions o;
    o.algorithm = c.at("algorithm").get<std::string>();
    o.w_text = c.at("w").get<std::string>();
    if (c.contains("f")) o.f_text = c["f"].get<std::string>();
    if (c.contains("p")) o.p_num = c["p"].get<long>();
    if (c.contains("q")) o.q_den = c["q"].get<long>();
    const json& prm = c.value("params", json::object());
    if (prm.contains("m")) o.m = prm["m"].get<unsigned>();
    if (prm.contains("n")) o.n = prm["n"].get<unsigned>();
    if (prm.contains("b")) o.b = prm["b"].get<unsigned>();
    if (prm.contains("l")) o.l = prm["l"].get<unsigned>();
    if (prm.contains("nf")) o.nf = prm["nf"].get<unsigned>();
    if (prm.contains("k")) o.k = prm["k"].get<unsigned>();
    if (prm.contains("wfrac")) o.w_frac = prm["wfrac"].get<unsigned>();
    o.verify = true;
    EvalOutcome out = run_eval(o);

    BigRat got = out.result.value();
    BigRat err = abs(got - out.oracle_mid);
    bool bound_ok = err + out.oracle_radius <= out.bound.bound;
    unsigned digits = oracle::digit_agreement(got, out.oracle_mid);
    bool pass = bound_ok;
    json row{{"algorithm", o.algorithm},
             {"w", o.w_text},
             {"result", to_decimal_string(got, 20)},
             {"oracle", to_decimal_string(out.oracle_mid, 20)},
             {"abs_error", to_decimal_string(err, 6)},
             {"bound", out.bound.decimal(10)},
             {"bound_ok", bound_ok},
             {"digits", digits}};
    if (c.contains("expected")) {
        const json& e = c["expected"];
        if (e.contains("min_digits")) {
            unsigned want = e["min_digits"].get<unsigned>();
            row["min_digits"] = want;
            if (digits < want) pass = false;
        }
        if (e.contains("value")) {
            unsigned agree = oracle::digit_agreement(to_decimal_string(got, 20),
                                                     e["value"].get<std::string>());
            row["reference_digits"] = agree;
        }
    }
    row["pass"] = pass;
    return {row, pass};
}

int cmd_verify(const std::string& path, bool as_json, bool as_csv) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot open \"" << path << "\"\n";
        return kExitIo;
    }
    json doc;
    try {
        f >> doc;
    } catch (const json::exception& e) {
        std::cerr << "error: parse failure in \"" << path << "\": " << e.what() << "\n";
        return kExitIo;
    }
    json rows = json::array();
    bool all_pass = true;
    for (const json& c : doc.value("cases", json::array())) {
        CaseResult r = run_case(c);
        all_pass = all_pass && r.pass;
        rows.push_back(r.row);
    }
    if (as_csv) {
        std::cout << "algorithm,w,result,oracle,abs_error,bound,bound_ok,digits,pass\n";
        for (const json& r : rows)
            std::cout << r["algorithm"].get<std::string>() << ','
                      << r["w"].get<std::string>() << ',' << r["result"].get<std::string>()
                      << ',' << r["oracle"].get<std::string>() << ','
                      << r["abs_error"].get<std::string>() << ','
                      << r["bound"].get<std::string>() << ','
                      << (r["bound_ok"].get<bool>() ? 1 : 0) << ','
                      << r["digits"].get<unsigned>() << ','
                      << (r["pass"].get<bool>() ? 1 : 0) << "\n";
    } else if (as_json) {
        std::cout << json{{"cases", rows}, {"pass", all_pass}}.dump(2) << "\n";
    } else {
        for (const json& r : rows)
            std::cout << (r["pass"].get<bool>() ? "[ ok ] " : "[FAIL] ")
                      << r["algorithm"].get<std::string>()
                      << " w=" << r["w"].get<std::string>()
                      << " digits=" << r["digits"].get<unsigned>()
                      << " err=" << r["abs_error"].get<std::string>() << "\n";
        std::cout << (all_pass ? "all cases pass" : "FAILURES present") << "\n";
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_bound(const std::string& alg, unsigned b, unsigned m, unsigned l, unsigned n,
              unsigned nf, const std::string& w_text, bool as_json) {
    bounds::ErrorBound e;
    if (alg == "inv") {
        e = bounds::bound_inv(b);
    } else if (alg == "sqrt") {
        e = bounds::bound_sqrt(b, m);
    } else if (alg == "pow2roots") {
        e = bounds::bound_pow2roots(b, m);
    } else if (alg == "ln") {
        e = bounds::bound_ln(l, n, m);
    } else if (alg == "fracpow") {
        e = bounds::bound_fracpow(l);
    } else if (alg == "fracpow2") {
        e = bounds::bound_fracpow2(l);
    } else if (alg == "powrat") {
        FixedPoint w = parse_value(w_text, 64, 60);
        e = bounds::bound_rational(l, nf, w.value(),
                                   w.value() >= 1 ? bounds::Regime::w_ge_one
                                                  : bounds::Regime::w_below_one);
    } else {
        throw parameter_error("unknown algorithm \"" + alg + "\"");
    }
    if (as_json)
        std::cout << to_json(e).dump(2) << "\n";
    else
        std::cout << e.algorithm << " bound = " << e.decimal(30) << "\n";
    return kExitOk;
}

int cmd_resources(const std::string& preset, const std::string& preset_file, bool check,
                  const std::string& alg, res::Params params, bool as_json) {
    std::vector<res::ResourceEstimate> rows;
    json expectations = json::array();
    std::string preset_name = preset;
    if (!preset_file.empty()) {
        std::ifstream f(preset_file);
        if (!f) {
            std::cerr << "error: cannot open \"" << preset_file << "\"\n";
            return kExitIo;
        }
        json doc;
        try {
            f >> doc;
        } catch (const json::exception& e) {
            std::cerr << "error: parse failure in \"" << preset_file << "\": " << e.what()
                      << "\n";
            return kExitIo;
        }
        preset_name = doc.at("preset").get<std::string>();
        expectations = doc.value("rows", json::array());
    }
    if (!preset_name.empty()) {
        if (preset_name == "table6") rows = res::preset_table6();
        else if (preset_name == "table7") rows = res::preset_table7();
        else if (preset_name == "table8") rows = res::preset_table8();
        else throw parameter_error("unknown preset \"" + preset_name + "\"");
    } else {
        rows.push_back(res::estimate(res::algorithm_from_name(alg), params));
    }
    bool ok = true;
    if (check && !expectations.empty()) {
        for (size_t i = 0; i < rows.size() && i < expectations.size(); ++i) {
            const json& e = expectations[i];
            if (e.contains("mult") &&
                rows[i].multiplications != e["mult"].get<unsigned long>())
                ok = false;
            if (e.contains("add") && rows[i].additions != e["add"].get<unsigned long>())
                ok = false;
            if (e.contains("qubits") && e.contains("qubits_tolerance_pct")) {
                double want = e["qubits"].get<double>();
                double tol = e["qubits_tolerance_pct"].get<double>() / 100.0;
                double got = static_cast<double>(rows[i].qubits);
                if (got < want * (1 - tol) || got > want * (1 + tol)) ok = false;
            }
        }
    }
    if (as_json) {
        json out = json::array();
        for (const auto& r : rows) out.push_back(to_json(r));
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << res::to_csv(rows);
    }
    if (check && !ok) {
        std::cerr << "resource check FAILED against " << preset_file << "\n";
        return kExitVerifyFail;
    }
    return kExitOk;
}

int cmd_circuit(const std::string& family, unsigned n, unsigned m, unsigned b,
                bool selfcheck, bool as_json, bool art) {
    rc::ReversibleCircuit c;
    if (family == "init-recip") c = rc::synth_init_recip(n, m, b);
    else if (family == "init-invsqrt") c = rc::synth_init_invsqrt(b);
    else if (family == "pow2-shift") c = rc::synth_pow2_shift(n, m);
    else if (family == "count-p") c = rc::synth_count_p(m);
    else if (family == "count-k") c = rc::synth_count_k(n, m);
    else throw parameter_error("unknown circuit family \"" + family + "\"");

    if (art)
        std::cout << rc::render_text(c);
    else if (as_json || !selfcheck)
        std::cout << to_json(c).dump(2) << "\n";
    if (selfcheck) {
        rc::SelfCheckReport rep = rc::self_check(c);
        std::cout << "selfcheck: " << rep.valid_inputs << " valid inputs over "
                  << rep.basis_states << " basis states: "
                  << (rep.ok() ? "pass" : "FAIL " + rep.detail) << "\n";
        if (!rep.ok()) return kExitVerifyFail;
    }
    return kExitOk;
}

// (b or l, measured error, bound) rows for external plotting of the
// error-decay behavior. Grid points violating a precondition are skipped.
int cmd_curves(const std::string& alg, const std::string& w_text, unsigned m,
               std::optional<unsigned> n_opt, unsigned lo, unsigned hi, unsigned step,
               bool as_json) {
    unsigned guard = oracle::default_guard_bits();
    FixedPoint w = parse_value(w_text, m, n_opt && *n_opt > m ? *n_opt - m : 0);
    unsigned n = n_opt ? *n_opt : m + w.frac_bits();
    if (step == 0) throw parameter_error("curves: step must be positive");
    json rows = json::array();
    if (alg == "sqrt") {
        auto want = oracle::ref_sqrt(w.value(), guard);
        for (unsigned b = lo; b <= hi; b += step) {
            if (b < std::max(2 * m, 4u)) continue;
            auto r = sqrt(w, n, m, b);
            BigRat err = abs(r.result.value() - want.midpoint());
            rows.push_back(json{{"b", b},
                                {"abs_error", to_decimal_string(err, 6)},
                                {"bound", bounds::bound_sqrt(b, m).decimal(6)}});
        }
    } else if (alg == "ln") {
        auto want = oracle::ref_ln(w.value(), guard);
        for (unsigned l = lo; l <= hi; l += step) {
            if (l < ceil_log2(BigInt(8) * n)) continue;
            auto r = ln(w, n, m, l);
            BigRat err = abs(r.result.value() - want.midpoint());
            rows.push_back(json{{"l", l},
                                {"abs_error", to_decimal_string(err, 6)},
                                {"bound", bounds::bound_ln(l, n, m).decimal(6)}});
        }
    } else {
        throw parameter_error("curves: algorithm must be sqrt or ln");
    }
    if (as_json) {
        std::cout << rows.dump(2) << "\n";
    } else {
        const char* key = alg == "sqrt" ? "b" : "l";
        std::cout << key << ",abs_error,bound\n";
        for (const json& r : rows)
            std::cout << r[key].get<unsigned>() << ',' << r["abs_error"].get<std::string>()
                      << ',' << r["bound"].get<std::string>() << "\n";
    }
    return kExitOk;
}

int cmd_constants(unsigned b, bool as_json) {
    FixedPoint r = ln2_constant(b);
    if (as_json) {
        json j{{"name", "ln2"},
               {"b", b},
               {"value", to_json(r)},
               {"decimal", r.decimal(std::max(10u, b / 3))}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ln2[" << b << "] = " << r.decimal(std::max(10u, b / 3)) << " ("
                  << r.mantissa().str() << " / 2^" << b << ")\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point elementary functions with verified worst-case bounds"};
    app.require_subcommand(1);

    EvalOptions eo;
    CLI::App* eval = app.add_subcommand("eval", "evaluate an algorithm on one input");
    eval->add_option("algorithm", eo.algorithm,
                     "inv|sqrt|pow2roots|ln|fracpow|fracpow2|powrat")->required();
    eval->add_option("--w", eo.w_text, "input value (decimal, or 0b bit-string)")
        ->required();
    eval->add_option("--f", eo.f_text, "fractional exponent for fracpow/fracpow2");
    eval->add_option("--p", eo.p_num, "exponent numerator for powrat");
    eval->add_option("--q", eo.q_den, "exponent denominator for powrat");
    eval->add_option("--n", eo.n, "total register bits for w (default m + wfrac)");
    eval->add_option("--m", eo.m, "integer bits of w (default 32)");
    eval->add_option("--b", eo.b, "fraction bits carried through iterations (default 64)");
    eval->add_option("--l", eo.l, "accuracy parameter for ln/fracpow (default 50)");
    eval->add_option("--nf", eo.nf, "exponent fraction bits (default 64)");
    eval->add_option("--k", eo.k, "number of roots for pow2roots (default 5)");
    eval->add_option("--wfrac", eo.w_frac,
                     "fraction bits when parsing decimal w (default 60)");
    eval->add_flag("--verify", eo.verify, "compare against the reference oracle");
    eval->add_flag("--json", eo.as_json, "emit a JSON report");
    eval->add_option("--trace", eo.trace_path, "write the iteration trace JSON to a file");

    std::string verify_path;
    bool verify_json = false, verify_csv = false;
    CLI::App* ver = app.add_subcommand("verify", "run a case file against the oracle");
    ver->add_option("casefile", verify_path)->required();
    ver->add_flag("--json", verify_json);
    ver->add_flag("--csv", verify_csv);

    std::string bound_alg, bound_w = "2";
    unsigned bound_b = 64, bound_m = 32, bound_l = 50, bound_n = 64, bound_nf = 64;
    bool bound_json = false;
    CLI::App* bnd = app.add_subcommand("bound", "evaluate a worst-case bound");
    bnd->add_option("algorithm", bound_alg)->required();
    bnd->add_option("--b", bound_b);
    bnd->add_option("--m", bound_m);
    bnd->add_option("--l", bound_l);
    bnd->add_option("--n", bound_n);
    bnd->add_option("--nf", bound_nf);
    bnd->add_option("--w", bound_w);
    bnd->add_flag("--json", bound_json);

    std::string res_preset, res_preset_file, res_alg = "inv";
    res::Params res_params;
    res_params.n = 32;
    res_params.m = 16;
    unsigned res_b = 0, res_l = 0, res_nf = 0, res_k = 0;
    bool res_json = false, res_check = false;
    CLI::App* rsc = app.add_subcommand("resources", "arithmetic-operation and qubit counts");
    rsc->add_option("--preset", res_preset, "table6|table7|table8");
    rsc->add_option("--preset-file", res_preset_file, "preset file with expectations");
    rsc->add_flag("--check", res_check, "verify counts against the preset file");
    rsc->add_option("--algorithm", res_alg);
    rsc->add_option("--n", res_params.n);
    rsc->add_option("--m", res_params.m);
    rsc->add_option("--b", res_b);
    rsc->add_option("--l", res_l);
    rsc->add_option("--nf", res_nf);
    rsc->add_option("--k", res_k);
    rsc->add_flag("--json", res_json);

    std::string circ_family;
    unsigned circ_n = 8, circ_m = 4, circ_b = 8;
    bool circ_selfcheck = false, circ_json = false, circ_art = false;
    CLI::App* cir = app.add_subcommand("circuit", "synthesize a special-purpose circuit");
    cir->add_option("family", circ_family,
                    "init-recip|init-invsqrt|pow2-shift|count-p|count-k")->required();
    cir->add_option("--n", circ_n);
    cir->add_option("--m", circ_m);
    cir->add_option("--b", circ_b);
    cir->add_flag("--selfcheck", circ_selfcheck, "exhaustive basis-state validation");
    cir->add_flag("--json", circ_json);
    cir->add_flag("--art", circ_art, "ASCII rendering (<= 16 lines)");

    std::string curve_alg, curve_w;
    unsigned curve_m = 32, curve_lo = 16, curve_hi = 64, curve_step = 8;
    std::optional<unsigned> curve_n;
    bool curve_json = false;
    CLI::App* crv = app.add_subcommand(
        "curves", "emit (b or l, error, bound) rows over a precision grid");
    crv->add_option("algorithm", curve_alg, "sqrt|ln")->required();
    crv->add_option("--w", curve_w)->required();
    crv->add_option("--m", curve_m);
    crv->add_option("--n", curve_n);
    crv->add_option("--from", curve_lo);
    crv->add_option("--to", curve_hi);
    crv->add_option("--step", curve_step);
    crv->add_flag("--json", curve_json);

    unsigned const_b = 64;
    bool const_json = false;
    CLI::App* cst = app.add_subcommand("constants", "print the stored ln2 register");
    cst->add_option("--b", const_b);
    cst->add_flag("--json", const_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(eo);
        if (ver->parsed()) return cmd_verify(verify_path, verify_json, verify_csv);
        if (bnd->parsed())
            return cmd_bound(bound_alg, bound_b, bound_m, bound_l, bound_n, bound_nf,
                             bound_w, bound_json);
        if (rsc->parsed()) {
            if (res_b) res_params.b = res_b;
            if (res_l) res_params.l = res_l;
            if (res_nf) res_params.nf = res_nf;
            if (res_k) res_params.k = res_k;
            return cmd_resources(res_preset, res_preset_file, res_check, res_alg,
                                 res_params, res_json);
        }
        if (cir->parsed())
            return cmd_circuit(circ_family, circ_n, circ_m, circ_b, circ_selfcheck,
                               circ_json, circ_art);
        if (crv->parsed())
            return cmd_curves(curve_alg, curve_w, curve_m, curve_n, curve_lo, curve_hi,
                              curve_step, curve_json);
        if (cst->parsed()) return cmd_constants(const_b, const_json);
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const oracle::precision_error& e) {
        std::cerr << "oracle precision error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const json::exception& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
