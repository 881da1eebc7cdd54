#include <qfix/json_io.hpp>

namespace qfix {

using nlohmann::json;

json to_json(const FixedPoint& x) {
    return json{{"mantissa", x.mantissa().str()},
                {"int_bits", x.int_bits()},
                {"frac_bits", x.frac_bits()}};
}

FixedPoint fixed_point_from_json(const json& j) {
    BigInt mant(j.at("mantissa").get<std::string>());
    return FixedPoint(mant, FpFormat{j.at("int_bits").get<unsigned>(),
                                     j.at("frac_bits").get<unsigned>()});
}

json to_json(const BigRat& r) {
    return json{{"num", boost::multiprecision::numerator(r).str()},
                {"den", boost::multiprecision::denominator(r).str()}};
}

BigRat rational_from_json(const json& j) {
    return BigRat(BigInt(j.at("num").get<std::string>()),
                  BigInt(j.at("den").get<std::string>()));
}

namespace {

json params_to_json(const TraceParams& p) {
    json j = json::object();
    if (p.n) j["n"] = *p.n;
    if (p.m) j["m"] = *p.m;
    if (p.b) j["b"] = *p.b;
    if (p.l) j["l"] = *p.l;
    if (p.nf) j["nf"] = *p.nf;
    if (p.k) j["k"] = *p.k;
    return j;
}

TraceParams params_from_json(const json& j) {
    TraceParams p;
    if (j.contains("n")) p.n = j["n"].get<unsigned>();
    if (j.contains("m")) p.m = j["m"].get<unsigned>();
    if (j.contains("b")) p.b = j["b"].get<unsigned>();
    if (j.contains("l")) p.l = j["l"].get<unsigned>();
    if (j.contains("nf")) p.nf = j["nf"].get<unsigned>();
    if (j.contains("k")) p.k = j["k"].get<unsigned>();
    return p;
}

}  // namespace

json to_json(const IterationTrace& t) {
    json steps = json::array();
    for (const TraceStep& s : t.steps) {
        steps.push_back(json{{"label", s.label},
                             {"exact", to_json(s.exact)},
                             {"truncated", to_json(s.truncated)},
                             {"op", step_op_name(s.op)},
                             {"deps", s.deps},
                             {"aux", s.aux_k},
                             {"trunc_bits", s.trunc_bits},
                             {"muladds", s.muladds}});
    }
    json j{{"algorithm", t.algorithm},
           {"params", params_to_json(t.params)},
           {"steps", steps},
           {"result", to_json(t.result)}};
    if (t.result_negative) j["result_negative"] = true;
    return j;
}

IterationTrace trace_from_json(const json& j) {
    IterationTrace t;
    t.algorithm = j.at("algorithm").get<std::string>();
    t.params = params_from_json(j.at("params"));
    for (const json& js : j.at("steps")) {
        TraceStep s;
        s.label = js.at("label").get<std::string>();
        s.exact = rational_from_json(js.at("exact"));
        s.truncated = fixed_point_from_json(js.at("truncated"));
        auto op = step_op_from_name(js.at("op").get<std::string>());
        if (!op) throw parse_error("unknown trace op");
        s.op = *op;
        s.deps = js.at("deps").get<std::vector<int>>();
        s.aux_k = js.at("aux").get<long>();
        s.trunc_bits = js.at("trunc_bits").get<unsigned>();
        s.muladds = js.at("muladds").get<unsigned>();
        t.steps.push_back(std::move(s));
    }
    t.result = fixed_point_from_json(j.at("result"));
    t.result_negative = j.value("result_negative", false);
    return t;
}

json to_json(const rc::ReversibleCircuit& c) {
    json lines = json::array();
    for (const rc::Line& l : c.lines) {
        const char* role = l.role == rc::Role::input ? "input"
                           : l.role == rc::Role::ancilla ? "ancilla"
                                                         : "output";
        lines.push_back(json{{"name", l.name}, {"role", role}, {"digit_weight", l.digit}});
    }
    json gates = json::array();
    for (const rc::Gate& g : c.gates) {
        json controls = json::array();
        for (const rc::Control& ctl : g.controls)
            controls.push_back(json{{"line", ctl.line}, {"polarity", ctl.on_one ? 1 : 0}});
        gates.push_back(json{{"controls", controls}, {"target", g.target}});
    }
    return json{{"family", c.family}, {"lines", lines}, {"gates", gates}};
}

rc::ReversibleCircuit circuit_from_json(const json& j) {
    rc::ReversibleCircuit c;
    c.family = j.value("family", "");
    for (const json& jl : j.at("lines")) {
        std::string role = jl.at("role").get<std::string>();
        rc::Role r = role == "input" ? rc::Role::input
                     : role == "ancilla" ? rc::Role::ancilla
                                         : rc::Role::output;
        c.lines.push_back(rc::Line{jl.at("name").get<std::string>(), r,
                                   jl.at("digit_weight").get<int>()});
    }
    for (const json& jg : j.at("gates")) {
        rc::Gate g;
        for (const json& jc : jg.at("controls"))
            g.controls.push_back(rc::Control{jc.at("line").get<unsigned>(),
                                             jc.at("polarity").get<int>() == 1});
        g.target = jg.at("target").get<unsigned>();
        c.gates.push_back(std::move(g));
    }
    return c;
}

json to_json(const bounds::ErrorBound& b) {
    return json{{"algorithm", b.algorithm},
                {"params", b.params},
                {"bound", to_json(b.bound)},
                {"bound_decimal", b.decimal(30)}};
}

json to_json(const res::ResourceEstimate& e) {
    json params{{"n", e.params.n}, {"m", e.params.m}};
    if (e.params.b) params["b"] = *e.params.b;
    if (e.params.l) params["l"] = *e.params.l;
    if (e.params.nf) params["nf"] = *e.params.nf;
    if (e.params.k) params["k"] = *e.params.k;
    return json{{"algorithm", e.algorithm},
                {"params", params},
                {"multiplications", e.multiplications},
                {"additions", e.additions},
                {"qubits", e.qubits},
                {"convention", e.convention}};
}

}  // namespace qfix
