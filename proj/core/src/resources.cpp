#include <qfix/resources.hpp>

#include <qfix/elementary.hpp>
#include <qfix/numeric.hpp>

#include <algorithm>
#include <sstream>

namespace qfix::res {

namespace {

struct Ops {
    unsigned long mul = 0;
    unsigned long add = 0;

    Ops operator+(const Ops& o) const { return {mul + o.mul, add + o.add}; }
    Ops operator*(unsigned long f) const { return {mul * f, add * f}; }
};

unsigned steps(unsigned b) { return ceil_log2(BigInt(b)); }

// Newton iterates kept per stage: seed plus s truncated approximations.
unsigned long stage_registers(unsigned b) { return (steps(b) + 1ul) * b; }

constexpr unsigned long kInvAncilla = 150;
constexpr unsigned long kSqrtAncilla = 370;

Ops inv_total(unsigned b) {
    unsigned s = steps(b);
    return Ops{2ul * s, 1ul * s} * 2;  // g1 = 2 mult + 1 add per step, uncomputed
}

Ops sqrt_total(unsigned b) {
    unsigned s = steps(b);
    return Ops{6ul * s, 2ul * s} * 2;  // g1 (2,1) + g2 (4,1) per step, uncomputed
}

// Per-root uncompute applies on top of SQRT's internal doubling.
Ops p2r_total(unsigned k, unsigned b) { return sqrt_total(b) * 2 * k; }

unsigned long inv_qubits(unsigned n, unsigned b) {
    return stage_registers(b) + n + kInvAncilla;
}

unsigned long sqrt_qubits(unsigned n, unsigned b) {
    return 2 * stage_registers(b) + n + kSqrtAncilla;
}

unsigned long p2r_qubits(unsigned n, unsigned m, unsigned b, unsigned k) {
    return sqrt_qubits(n, b) + static_cast<unsigned long>(k - 1) * (m + b);
}

const char* kConvention =
    "ops: g1 = 2 mult + 1 add, g2 = 4 mult + 1 add, s = ceil(log2 b) steps per stage; "
    "every stage uncomputed once (x2); pow2_roots uncomputes each root on top of "
    "sqrt's own doubling; ln counts its pow2_roots call (k = l, m = 1, b = max{5l,25}), "
    "closing arithmetic excluded; frac_pow adds the uncomputed product chain "
    "(2(nf-1) mult); frac_pow2 = 2x both frac_pow calls + inv at 2l + 6 closing mult. "
    "qubits: per stage (s+1) b-bit iterates, the n-bit input, 150 (inv) / 370 (sqrt) "
    "ancilla, m+b per extra root output, 5b ln work registers, (nf-1)(m+b) product "
    "registers, and 4b + inv registers for frac_pow2.";

void need(bool cond, const char* msg) {
    if (!cond) throw parameter_error(msg);
}

}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "inv") return Algorithm::inv;
    if (name == "sqrt") return Algorithm::sqrt;
    if (name == "pow2roots" || name == "pow2_roots") return Algorithm::pow2_roots;
    if (name == "ln") return Algorithm::ln;
    if (name == "fracpow" || name == "frac_pow") return Algorithm::frac_pow;
    if (name == "fracpow2" || name == "frac_pow2") return Algorithm::frac_pow2;
    throw parameter_error("unknown algorithm \"" + name + "\"");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::inv: return "inv";
        case Algorithm::sqrt: return "sqrt";
        case Algorithm::pow2_roots: return "pow2_roots";
        case Algorithm::ln: return "ln";
        case Algorithm::frac_pow: return "frac_pow";
        case Algorithm::frac_pow2: return "frac_pow2";
    }
    throw parameter_error("unknown algorithm id");
}

ResourceEstimate estimate(Algorithm a, const Params& p, bool uncompute) {
    need(p.n >= 1 && p.m >= 1 && p.n >= p.m, "estimate: n >= m >= 1 required");
    Ops ops;
    unsigned long qubits = 0;
    Params filled = p;
    switch (a) {
        case Algorithm::inv: {
            need(p.b.has_value(), "estimate(inv): b required");
            ops = inv_total(*p.b);
            qubits = inv_qubits(p.n, *p.b);
            break;
        }
        case Algorithm::sqrt: {
            need(p.b.has_value(), "estimate(sqrt): b required");
            ops = sqrt_total(*p.b);
            qubits = sqrt_qubits(p.n, *p.b);
            break;
        }
        case Algorithm::pow2_roots: {
            need(p.b.has_value() && p.k.has_value(), "estimate(pow2_roots): b, k required");
            need(*p.k >= 1, "estimate(pow2_roots): k >= 1");
            ops = p2r_total(*p.k, *p.b);
            qubits = p2r_qubits(p.n, p.m, *p.b, *p.k);
            break;
        }
        case Algorithm::ln: {
            need(p.l.has_value(), "estimate(ln): l required");
            unsigned b = std::max(5 * *p.l, 25u);
            filled.b = b;
            ops = p2r_total(*p.l, b);
            qubits = p2r_qubits(p.n, 1, b, *p.l) + 5ul * b;
            break;
        }
        case Algorithm::frac_pow: {
            need(p.l.has_value() && p.nf.has_value(), "estimate(frac_pow): l, nf required");
            unsigned b = frac_pow_precision(p.n, p.m, *p.nf, *p.l);
            filled.b = b;
            ops = p2r_total(*p.nf, b) + Ops{2ul * (*p.nf - 1), 0};
            qubits = p2r_qubits(p.n, p.m, b, *p.nf) +
                     static_cast<unsigned long>(*p.nf - 1) * (p.m + b);
            break;
        }
        case Algorithm::frac_pow2: {
            need(p.l.has_value() && p.nf.has_value(), "estimate(frac_pow2): l, nf required");
            unsigned b2 = frac_pow2_precision(p.n, p.m, *p.nf, *p.l);
            filled.b = b2;
            ResourceEstimate fp = estimate(Algorithm::frac_pow, p, true);
            Ops fp_ops{fp.multiplications, fp.additions};
            unsigned binv = 2 * *p.l;
            ops = fp_ops * 4 + inv_total(binv) + Ops{6, 0};
            qubits = fp.qubits + stage_registers(binv) + binv + kInvAncilla + 4ul * b2;
            break;
        }
    }
    if (!uncompute) ops = {ops.mul / 2, ops.add / 2};
    return ResourceEstimate{algorithm_name(a), filled, ops.mul, ops.add, qubits,
                            kConvention};
}

std::vector<ResourceEstimate> preset_table6() {
    Params base;
    base.n = 32;
    base.m = 16;
    base.b = 32;
    std::vector<ResourceEstimate> rows;
    rows.push_back(estimate(Algorithm::inv, base));
    rows.push_back(estimate(Algorithm::sqrt, base));
    Params p5 = base;
    p5.k = 5;
    rows.push_back(estimate(Algorithm::pow2_roots, p5));
    Params p10 = base;
    p10.k = 10;
    rows.push_back(estimate(Algorithm::pow2_roots, p10));
    return rows;
}

std::vector<ResourceEstimate> preset_table7() {
    std::vector<ResourceEstimate> rows;
    for (unsigned l : {10u, 15u, 20u}) {
        Params p;
        p.n = 32;
        p.m = 16;
        p.l = l;
        rows.push_back(estimate(Algorithm::ln, p));
    }
    return rows;
}

std::vector<ResourceEstimate> preset_table8() {
    Params p;
    p.n = 16;
    p.m = 8;
    p.nf = 3;
    p.l = 10;
    return {estimate(Algorithm::frac_pow, p), estimate(Algorithm::frac_pow2, p)};
}

std::string to_csv(const std::vector<ResourceEstimate>& rows) {
    std::ostringstream os;
    os << "algorithm,n,m,b,l,nf,k,multiplications,additions,qubits\n";
    for (const auto& r : rows) {
        auto opt = [](const std::optional<unsigned>& v) {
            return v ? std::to_string(*v) : std::string();
        };
        os << r.algorithm << ',' << r.params.n << ',' << r.params.m << ',' << opt(r.params.b)
           << ',' << opt(r.params.l) << ',' << opt(r.params.nf) << ',' << opt(r.params.k)
           << ',' << r.multiplications << ',' << r.additions << ',' << r.qubits << '\n';
    }
    return os.str();
}

}  // namespace qfix::res
