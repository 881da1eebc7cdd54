#include <qfix/circuits.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

namespace qfix::rc {

namespace {

Line in_line(int digit) { return {"w(" + std::to_string(digit) + ")", Role::input, digit}; }
Line out_line(int digit) { return {"out(" + std::to_string(digit) + ")", Role::output, digit}; }
Line anc_line() { return {"anc", Role::ancilla, 0}; }

// Priority element with a one-hot output: write the target, then mark the
// found flag off the freshly set output line (the figures' ancilla pattern).
void add_priority_onehot(ReversibleCircuit& c, unsigned trigger_line, unsigned anc,
                         unsigned target) {
    std::vector<Control> ctl{{trigger_line, true}, {anc, false}};
    c.gates.push_back(Gate{ctl, target});
    c.gates.push_back(Gate{{{target, true}}, anc});
}

// Priority element whose output lines are shared between positions (binary
// codes, paired seeds): the found flag keys on the leading-zero prefix
// instead, which identifies the position unambiguously.
void add_priority_shared(ReversibleCircuit& c, const std::vector<unsigned>& prefix,
                         unsigned trigger_line, unsigned anc,
                         const std::vector<unsigned>& targets) {
    std::vector<Control> ctl{{trigger_line, true}, {anc, false}};
    for (unsigned t : targets) c.gates.push_back(Gate{ctl, t});
    std::vector<Control> flag;
    for (unsigned p : prefix) flag.push_back({p, false});
    flag.push_back({trigger_line, true});
    c.gates.push_back(Gate{flag, anc});
}

void validate_gates(const ReversibleCircuit& c) {
    for (const Gate& g : c.gates) {
        if (g.target >= c.width()) throw parameter_error("gate target out of range");
        std::vector<unsigned> seen;
        for (const Control& ctl : g.controls) {
            if (ctl.line >= c.width()) throw parameter_error("control line out of range");
            if (ctl.line == g.target) throw parameter_error("control overlaps target");
            if (std::find(seen.begin(), seen.end(), ctl.line) != seen.end())
                throw parameter_error("duplicate control line");
            seen.push_back(ctl.line);
        }
    }
}

std::uint64_t simulate_u64(const ReversibleCircuit& c, std::uint64_t state) {
    for (const Gate& g : c.gates) {
        bool fire = true;
        for (const Control& ctl : g.controls) {
            bool v = (state >> ctl.line) & 1u;
            if (v != ctl.on_one) {
                fire = false;
                break;
            }
        }
        if (fire) state ^= (std::uint64_t{1} << g.target);
    }
    return state;
}

}  // namespace

std::vector<unsigned> ReversibleCircuit::lines_with_role(Role r) const {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < lines.size(); ++i)
        if (lines[i].role == r) out.push_back(i);
    return out;
}

std::vector<bool> simulate_basis(const ReversibleCircuit& c, std::vector<bool> bits) {
    if (bits.size() != c.lines.size())
        throw parameter_error("bit-vector length does not match circuit lines");
    for (const Gate& g : c.gates) {
        bool fire = true;
        for (const Control& ctl : g.controls)
            if (bits[ctl.line] != ctl.on_one) {
                fire = false;
                break;
            }
        if (fire) bits[g.target] = !bits[g.target];
    }
    return bits;
}

ReversibleCircuit synth_init_recip(unsigned n, unsigned m, unsigned b) {
    if (m < 1 || n < m) throw parameter_error("init_recip: n >= m >= 1 required");
    if (b < n - m || b < m)
        throw parameter_error("init_recip: b >= max(n-m, m) required");
    ReversibleCircuit c;
    c.family = "init-recip";
    for (int d = static_cast<int>(m) - 1; d >= static_cast<int>(m) - static_cast<int>(n); --d)
        c.lines.push_back(in_line(d));
    c.lines.push_back(anc_line());
    unsigned anc = c.width() - 1;
    for (unsigned i = 1; i <= b; ++i) c.lines.push_back(out_line(-static_cast<int>(i)));
    // leading set integer bit 2^j selects p = j+1, i.e. output 2^-(j+1)
    for (int j = static_cast<int>(m) - 1; j >= 0; --j) {
        unsigned in = static_cast<unsigned>(static_cast<int>(m) - 1 - j);
        unsigned out = anc + 1 + static_cast<unsigned>(j);  // digit -(j+1)
        add_priority_onehot(c, in, anc, out);
    }
    c.gates.push_back(Gate{{}, anc});
    validate_gates(c);
    return c;
}

ReversibleCircuit synth_init_invsqrt(unsigned b) {
    if (b < 2) throw parameter_error("init_invsqrt: b >= 2 required");
    ReversibleCircuit c;
    c.family = "init-invsqrt";
    for (unsigned q = 1; q <= b; ++q) c.lines.push_back(in_line(-static_cast<int>(q)));
    c.lines.push_back(anc_line());
    unsigned anc = c.width() - 1;
    int e_max = static_cast<int>((b - 1) / 2);
    for (int e = e_max; e >= 0; --e) c.lines.push_back(out_line(e));
    // leading fraction bit 2^-q selects output 2^floor((q-1)/2); both parities
    // of b share the structure, only the output width differs. Output lines
    // serve two q's each, so the found flag keys on the leading-zero prefix.
    std::vector<unsigned> prefix;
    for (unsigned q = 1; q <= b; ++q) {
        unsigned in = q - 1;
        int e = static_cast<int>((q - 1) / 2);
        unsigned out = anc + 1 + static_cast<unsigned>(e_max - e);
        add_priority_shared(c, prefix, in, anc, {out});
        prefix.push_back(in);
    }
    c.gates.push_back(Gate{{}, anc});
    validate_gates(c);
    return c;
}

ReversibleCircuit synth_pow2_shift(unsigned n, unsigned m) {
    if (m < 1 || n < m) throw parameter_error("pow2_shift: n >= m >= 1 required");
    ReversibleCircuit c;
    c.family = "pow2-shift";
    for (int d = static_cast<int>(m) - 1; d >= static_cast<int>(m) - static_cast<int>(n); --d)
        c.lines.push_back(in_line(d));
    c.lines.push_back(anc_line());
    unsigned anc = c.width() - 1;
    for (unsigned i = 0; i < m; ++i) c.lines.push_back(out_line(-static_cast<int>(i)));
    // leading bit 2^j gives p-1 = j, so x = 2^-j; for 1 <= w < 2, x = 1
    for (int j = static_cast<int>(m) - 1; j >= 0; --j) {
        unsigned in = static_cast<unsigned>(static_cast<int>(m) - 1 - j);
        unsigned out = anc + 1 + static_cast<unsigned>(j);  // digit -j
        add_priority_onehot(c, in, anc, out);
    }
    c.gates.push_back(Gate{{}, anc});
    validate_gates(c);
    return c;
}

ReversibleCircuit synth_count_p(unsigned m) {
    if (m < 2) throw parameter_error("count_p: m >= 2 required");
    ReversibleCircuit c;
    c.family = "count-p";
    for (unsigned i = 0; i < m; ++i)
        c.lines.push_back({"x(" + std::to_string(-static_cast<int>(i)) + ")", Role::input,
                           -static_cast<int>(i)});
    unsigned out_bits = ceil_log2(BigInt(m));
    for (int e = static_cast<int>(out_bits) - 1; e >= 0; --e) c.lines.push_back(out_line(e));
    // binary encoder: the one-hot line at 2^-d writes the bits of d
    for (unsigned d = 1; d < m; ++d) {
        for (unsigned beta = 0; beta < out_bits; ++beta) {
            if (!((d >> beta) & 1u)) continue;
            unsigned out = m + (out_bits - 1 - beta);
            c.gates.push_back(Gate{{{d, true}}, out});
        }
    }
    validate_gates(c);
    return c;
}

ReversibleCircuit synth_count_k(unsigned n, unsigned m) {
    if (n <= m) throw parameter_error("count_k: n - m >= 1 required");
    ReversibleCircuit c;
    c.family = "count-k";
    for (int d = static_cast<int>(m) - 1; d >= static_cast<int>(m) - static_cast<int>(n); --d)
        c.lines.push_back(in_line(d));
    c.lines.push_back(anc_line());
    unsigned anc = c.width() - 1;
    unsigned frac = n - m;
    unsigned out_bits = bit_length(BigInt(frac));
    for (int e = static_cast<int>(out_bits) - 1; e >= 0; --e) c.lines.push_back(out_line(e));
    // leading fraction bit 2^-j gives k = j in binary; binary output lines
    // are shared between positions, so flags key on the leading-zero prefix
    std::vector<unsigned> prefix;
    for (unsigned j = 1; j <= frac; ++j) {
        unsigned in = m + j - 1;
        std::vector<unsigned> targets;
        for (unsigned beta = 0; beta < out_bits; ++beta)
            if ((j >> beta) & 1u) targets.push_back(anc + 1 + (out_bits - 1 - beta));
        add_priority_shared(c, prefix, in, anc, targets);
        prefix.push_back(in);
    }
    c.gates.push_back(Gate{{}, anc});
    validate_gates(c);
    return c;
}

unsigned long expected_gate_count(const ReversibleCircuit& c) {
    unsigned n_in = static_cast<unsigned>(c.lines_with_role(Role::input).size());
    unsigned n_out = static_cast<unsigned>(c.lines_with_role(Role::output).size());
    if (c.family == "init-recip" || c.family == "pow2-shift") {
        // m integer bits drive one target+flag pair each, plus the final X
        unsigned m = 0;
        for (const Line& l : c.lines)
            if (l.role == Role::input && l.digit >= 0) ++m;
        return 2ul * m + 1;
    }
    if (c.family == "init-invsqrt") return 2ul * n_in + 1;
    if (c.family == "count-p") {
        unsigned long total = 0;
        for (unsigned d = 1; d < n_in; ++d)
            total += static_cast<unsigned>(std::popcount(d));
        return total;
    }
    if (c.family == "count-k") {
        unsigned frac = 0;
        for (const Line& l : c.lines)
            if (l.role == Role::input && l.digit < 0) ++frac;
        unsigned long total = 1;  // final X
        for (unsigned j = 1; j <= frac; ++j)
            total += static_cast<unsigned>(std::popcount(j)) + 1;
        return total;
    }
    (void)n_out;
    throw parameter_error("unknown circuit family " + c.family);
}

namespace {

struct Layout {
    std::vector<unsigned> in, anc, out;
};

Layout layout_of(const ReversibleCircuit& c) {
    return {c.lines_with_role(Role::input), c.lines_with_role(Role::ancilla),
            c.lines_with_role(Role::output)};
}

int max_set_digit(const ReversibleCircuit& c, const Layout& lay, std::uint64_t state) {
    int best = INT32_MIN;
    for (unsigned li : lay.in)
        if ((state >> li) & 1u) best = std::max(best, c.lines[li].digit);
    return best;
}

// Expected output register content (as line-set) for a valid input, or
// false if the input is invalid for the family.
bool expected_output(const ReversibleCircuit& c, const Layout& lay, std::uint64_t state,
                     std::uint64_t* out_mask) {
    *out_mask = 0;
    auto set_out_digit = [&](int digit) {
        for (unsigned lo : lay.out)
            if (c.lines[lo].digit == digit) {
                *out_mask |= std::uint64_t{1} << lo;
                return true;
            }
        return false;
    };
    auto set_out_binary = [&](unsigned v) {
        for (unsigned lo : lay.out)
            if ((v >> c.lines[lo].digit) & 1u) *out_mask |= std::uint64_t{1} << lo;
        return true;
    };
    if (c.family == "init-recip" || c.family == "pow2-shift") {
        int top = max_set_digit(c, lay, state);
        if (top < 0) return false;  // needs w >= 1
        int p = top + 1;
        return set_out_digit(c.family == "init-recip" ? -p : 1 - p);
    }
    if (c.family == "init-invsqrt") {
        int top = max_set_digit(c, lay, state);
        if (top == INT32_MIN) return false;  // x = 0 has no q
        int q = -top;
        return set_out_digit((q - 1) / 2);
    }
    if (c.family == "count-p") {
        unsigned count = 0, d = 0;
        for (unsigned li : lay.in)
            if ((state >> li) & 1u) {
                ++count;
                d = static_cast<unsigned>(-c.lines[li].digit);
            }
        if (count != 1) return false;  // one-hot inputs only
        return set_out_binary(d);
    }
    if (c.family == "count-k") {
        int top = max_set_digit(c, lay, state);
        if (top >= 0 || top == INT32_MIN) return false;  // needs 0 < w < 1
        return set_out_binary(static_cast<unsigned>(-top));
    }
    throw parameter_error("unknown circuit family " + c.family);
}

}  // namespace

SelfCheckReport self_check(const ReversibleCircuit& c) {
    if (c.width() > 24) throw parameter_error("self_check is exhaustive; width > 24 refused");
    Layout lay = layout_of(c);
    SelfCheckReport rep;
    const std::uint64_t total = std::uint64_t{1} << c.width();
    std::vector<bool> seen(total, false);
    std::uint64_t in_mask = 0, anc_mask = 0, out_mask_all = 0;
    for (unsigned li : lay.in) in_mask |= std::uint64_t{1} << li;
    for (unsigned li : lay.anc) anc_mask |= std::uint64_t{1} << li;
    for (unsigned li : lay.out) out_mask_all |= std::uint64_t{1} << li;

    for (std::uint64_t s = 0; s < total; ++s) {
        std::uint64_t r = simulate_u64(c, s);
        ++rep.basis_states;
        if (seen[r]) {
            rep.bijective = false;
            rep.detail = "collision at state " + std::to_string(s);
            break;
        }
        seen[r] = true;
        // a "valid input" starts with cleared ancilla and output registers
        if ((s & (anc_mask | out_mask_all)) != 0) continue;
        std::uint64_t expected = 0;
        if (!expected_output(c, lay, s, &expected)) continue;
        ++rep.valid_inputs;
        if ((r & in_mask) != (s & in_mask)) {
            rep.input_preserved = false;
            rep.detail = "input clobbered at state " + std::to_string(s);
        }
        if ((r & anc_mask) != 0) {
            rep.ancilla_clean = false;
            rep.detail = "ancilla left dirty at state " + std::to_string(s);
        }
        if ((r & out_mask_all) != expected) {
            rep.encoding_ok = false;
            rep.detail = "wrong encoding at state " + std::to_string(s);
        }
    }
    return rep;
}

std::string render_text(const ReversibleCircuit& c) {
    if (c.width() > 16) throw parameter_error("text rendering limited to 16 lines");
    size_t name_w = 0;
    for (const Line& l : c.lines) name_w = std::max(name_w, l.name.size());
    std::vector<std::string> rows(c.width());
    for (unsigned i = 0; i < c.width(); ++i) {
        std::string n = c.lines[i].name;
        rows[i] = n + std::string(name_w - n.size(), ' ') + " :";
    }
    for (const Gate& g : c.gates) {
        unsigned lo = g.target, hi = g.target;
        for (const Control& ctl : g.controls) {
            lo = std::min(lo, ctl.line);
            hi = std::max(hi, ctl.line);
        }
        for (unsigned i = 0; i < c.width(); ++i) {
            char ch = '-';
            if (i > lo && i < hi) ch = '|';
            if (i == g.target) ch = 'X';
            for (const Control& ctl : g.controls)
                if (ctl.line == i) ch = ctl.on_one ? '*' : 'o';
            rows[i] += "-";
            rows[i] += ch;
        }
    }
    std::ostringstream os;
    for (auto& r : rows) os << r << "--\n";
    return os.str();
}

}  // namespace qfix::rc
