#ifndef QFIX_CIRCUITS_HPP
#define QFIX_CIRCUITS_HPP

#include <qfix/errors.hpp>
#include <qfix/numeric.hpp>

#include <string>
#include <vector>

namespace qfix::rc {

enum class Role { input, ancilla, output };

struct Line {
    std::string name;
    Role role;
    int digit;  // significance: the line carries weight 2^digit
};

struct Control {
    unsigned line;
    bool on_one;  // filled dot when true, open dot when false
    friend bool operator==(const Control&, const Control&) = default;
};

/// Multi-controlled NOT: the target flips iff every control matches its
/// polarity. The only gate vocabulary used here.
struct Gate {
    std::vector<Control> controls;
    unsigned target;
    friend bool operator==(const Gate&, const Gate&) = default;
};

struct ReversibleCircuit {
    std::string family;
    std::vector<Line> lines;
    std::vector<Gate> gates;

    unsigned width() const { return static_cast<unsigned>(lines.size()); }
    std::vector<unsigned> lines_with_role(Role r) const;
};

/// Applies each gate in order; returns the final bit-vector.
std::vector<bool> simulate_basis(const ReversibleCircuit& c, std::vector<bool> bits);

// The five synthesizers. Inputs route through unchanged, ancillas end in 0
// on every valid input, and the output register carries the documented
// encoding; see each function.

/// Priority encoder over the integer bits of w >= 1: output one-hot 2^-p
/// with 2^p > w >= 2^(p-1). Requires b >= max(n-m, m).
ReversibleCircuit synth_init_recip(unsigned n, unsigned m, unsigned b);

/// For 0 < x < 1 on b fraction lines: output one-hot 2^floor((q-1)/2) with
/// 2^(1-q) > x >= 2^-q. Requires b >= 2.
ReversibleCircuit synth_init_invsqrt(unsigned b);

/// For w >= 1: m-line output x = 2^(1-p); x = 1 when 1 <= w < 2.
ReversibleCircuit synth_pow2_shift(unsigned n, unsigned m);

/// For one-hot x = 2^-(p-1) on m lines: ceil(log2 m)-bit binary p-1.
ReversibleCircuit synth_count_p(unsigned m);

/// For 0 < w < 1 with n-m fraction bits: binary k with 2^k w >= 1 > 2^(k-1) w.
ReversibleCircuit synth_count_k(unsigned n, unsigned m);

/// Documented per-family gate-count formula (asserted by tests).
unsigned long expected_gate_count(const ReversibleCircuit& c);

struct SelfCheckReport {
    unsigned long valid_inputs = 0;
    unsigned long basis_states = 0;
    bool bijective = true;
    bool ancilla_clean = true;
    bool input_preserved = true;
    bool encoding_ok = true;
    std::string detail;

    bool ok() const { return bijective && ancilla_clean && input_preserved && encoding_ok; }
};

/// Exhaustive basis-state validation of a synthesized circuit against its
/// arithmetic postcondition. Checks bijectivity over all basis states and
/// the encoding/hygiene/preservation properties over all valid inputs.
/// Intended for total widths <= ~20 lines.
SelfCheckReport self_check(const ReversibleCircuit& c);

/// Fixed-width ASCII rendering for circuits of at most 16 lines.
std::string render_text(const ReversibleCircuit& c);

}  // namespace qfix::rc

#endif
