#ifndef QFIX_RESOURCES_HPP
#define QFIX_RESOURCES_HPP

#include <qfix/errors.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qfix::res {

enum class Algorithm { inv, sqrt, pow2_roots, ln, frac_pow, frac_pow2 };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct Params {
    unsigned n = 0;
    unsigned m = 0;
    std::optional<unsigned> b;
    std::optional<unsigned> l;
    std::optional<unsigned> nf;
    std::optional<unsigned> k;
};

struct ResourceEstimate {
    std::string algorithm;
    Params params;
    unsigned long multiplications = 0;
    unsigned long additions = 0;
    unsigned long qubits = 0;
    std::string convention;
};

/// Arithmetic-operation and qubit counts under the documented convention.
/// With uncompute (the default) every algorithm level that the convention
/// marks is doubled exactly once; without it the forward counts are returned.
ResourceEstimate estimate(Algorithm a, const Params& p, bool uncompute = true);

std::vector<ResourceEstimate> preset_table6();
std::vector<ResourceEstimate> preset_table7();
std::vector<ResourceEstimate> preset_table8();

std::string to_csv(const std::vector<ResourceEstimate>& rows);

}  // namespace qfix::res

#endif
