#pragma once

#include <string>
#include <vector>

#include "momenta/model.hpp"

namespace momenta {

// coeff * g^g_power * prod(m_factor). Factors are sorted and never empty words.
struct SdeTerm {
    BigRational coeff;
    int g_power = 0;
    std::vector<CyclicWord> factors;
};

struct SdeEquation {
    Letter p = 0;
    Word w;
    std::vector<SdeTerm> terms;  // sum of terms = 0

    bool trivial() const { return terms.empty(); }
};

SdeEquation derive_sde(const ModelSpec& model, Letter p, const Word& w);

// Replaces every moment by its orbit representative; forced zeros drop out.
SdeEquation reduce_by_symmetry(const SdeEquation& eq, const SymmetryGroup& group);

// All insertions (p, w) with |w| <= max_len, the empty insertion included.
// Identical equations (up to overall sign) are kept once; with
// symmetry_reduce, trivial equations are dropped.
std::vector<SdeEquation> generate_system(const ModelSpec& model, int max_len, bool symmetry_reduce);

// Normalizes term order and merges like terms; removes zero terms.
void normalize(SdeEquation& eq);
bool same_up_to_sign(const SdeEquation& a, const SdeEquation& b);
// Identical for equations equal up to overall scaling.
std::string sign_free_key(const SdeEquation& eq);

// "m4", "m_{2,2}", "1".
std::string exponent_symbol(const CyclicWord& w, int m);
std::string word_symbol(const CyclicWord& w);
std::string format_equation(const SdeEquation& eq, int m, bool exponent_notation);

}  // namespace momenta
