#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "momenta/big_rational.hpp"
#include "momenta/poly.hpp"
#include "momenta/words.hpp"

namespace momenta {

struct PotentialTerm {
    CyclicWord word;
    BigRational coeff;    // multiplier of g
    long sym_divisor = 1;  // convention divisor; effective weight is coeff / sym_divisor

    BigRational weight() const { return coeff / BigRational(sym_divisor); }
};

struct SymmetryRule {
    enum class Kind { Permutation, Negation };
    Kind kind = Kind::Permutation;
    std::vector<int> perm;     // letter i maps to perm[i]
    std::vector<int> letters;  // negated letters
};

struct ModelSpec {
    std::string name;
    int m = 1;
    std::vector<PotentialTerm> terms;
    std::vector<CyclicWord> generators;
    std::vector<SymmetryRule> symmetries;

    // Longest potential word, the d in degree bounds.
    int max_term_length() const;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ModelSpec parse_model(std::string_view json_text);
ModelSpec load_model(const std::string& path);
std::string model_to_json(const ModelSpec& model);
// FNV-1a over the canonical serialization, as 16 hex digits.
std::string model_hash(const ModelSpec& model);

struct SignedWord {
    CyclicWord word;
    int sign = 1;
};

SignedWord apply_symmetry(const SymmetryRule& rule, const CyclicWord& w);

// Closure of the declared rules acting on letters with signs.
class SymmetryGroup {
public:
    struct Element {
        std::vector<int> perm;
        std::vector<int> flip;  // flip[x] = 1 when letter x changes sign
        bool operator==(const Element&) const = default;
    };
    struct Orbit {
        CyclicWord rep;
        int sign = 1;  // m_W = sign * m_rep
        bool zero = false;
    };

    SymmetryGroup() = default;
    SymmetryGroup(int m, const std::vector<SymmetryRule>& rules);
    static SymmetryGroup trivial(int m) { return SymmetryGroup(m, {}); }

    const std::vector<Element>& elements() const { return elements_; }
    SignedWord act(const Element& e, const Word& w) const;
    Orbit orbit(const CyclicWord& w) const;
    std::vector<SignedWord> images(const CyclicWord& w) const;

private:
    int m_ = 1;
    std::vector<Element> elements_;
};

// Variable name of a generator moment: A^k becomes "m{k}", anything else "m_" + word.
std::string generator_symbol(const CyclicWord& w);
VarList model_vars(const ModelSpec& model);

// Built-in presets by name: gaussian1, quartic, ggg, gmgg, ggmg, mggg, 3matrix.
ModelSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace momenta
