#pragma once

#include <map>
#include <string>
#include <vector>

#include "momenta/model.hpp"
#include "momenta/rat_func.hpp"
#include "momenta/reduce.hpp"
#include "momenta/sde.hpp"

namespace golden {

using momenta::BigRational;

// An equation keyed by "g_power|rep|rep..." with moments reduced to orbit
// representatives under the symmetry group and word reversal.
using EqKey = std::map<std::string, BigRational>;

struct Canonicalizer {
    explicit Canonicalizer(const momenta::ModelSpec& model);
    // Representative and sign; sign 0 when the moment is forced to vanish.
    std::pair<momenta::CyclicWord, int> rep(const momenta::CyclicWord& w) const;
    EqKey key(const momenta::SdeEquation& eq) const;

    int m;
    momenta::SymmetryGroup group;
};

// Rescaled so the first coefficient is 1; equal for equations equal up to scaling.
std::string scale_free(const EqKey& k);

// "A^3B^2" -> AAABB.
momenta::Word parse_label(const std::string& label);
// Exponent tuple "2,1,1" cycling through m letters, or a single power of A.
momenta::Word tuple_word(const std::string& tuple, int m);

struct SdeLine {
    std::string label;
    momenta::Word w;
    momenta::SdeEquation eq;  // p = A
    std::string text;
};

// Lines "LABEL : 0 = 1 - m_2 - 2 g m_{2,2}".
std::vector<SdeLine> load_sde_lines(const std::string& path, int m);

struct SdeMatch {
    std::size_t lines = 0;
    std::size_t by_label = 0;    // equal to the insertion named by the label
    std::size_t by_content = 0;  // found elsewhere in the generated system
    std::vector<std::string> missing;
};

SdeMatch match_sde(const momenta::ModelSpec& model, const std::string& path);

struct MomentLine {
    momenta::CyclicWord word;
    std::string text;
};

struct MomentFile {
    // Generator words for the variables named in the file ("m1=A").
    std::vector<std::pair<std::string, momenta::CyclicWord>> vars;
    std::vector<MomentLine> lines;
};

MomentFile load_moment_file(const std::string& path);

struct MomentMatch {
    std::size_t lines = 0;
    std::size_t by_label = 0;
    std::size_t by_content = 0;
    std::vector<std::string> relabeled;  // "label -> word whose formula it is"
    std::vector<std::string> missing;
};

// The line's formula over `vars`, with file variable names mapped to generator symbols.
momenta::RatFunc parse_formula(const MomentFile& file, const MomentLine& line, const momenta::VarList& vars);

// Compares against solve_moments on `model`, whose generators must cover the file's variables.
MomentMatch match_moments(const momenta::ModelSpec& model, const MomentFile& file, int cutoff);

}  // namespace golden
