#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "momenta/rat_func.hpp"
#include "momenta/sde.hpp"

namespace momenta {

struct ReduceOptions {
    bool use_symmetry = true;   // quotient unknowns by the symmetry group
    int extra_insertion = 4;    // insertion lengths tried beyond cutoff - 1
};

struct MomentTable {
    ModelSpec model;
    int cutoff = 0;
    VarList vars;
    std::map<CyclicWord, RatFunc, ShortLex> entries;
    std::set<CyclicWord, ShortLex> unresolved;
    // Fully known equations that did not vanish: relations among generators.
    std::vector<RatFunc> relations;
    int insertion_len = 0;

    bool has(const CyclicWord& w) const { return entries.count(w) > 0; }
    const RatFunc& at(const CyclicWord& w) const;
    const RatFunc& at(const std::string& w) const { return at(canonicalize(Word::from_string(w))); }
};

struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MomentTable solve_moments(const ModelSpec& model, int cutoff, const ReduceOptions& opts = {});

// -sum_terms weight * m_term, which equals dF0/dg.
RatFunc free_energy_derivative(const ModelSpec& model, const MomentTable& table);

// Value of sum(terms) with moments taken from the table; zero for a solution.
RatFunc equation_residual(const SdeEquation& eq, const MomentTable& table);

struct SearchSpaceReport {
    std::vector<std::string> generators;
    std::vector<std::string> eliminable;  // generators fixed by relations
    std::vector<std::string> unresolved;
    std::vector<std::string> relations;
    bool closed = false;
};

SearchSpaceReport report_search_space(const MomentTable& table);

}  // namespace momenta
