#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "momenta/model.hpp"

namespace momenta {

// Desk-scale limit on the number of polygon edges in one enumeration.
inline constexpr int kMaxGluingEdges = 16;

struct ResourceCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using GenusCounts = std::map<int, long long>;  // genus -> number of gluings

// Color-respecting edge pairings of one polygon, by genus of the closed surface.
GenusCounts count_pairings(const Word& w);

struct GluingProblem {
    int m = 1;
    Word rooted;                         // the marked polygon, read from its root edge
    std::vector<PotentialTerm> polygons; // unrooted polygon types with their weights
    std::optional<int> genus;            // restrict the enumeration when set

    static GluingProblem from_model(const ModelSpec& model, const Word& rooted);
};

struct GluingCount {
    // j -> genus -> connected gluings, summed over ordered j-tuples of labeled polygons.
    std::map<int, std::map<int, long long>> labeled;
    // j -> genus -> sum of prod(-weight) / j! over the same gluings.
    std::map<int, std::map<int, BigRational>> weighted;

    // Contribution to the g^j coefficient of m_rooted at the given genus.
    BigRational coefficient(int j, int genus = 0) const;
    long long total(int j) const;
};

// Gluings using j = 0..max_polygons unrooted polygons. Throws ResourceCapExceeded when some
// admissible tuple has more than kMaxGluingEdges edges in total.
GluingCount count_gluings(const GluingProblem& p, int max_polygons, int threads = 0);

// ceil(l / d), the order in g below which the corrections to a freely alternating word vanish.
int theorem_bound(int l, int d);

std::string gluings_to_json(const GluingProblem& p, const GluingCount& c);

}  // namespace momenta
