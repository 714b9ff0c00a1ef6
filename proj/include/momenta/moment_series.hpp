#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "momenta/model.hpp"
#include "momenta/reduce.hpp"
#include "momenta/trunc_series.hpp"

namespace momenta {

// Noncrossing pairings of the cyclic positions that join equal letters.
BigRational gue_mixed_moment(const CyclicWord& w);

// Order-by-order solution of the loop equations around g = 0, memoized per word.
class SeriesEngine {
public:
    explicit SeriesEngine(ModelSpec model, int max_word_len = 96);

    // Coefficients of m_w up to g^K.
    TruncSeries moment(const CyclicWord& w, int K);
    BigRational coefficient(const CyclicWord& w, int k);
    TruncSeries free_energy(int K);  // g-dependent part
    const ModelSpec& model() const { return model_; }

private:
    ModelSpec model_;
    int max_len_;
    std::unordered_map<std::string, std::vector<BigRational>> memo_;
    std::vector<std::pair<Word, BigRational>> cyclic_parts_;  // (V with one letter removed, weight), per letter
    std::vector<std::vector<std::size_t>> parts_by_letter_;
};

struct UnderdeterminedAtOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesTable {
    ModelSpec model;
    int K = 0;
    std::map<CyclicWord, TruncSeries, ShortLex> moments;
    TruncSeries free_energy;
};

// All rotation classes of length <= max_len.
SeriesTable expand_moments(const ModelSpec& model, int K, int max_len);
TruncSeries expand_free_energy(const SeriesTable& table);

// First nonzero order, or K + 1 when none is found through g^K.
int order_of_vanishing(const SeriesTable& table, const CyclicWord& w);

// Cross-check for one-generator tables: the generator's series is fixed order by
// order by requiring every entry with a pole at g = 0 to stay finite there.
// Orders beyond what the table's poles constrain throw UnderdeterminedAtOrder.
TruncSeries lhopital_series(const MomentTable& table, int K);

}  // namespace momenta
