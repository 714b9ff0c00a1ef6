#include <algorithm>
#include <random>

#include "doctest.h"
#include "momenta/maps.hpp"
#include "momenta/moment_series.hpp"

using namespace momenta;

namespace {

long long double_factorial(int n) {
    long long r = 1;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

long long catalan(int k) {
    long long c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

long long total(const GenusCounts& c) {
    long long t = 0;
    for (const auto& [g, n] : c) t += n;
    return t;
}

}  // namespace

TEST_CASE("single polygon pairings") {
    auto a4 = count_pairings(Word::from_string("AAAA"));
    CHECK(a4.at(0) == 2);
    CHECK(a4.at(1) == 1);
    CHECK(count_pairings(Word::from_string("AAAAAA")).at(0) == 5);
    auto abab = count_pairings(Word::from_string("ABAB"));
    CHECK(total(abab) == 1);
    CHECK(abab.count(0) == 0);
    CHECK_THROWS_AS(count_pairings(Word::from_string("AAA")), std::invalid_argument);
    CHECK_THROWS_AS(count_pairings(Word(std::string(18, 'A'))), ResourceCapExceeded);
}

TEST_CASE("noncrossing pruning agrees with the full genus expansion") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::string w;
        const int len = 2 + 2 * static_cast<int>(rng() % 6);
        for (int i = 0; i < len; ++i) w += static_cast<char>('A' + rng() % 3);
        GluingProblem full{3, Word(w), {}, std::nullopt};
        GluingProblem planar = full;
        planar.genus = 0;
        bool balanced = true;
        for (char c : {'A', 'B', 'C'}) balanced &= std::count(w.begin(), w.end(), c) % 2 == 0;
        auto a = count_gluings(full, 0).labeled[0][0];
        auto b = count_gluings(planar, 0).labeled[0][0];
        CHECK(a == b);
        if (balanced) CHECK(BigRational(a) == gue_mixed_moment(CyclicWord(Word(w))));
    }
}

TEST_CASE("Catalan, double factorial and Harer-Zagier") {
    for (int k = 1; k <= 6; ++k) {
        auto c = count_pairings(Word(std::string(2 * k, 'A')));
        CHECK(total(c) == double_factorial(2 * k - 1));
        CHECK(c.at(0) == catalan(k));
    }
    CHECK(count_pairings(Word::from_string("AAAA")).at(1) == 1);
    CHECK(count_pairings(Word::from_string("AAAAAA")).at(1) == 10);
}

TEST_CASE("planar pairings equal GUE moments") {
    for (int len = 2; len <= 10; len += 2)
        for (const auto& w : necklaces(2, len)) {
            auto c = count_pairings(w.word());
            BigRational planar(c.count(0) ? c.at(0) : 0);
            CHECK(planar == gue_mixed_moment(w));
        }
}

TEST_CASE("gluing examples") {
    ModelSpec ggg = preset("ggg");
    auto aa = count_gluings(GluingProblem::from_model(ggg, Word::from_string("AA")), 1);
    CHECK(aa.coefficient(0) == BigRational(1));
    CHECK(aa.labeled.at(0).at(0) == 1);
    CHECK(aa.coefficient(1) == BigRational(-4));
    auto abab = count_gluings(GluingProblem::from_model(ggg, Word::from_string("ABAB")), 1);
    CHECK(abab.coefficient(0) == BigRational(0));
    CHECK(abab.coefficient(1) != BigRational(0));

    GluingProblem planar_only = GluingProblem::from_model(ggg, Word::from_string("AAAA"));
    planar_only.genus = 0;
    auto p = count_gluings(planar_only, 1);
    CHECK(p.labeled.at(0).size() == 1);
    CHECK(p.coefficient(1) == count_gluings(GluingProblem::from_model(ggg, Word::from_string("AAAA")), 1).coefficient(1));

    CHECK_THROWS_AS(count_gluings(GluingProblem::from_model(ggg, Word(std::string(10, 'A'))), 2), ResourceCapExceeded);
    GluingProblem bad = GluingProblem::from_model(ggg, Word::from_string("AC"));
    CHECK_THROWS_AS(count_gluings(bad, 0), std::invalid_argument);
    CHECK(gluings_to_json(planar_only, p).find("\"weighted\"") != std::string::npos);
}

TEST_CASE("weighted gluings equal series coefficients") {
    for (const char* name : {"ggg", "3matrix", "gmgg", "mggg"}) {
        ModelSpec model = preset(name);
        SeriesEngine eng(model);
        int checked = 0;
        for (int len = 1; len <= 6; ++len)
            for (const auto& w : necklaces(model.m, len)) {
                const int maxj = std::min(2, (kMaxGluingEdges - len) / model.max_term_length());
                auto c = count_gluings(GluingProblem::from_model(model, w.word()), maxj);
                TruncSeries s = eng.moment(w, maxj);
                for (int j = 0; j <= maxj; ++j) CHECK(c.coefficient(j) == s[j]);
                ++checked;
            }
        CHECK(checked > 20);
    }
}

TEST_CASE("theorem bound") {
    CHECK(theorem_bound(4, 4) == 1);
    CHECK(theorem_bound(8, 4) == 2);
    CHECK(theorem_bound(12, 4) == 3);
    CHECK(theorem_bound(4, 3) == 2);
    CHECK_THROWS(theorem_bound(0, 4));
    CHECK_THROWS(theorem_bound(4, 2));
}
