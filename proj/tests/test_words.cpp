#include <random>
#include <set>

#include "doctest.h"
#include "momenta/words.hpp"

using namespace momenta;

TEST_CASE("canonicalize picks the least rotation") {
    CHECK(canonicalize(Word("ABAB")).str() == "ABAB");
    CHECK(canonicalize(Word("BAA")).str() == "AAB");
    CHECK(canonicalize(Word("")).str().empty());
    CHECK(canonicalize(Word("")).to_string() == "1");
    CHECK(canonicalize(Word("CBA")).str() == "ACB");
    CHECK(canonicalize(Word("BABA")).str() == "ABAB");
}

TEST_CASE("canonicalize is constant on rotation orbits") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        int len = 1 + static_cast<int>(rng() % 12);
        int m = 1 + static_cast<int>(rng() % 3);
        std::string s;
        for (int i = 0; i < len; ++i) s += letter_char(static_cast<int>(rng() % m));
        Word w(s);
        CyclicWord c = canonicalize(w);
        std::string best = s;
        for (int k = 0; k < len; ++k) {
            Word r = rotate(w, k);
            CHECK(canonicalize(r) == c);
            best = std::min(best, r.str());
        }
        CHECK(c.str() == best);
    }
}

TEST_CASE("reverse") {
    CHECK(reverse(Word("AAB")).str() == "BAA");
    CHECK(reverse(Word("A")).str() == "A");
    CHECK(reverse(Word("ABC")).str() == "CBA");
    CHECK(reverse(reverse(Word("ABCAB"))) == Word("ABCAB"));
}

TEST_CASE("basis ordering and size") {
    auto b = basis(2, 2);
    std::vector<std::string> got;
    for (auto& w : b) got.push_back(w.to_string());
    CHECK(got == std::vector<std::string>{"1", "A", "B", "AA", "AB", "BA", "BB"});
    auto b3 = basis(3, 1);
    CHECK(b3.size() == 4);
    CHECK(b3[3].str() == "C");
    for (int m = 1; m <= 3; ++m)
        for (int L = 0; L <= 4; ++L) {
            auto bb = basis(m, L);
            std::size_t expect = 0, p = 1;
            for (int k = 0; k <= L; ++k, p *= m) expect += p;
            CHECK(bb.size() == expect);
            for (std::size_t i = 1; i < bb.size(); ++i) CHECK(ShortLex{}(bb[i - 1], bb[i]));
        }
}

TEST_CASE("necklace counts") {
    // binary necklaces of length 1..8
    std::vector<std::size_t> expect{2, 3, 4, 6, 8, 14, 20, 36};
    for (int n = 1; n <= 8; ++n) CHECK(necklaces(2, n).size() == expect[n - 1]);
    CHECK(necklaces(3, 4).size() == 24);
}

TEST_CASE("necklaces agree with filtering all words") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 0; n <= 7; ++n) {
            std::vector<CyclicWord> brute;
            for (const Word& w : all_words(m, n))
                if (CyclicWord(w).word() == w) brute.emplace_back(w);
            CHECK(necklaces(m, n) == brute);
        }
}
