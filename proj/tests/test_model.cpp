#include <fstream>
#include <sstream>

#include "doctest.h"
#include "momenta/model.hpp"

using namespace momenta;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kGgg = R"({"name": "ggg", "matrices": 2,
  "terms": [{"word": "AAAA", "coeff": "1/4"}, {"word": "BBBB", "coeff": "1/4"},
            {"word": "ABAB", "coeff": "1/2"}, {"word": "AABB", "coeff": "1"}],
  "generators": ["AA"],
  "symmetries": [{"kind": "swap", "perm": [1, 0]}, {"kind": "negate", "letters": [0]}]})";

}  // namespace

TEST_CASE("parse model documents") {
    ModelSpec m = parse_model(kGgg);
    CHECK(m.m == 2);
    CHECK(m.terms.size() == 4);
    CHECK(m.terms[2].weight() == BigRational(1, 2));
    CHECK(m.max_term_length() == 4);

    ModelSpec three = parse_model(R"({"name": "t", "matrices": 3,
      "terms": [{"word": "AAA", "coeff": "1/3"}, {"word": "BBB", "coeff": "1/3"}, {"word": "CCC", "coeff": "1/3"},
                {"word": "ABC", "coeff": "1"}, {"word": "ACB", "coeff": "1"}],
      "generators": ["A", "AA"], "symmetries": []})");
    CHECK(three.terms.size() == 5);
    CHECK(three.generators.size() == 2);

    ModelSpec gauss = parse_model(R"({"name": "free", "matrices": 1, "terms": [], "generators": []})");
    CHECK(gauss.terms.empty());
}

TEST_CASE("model validation errors") {
    CHECK_THROWS_AS(parse_model("{not json"), ModelError);
    // swap maps AAAA to BBBB, which carries a different coefficient
    CHECK_THROWS_AS(parse_model(R"({"name": "x", "matrices": 2,
      "terms": [{"word": "AAAA", "coeff": "1/4"}, {"word": "BBBB", "coeff": "1/3"}],
      "generators": ["AA"], "symmetries": [{"kind": "swap", "perm": [1, 0]}]})"),
                    ModelError);
    // negating A flips the sign of AAA
    CHECK_THROWS_AS(parse_model(R"({"name": "x", "matrices": 1, "terms": [{"word": "AAA", "coeff": "1"}],
      "generators": [], "symmetries": [{"kind": "negate", "letters": [0]}]})"),
                    ModelError);
    CHECK_THROWS_AS(parse_model(R"({"name": "x", "matrices": 1, "terms": [], "generators": ["AB"]})"), ModelError);
    CHECK_THROWS_AS(parse_model(R"({"name": "x", "matrices": 2, "terms": [{"word": "AAAA", "coeff": "abc"}]})"),
                    ModelError);
}

TEST_CASE("preset files reproduce the built-in presets") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        ModelSpec file = load_model(std::string(MOMENTA_SOURCE_DIR) + "/presets/" + name + ".json");
        CHECK(model_to_json(file) == model_to_json(preset(name)));
        CHECK(model_hash(file) == model_hash(preset(name)));
        CHECK(load_model("preset:" + name).name == name);
    }
    CHECK(model_hash(preset("ggg")) != model_hash(preset("gmgg")));
    CHECK(model_hash(preset("ggg")).size() == 16);
}

TEST_CASE("model json round trip") {
    for (const auto& name : preset_names()) {
        std::string j = model_to_json(preset(name));
        CHECK(model_to_json(parse_model(j)) == j);
    }
}

TEST_CASE("apply_symmetry") {
    SymmetryRule swap{SymmetryRule::Kind::Permutation, {1, 0}, {}};
    SymmetryRule negA{SymmetryRule::Kind::Negation, {}, {0}};
    auto r = apply_symmetry(swap, canonicalize(Word("AAB")));
    CHECK(r.word.str() == "ABB");
    CHECK(r.sign == 1);
    r = apply_symmetry(negA, canonicalize(Word("AAB")));
    CHECK(r.word.str() == "AAB");
    CHECK(r.sign == 1);
    r = apply_symmetry(negA, canonicalize(Word("A")));
    CHECK(r.word.str() == "A");
    CHECK(r.sign == -1);
}

TEST_CASE("symmetry group orbits") {
    SymmetryGroup g(2, preset("ggg").symmetries);
    CHECK(g.elements().size() == 8);
    CHECK(g.orbit(canonicalize(Word("A"))).zero);
    CHECK(g.orbit(canonicalize(Word("AAB"))).zero);
    auto o = g.orbit(canonicalize(Word("BB")));
    CHECK(o.rep.str() == "AA");
    CHECK(o.sign == 1);
    SymmetryGroup three(3, preset("3matrix").symmetries);
    CHECK(three.elements().size() == 6);
    CHECK(three.orbit(canonicalize(Word("CC"))).rep.str() == "AA");
    CHECK_FALSE(three.orbit(canonicalize(Word("A"))).zero);
}

TEST_CASE("every preset's symmetries are automorphisms of its potential") {
    for (const auto& name : preset_names()) {
        ModelSpec m = preset(name);
        for (const auto& rule : m.symmetries)
            for (const auto& t : m.terms) {
                auto img = apply_symmetry(rule, t.word);
                bool found = false;
                for (const auto& u : m.terms)
                    if (u.word == img.word && u.weight() == t.weight() * BigRational(img.sign)) found = true;
                CHECK(found);
            }
    }
}

TEST_CASE("generator symbols") {
    CHECK(generator_symbol(canonicalize(Word("AA"))) == "m2");
    CHECK(generator_symbol(canonicalize(Word("A"))) == "m1");
    CHECK(generator_symbol(canonicalize(Word("AB"))) == "m_AB");
    auto v = model_vars(preset("ggmg"));
    REQUIRE(v->size() == 3);
    CHECK((*v)[0] == "g");
    CHECK((*v)[2] == "m4");
}
