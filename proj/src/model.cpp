#include "momenta/model.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace momenta {

using nlohmann::json;

int ModelSpec::max_term_length() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, static_cast<int>(t.word.size()));
    return d;
}

namespace {

BigRational json_rational(const json& j, const std::string& what) {
    if (j.is_string()) return BigRational::parse(j.get<std::string>());
    if (j.is_number_integer()) return BigRational(j.get<long>());
    throw ModelError("model: " + what + " must be a rational string or integer");
}

Word checked_word(const std::string& s, int m, const std::string& what) {
    Word w;
    try {
        w = Word::from_string(s);
    } catch (const std::exception&) {
        throw ModelError("model: " + what + " '" + s + "' is not a word");
    }
    if (w.max_letter() >= m) throw ModelError("model: " + what + " '" + s + "' uses a letter beyond the declared matrices");
    return w;
}

void validate(const ModelSpec& model) {
    if (model.m < 1 || model.m > 26) throw ModelError("model: matrices must be in [1, 26]");
    std::map<CyclicWord, BigRational> table;
    for (const auto& t : model.terms) {
        if (t.word.size() < 3) throw ModelError("model: potential word '" + t.word.to_string() + "' shorter than 3");
        if (t.coeff.is_zero()) throw ModelError("model: zero coefficient for '" + t.word.to_string() + "'");
        if (t.sym_divisor <= 0) throw ModelError("model: sym_divisor must be positive");
        if (table.count(t.word)) throw ModelError("model: duplicate potential word '" + t.word.to_string() + "'");
        table[t.word] = t.weight();
    }
    std::set<CyclicWord> gens;
    for (const auto& g : model.generators) {
        if (g.empty()) throw ModelError("model: empty generator");
        if (!gens.insert(g).second) throw ModelError("model: duplicate generator '" + g.to_string() + "'");
    }
    if (model.generators.size() + 1 > static_cast<std::size_t>(kMaxVars))
        throw ModelError("model: at most " + std::to_string(kMaxVars - 1) + " generators supported");
    for (const auto& r : model.symmetries) {
        if (r.kind == SymmetryRule::Kind::Permutation) {
            if (static_cast<int>(r.perm.size()) != model.m) throw ModelError("model: permutation has wrong length");
            std::vector<int> p = r.perm;
            std::sort(p.begin(), p.end());
            for (int i = 0; i < model.m; ++i)
                if (p[i] != i) throw ModelError("model: 'perm' is not a permutation");
        } else {
            for (int l : r.letters)
                if (l < 0 || l >= model.m) throw ModelError("model: negated letter out of range");
        }
        for (const auto& [w, c] : table) {
            SignedWord img = apply_symmetry(r, w);
            auto it = table.find(img.word);
            if (it == table.end() || it->second != c * BigRational(img.sign))
                throw ModelError("model: symmetry rule is not an automorphism of the potential (term '" + w.to_string() +
                                 "')");
        }
    }
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("model: syntax error: ") + e.what());
    }
    if (!j.is_object()) throw ModelError("model: document must be an object");
    ModelSpec model;
    try {
        model.name = j.value("name", std::string("unnamed"));
        model.m = j.at("matrices").get<int>();
        for (const auto& t : j.value("terms", json::array())) {
            PotentialTerm pt;
            pt.word = canonicalize(checked_word(t.at("word").get<std::string>(), model.m, "term word"));
            pt.coeff = json_rational(t.at("coeff"), "coeff");
            pt.sym_divisor = t.value("sym_divisor", 1L);
            model.terms.push_back(pt);
        }
        for (const auto& g : j.value("generators", json::array()))
            model.generators.push_back(canonicalize(checked_word(g.get<std::string>(), model.m, "generator")));
        for (const auto& s : j.value("symmetries", json::array())) {
            SymmetryRule r;
            std::string kind = s.at("kind").get<std::string>();
            if (kind == "swap" || kind == "perm" || kind == "permutation") {
                r.kind = SymmetryRule::Kind::Permutation;
                r.perm = s.at("perm").get<std::vector<int>>();
            } else if (kind == "negate" || kind == "negation") {
                r.kind = SymmetryRule::Kind::Negation;
                r.letters = s.at("letters").get<std::vector<int>>();
            } else {
                throw ModelError("model: unknown symmetry kind '" + kind + "'");
            }
            model.symmetries.push_back(r);
        }
    } catch (const json::exception& e) {
        throw ModelError(std::string("model: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ModelError(e.what());
    }
    validate(model);
    return model;
}

ModelSpec load_model(const std::string& path) {
    if (path.rfind("preset:", 0) == 0) return preset(path.substr(7));
    std::ifstream in(path);
    if (!in) throw ModelError("model: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_to_json(const ModelSpec& model) {
    json j;
    j["name"] = model.name;
    j["matrices"] = model.m;
    j["terms"] = json::array();
    for (const auto& t : model.terms) {
        json tj{{"word", t.word.str()}, {"coeff", t.coeff.to_string()}};
        if (t.sym_divisor != 1) tj["sym_divisor"] = t.sym_divisor;
        j["terms"].push_back(tj);
    }
    j["generators"] = json::array();
    for (const auto& g : model.generators) j["generators"].push_back(g.str());
    j["symmetries"] = json::array();
    for (const auto& r : model.symmetries) {
        if (r.kind == SymmetryRule::Kind::Permutation)
            j["symmetries"].push_back({{"kind", "swap"}, {"perm", r.perm}});
        else
            j["symmetries"].push_back({{"kind", "negate"}, {"letters", r.letters}});
    }
    return j.dump();
}

std::string model_hash(const ModelSpec& model) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : model_to_json(model)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SignedWord apply_symmetry(const SymmetryRule& rule, const CyclicWord& w) {
    std::string s = w.str();
    int sign = 1;
    for (char& c : s) {
        int x = letter_index(c);
        if (rule.kind == SymmetryRule::Kind::Permutation) {
            c = letter_char(rule.perm[x]);
        } else if (std::find(rule.letters.begin(), rule.letters.end(), x) != rule.letters.end()) {
            sign = -sign;
        }
    }
    return {canonicalize(Word(s)), sign};
}

SymmetryGroup::SymmetryGroup(int m, const std::vector<SymmetryRule>& rules) : m_(m) {
    Element id;
    for (int i = 0; i < m; ++i) id.perm.push_back(i);
    id.flip.assign(m, 0);
    std::vector<Element> gens;
    for (const auto& r : rules) {
        Element e = id;
        if (r.kind == SymmetryRule::Kind::Permutation)
            e.perm = r.perm;
        else
            for (int l : r.letters) e.flip[l] ^= 1;
        gens.push_back(e);
    }
    elements_.push_back(id);
    for (std::size_t i = 0; i < elements_.size(); ++i)
        for (const auto& gg : gens) {
            Element c;
            c.perm.resize(m);
            c.flip.resize(m);
            for (int x = 0; x < m; ++x) {
                c.perm[x] = gg.perm[elements_[i].perm[x]];
                c.flip[x] = elements_[i].flip[x] ^ gg.flip[elements_[i].perm[x]];
            }
            if (std::find(elements_.begin(), elements_.end(), c) == elements_.end()) elements_.push_back(c);
        }
}

SignedWord SymmetryGroup::act(const Element& e, const Word& w) const {
    std::string s = w.str();
    int sign = 1;
    for (char& c : s) {
        int x = letter_index(c);
        if (e.flip[x]) sign = -sign;
        c = letter_char(e.perm[x]);
    }
    return {canonicalize(Word(s)), sign};
}

std::vector<SignedWord> SymmetryGroup::images(const CyclicWord& w) const {
    std::vector<SignedWord> out;
    for (const auto& e : elements_) out.push_back(act(e, w.word()));
    return out;
}

SymmetryGroup::Orbit SymmetryGroup::orbit(const CyclicWord& w) const {
    Orbit o;
    o.rep = w;
    bool first = true;
    std::vector<SignedWord> imgs = images(w);
    for (const auto& im : imgs)
        if (first || im.word < o.rep) {
            o.rep = im.word;
            first = false;
        }
    int s = 0;
    for (const auto& im : imgs) {
        if (im.word != o.rep) continue;
        if (s == 0)
            s = im.sign;
        else if (s != im.sign)
            o.zero = true;
    }
    // m_{sigma W} = s m_W, so m_W = s m_rep.
    o.sign = s;
    return o;
}

std::string generator_symbol(const CyclicWord& w) {
    const std::string& s = w.str();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == 'A'; }))
        return "m" + std::to_string(s.size());
    return "m_" + s;
}

VarList model_vars(const ModelSpec& model) {
    std::vector<std::string> names{"g"};
    for (const auto& g : model.generators) names.push_back(generator_symbol(g));
    return make_vars(names);
}

namespace {

ModelSpec two_matrix(const std::string& name, long a4, long abab, long aabb, std::vector<std::string> gens) {
    ModelSpec m;
    m.name = name;
    m.m = 2;
    m.terms = {{canonicalize(Word("AAAA")), BigRational(a4, 4)},
               {canonicalize(Word("BBBB")), BigRational(a4, 4)},
               {canonicalize(Word("ABAB")), BigRational(abab, 2)},
               {canonicalize(Word("AABB")), BigRational(aabb)}};
    for (auto& g : gens) m.generators.push_back(canonicalize(Word(g)));
    m.symmetries = {{SymmetryRule::Kind::Permutation, {1, 0}, {}},
                    {SymmetryRule::Kind::Negation, {}, {0}},
                    {SymmetryRule::Kind::Negation, {}, {1}}};
    return m;
}

}  // namespace

ModelSpec preset(const std::string& name) {
    ModelSpec m;
    if (name == "gaussian1") {
        m.name = "gaussian1";
        m.m = 1;
        m.symmetries = {{SymmetryRule::Kind::Negation, {}, {0}}};
    } else if (name == "quartic") {
        m.name = "quartic";
        m.m = 1;
        m.terms = {{canonicalize(Word("AAAA")), BigRational(1, 4)}};
        m.generators = {canonicalize(Word("AA"))};
        m.symmetries = {{SymmetryRule::Kind::Negation, {}, {0}}};
    } else if (name == "ggg") {
        m = two_matrix("ggg", 1, 1, 1, {"AA"});
    } else if (name == "gmgg") {
        m = two_matrix("gmgg", 1, -1, 1, {"AA"});
    } else if (name == "ggmg") {
        m = two_matrix("ggmg", 1, 1, -1, {"AA", "AAAA"});
    } else if (name == "mggg") {
        m = two_matrix("mggg", -1, 1, 1, {"AA", "AAAA"});
    } else if (name == "3matrix") {
        m.name = "3matrix";
        m.m = 3;
        for (const char* w : {"AAA", "BBB", "CCC"}) m.terms.push_back({canonicalize(Word(w)), BigRational(1, 3)});
        m.terms.push_back({canonicalize(Word("ABC")), BigRational(1)});
        m.terms.push_back({canonicalize(Word("ACB")), BigRational(1)});
        m.generators = {canonicalize(Word("A")), canonicalize(Word("AA"))};
        m.symmetries = {{SymmetryRule::Kind::Permutation, {1, 0, 2}, {}},
                        {SymmetryRule::Kind::Permutation, {1, 2, 0}, {}}};
    } else {
        throw ModelError("model: unknown preset '" + name + "'");
    }
    validate(m);
    return m;
}

std::vector<std::string> preset_names() { return {"gaussian1", "quartic", "ggg", "gmgg", "ggmg", "mggg", "3matrix"}; }

}  // namespace momenta
