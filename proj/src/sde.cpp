#include "momenta/sde.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace momenta {

namespace {

std::size_t total_length(const SdeTerm& t) {
    std::size_t n = 0;
    for (const auto& f : t.factors) n += f.size();
    return n;
}

bool term_key_less(const SdeTerm& a, const SdeTerm& b) {
    if (a.g_power != b.g_power) return a.g_power < b.g_power;
    std::size_t la = total_length(a), lb = total_length(b);
    if (la != lb) return la < lb;
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
    return std::lexicographical_compare(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
                                        ShortLex{});
}

bool same_key(const SdeTerm& a, const SdeTerm& b) { return a.g_power == b.g_power && a.factors == b.factors; }

void add_term(SdeEquation& eq, const BigRational& c, int gp, std::vector<CyclicWord> fs) {
    fs.erase(std::remove_if(fs.begin(), fs.end(), [](const CyclicWord& w) { return w.empty(); }), fs.end());
    std::sort(fs.begin(), fs.end(), ShortLex{});
    eq.terms.push_back({c, gp, std::move(fs)});
}

}  // namespace

std::string sign_free_key(const SdeEquation& eq) {
    std::string key;
    BigRational s = eq.terms.empty() ? BigRational(1) : eq.terms[0].coeff.inverse();
    for (const auto& t : eq.terms) {
        key += (t.coeff * s).to_string() + "|" + std::to_string(t.g_power);
        for (const auto& f : t.factors) key += "|" + f.str();
        key += ";";
    }
    return key;
}

void normalize(SdeEquation& eq) {
    std::sort(eq.terms.begin(), eq.terms.end(), term_key_less);
    std::vector<SdeTerm> out;
    for (auto& t : eq.terms) {
        if (!out.empty() && same_key(out.back(), t))
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
        if (out.back().coeff.is_zero()) out.pop_back();
    }
    eq.terms = std::move(out);
}

SdeEquation derive_sde(const ModelSpec& model, Letter p, const Word& w) {
    if (p < 0 || p >= model.m || w.max_letter() >= model.m) throw std::invalid_argument("sde: letter out of range");
    SdeEquation eq;
    eq.p = p;
    eq.w = w;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == p) add_term(eq, BigRational(1), 0, {canonicalize(w.substr(0, i)), canonicalize(w.substr(i + 1))});
    Word wp = w;
    wp.push_back(p);
    add_term(eq, BigRational(-1), 0, {canonicalize(wp)});
    for (const auto& t : model.terms) {
        const Word& v = t.word.word();
        BigRational c = -t.weight();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != p) continue;
            Word cyc = v.substr(i + 1) + v.substr(0, i);
            add_term(eq, c, 1, {canonicalize(w + cyc)});
        }
    }
    normalize(eq);
    return eq;
}

SdeEquation reduce_by_symmetry(const SdeEquation& eq, const SymmetryGroup& group) {
    SdeEquation out;
    out.p = eq.p;
    out.w = eq.w;
    for (const auto& t : eq.terms) {
        BigRational c = t.coeff;
        std::vector<CyclicWord> fs;
        bool zero = false;
        for (const auto& f : t.factors) {
            auto o = group.orbit(f);
            if (o.zero) {
                zero = true;
                break;
            }
            if (o.sign < 0) c = -c;
            fs.push_back(o.rep);
        }
        if (!zero) add_term(out, c, t.g_power, std::move(fs));
    }
    normalize(out);
    return out;
}

bool same_up_to_sign(const SdeEquation& a, const SdeEquation& b) {
    if (a.terms.size() != b.terms.size()) return false;
    if (a.terms.empty()) return true;
    BigRational r = a.terms[0].coeff / b.terms[0].coeff;
    if (r != BigRational(1) && r != BigRational(-1)) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (!same_key(a.terms[i], b.terms[i]) || a.terms[i].coeff != r * b.terms[i].coeff) return false;
    return true;
}

std::vector<SdeEquation> generate_system(const ModelSpec& model, int max_len, bool symmetry_reduce) {
    SymmetryGroup group = symmetry_reduce ? SymmetryGroup(model.m, model.symmetries) : SymmetryGroup::trivial(model.m);
    std::vector<SdeEquation> out;
    std::unordered_set<std::string> seen;
    for (int len = 0; len <= max_len; ++len)
        for (const Word& w : all_words(model.m, len))
            for (Letter p = 0; p < model.m; ++p) {
                SdeEquation eq = derive_sde(model, p, w);
                if (symmetry_reduce) eq = reduce_by_symmetry(eq, group);
                if (eq.trivial() && symmetry_reduce) continue;
                bool dup = !seen.insert(sign_free_key(eq)).second;
                if (!dup) out.push_back(std::move(eq));
            }
    return out;
}

std::string exponent_symbol(const CyclicWord& w, int m) {
    const std::string& s = w.str();
    if (s.empty()) return "1";
    if (std::all_of(s.begin(), s.end(), [](char c) { return c == 'A'; })) return "m" + std::to_string(s.size());
    std::vector<int> tuple;
    std::size_t i = 0;
    int expect = 0;
    while (i < s.size()) {
        int run = 0;
        while (i < s.size() && letter_index(s[i]) == expect) {
            ++run;
            ++i;
        }
        tuple.push_back(run);
        expect = (expect + 1) % m;
    }
    std::string out = "m_{";
    for (std::size_t k = 0; k < tuple.size(); ++k) out += (k ? "," : "") + std::to_string(tuple[k]);
    return out + "}";
}

std::string word_symbol(const CyclicWord& w) { return w.empty() ? "1" : "m_" + w.str(); }

std::string format_equation(const SdeEquation& eq, int m, bool exponent_notation) {
    if (eq.terms.empty()) return "0 = 0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : eq.terms) {
        bool neg = t.coeff.sign() < 0;
        BigRational a = t.coeff.abs();
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        std::vector<std::string> parts;
        if (t.g_power == 1)
            parts.push_back("g");
        else if (t.g_power > 1)
            parts.push_back("g^" + std::to_string(t.g_power));
        for (std::size_t k = 0; k < t.factors.size(); ++k) {
            std::size_t r = k;
            while (r + 1 < t.factors.size() && t.factors[r + 1] == t.factors[k]) ++r;
            std::string sym = exponent_notation ? exponent_symbol(t.factors[k], m) : word_symbol(t.factors[k]);
            if (r > k) sym += "^" + std::to_string(r - k + 1);
            parts.push_back(sym);
            k = r;
        }
        if (parts.empty()) {
            os << a.to_string();
        } else {
            if (!a.is_one()) os << a.to_string() << '*';
            for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? "*" : "") << parts[k];
        }
        first = false;
    }
    os << " = 0";
    return os.str();
}

}  // namespace momenta
