#include "golden.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "momenta/expr.hpp"

namespace golden {

using namespace momenta;

Canonicalizer::Canonicalizer(const ModelSpec& model) : m(model.m), group(model.m, model.symmetries) {}

std::pair<CyclicWord, int> Canonicalizer::rep(const CyclicWord& w) const {
    auto a = group.orbit(w);
    auto b = group.orbit(canonicalize(reverse(w.word())));
    if (a.zero || b.zero) return {a.rep, 0};
    if (ShortLex{}(b.rep, a.rep)) return {b.rep, b.sign};
    return {a.rep, a.sign};
}

EqKey Canonicalizer::key(const SdeEquation& eq) const {
    EqKey out;
    for (const auto& t : eq.terms) {
        int sign = 1;
        std::vector<std::string> reps;
        for (const auto& f : t.factors) {
            auto [r, s] = rep(f);
            sign *= s;
            reps.push_back(r.str());
        }
        if (sign == 0) continue;
        std::sort(reps.begin(), reps.end());
        std::string k = std::to_string(t.g_power);
        for (const auto& r : reps) k += "|" + r;
        out[k] += t.coeff * BigRational(sign);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::string scale_free(const EqKey& k) {
    if (k.empty()) return "0";
    BigRational s = k.begin()->second.inverse();
    std::string out;
    for (const auto& [term, c] : k) out += (c * s).to_string() + "*" + term + ";";
    return out;
}

Word parse_label(const std::string& label) {
    std::string out;
    for (std::size_t i = 0; i < label.size();) {
        char c = label[i++];
        if (!std::isupper(static_cast<unsigned char>(c))) throw std::runtime_error("bad label " + label);
        int e = 1;
        if (i < label.size() && label[i] == '^') {
            std::size_t j = ++i;
            while (j < label.size() && std::isdigit(static_cast<unsigned char>(label[j]))) ++j;
            e = std::stoi(label.substr(i, j - i));
            i = j;
        }
        out.append(e, c);
    }
    return Word(out);
}

Word tuple_word(const std::string& tuple, int m) {
    std::vector<int> es;
    std::stringstream ss(tuple);
    std::string part;
    while (std::getline(ss, part, ',')) es.push_back(std::stoi(part));
    if (es.size() == 1) return Word(std::string(es[0], 'A'));
    std::string out;
    for (std::size_t i = 0; i < es.size(); ++i) out.append(es[i], letter_char(static_cast<int>(i % m)));
    return Word(out);
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// One term such as "2 g m_{2,2}", "m_2^2", "1".
SdeTerm parse_term(const std::string& text, int m) {
    SdeTerm t;
    t.coeff = BigRational(1);
    std::stringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
            t.coeff *= BigRational::parse(tok);
        } else if (tok[0] == 'g') {
            t.g_power += tok.size() > 2 && tok[1] == '^' ? std::stoi(tok.substr(2)) : 1;
        } else if (tok.rfind("m_", 0) == 0) {
            std::size_t i = 2;
            std::string idx;
            if (tok[i] == '{') {
                auto close = tok.find('}', i);
                idx = tok.substr(i + 1, close - i - 1);
                i = close + 1;
            } else {
                while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) idx += tok[i++];
            }
            int e = 1;
            if (i < tok.size() && tok[i] == '^') e = std::stoi(tok.substr(i + 1));
            for (int k = 0; k < e; ++k) t.factors.push_back(canonicalize(tuple_word(idx, m)));
        } else {
            throw std::runtime_error("bad token '" + tok + "' in " + text);
        }
    }
    std::sort(t.factors.begin(), t.factors.end(), ShortLex{});
    return t;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty() && line[0] != '#') out.push_back(line);
    }
    return out;
}

}  // namespace

std::vector<SdeLine> load_sde_lines(const std::string& path, int m) {
    std::vector<SdeLine> out;
    for (const auto& line : read_lines(path)) {
        auto colon = line.find(':');
        auto eqpos = line.find('=');
        SdeLine s;
        s.text = line;
        s.label = trim(line.substr(0, colon));
        s.w = parse_label(s.label);
        s.eq.p = 0;
        s.eq.w = s.w;
        std::string rhs = line.substr(eqpos + 1);
        std::string cur;
        int sign = 1;
        auto flush = [&] {
            if (trim(cur).empty()) return;
            SdeTerm t = parse_term(cur, m);
            t.coeff *= BigRational(sign);
            s.eq.terms.push_back(t);
            cur.clear();
        };
        for (char c : rhs) {
            if (c == '+' || c == '-') {
                flush();
                sign = c == '-' ? -1 : 1;
            } else {
                cur += c;
            }
        }
        flush();
        normalize(s.eq);
        out.push_back(std::move(s));
    }
    return out;
}

SdeMatch match_sde(const ModelSpec& model, const std::string& path) {
    Canonicalizer canon(model);
    auto lines = load_sde_lines(path, model.m);
    std::size_t max_len = 0;
    for (const auto& l : lines) max_len = std::max(max_len, l.w.size());
    std::map<std::string, bool> generated;
    for (const auto& eq : generate_system(model, static_cast<int>(max_len), true))
        generated[scale_free(canon.key(eq))] = true;
    SdeMatch r;
    for (const auto& l : lines) {
        ++r.lines;
        std::string want = scale_free(canon.key(l.eq));
        std::string own = scale_free(canon.key(derive_sde(model, 0, l.w)));
        if (own == want)
            ++r.by_label;
        else if (generated.count(want))
            ++r.by_content;
        else
            r.missing.push_back(l.text);
    }
    return r;
}

MomentFile load_moment_file(const std::string& path) {
    MomentFile f;
    for (const auto& line : read_lines(path)) {
        if (line.rfind("vars:", 0) == 0) {
            std::stringstream ss(line.substr(5));
            std::string tok;
            while (ss >> tok) {
                if (tok == "g") continue;
                auto eq = tok.find('=');
                if (eq != std::string::npos)
                    f.vars.emplace_back(tok.substr(0, eq), canonicalize(Word(tok.substr(eq + 1))));
                else
                    f.vars.emplace_back(tok, canonicalize(Word(std::string(std::stoi(tok.substr(1)), 'A'))));
            }
            continue;
        }
        auto eq = line.find('=');
        f.lines.push_back({canonicalize(Word(trim(line.substr(0, eq)))), trim(line.substr(eq + 1))});
    }
    return f;
}

RatFunc parse_formula(const MomentFile& file, const MomentLine& line, const VarList& vars) {
    SymbolResolver resolve = [&](const std::string& name) -> RatFunc {
        std::string target = name;
        for (const auto& [n, w] : file.vars)
            if (n == name) target = generator_symbol(w);
        for (std::size_t i = 0; i < vars->size(); ++i)
            if ((*vars)[i] == target) return RatFunc::variable(vars, static_cast<int>(i));
        throw std::runtime_error("unknown symbol " + name);
    };
    return parse_expression(line.text, resolve);
}

MomentMatch match_moments(const ModelSpec& model, const MomentFile& file, int cutoff) {
    Canonicalizer canon(model);
    MomentTable table = solve_moments(model, cutoff);
    const VarList& vars = table.vars;
    auto value = [&](const CyclicWord& w) -> std::optional<RatFunc> {
        auto [r, s] = canon.rep(w);
        if (s == 0) return RatFunc(vars, BigRational(0));
        for (const auto& [word, f] : table.entries) {
            auto [r2, s2] = canon.rep(word);
            if (r2 == r) return s * s2 == 1 ? f : -f;
        }
        return std::nullopt;
    };
    MomentMatch out;
    for (const auto& line : file.lines) {
        ++out.lines;
        RatFunc want = parse_formula(file, line, vars);
        auto have = value(line.word);
        if (have && *have == want) {
            ++out.by_label;
            continue;
        }
        // A label typo: the formula is exactly that of a different word.
        std::string found;
        auto own = canon.rep(line.word).first;
        for (const auto& [word, f] : table.entries) {
            auto [r, s] = canon.rep(word);
            if (r == own) continue;
            if ((s == 1 && f == want) || (s == -1 && f == -want)) found += " " + word.str();
        }
        if (!found.empty()) {
            ++out.by_content;
            out.relabeled.push_back(line.word.str() + " ->" + found);
        }
        else
            out.missing.push_back(line.word.str() + " = " + line.text +
                                  (have ? (*have == -want ? "   engine: opposite sign" : "   engine: " + have->to_string())
                                        : "   engine: unresolved"));
    }
    return out;
}

}  // namespace golden
