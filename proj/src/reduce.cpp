#include "momenta/reduce.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace momenta {

const RatFunc& MomentTable::at(const CyclicWord& w) const {
    auto it = entries.find(w);
    if (it == entries.end()) throw std::out_of_range("moment table: no entry for '" + w.to_string() + "'");
    return it->second;
}

namespace {

using Entries = std::vector<std::pair<int, RatFunc>>;

struct Row {
    Entries e;  // sorted by column
    RatFunc c;  // constant part; row means sum e + c = 0
};

// r -= f * p
void axpy(Row& r, const RatFunc& f, const Row& p) {
    Entries out;
    out.reserve(r.e.size() + p.e.size());
    std::size_t i = 0, j = 0;
    while (i < r.e.size() || j < p.e.size()) {
        if (j == p.e.size() || (i < r.e.size() && r.e[i].first < p.e[j].first)) {
            out.push_back(std::move(r.e[i++]));
        } else if (i == r.e.size() || p.e[j].first < r.e[i].first) {
            out.emplace_back(p.e[j].first, -(f * p.e[j].second));
            ++j;
        } else {
            RatFunc v = r.e[i].second - f * p.e[j].second;
            if (!v.is_zero()) out.emplace_back(r.e[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    r.e = std::move(out);
    if (!p.c.is_zero()) r.c = r.c - f * p.c;
}

void scale_to_lead(Row& r) {
    RatFunc inv = r.e.front().second.inverse();
    for (auto& [col, v] : r.e) v = v * inv;
    r.c = r.c * inv;
}

struct Solver {
    const ModelSpec& model;
    int cutoff;
    ReduceOptions opts;
    VarList vars;
    SymmetryGroup group;
    std::map<CyclicWord, RatFunc, ShortLex> known;  // keyed by unknown key (rep or canonical word)
    std::vector<RatFunc> relations;

    Solver(const ModelSpec& m, int L, const ReduceOptions& o)
        : model(m), cutoff(L), opts(o), vars(model_vars(m)), group(m.m, m.symmetries) {}

    RatFunc one() const { return RatFunc(vars, BigRational(1)); }
    RatFunc zero() const { return RatFunc(vars, BigRational(0)); }

    void seed() {
        for (std::size_t i = 0; i < model.generators.size(); ++i) {
            RatFunc v = RatFunc::variable(vars, static_cast<int>(i) + 1);
            const CyclicWord& gw = model.generators[i];
            if (opts.use_symmetry) {
                auto o = group.orbit(gw);
                if (o.zero) throw InconsistentSystem("reduce: generator '" + gw.to_string() + "' is forced to vanish");
                known.emplace(o.rep, o.sign > 0 ? v : -v);
            } else {
                known.emplace(gw, v);
            }
        }
    }

    // Equations for insertions up to length H, in key form.
    std::vector<SdeEquation> equations(int H) const {
        std::vector<SdeEquation> eqs = generate_system(model, H, opts.use_symmetry);
        if (!opts.use_symmetry) {
            // Each rule becomes the linear relation m_W = s m_{sigma W}.
            std::set<CyclicWord, ShortLex> words;
            for (const auto& eq : eqs)
                for (const auto& t : eq.terms)
                    for (const auto& f : t.factors) words.insert(f);
            for (const auto& w : words)
                for (const auto& r : model.symmetries) {
                    SignedWord img = apply_symmetry(r, w);
                    SdeEquation s;
                    s.w = w.word();
                    s.terms.push_back({BigRational(1), 0, {w}});
                    s.terms.push_back({BigRational(-img.sign), 0, {img.word}});
                    normalize(s);
                    if (!s.trivial()) eqs.push_back(std::move(s));
                }
        }
        return eqs;
    }

    // One pass of elimination; returns the number of newly solved unknowns.
    std::size_t pass(const std::vector<SdeEquation>& eqs) {
        std::set<CyclicWord, ShortLex> unknown_set;
        std::vector<const SdeEquation*> linear;
        for (const auto& eq : eqs) {
            bool ok = true;
            for (const auto& t : eq.terms) {
                int unk = 0;
                for (const auto& f : t.factors)
                    if (!known.count(f)) ++unk;
                if (unk > 1) ok = false;
            }
            if (!ok) continue;
            linear.push_back(&eq);
            for (const auto& t : eq.terms)
                for (const auto& f : t.factors)
                    if (!known.count(f)) unknown_set.insert(f);
        }
        // Longest words first, so the pivot of each equation is its longest unknown.
        std::vector<CyclicWord> cols(unknown_set.begin(), unknown_set.end());
        std::stable_sort(cols.begin(), cols.end(), [](const CyclicWord& a, const CyclicWord& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return a < b;
        });
        std::unordered_map<CyclicWord, int> col_of;
        for (std::size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = static_cast<int>(i);

        const RatFunc gvar = RatFunc::variable(vars, 0);
        std::map<int, Row> pivots;
        for (const SdeEquation* eq : linear) {
            std::map<int, RatFunc> acc;
            RatFunc c = zero();
            for (const auto& t : eq->terms) {
                RatFunc coef(vars, t.coeff);
                if (t.g_power) coef = coef * gvar.pow(static_cast<unsigned>(t.g_power));
                int col = -1;
                for (const auto& f : t.factors) {
                    auto it = known.find(f);
                    if (it != known.end())
                        coef = coef * it->second;
                    else
                        col = col_of.at(f);
                }
                if (coef.is_zero()) continue;
                if (col < 0) {
                    c = c + coef;
                } else {
                    auto [it, fresh] = acc.emplace(col, coef);
                    if (!fresh) it->second = it->second + coef;
                }
            }
            Row r;
            for (auto& [col, v] : acc)
                if (!v.is_zero()) r.e.emplace_back(col, std::move(v));
            r.c = c;
            while (!r.e.empty()) {
                auto pit = pivots.find(r.e.front().first);
                if (pit == pivots.end()) break;
                RatFunc f = r.e.front().second;
                axpy(r, f, pit->second);
            }
            if (r.e.empty()) {
                if (!r.c.is_zero()) note_relation(r.c);
                continue;
            }
            scale_to_lead(r);
            int lead = r.e.front().first;
            pivots.emplace(lead, std::move(r));
        }
        // Back substitution from the shortest pivot upward.
        std::size_t solved = 0;
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Row& r = it->second;
            Row reduced;
            reduced.c = r.c;
            reduced.e.push_back(r.e.front());
            bool determined = true;
            for (std::size_t k = 1; k < r.e.size(); ++k) {
                auto kn = known.find(cols[r.e[k].first]);
                if (kn != known.end()) {
                    reduced.c = reduced.c + r.e[k].second * kn->second;
                } else {
                    determined = false;
                    break;
                }
            }
            if (!determined) continue;
            known.emplace(cols[it->first], -reduced.c);
            ++solved;
        }
        return solved;
    }

    void note_relation(const RatFunc& v) {
        if (v.is_constant()) throw InconsistentSystem("reduce: derived nonzero constant " + v.to_string());
        for (const auto& r : relations)
            if (r == v || r == -v) return;
        relations.push_back(v);
    }

    bool closed() const {
        for (int len = 1; len <= cutoff; ++len)
            for (const auto& w : necklaces(model.m, len)) {
                CyclicWord key = w;
                if (opts.use_symmetry) {
                    auto o = group.orbit(w);
                    if (o.zero) continue;
                    key = o.rep;
                }
                if (!known.count(key)) return false;
            }
        return true;
    }
};

}  // namespace

MomentTable solve_moments(const ModelSpec& model, int cutoff, const ReduceOptions& opts) {
    int maxgen = 0;
    for (const auto& g : model.generators) maxgen = std::max(maxgen, static_cast<int>(g.size()));
    if (cutoff < maxgen) throw std::invalid_argument("reduce: cutoff below generator length");
    Solver s(model, cutoff, opts);
    s.seed();
    int H = std::max(0, cutoff - 1);
    int Hmax = cutoff - 1 + opts.extra_insertion;
    while (true) {
        auto eqs = s.equations(H);
        while (s.pass(eqs) > 0) {
        }
        if (s.closed() || H >= Hmax) break;
        ++H;
    }
    MomentTable t;
    t.model = model;
    t.cutoff = cutoff;
    t.vars = s.vars;
    t.insertion_len = H;
    t.relations = s.relations;
    t.entries.emplace(CyclicWord(), s.one());
    for (int len = 1; len <= cutoff; ++len)
        for (const auto& w : necklaces(model.m, len)) {
            if (opts.use_symmetry) {
                auto o = s.group.orbit(w);
                if (o.zero) {
                    t.entries.emplace(w, s.zero());
                    continue;
                }
                auto it = s.known.find(o.rep);
                if (it == s.known.end())
                    t.unresolved.insert(w);
                else
                    t.entries.emplace(w, o.sign > 0 ? it->second : -it->second);
            } else {
                auto it = s.known.find(w);
                if (it == s.known.end())
                    t.unresolved.insert(w);
                else
                    t.entries.emplace(w, it->second);
            }
        }
    return t;
}

RatFunc free_energy_derivative(const ModelSpec& model, const MomentTable& table) {
    RatFunc out(table.vars, BigRational(0));
    for (const auto& term : model.terms) {
        if (!table.has(term.word)) throw std::out_of_range("free energy: missing moment '" + term.word.to_string() + "'");
        out = out - RatFunc(table.vars, term.weight()) * table.at(term.word);
    }
    return out;
}

RatFunc equation_residual(const SdeEquation& eq, const MomentTable& table) {
    RatFunc out(table.vars, BigRational(0));
    const RatFunc g = RatFunc::variable(table.vars, 0);
    for (const auto& t : eq.terms) {
        RatFunc v(table.vars, t.coeff);
        if (t.g_power) v = v * g.pow(static_cast<unsigned>(t.g_power));
        for (const auto& f : t.factors) v = v * table.at(f);
        out = out + v;
    }
    return out;
}

SearchSpaceReport report_search_space(const MomentTable& table) {
    SearchSpaceReport r;
    for (const auto& g : table.model.generators) r.generators.push_back(g.str());
    for (const auto& w : table.unresolved) r.unresolved.push_back(w.str());
    for (const auto& rel : table.relations) {
        r.relations.push_back(rel.to_string() + " = 0");
        // A relation linear in a generator makes that generator eliminable.
        for (std::size_t i = 0; i < table.model.generators.size(); ++i) {
            int var = static_cast<int>(i) + 1;
            if (rel.num().degree_in(var) == 1 && rel.den().degree_in(var) == 0) {
                std::string name = table.model.generators[i].str();
                if (std::find(r.eliminable.begin(), r.eliminable.end(), name) == r.eliminable.end())
                    r.eliminable.push_back(name);
            }
        }
    }
    r.closed = r.unresolved.empty();
    return r;
}

}  // namespace momenta
