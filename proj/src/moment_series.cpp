#include "momenta/moment_series.hpp"

#include <stdexcept>

namespace momenta {

BigRational gue_mixed_moment(const CyclicWord& cw) {
    const std::string& s = cw.str();
    const std::size_t n = s.size();
    if (n % 2) return BigRational(0);
    // c[i][j]: noncrossing pairings of s[i, j)
    std::vector<std::vector<mpz_class>> c(n + 1, std::vector<mpz_class>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) c[i][i] = 1;
    for (std::size_t len = 2; len <= n; len += 2)
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len;
            mpz_class total = 0;
            for (std::size_t k = i + 1; k < j; k += 2)
                if (s[k] == s[i]) total += c[i + 1][k] * c[k + 1][j];
            c[i][j] = total;
        }
    return BigRational(c[0][n], 1);
}

SeriesEngine::SeriesEngine(ModelSpec model, int max_word_len) : model_(std::move(model)), max_len_(max_word_len) {
    parts_by_letter_.resize(model_.m);
    for (const auto& t : model_.terms) {
        const Word& v = t.word.word();
        for (std::size_t i = 0; i < v.size(); ++i) {
            parts_by_letter_[v[i]].push_back(cyclic_parts_.size());
            cyclic_parts_.emplace_back(v.substr(i + 1) + v.substr(0, i), t.weight());
        }
    }
}

BigRational SeriesEngine::coefficient(const CyclicWord& cw, int k) {
    if (cw.empty()) return BigRational(k == 0 ? 1 : 0);
    if (k < 0) return BigRational(0);
    if (static_cast<int>(cw.size()) > max_len_)
        throw UnderdeterminedAtOrder("series: word length " + std::to_string(cw.size()) + " exceeds tracking bound " +
                                     std::to_string(max_len_));
    auto& slot = memo_[cw.str()];
    if (static_cast<int>(slot.size()) > k) return slot[k];
    // Fill lower orders first so recursion depth stays bounded by length.
    for (int j = static_cast<int>(slot.size()); j < k; ++j) coefficient(cw, j);
    // Loop equation for insertion w with p = last letter of W = w p.
    const Word& W = cw.word();
    Word w = W.substr(0, W.size() - 1);
    Letter p = W[W.size() - 1];
    BigRational c(0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != p) continue;
        CyclicWord a = canonicalize(w.substr(0, i)), b = canonicalize(w.substr(i + 1));
        for (int j = 0; j <= k; ++j) {
            BigRational x = coefficient(a, j);
            if (x.is_zero()) continue;
            BigRational y = coefficient(b, k - j);
            if (!y.is_zero()) c += x * y;
        }
    }
    if (k > 0)
        for (std::size_t idx : parts_by_letter_[p]) {
            const auto& [rest, weight] = cyclic_parts_[idx];
            BigRational y = coefficient(canonicalize(w + rest), k - 1);
            if (!y.is_zero()) c -= weight * y;
        }
    auto& s2 = memo_[cw.str()];  // re-lookup: recursion may rehash
    if (static_cast<int>(s2.size()) == k) s2.push_back(c);
    return c;
}

TruncSeries SeriesEngine::moment(const CyclicWord& w, int K) {
    TruncSeries s(K);
    for (int k = 0; k <= K; ++k) s[k] = coefficient(w, k);
    return s;
}

TruncSeries SeriesEngine::free_energy(int K) {
    TruncSeries d(std::max(K - 1, 0));
    for (const auto& t : model_.terms) {
        TruncSeries m = moment(t.word, std::max(K - 1, 0));
        d = d - m.scaled(t.weight());
    }
    if (K == 0) return TruncSeries(0);
    return d.integral();
}

SeriesTable expand_moments(const ModelSpec& model, int K, int max_len) {
    if (K < 0 || max_len < 0) throw std::invalid_argument("series: negative order or length");
    SeriesEngine eng(model);
    SeriesTable t;
    t.model = model;
    t.K = K;
    for (int len = 0; len <= max_len; ++len)
        for (const auto& w : len == 0 ? std::vector<CyclicWord>{CyclicWord()} : necklaces(model.m, len))
            t.moments.emplace(w, eng.moment(w, K));
    for (const auto& term : model.terms)
        if (!t.moments.count(term.word)) t.moments.emplace(term.word, eng.moment(term.word, K));
    t.free_energy = eng.free_energy(K);
    return t;
}

TruncSeries expand_free_energy(const SeriesTable& table) {
    int K = table.K;
    TruncSeries d(std::max(K - 1, 0));
    for (const auto& t : table.model.terms) {
        auto it = table.moments.find(t.word);
        if (it == table.moments.end()) throw std::out_of_range("series: missing potential moment " + t.word.to_string());
        d = d - it->second.truncated(std::max(K - 1, 0)).scaled(t.weight());
    }
    if (K == 0) return TruncSeries(0);
    return d.integral();
}

int order_of_vanishing(const SeriesTable& table, const CyclicWord& w) {
    auto it = table.moments.find(w);
    if (it == table.moments.end()) throw std::out_of_range("series: word not in table: " + w.to_string());
    return it->second.valuation();
}

}  // namespace momenta

namespace momenta {

namespace {

// Largest j with g^j dividing p (g is variable 0).
int g_valuation(const Poly& p) {
    if (p.is_zero()) return 0;
    int v = -1;
    for (const auto& t : p.terms()) v = v < 0 ? t.mono.e[0] : std::min<int>(v, t.mono.e[0]);
    return v;
}

}  // namespace

TruncSeries lhopital_series(const MomentTable& table, int K) {
    const VarList& vars = table.vars;
    if (vars->size() != 2) throw std::invalid_argument("lhopital: needs exactly one generator");
    const std::string x = (*vars)[1];
    struct Pole {
        Poly num;
        int order;  // pole order at g = 0
    };
    std::vector<Pole> poles;
    for (const auto& [w, f] : table.entries) {
        int j = g_valuation(f.den());
        if (j > 0) poles.push_back({f.num(), j});
    }
    TruncSeries s(K);
    // Order 0: common root of the g^0 parts of the numerators.
    {
        Poly common;
        for (const auto& p : poles) {
            Poly n0 = p.num.substitute(0, BigRational(0));
            common = common.is_zero() ? n0 : gcd(common, n0);
        }
        if (common.is_zero() || common.degree_in(1) != 1)
            throw UnderdeterminedAtOrder("lhopital: order 0 not fixed by a linear condition");
        auto cs = common.coeffs_in(1);
        s[0] = -cs[0].constant_term() / cs[1].constant_term();
    }
    for (int k = 1; k <= K; ++k) {
        bool fixed = false;
        for (const auto& p : poles) {
            if (p.order <= k) continue;
            TruncSeries lo = s.truncated(k), hi = lo;
            lo[k] = BigRational(0);
            hi[k] = BigRational(1);
            BigRational a = poly_to_series(p.num, {{x, lo}}, k)[k];
            BigRational b = poly_to_series(p.num, {{x, hi}}, k)[k] - a;
            if (b.is_zero()) {
                if (!a.is_zero()) throw std::runtime_error("lhopital: inconsistent pole condition");
                continue;
            }
            BigRational t = -a / b;
            if (fixed && t != s[k]) throw std::runtime_error("lhopital: conflicting pole conditions");
            s[k] = t;
            fixed = true;
        }
        if (!fixed) throw UnderdeterminedAtOrder("lhopital: order " + std::to_string(k) + " not fixed by the table");
    }
    return s;
}

}  // namespace momenta
