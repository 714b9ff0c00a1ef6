#include "momenta/trunc_series.hpp"

#include <sstream>
#include <stdexcept>

namespace momenta {

TruncSeries::TruncSeries(int K, std::vector<BigRational> coeffs) : c_(std::move(coeffs)) {
    c_.resize(K + 1, BigRational(0));
}

TruncSeries TruncSeries::constant(int K, const BigRational& c) {
    TruncSeries s(K);
    s.c_[0] = c;
    return s;
}

TruncSeries TruncSeries::g(int K) {
    TruncSeries s(K);
    if (K >= 1) s.c_[1] = 1;
    return s;
}

int TruncSeries::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return static_cast<int>(i);
    return static_cast<int>(c_.size());
}

TruncSeries TruncSeries::truncated(int K) const {
    if (K > order()) throw std::invalid_argument("series: cannot extend truncation order");
    return TruncSeries(K, std::vector<BigRational>(c_.begin(), c_.begin() + K + 1));
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    int K = std::min(a.order(), b.order());
    TruncSeries r(K);
    for (int i = 0; i <= K; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    int K = std::min(a.order(), b.order());
    TruncSeries r(K);
    for (int i = 0; i <= K; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    int K = std::min(a.order(), b.order());
    TruncSeries r(K);
    for (int i = 0; i <= K; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= K; ++j)
            if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

TruncSeries TruncSeries::scaled(const BigRational& c) const {
    TruncSeries r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

TruncSeries TruncSeries::inverse() const {
    if (c_.empty() || c_[0].is_zero()) throw PoleAtZero("series: inverse needs a nonzero constant term");
    int K = order();
    TruncSeries r(K);
    BigRational inv0 = c_[0].inverse();
    r.c_[0] = inv0;
    for (int n = 1; n <= K; ++n) {
        BigRational s(0);
        for (int k = 1; k <= n; ++k) s += c_[k] * r.c_[n - k];
        r.c_[n] = -s * inv0;
    }
    return r;
}

TruncSeries TruncSeries::shift_down(int k) const {
    if (k == 0) return *this;
    for (int i = 0; i < k && i <= order(); ++i)
        if (!c_[i].is_zero()) throw PoleAtZero("series: division by g^k leaves a pole");
    if (k > order()) return TruncSeries(-1);
    return TruncSeries(order() - k, std::vector<BigRational>(c_.begin() + k, c_.end()));
}

TruncSeries TruncSeries::integral() const {
    TruncSeries r(order() + 1);
    for (int i = 0; i <= order(); ++i) r.c_[i + 1] = c_[i] / BigRational(i + 1);
    return r;
}

TruncSeries TruncSeries::derivative() const {
    if (order() < 1) return TruncSeries(0);
    TruncSeries r(order() - 1);
    for (int i = 1; i <= order(); ++i) r.c_[i - 1] = c_[i] * BigRational(i);
    return r;
}

std::string TruncSeries::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= order(); ++i) {
        const BigRational& c = c_[i];
        if (c.is_zero()) continue;
        BigRational a = c.abs();
        os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
        if (i == 0) {
            os << a.to_string();
        } else {
            if (!a.is_one()) os << a.to_string() << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

TruncSeries poly_to_series(const Poly& p, const std::map<std::string, TruncSeries>& subst, int K) {
    const auto& names = *p.vars();
    std::vector<std::vector<TruncSeries>> powers(names.size());
    std::vector<bool> is_g(names.size(), false);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == "g") {
            is_g[i] = true;
            continue;
        }
        auto it = subst.find(names[i]);
        if (it == subst.end()) throw std::invalid_argument("series_compose: no series for '" + names[i] + "'");
        if (it->second.order() < K) throw std::invalid_argument("series_compose: series for '" + names[i] + "' too short");
        powers[i].push_back(TruncSeries::constant(K, BigRational(1)));
        powers[i].push_back(it->second.truncated(K));
    }
    TruncSeries out(K);
    for (const auto& t : p.terms()) {
        TruncSeries term = TruncSeries::constant(K, t.coeff);
        int gshift = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
            unsigned e = t.mono.e[i];
            if (!e) continue;
            if (is_g[i]) {
                gshift += static_cast<int>(e);
                continue;
            }
            while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
            term = term * powers[i][e];
        }
        for (int k = K; k >= 0; --k) {
            int src = k - gshift;
            out[k] += src >= 0 ? term[src] : BigRational(0);
        }
    }
    return out;
}

TruncSeries series_compose(const RatFunc& f, const std::map<std::string, TruncSeries>& subst, int K) {
    int N = -1;
    for (const auto& name : *f.vars())
        if (name != "g") {
            auto it = subst.find(name);
            if (it == subst.end()) throw std::invalid_argument("series_compose: no series for '" + name + "'");
            N = N < 0 ? it->second.order() : std::min(N, it->second.order());
        }
    int dv = 0;
    // Without generator series the available precision is unbounded; size
    // the working order from the denominator valuation in g.
    if (N < 0) {
        int gi = -1;
        for (std::size_t i = 0; i < f.vars()->size(); ++i)
            if ((*f.vars())[i] == "g") gi = static_cast<int>(i);
        if (gi >= 0) {
            unsigned v = ~0u;
            for (const auto& t : f.den().terms()) v = std::min<unsigned>(v, t.mono.e[gi]);
            dv = static_cast<int>(v);
        }
        N = K + dv;
    }
    TruncSeries num = poly_to_series(f.num(), subst, N);
    TruncSeries den = poly_to_series(f.den(), subst, N);
    int v = den.valuation();
    if (v > N) throw PoleAtZero("series_compose: denominator vanishes identically to the available order");
    if (num.valuation() < v) throw PoleAtZero("series_compose: pole at g = 0 survives");
    if (N - v < K)
        throw std::invalid_argument("series_compose: need generator series to order " + std::to_string(K + v));
    TruncSeries q = num.shift_down(v) * den.shift_down(v).inverse();
    return q.truncated(K);
}

BigRational eval_rational(const RatFunc& f, const std::map<std::string, BigRational>& point) { return f.eval(point); }

}  // namespace momenta
