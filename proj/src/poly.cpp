#include "momenta/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace momenta {

VarList make_vars(std::vector<std::string> names) {
    if (names.size() > static_cast<std::size_t>(kMaxVars))
        throw std::invalid_argument("poly: at most " + std::to_string(kMaxVars) + " variables supported");
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarList Poly::empty_vars() {
    static const VarList v = make_vars({});
    return v;
}

Poly::Poly(VarList vars, const BigRational& c) : vars_(std::move(vars)) {
    if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(VarList vars, int index) {
    Monomial m;
    m.e[index] = 1;
    return monomial(std::move(vars), m, BigRational(1));
}

Poly Poly::monomial(VarList vars, const Monomial& m, const BigRational& c) {
    Poly p(std::move(vars));
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
}

Poly PolyBuilder::build() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Poly::Term& a, const Poly::Term& b) { return grlex_greater(a.mono, b.mono); });
    Poly p(vars_);
    for (auto& t : terms_) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    terms_.clear();
    return p;
}

void Poly::check_vars(const Poly& o) {
    if (vars_ == o.vars_ || *vars_ == *o.vars_) return;
    if (vars_->empty() && is_constant()) {
        vars_ = o.vars_;
        return;
    }
    if (o.vars_->empty() && o.is_constant()) return;
    throw std::invalid_argument("poly: variable-list mismatch");
}

BigRational Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.degree() == 0) return terms_.back().coeff;
    return BigRational(0);
}

unsigned Poly::degree_in(int var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.e[var]);
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

template <bool Subtract>
void merge_into(std::vector<Poly::Term>& out, const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
            out.push_back({b[j].mono, Subtract ? -b[j].coeff : b[j].coeff});
            ++j;
        } else {
            BigRational c = Subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
            if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    check_vars(o);
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    merge_into<false>(out, terms_, o.terms_);
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_vars(o);
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    merge_into<true>(out, terms_, o.terms_);
    terms_ = std::move(out);
    return *this;
}

Poly operator*(const Poly& a0, const Poly& b0) {
    Poly a = a0, b = b0;
    a.check_vars(b);
    if (b.vars_ != a.vars_) b.vars_ = a.vars_;
    if (a.is_zero() || b.is_zero()) return Poly(a.vars_);
    if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
    PolyBuilder pb(a.vars_);
    pb.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) pb.add(x.mono * y.mono, x.coeff * y.coeff);
    return pb.build();
}

Poly Poly::scaled(const BigRational& c) const {
    if (c.is_zero()) return Poly(vars_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::times_monomial(const Monomial& m, const BigRational& c) const {
    if (c.is_zero()) return Poly(vars_);
    Poly r = *this;
    for (auto& t : r.terms_) {
        t.mono = t.mono * m;
        t.coeff *= c;
    }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(vars_, BigRational(1)), x = *this;
    while (e) {
        if (e & 1) r = r * x;
        e >>= 1;
        if (e) x = x * x;
    }
    return r;
}

BigRational Poly::eval(const std::vector<BigRational>& point) const {
    if (point.size() < vars_->size()) throw std::invalid_argument("poly: evaluation point too short");
    BigRational s(0);
    for (const auto& t : terms_) {
        BigRational v = t.coeff;
        for (int i = 0; i < nvars(); ++i)
            if (t.mono.e[i]) v *= momenta::pow(point[i], t.mono.e[i]);
        s += v;
    }
    return s;
}

Poly Poly::substitute(int var, const BigRational& value) const {
    PolyBuilder pb(vars_);
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        unsigned k = m.e[var];
        m.e[var] = 0;
        pb.add(m, k ? t.coeff * momenta::pow(value, k) : t.coeff);
    }
    return pb.build();
}

std::vector<Poly> Poly::coeffs_in(int var) const {
    std::vector<Poly> out(degree_in(var) + 1, Poly(vars_));
    // Terms with a fixed exponent of var keep their relative grlex order
    // after that exponent is cleared, so plain appends stay sorted.
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        unsigned k = m.e[var];
        m.e[var] = 0;
        out[k].terms_.push_back({m, t.coeff});
    }
    for (auto& p : out)
        std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    return out;
}

Poly Poly::from_coeffs_in(int var, const std::vector<Poly>& cs, const VarList& vars) {
    PolyBuilder pb(vars);
    for (std::size_t k = 0; k < cs.size(); ++k)
        for (const auto& t : cs[k].terms_) {
            Monomial m = t.mono;
            m.e[var] = static_cast<std::uint16_t>(m.e[var] + k);
            pb.add(m, t.coeff);
        }
    return pb.build();
}

Poly Poly::derivative(int var) const {
    PolyBuilder pb(vars_);
    for (const auto& t : terms_) {
        if (!t.mono.e[var]) continue;
        Monomial m = t.mono;
        --m.e[var];
        pb.add(m, t.coeff * BigRational(static_cast<long>(t.mono.e[var])));
    }
    return pb.build();
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("poly: division by zero polynomial");
    Poly r = *this;
    r.check_vars(d);
    if (d.terms_.size() == 1) {
        const auto& dt = d.terms_[0];
        BigRational inv = dt.coeff.inverse();
        for (auto& t : r.terms_) {
            if (!dt.mono.divides(t.mono)) return std::nullopt;
            t.mono = t.mono / dt.mono;
            t.coeff *= inv;
        }
        return r;
    }
    PolyBuilder q(r.vars_);
    const Term& dl = d.lead();
    BigRational inv = dl.coeff.inverse();
    while (!r.is_zero()) {
        const Term& rl = r.lead();
        if (!dl.mono.divides(rl.mono)) return std::nullopt;
        Monomial m = rl.mono / dl.mono;
        BigRational c = rl.coeff * inv;
        q.add(m, c);
        r -= d.times_monomial(m, c);
    }
    return q.build();
}

Monomial Poly::monomial_content() const {
    Monomial m;
    if (terms_.empty()) return m;
    m = terms_[0].mono;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.mono.e[i]);
    return m;
}

BigRational Poly::rational_content() const {
    if (terms_.empty()) return BigRational(1);
    mpz_class num = 0, den = 1;
    for (const auto& t : terms_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.raw().get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.raw().get_den_mpz_t());
    }
    return BigRational(num, den);
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    BigRational c = rational_content();
    if (terms_[0].coeff.sign() < 0) c = -c;
    return c.is_one() ? *this : scaled(c.inverse());
}

namespace {

void append_coeff_term(std::ostringstream& os, bool first, const BigRational& c, const std::string& mono) {
    bool neg = c.sign() < 0;
    BigRational a = c.abs();
    if (first)
        os << (neg ? "-" : "");
    else
        os << (neg ? " - " : " + ");
    if (mono.empty())
        os << a.to_string();
    else if (a.is_one())
        os << mono;
    else
        os << a.to_string() << '*' << mono;
}

}  // namespace

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string mono;
        for (int i = 0; i < nvars(); ++i) {
            if (!it->mono.e[i]) continue;
            if (!mono.empty()) mono += '*';
            mono += (*vars_)[i];
            if (it->mono.e[i] > 1) mono += '^' + std::to_string(it->mono.e[i]);
        }
        append_coeff_term(os, first, it->coeff, mono);
        first = false;
    }
    return os.str();
}

std::size_t Poly::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        std::size_t mh = 0;
        for (auto x : t.mono.e) mh = mh * 131 + x;
        h = h * 1000003u ^ (mh + 0x9e3779b97f4a7c15ull * t.coeff.hash());
    }
    return h;
}

Poly Poly::rebase(const VarList& target) const {
    if (vars_ == target || *vars_ == *target) {
        Poly r = *this;
        r.vars_ = target;
        return r;
    }
    std::vector<int> map(vars_->size());
    for (std::size_t i = 0; i < vars_->size(); ++i) {
        auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
        if (it == target->end()) {
            if (degree_in(static_cast<int>(i)) == 0) {
                map[i] = -1;
                continue;
            }
            throw std::invalid_argument("poly: cannot rebase, variable '" + (*vars_)[i] + "' missing");
        }
        map[i] = static_cast<int>(it - target->begin());
    }
    PolyBuilder pb(target);
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < vars_->size(); ++i)
            if (map[i] >= 0) m.e[map[i]] = t.mono.e[i];
        pb.add(m, t.coeff);
    }
    return pb.build();
}

// ---- gcd ----

namespace {

using UPoly = std::vector<Poly>;  // coefficients by degree in the main variable

void trim(UPoly& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly exact(const Poly& a, const Poly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("poly: expected exact division failed");
    return *q;
}

Poly gcd_fold(const std::vector<Poly>& ps, const VarList& vars) {
    Poly g(vars);
    for (const auto& p : ps) {
        if (p.is_zero()) continue;
        g = gcd(g, p);
        if (g.is_constant()) break;
    }
    return g;
}

UPoly prem(UPoly a, const UPoly& b) {
    const Poly& lb = b.back();
    std::size_t db = b.size() - 1;
    while (!a.empty() && a.size() - 1 >= db) {
        Poly la = a.back();
        std::size_t k = a.size() - 1 - db;
        for (auto& c : a) c = c * lb;
        for (std::size_t i = 0; i <= db; ++i) a[i + k] -= la * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

// Removes both the polynomial content and the numeric content; without the latter
// pseudo-remainder coefficients grow exponentially.
UPoly primitive_part(const UPoly& u, const VarList& vars) {
    Poly c = gcd_fold(u, vars);
    UPoly r;
    for (const auto& x : u) r.push_back(c.is_constant() ? x : exact(x, c));
    mpz_class num = 0, den = 1;
    for (const auto& x : r) {
        if (x.is_zero()) continue;
        BigRational k = x.rational_content();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), k.raw().get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), k.raw().get_den_mpz_t());
    }
    if (num == 0 || (num == 1 && den == 1)) return r;
    BigRational scale = BigRational(num, den).inverse();
    for (auto& x : r) x = x.scaled(scale);
    return r;
}

Poly gcd_nomono(const Poly& a, const Poly& b) {
    const VarList& vars = a.vars();
    int n = a.nvars();
    // A variable present in only one argument cannot divide the gcd.
    for (int v = 0; v < n; ++v) {
        bool da = a.depends_on(v), dbv = b.depends_on(v);
        if (da && !dbv) {
            auto cs = a.coeffs_in(v);
            cs.push_back(b);
            return gcd_fold(cs, vars);
        }
        if (dbv && !da) {
            auto cs = b.coeffs_in(v);
            cs.push_back(a);
            return gcd_fold(cs, vars);
        }
    }
    int v = -1;
    unsigned best = ~0u;
    for (int i = 0; i < n; ++i) {
        unsigned d = std::max(a.degree_in(i), b.degree_in(i));
        if (d > 0 && d < best) {
            best = d;
            v = i;
        }
    }
    if (v < 0) return Poly(vars, BigRational(1));
    UPoly ua = a.coeffs_in(v), ub = b.coeffs_in(v);
    Poly ca = gcd_fold(ua, vars), cb = gcd_fold(ub, vars);
    Poly c = gcd(ca, cb);
    ua = primitive_part(ua, vars);
    ub = primitive_part(ub, vars);
    if (ua.size() < ub.size()) std::swap(ua, ub);
    while (true) {
        UPoly r = prem(ua, ub);
        if (r.empty()) break;
        if (r.size() == 1) {
            ub = UPoly{Poly(vars, BigRational(1))};
            break;
        }
        ua = std::move(ub);
        ub = primitive_part(r, vars);
    }
    Poly g = Poly::from_coeffs_in(v, primitive_part(ub, vars), vars);
    return (g * c).primitive();
}

}  // namespace

Poly gcd(const Poly& a0, const Poly& b0) {
    Poly a = a0, b = b0;
    if (a.vars()->empty() && !b.vars()->empty()) a = a.rebase(b.vars());
    if (b.vars()->empty() && !a.vars()->empty()) b = b.rebase(a.vars());
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    const VarList& vars = a.vars();
    if (a.is_constant() || b.is_constant()) return Poly(vars, BigRational(1));
    Monomial ma = a.monomial_content(), mb = b.monomial_content(), mc;
    for (int i = 0; i < kMaxVars; ++i) mc.e[i] = std::min(ma.e[i], mb.e[i]);
    Poly mono = Poly::monomial(vars, mc, BigRational(1));
    if (a.is_monomial() || b.is_monomial()) return mono;
    Poly ra = a, rb = b;
    if (ma.degree()) ra = exact(a, Poly::monomial(vars, ma, BigRational(1)));
    if (mb.degree()) rb = exact(b, Poly::monomial(vars, mb, BigRational(1)));
    if (ra.is_constant() || rb.is_constant()) return mono;
    if (ra.primitive() == rb.primitive()) return (ra.primitive() * mono).primitive();
    return (gcd_nomono(ra, rb) * mono).primitive();
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.vars());
    return exact(a * b, gcd(a, b)).primitive();
}

}  // namespace momenta
