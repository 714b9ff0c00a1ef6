#include "momenta/rat_func.hpp"

namespace momenta {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("ratfunc: expected exact division failed");
    return *q;
}

// Scale num and den jointly to integer coefficients with unit content and
// positive leading denominator coefficient.
void scale_canonical(Poly& num, Poly& den) {
    BigRational cn = num.is_zero() ? BigRational(0) : num.rational_content();
    BigRational cd = den.rational_content();
    // joint content = gcd(num contents) over lcm(dens); combine the two pieces
    mpz_class gnum, lden;
    if (cn.is_zero()) {
        gnum = cd.num();
        lden = cd.den();
    } else {
        mpz_gcd(gnum.get_mpz_t(), cn.raw().get_num_mpz_t(), cd.raw().get_num_mpz_t());
        mpz_lcm(lden.get_mpz_t(), cn.raw().get_den_mpz_t(), cd.raw().get_den_mpz_t());
    }
    BigRational c(gnum, lden);
    if (den.lead().coeff.sign() < 0) c = -c;
    if (!c.is_one()) {
        BigRational inv = c.inverse();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
}

}  // namespace

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DenominatorZero("ratfunc: zero denominator");
    if (num_.vars()->empty() && !den_.vars()->empty()) num_ = num_.rebase(den_.vars());
    if (den_.vars()->empty() && !num_.vars()->empty()) den_ = den_.rebase(num_.vars());
    if (num_.is_zero()) {
        den_ = Poly(den_.vars(), BigRational(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
    }
    scale_canonical(num_, den_);
}

BigRational RatFunc::constant_value() const {
    if (!is_constant()) throw std::logic_error("ratfunc: not a constant");
    return num_.constant_term() / den_.constant_term();
}

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    if (a.den_.is_constant() || b.den_.is_constant())
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly g = gcd(a.den_, b.den_);
    Poly ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
    return RatFunc(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.vars()), Poly(a.vars(), BigRational(1)));
    Poly g1 = a.den_.is_constant() ? Poly(a.vars(), BigRational(1)) : gcd(b.num_, a.den_);
    Poly g2 = b.den_.is_constant() ? Poly(a.vars(), BigRational(1)) : gcd(a.num_, b.den_);
    Poly n = exact_div(a.num_, g2) * exact_div(b.num_, g1);
    Poly d = exact_div(a.den_, g1) * exact_div(b.den_, g2);
    scale_canonical(n, d);
    return RatFunc(RatFunc::Raw{}, std::move(n), std::move(d));
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DenominatorZero("ratfunc: inverse of zero");
    Poly n = den_, d = num_;
    scale_canonical(n, d);
    return RatFunc(Raw{}, std::move(n), std::move(d));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(unsigned e) const {
    Poly n = num_.pow(e), d = den_.pow(e);
    if (n.is_zero()) return *this;
    scale_canonical(n, d);
    return RatFunc(Raw{}, std::move(n), std::move(d));
}

BigRational RatFunc::eval(const std::vector<BigRational>& point) const {
    BigRational d = den_.eval(point);
    if (d.is_zero()) throw DenominatorZero("ratfunc: denominator vanishes at evaluation point");
    return num_.eval(point) / d;
}

BigRational RatFunc::eval(const std::map<std::string, BigRational>& point) const {
    std::vector<BigRational> p;
    for (const auto& name : *vars()) {
        auto it = point.find(name);
        if (it == point.end()) throw std::invalid_argument("ratfunc: no value for variable '" + name + "'");
        p.push_back(it->second);
    }
    return eval(p);
}

RatFunc RatFunc::substitute(int var, const BigRational& value) const {
    Poly d = den_.substitute(var, value);
    if (d.is_zero()) throw DenominatorZero("ratfunc: denominator vanishes after substitution");
    return RatFunc(num_.substitute(var, value), d);
}

RatFunc RatFunc::rebase(const VarList& target) const {
    return RatFunc(Raw{}, num_.rebase(target), den_.rebase(target));
}

std::string RatFunc::to_string() const {
    if (den_.is_constant() && den_.constant_term().is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace momenta
