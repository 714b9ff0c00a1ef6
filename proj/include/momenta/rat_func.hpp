#pragma once

#include <map>
#include <string>

#include "momenta/poly.hpp"

namespace momenta {

// Quotient of coprime polynomials. The normal form has integer coefficients
// with joint content 1 and a positive leading denominator coefficient, so
// equal functions compare equal structurally.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::empty_vars(), BigRational(1)) {}
    explicit RatFunc(const Poly& p) : RatFunc(p, Poly(p.vars(), BigRational(1))) {}
    RatFunc(const VarList& vars, const BigRational& c) : RatFunc(Poly(vars, c)) {}
    RatFunc(const Poly& num, const Poly& den);  // normalizes

    static RatFunc variable(const VarList& vars, int index) { return RatFunc(Poly::variable(vars, index)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarList& vars() const { return num_.vars()->empty() ? den_.vars() : num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    BigRational constant_value() const;  // requires is_constant()

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    RatFunc inverse() const;
    RatFunc pow(unsigned e) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    // Throws DenominatorZero when the denominator vanishes at the point.
    BigRational eval(const std::vector<BigRational>& point) const;
    BigRational eval(const std::map<std::string, BigRational>& point) const;
    RatFunc substitute(int var, const BigRational& value) const;
    RatFunc rebase(const VarList& target) const;

    // "num" or "(num)/(den)".
    std::string to_string() const;

private:
    struct Raw {};
    RatFunc(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
    Poly num_, den_;
};

struct DenominatorZero : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace momenta
