#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "momenta/big_rational.hpp"

namespace momenta {

constexpr int kMaxVars = 4;

using VarList = std::shared_ptr<const std::vector<std::string>>;
VarList make_vars(std::vector<std::string> names);

struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool divides(const Monomial& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
        return r;
    }
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
        return r;
    }
    bool operator==(const Monomial&) const = default;
};

// Graded lexicographic; true when a ranks above b.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

// Sparse multivariate polynomial over Q. Terms are kept sorted by
// decreasing grlex order with no zero coefficients.
class Poly {
public:
    struct Term {
        Monomial mono;
        BigRational coeff;
        bool operator==(const Term&) const = default;
    };

    Poly() : vars_(empty_vars()) {}
    explicit Poly(VarList vars) : vars_(std::move(vars)) {}
    Poly(VarList vars, const BigRational& c);
    static Poly variable(VarList vars, int index);
    static Poly monomial(VarList vars, const Monomial& m, const BigRational& c);

    const VarList& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_->size()); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0); }
    bool is_monomial() const { return terms_.size() == 1; }
    BigRational constant_term() const;
    const Term& lead() const { return terms_.front(); }
    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
    unsigned degree_in(int var) const;
    bool depends_on(int var) const { return degree_in(var) > 0; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const BigRational& c) const;
    Poly times_monomial(const Monomial& m, const BigRational& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    BigRational eval(const std::vector<BigRational>& point) const;
    Poly substitute(int var, const BigRational& value) const;
    // Coefficients as a polynomial in `var`, indexed by degree.
    std::vector<Poly> coeffs_in(int var) const;
    static Poly from_coeffs_in(int var, const std::vector<Poly>& cs, const VarList& vars);
    Poly derivative(int var) const;

    std::optional<Poly> divide_exact(const Poly& d) const;
    // Largest monomial dividing every term.
    Monomial monomial_content() const;
    // Positive rational c with this = c * (integer polynomial with unit content).
    BigRational rational_content() const;
    // Same polynomial scaled to integer coefficients, unit content, positive lead.
    Poly primitive() const;

    std::string to_string() const;
    std::size_t hash() const;

    // Re-express over a variable list containing all of this one's variables.
    Poly rebase(const VarList& target) const;

    static VarList empty_vars();

private:
    friend class PolyBuilder;
    void check_vars(const Poly& o);
    VarList vars_;
    std::vector<Term> terms_;
};

// Accumulates terms in arbitrary order, then sorts and merges once.
class PolyBuilder {
public:
    explicit PolyBuilder(VarList vars) : vars_(std::move(vars)) {}
    void add(const Monomial& m, const BigRational& c) {
        if (!c.is_zero()) terms_.push_back({m, c});
    }
    void reserve(std::size_t n) { terms_.reserve(n); }
    Poly build();

private:
    VarList vars_;
    std::vector<Poly::Term> terms_;
};

Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

}  // namespace momenta
