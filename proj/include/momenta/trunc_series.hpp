#pragma once

#include <map>
#include <string>
#include <vector>

#include "momenta/rat_func.hpp"

namespace momenta {

// Power series in g truncated after g^K.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int K) : c_(K + 1, BigRational(0)) {}
    TruncSeries(int K, std::vector<BigRational> coeffs);
    static TruncSeries constant(int K, const BigRational& c);
    static TruncSeries g(int K);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigRational>& coeffs() const { return c_; }
    const BigRational& operator[](int k) const { return c_[k]; }
    BigRational& operator[](int k) { return c_[k]; }

    // Index of the first nonzero coefficient, or order()+1 when all vanish.
    int valuation() const;
    TruncSeries truncated(int K) const;

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    TruncSeries scaled(const BigRational& c) const;
    // Requires a nonzero constant term.
    TruncSeries inverse() const;
    // Multiplies by g^-k; the first k coefficients must vanish. Order drops by k.
    TruncSeries shift_down(int k) const;
    TruncSeries integral() const;  // constant of integration 0, order +1
    TruncSeries derivative() const;

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "g") const;

private:
    std::vector<BigRational> c_;
};

struct PoleAtZero : std::domain_error {
    using std::domain_error::domain_error;
};

// Substitutes generator series into f (g stays the series variable) and
// returns the Laurent-exact quotient truncated at order K.
TruncSeries series_compose(const RatFunc& f, const std::map<std::string, TruncSeries>& subst, int K);
TruncSeries poly_to_series(const Poly& p, const std::map<std::string, TruncSeries>& subst, int K);

BigRational eval_rational(const RatFunc& f, const std::map<std::string, BigRational>& point);

}  // namespace momenta
