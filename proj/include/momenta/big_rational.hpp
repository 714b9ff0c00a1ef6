#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace momenta {

class BigRational {
public:
    BigRational() = default;
    BigRational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    BigRational(const mpz_class& num, const mpz_class& den);
    explicit BigRational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p/q", integers, and finite decimals such as "-0.10".
    static BigRational parse(std::string_view s);
    // Exact binary value of a finite double.
    static BigRational from_double(double d);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string to_string() const;

    BigRational abs() const { return BigRational(::abs(v_)); }
    BigRational inverse() const;

    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    BigRational operator-() const { return BigRational(mpq_class(-v_)); }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    std::size_t hash() const;

private:
    mpq_class v_;
};

BigRational pow(const BigRational& b, unsigned e);

inline std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

}  // namespace momenta

template <>
struct std::hash<momenta::BigRational> {
    std::size_t operator()(const momenta::BigRational& r) const noexcept { return r.hash(); }
};
