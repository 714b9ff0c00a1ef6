#include "momenta/big_rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace momenta {

BigRational::BigRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

BigRational BigRational::parse(std::string_view s) {
    std::string t(s);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t b = 0;
    while (b < t.size() && std::isspace(static_cast<unsigned char>(t[b]))) ++b;
    t = t.substr(b);
    if (t.empty()) throw std::invalid_argument("rational: empty string");
    auto check_int = [&](const std::string& x) {
        std::size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (i == x.size()) throw std::invalid_argument("rational: bad number '" + t + "'");
        for (; i < x.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(x[i]))) throw std::invalid_argument("rational: bad number '" + t + "'");
    };
    auto to_z = [&](std::string x) {
        check_int(x);
        if (x[0] == '+') x = x.substr(1);
        return mpz_class(x, 10);
    };
    if (auto slash = t.find('/'); slash != std::string::npos)
        return BigRational(to_z(t.substr(0, slash)), to_z(t.substr(slash + 1)));
    if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        check_int(ip);
        check_int(fp);
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        mpz_class num = mpz_class(ip, 10) * den + mpz_class(fp, 10);
        return BigRational(neg ? mpz_class(-num) : num, den);
    }
    return BigRational(to_z(t), 1);
}

BigRational BigRational::from_double(double d) {
    if (!std::isfinite(d)) throw std::domain_error("rational: non-finite double");
    return BigRational(mpq_class(d));
}

std::string BigRational::to_string() const { return v_.get_str(10); }

BigRational BigRational::inverse() const {
    if (is_zero()) throw std::domain_error("rational: division by zero");
    return BigRational(mpq_class(1 / v_));
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw std::domain_error("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

std::size_t BigRational::hash() const {
    auto limb = [](const mpz_class& z) -> std::size_t {
        return mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) * (sgn(z) < 0 ? 31 : 1) : 0;
    };
    return limb(v_.get_num()) * 1000003u ^ limb(v_.get_den());
}

BigRational pow(const BigRational& b, unsigned e) {
    BigRational r(1), x = b;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

}  // namespace momenta
