#include "momenta/expr.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace momenta {

namespace {

class Parser {
public:
    Parser(std::string_view s, const SymbolResolver& r) : s_(s), resolve_(r) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression: " + msg + " at offset " + std::to_string(pos_) + " in '" +
                                    std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    RatFunc expr() {
        RatFunc v;
        char c = peek();
        if (c == '-' || c == '+') {
            ++pos_;
            v = term();
            if (c == '-') v = -v;
        } else {
            v = term();
        }
        while (true) {
            c = peek();
            if (c == '+') {
                ++pos_;
                v = v + term();
            } else if (c == '-') {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    RatFunc term() {
        RatFunc v = power();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * power();
            } else if (c == '/') {
                ++pos_;
                RatFunc d = power();
                if (d.is_zero()) fail("division by zero");
                v = v / d;
            } else if (c == '(' || ident_start(c) || std::isdigit(static_cast<unsigned char>(c))) {
                v = v * power();
            } else {
                return v;
            }
        }
    }

    RatFunc power() {
        RatFunc b = atom();
        if (peek() == '^') {
            ++pos_;
            skip();
            bool braced = pos_ < s_.size() && s_[pos_] == '{';
            if (braced) ++pos_;
            std::size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) fail("expected integer exponent");
            unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(st, pos_ - st))));
            if (braced) {
                if (pos_ >= s_.size() || s_[pos_] != '}') fail("expected '}'");
                ++pos_;
            }
            return b.pow(e);
        }
        return b;
    }

    RatFunc atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t st = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            return RatFunc(Poly::empty_vars(), BigRational::parse(s_.substr(st, pos_ - st)));
        }
        if (ident_start(c)) {
            std::size_t st = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
            return resolve_(std::string(s_.substr(st, pos_ - st)));
        }
        fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end");
    }

    std::string_view s_;
    const SymbolResolver& resolve_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expression(std::string_view text, const SymbolResolver& resolve) { return Parser(text, resolve).parse(); }

SymbolResolver variable_resolver(const VarList& vars) {
    return [vars](const std::string& name) {
        auto it = std::find(vars->begin(), vars->end(), name);
        if (it == vars->end()) throw std::invalid_argument("expression: unknown symbol '" + name + "'");
        return RatFunc::variable(vars, static_cast<int>(it - vars->begin()));
    };
}

}  // namespace momenta
