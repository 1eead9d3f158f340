#include "polyinv/parse.hpp"

#include "polyinv/errors.hpp"

#include <cctype>
#include <string>

namespace polyinv {

namespace {

class Parser {
public:
    Parser(std::string_view text, const Ctx& ctx, std::size_t line, std::size_t col_offset)
        : s_(text), ctx_(ctx), line_(line), off_(col_offset) {}

    Polynomial run() {
        skip_ws();
        if (pos_ == s_.size()) fail("empty expression");
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, off_ + pos_ + 1); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            if (accept('*'))
                acc = acc * unary();
            else if (accept('/')) {
                std::size_t at = pos_;
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division is only allowed by a nonzero constant");
                }
                acc = acc * (Rational(1) / d.constant_term());
            } else
                return acc;
        }
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a non-negative integer exponent");
            std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 6) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ == s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Polynomial::constant(ctx_, Rational(Integer(std::string(s_.substr(start, pos_ - start)), 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto idx = ctx_->index_of(name);
            if (!idx) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Polynomial::variable(ctx_, *idx);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    const Ctx& ctx_;
    std::size_t line_;
    std::size_t off_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const Ctx& ctx, std::size_t line, std::size_t column_offset) {
    return Parser(text, ctx, line, column_offset).run();
}

}  // namespace polyinv
