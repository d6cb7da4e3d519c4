#include "tensorcalc/parse.hpp"

#include <cctype>

namespace tensorcalc::sym {

namespace {

class Parser {
public:
    explicit Parser(const std::string &s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (p_ < s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    const std::string &s_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, p_ + 1); }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    template <class F>
    Expr guarded(std::size_t at, F f) {
        try {
            return f();
        } catch (const MathError &err) {
            throw ParseError(err.what(), at + 1);
        }
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (eat('+'))
                terms.push_back(term());
            else if (eat('-'))
                terms.push_back(-term());
            else
                break;
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> fs{unary()};
        for (;;) {
            skip();
            std::size_t at = p_;
            if (eat('*')) {
                fs.push_back(unary());
            } else if (eat('/')) {
                Expr r = unary();
                if (r.is_zero_literal()) throw ParseError("division by zero", at + 1);
                fs.push_back(guarded(at, [&] { return Expr::power(r, Expr(-1)); }));
            } else {
                break;
            }
        }
        if (fs.size() == 1) return fs[0];
        return Expr::product(std::move(fs));
    }

    Expr unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Expr power() {
        Expr b = primary();
        skip();
        std::size_t at = p_;
        if (eat('^')) {
            Expr ex = unary();
            if (!ex.is_number()) throw ParseError("exponent must be a rational constant", at + 1);
            return guarded(at, [&] { return Expr::power(b, ex); });
        }
        return b;
    }

    Expr primary() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of input");
        char c = s_[p_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (p_ < s_.size() && s_[p_] == '.') fail("decimal numbers are not supported");
            return Expr::number(mpq_class(mpz_class(s_.substr(st, p_ - st))));
        }
        if (c == '%') {
            std::size_t st = p_++;
            while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) ++p_;
            std::string tok = s_.substr(st, p_ - st);
            if (tok == "%i") return Expr::imag();
            if (tok == "%pi") return Expr::symbol("%pi");
            p_ = st;
            fail("unknown constant " + tok);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            std::string id = s_.substr(st, p_ - st);
            skip();
            if (p_ < s_.size() && s_[p_] == '(') {
                if (!is_known_function(id)) {
                    p_ = st;
                    fail("unknown function '" + id + "'");
                }
                ++p_;
                Expr a = expr();
                if (eat(',')) fail("function '" + id + "' takes one argument");
                if (!eat(')')) fail("expected ')'");
                return guarded(st, [&] { return Expr::func(id, a); });
            }
            return Expr::symbol(id);
        }
        if (c == '(') {
            ++p_;
            Expr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

} // namespace

Expr parse(const std::string &text) { return Parser(text).run(); }

} // namespace tensorcalc::sym
