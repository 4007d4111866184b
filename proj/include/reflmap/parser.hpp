#ifndef REFLMAP_PARSER_HPP
#define REFLMAP_PARSER_HPP

#include <cctype>
#include <memory>
#include <string>
#include <utility>

#include "reflmap/poly.hpp"

namespace reflmap {

// Recursive-descent parser for the shared expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' natural)?
//   base   := rational | 'z' | variable | '(' expr ')'
// Multiplication is always explicit. 'z' denotes zeta_N unless a variable
// of that name is declared. Exponents of z are reduced mod N.
class ExprParser {
public:
    ExprParser(std::string text, CtxPtr ctx, FieldPtr field)
        : text_(std::move(text)), ctx_(std::move(ctx)), field_(std::move(field)) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { ++pos_; neg = true; }
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') { ++pos_; acc = acc + term(); }
            else if (c == '-') { ++pos_; acc = acc - term(); }
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') { ++pos_; acc = acc * factor(); }
            else break;
        }
        return acc;
    }

    Poly factor() {
        Poly b = base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            long e = natural();
            Poly acc = Poly::one(ctx_, field_);
            // exponents stay small; plain repeated multiplication
            Poly sq = b;
            long k = e;
            while (k > 0) {
                if (k & 1) acc = acc * sq;
                k >>= 1;
                if (k) sq = sq * sq;
            }
            return acc;
        }
        return b;
    }

    Poly base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Poly::constant(ctx_, field_, CycloElem::rational(field_, rational()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            std::string id = identifier();
            int vi = ctx_->find(id);
            if (vi >= 0) return Poly::variable(ctx_, field_, static_cast<std::size_t>(vi));
            if (id == "z") {
                // zeta_N; a following '^' exponent is reduced mod N
                skip_ws();
                if (peek() == '^') {
                    ++pos_;
                    long e = natural();
                    return Poly::constant(ctx_, field_, CycloElem::zeta(field_, e));
                }
                return Poly::constant(ctx_, field_, CycloElem::zeta(field_, 1));
            }
            pos_ = start;
            fail("unknown variable '" + id + "'");
        }
        fail("expected a rational, variable, 'z' or '('");
        return {};
    }

    Rat rational() {
        std::string num = digits();
        skip_ws();
        if (peek() == '/') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;
                fail("expected positive integer denominator");
            }
            std::string den = digits();
            if (den == "0") fail("zero denominator");
            return rat_from_string(num + "/" + den);
        }
        return rat_from_string(num);
    }

    long natural() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a natural number exponent");
        return std::stol(digits());
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

    std::string text_;
    CtxPtr ctx_;
    FieldPtr field_;
    std::size_t pos_ = 0;
};

inline Poly parse_poly(const std::string& text, const CtxPtr& ctx, const FieldPtr& field) {
    return ExprParser(text, ctx, field).parse();
}

inline CycloElem parse_cyclo(const std::string& text, const FieldPtr& field) {
    static const CtxPtr dummy = std::make_shared<VarContext>(
        std::vector<std::string>{"__none"}, std::vector<VarRole>{VarRole::parameter});
    Poly p = ExprParser(text, dummy, field).parse();
    return p.constant_value();
}

} // namespace reflmap

#endif
