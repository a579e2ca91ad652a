#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcap/polynomial.hpp"

namespace varcap {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Recursive-descent parser for the polynomial grammar:
//
//   expression := ['-'] term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := rational | 'i' | var | var '^' uint | '(' expression ')'
//   rational   := int | int '/' uint
//
// Whitespace is ignored; implicit multiplication is not allowed. The literal
// 'i' is reserved and may not appear as a variable name.
class PolynomialParser {
  public:
    PolynomialParser(std::string text, std::vector<std::string> variables)
        : text_(std::move(text)), vars_(std::move(variables)) {
        for (const auto& v : vars_)
            if (v == "i")
                throw std::invalid_argument("variable list may not shadow the literal 'i'");
    }

    Polynomial parse() {
        pos_ = 0;
        Polynomial p = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

  private:
    Polynomial expression() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = expression();
            skip_ws();
            expect(')');
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("expected a factor");
    }

    Polynomial rational_literal() {
        std::string num = digits();
        std::string lit = num;
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t den_pos = pos_;
            std::string den = digits();
            if (Rational(den) == 0) fail_at("zero denominator literal", den_pos);
            lit += "/" + den;
        }
        return Polynomial::constant(vars_, GaussianRational(rational_from_string(lit)));
    }

    Polynomial identifier() {
        std::size_t start = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += text_[pos_++];
        if (name == "i") return Polynomial::constant(vars_, GaussianRational::i());
        for (std::size_t idx = 0; idx < vars_.size(); ++idx) {
            if (vars_[idx] == name) {
                Polynomial v = Polynomial::variable(vars_, idx);
                skip_ws();
                if (peek() == '^') {
                    ++pos_;
                    skip_ws();
                    if (!std::isdigit(static_cast<unsigned char>(peek())))
                        fail("expected exponent");
                    int exp = std::stoi(digits());
                    ExponentVector a(vars_.size());
                    a[idx] = exp;
                    return Polynomial::monomial(vars_, a);
                }
                return v;
            }
        }
        fail_at("unknown identifier '" + name + "'", start);
    }

    std::string digits() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        std::string s;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            s += text_[pos_++];
        return s;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
        throw ParseError(msg, pos);
    }

    std::string text_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(const std::string& text,
                                   const std::vector<std::string>& variables) {
    return PolynomialParser(text, variables).parse();
}

}  // namespace varcap
