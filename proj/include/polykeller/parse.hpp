#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "polynomial.hpp"
#include "variable_frame.hpp"

namespace polykeller {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

namespace detail {

// Grammar:
//   expression := term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := rational | variable ('^' nat)? | '(' expression ')'
//   rational   := int ('/' posint)?
// with signed integer literals; a unary '-' before any factor is accepted as
// well. Whitespace is insignificant. Exponents are non-negative decimals.
class PolyParser {
public:
    PolyParser(const std::string& text, const VariableFrame& frame) : s_(text), frame_(frame) {}

    Polynomial run() {
        Polynomial r = expression();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected trailing input", pos_);
        return r;
    }

private:
    Polynomial expression() {
        bool neg = false;
        skip_ws();
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        Polynomial r = term();
        if (neg)
            r = -r;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                r += term();
            } else if (c == '-') {
                ++pos_;
                r -= term();
            } else {
                break;
            }
        }
        return r;
    }

    Polynomial term() {
        Polynomial r = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                r = r * factor();
            } else {
                break;
            }
        }
        return r;
    }

    Polynomial factor() {
        skip_ws();
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            Polynomial r = expression();
            skip_ws();
            if (peek() != ')')
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return rational_literal(false);
        if (std::isalpha(static_cast<unsigned char>(c)))
            return variable_factor();
        throw ParseError("expected rational, variable or '('", pos_);
    }

    Polynomial rational_literal(bool negative) {
        Integer num = nat_integer();
        Integer den(1);
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            den = nat_integer();
            if (den == 0)
                throw ParseError("zero denominator", at);
        }
        Rational q = rational_of(negative ? Integer(-num) : num, den);
        return Polynomial::constant(frame_.arity(), q);
    }

    Polynomial variable_factor() {
        std::size_t start = pos_;
        std::string name;
        name += s_[pos_++];
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            name += s_[pos_++];
        int idx = frame_.index_of(name);
        if (idx < 0)
            throw ParseError("unknown variable '" + name + "'", start);
        int e = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("exponent must be a non-negative integer", pos_);
            Integer n = nat_integer();
            if (n > 4096)
                throw ParseError("exponent too large", pos_);
            e = static_cast<int>(n.get_si());
        }
        return pow(Polynomial::variable(frame_.arity(), idx), e);
    }

    Integer nat_integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected digits", pos_);
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        return Integer(digits);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    const std::string& s_;
    const VariableFrame& frame_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Polynomial parse_polynomial(const std::string& text, const VariableFrame& frame) {
    return detail::PolyParser(text, frame).run();
}

/// Deterministic printer: terms in descending graded-lex order. The output
/// re-parses to the same polynomial (round-trip identity).
inline std::string print_polynomial(const Polynomial& f, const VariableFrame& frame) {
    if (frame.arity() != f.arity())
        throw std::invalid_argument("print: frame arity mismatch");
    if (f.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const Monomial& m = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            // a leading negative coefficient is printed as a signed literal
            // ("-1*x1", "-3/2*x2") so the text stays inside the grammar
            if (neg && m.is_one()) {
                out << rational_str(c);
                first = false;
                continue;
            }
            if (neg)
                out << rational_str(c) << "*";
            else if (m.is_one() || c != 1)
                out << rational_str(c) << (m.is_one() ? "" : "*");
        } else {
            out << (neg ? " - " : " + ");
            Rational a = abs(c);
            if (m.is_one() || a != 1)
                out << rational_str(a) << (m.is_one() ? "" : "*");
        }
        bool first_var = true;
        for (int i = 0; i < m.arity(); ++i) {
            int e = m.exponent(i);
            if (e == 0)
                continue;
            if (!first_var)
                out << "*";
            out << frame.name(i);
            if (e > 1)
                out << "^" << e;
            first_var = false;
        }
        first = false;
    }
    return out.str();
}

} // namespace polykeller
