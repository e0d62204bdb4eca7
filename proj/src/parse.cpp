#include "detk/parse.hpp"

#include <cctype>

namespace detk {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    std::string_view text_;
    const VarList& vars_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    Polynomial expr() {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (accept('^')) {
            unsigned e = parse_uint();
            b = b.pow(e);
        }
        return b;
    }

    Polynomial base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    unsigned parse_uint() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a non-negative integer");
        unsigned long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (v > 1'000'000) fail("exponent too large");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    BigInt parse_bigint() {
        BigInt v = 0;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected digits");
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    Polynomial rational_literal() {
        BigInt num = parse_bigint();
        BigInt den = 1;
        // '/' only occurs inside rational literals; the grammar has no
        // division operator.
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            skip_ws();
            den = parse_bigint();
            if (den == 0) fail("zero denominator");
        }
        return Polynomial::constant(vars_, Rational(num, den));
    }

    Polynomial identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        for (std::size_t i = 0; i < vars_->size(); ++i)
            if ((*vars_)[i] == name) return Polynomial::variable(vars_, i);
        pos_ = start;
        fail("unknown identifier '" + name + "'");
    }
};

} // namespace

Polynomial parse_poly(std::string_view text, const VarList& vars) {
    return Parser(text, vars).run();
}

} // namespace detk
