#include <cctype>

#include "idexp/poly.hpp"

namespace idexp {

namespace {

struct Tok {
    enum Kind { Int, Ident, Op, End } kind;
    std::string text;
    int line, col;
};

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& str) : s(str) {}

    void advance(char c) {
        ++pos;
        if (c == '\n') { ++line; col = 1; } else ++col;
    }

    Tok next() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            advance(s[pos]);
        if (pos >= s.size()) return {Tok::End, "", line, col};
        int l = line, c = col;
        char ch = s[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string t;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                t += s[pos];
                advance(s[pos]);
            }
            return {Tok::Int, t, l, c};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string t;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                t += s[pos];
                advance(s[pos]);
            }
            return {Tok::Ident, t, l, c};
        }
        if (std::string("+-*/^()").find(ch) != std::string::npos) {
            advance(ch);
            return {Tok::Op, std::string(1, ch), l, c};
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
};

struct PolyParser {
    const Ring& ring;
    Lexer lex;
    Tok cur;

    PolyParser(const Ring& r, const std::string& text) : ring(r), lex(text) { cur = lex.next(); }

    void bump() { cur = lex.next(); }

    bool is_op(const char* o) const { return cur.kind == Tok::Op && cur.text == o; }

    Polynomial parse() {
        Polynomial p = expr();
        if (cur.kind != Tok::End)
            throw ParseError("trailing input after polynomial", cur.line, cur.col);
        return p;
    }

    Polynomial expr() {
        Polynomial acc = term();
        while (is_op("+") || is_op("-")) {
            bool plus = cur.text == "+";
            bump();
            Polynomial t = term();
            acc = plus ? acc + t : acc - t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (is_op("*") || is_op("/")) {
            bool mul = cur.text == "*";
            Tok op = cur;
            bump();
            Polynomial f = factor();
            if (mul) {
                acc = acc * f;
            } else {
                if (!f.is_constant() || f.is_zero())
                    throw ParseError("division only by nonzero field constants", op.line, op.col);
                acc = acc.scaled(ring.field().inverse(f.constant_value()));
            }
        }
        return acc;
    }

    Polynomial factor() {
        bool neg = false;
        while (is_op("-") || is_op("+")) {
            if (cur.text == "-") neg = !neg;
            bump();
        }
        Polynomial p = primary();
        if (is_op("^")) {
            Tok op = cur;
            bump();
            if (cur.kind != Tok::Int)
                throw ParseError("exponent must be a non-negative integer", op.line, op.col);
            unsigned long e = std::stoul(cur.text);
            bump();
            p = p.pow(e);
        }
        return neg ? -p : p;
    }

    Polynomial primary() {
        if (cur.kind == Tok::Int) {
            mpz_class n(cur.text);
            bump();
            return Polynomial::constant(ring, ring.field().from_rat(Rat(n)));
        }
        if (cur.kind == Tok::Ident) {
            std::string name = cur.text;
            Tok t = cur;
            bump();
            if (name == "lam" && ring.field().kind() == FieldKind::PrimeFunction)
                return Polynomial::constant(ring, ring.field().lambda());
            auto idx = ring.index_of(name);
            if (!idx) throw ParseError("unknown variable: " + name, t.line, t.col);
            return Polynomial::variable(ring, *idx);
        }
        if (is_op("(")) {
            bump();
            Polynomial p = expr();
            if (!is_op(")")) throw ParseError("expected ')'", cur.line, cur.col);
            bump();
            return p;
        }
        throw ParseError("expected polynomial term", cur.line, cur.col);
    }
};

}  // namespace

Polynomial parse_polynomial(const Ring& r, const std::string& text) {
    PolyParser p(r, text);
    return p.parse();
}

}  // namespace idexp
