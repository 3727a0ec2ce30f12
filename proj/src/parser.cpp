#include <cctype>

#include "pdwa/formula.hpp"

namespace pdwa {

namespace {

enum class Tok {
    End,
    Ident,
    Number,
    LParen,
    RParen,
    Comma,
    Dot,
    Star,
    Plus,
    Minus,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
};

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, column = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, column, msg); }

    char peek() const { return pos < src.size() ? src[pos] : '\0'; }

    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        return c;
    }

    Token next() {
        while (pos < src.size() && std::isspace((unsigned char)peek())) advance();
        Token t{Tok::End, "", line, column};
        if (pos >= src.size()) return t;
        char c = peek();
        if (std::isdigit((unsigned char)c)) {
            t.kind = Tok::Number;
            while (pos < src.size() && std::isdigit((unsigned char)peek())) t.text += advance();
            return t;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            t.kind = Tok::Ident;
            while (pos < src.size() &&
                   (std::isalnum((unsigned char)peek()) || peek() == '_' || peek() == '\''))
                t.text += advance();
            return t;
        }
        advance();
        switch (c) {
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case ',': t.kind = Tok::Comma; return t;
            case '.': t.kind = Tok::Dot; return t;
            case '*': t.kind = Tok::Star; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '&': t.kind = Tok::Amp; return t;
            case '|': t.kind = Tok::Pipe; return t;
            case '-':
                if (peek() == '>') {
                    advance();
                    t.kind = Tok::Arrow;
                } else {
                    t.kind = Tok::Minus;
                }
                return t;
            case '!':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Ne;
                } else {
                    t.kind = Tok::Bang;
                }
                return t;
            case '=': t.kind = Tok::Eq; return t;
            case '<':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Le;
                } else if (peek() == '-') {
                    advance();
                    if (peek() != '>') fail("expected '>' after '<-'");
                    advance();
                    t.kind = Tok::DArrow;
                } else {
                    t.kind = Tok::Lt;
                }
                return t;
            case '>':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Ge;
                } else {
                    t.kind = Tok::Gt;
                }
                return t;
        }
        throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
    }
};

struct RawTerm {
    LinearTerm hom;
    Int constant;
};

struct Parser {
    Lexer lex;
    Token cur;
    VarPool vars;

    explicit Parser(const std::string& s) : lex(s) { cur = lex.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(cur.line, cur.column, msg);
    }

    void bump() { cur = lex.next(); }

    bool at_keyword(const char* kw) const { return cur.kind == Tok::Ident && cur.text == kw; }

    bool is_keyword(const std::string& s) const {
        return s == "E" || s == "A" || s == "true" || s == "false" || s == "divides";
    }

    std::string expect_var() {
        if (cur.kind != Tok::Ident) fail("expected a variable name");
        if (is_keyword(cur.text)) fail("'" + cur.text + "' is a reserved word");
        std::string name = cur.text;
        bump();
        return name;
    }

    Fptr formula() {
        if (at_keyword("E") || at_keyword("A")) {
            Kind q = at_keyword("E") ? Kind::Exists : Kind::Forall;
            bump();
            std::vector<int> quantified;
            quantified.push_back(vars.intern(expect_var()));
            while (cur.kind == Tok::Comma) {
                bump();
                quantified.push_back(vars.intern(expect_var()));
            }
            if (cur.kind != Tok::Dot) fail("expected '.' after quantified variables");
            bump();
            Fptr body = formula();
            for (auto it = quantified.rbegin(); it != quantified.rend(); ++it)
                body = mk_quant(q, *it, body);
            return body;
        }
        return iff();
    }

    Fptr iff() {
        Fptr lhs = imp();
        while (cur.kind == Tok::DArrow) {
            bump();
            lhs = mk_iff(lhs, imp());
        }
        return lhs;
    }

    Fptr imp() {
        Fptr lhs = disj();
        if (cur.kind == Tok::Arrow) {
            bump();
            return mk_implies(lhs, imp());
        }
        return lhs;
    }

    Fptr disj() {
        Fptr lhs = conj();
        while (cur.kind == Tok::Pipe) {
            bump();
            lhs = mk_or(lhs, conj());
        }
        return lhs;
    }

    Fptr conj() {
        Fptr lhs = unary();
        while (cur.kind == Tok::Amp) {
            bump();
            lhs = mk_and(lhs, unary());
        }
        return lhs;
    }

    Fptr unary() {
        if (cur.kind == Tok::Bang) {
            bump();
            return mk_not(unary());
        }
        if (cur.kind == Tok::LParen) {
            bump();
            Fptr inner = formula();
            if (cur.kind != Tok::RParen) fail("expected ')'");
            bump();
            return inner;
        }
        return atom();
    }

    Fptr atom() {
        if (at_keyword("true")) {
            bump();
            return mk_true();
        }
        if (at_keyword("false")) {
            bump();
            return mk_false();
        }
        // "INT divides term" needs lookahead past the number
        if (cur.kind == Tok::Number) {
            Token num = cur;
            bump();
            if (at_keyword("divides")) {
                Int d(num.text);
                if (d < 2)
                    throw ParseError(num.line, num.column, "divisor must be at least 2");
                bump();
                RawTerm t = term();
                return normalize_div(d, t.hom, t.constant);
            }
            RawTerm lhs = term_after_first(Int(num.text), false);
            return finish_cmp(lhs);
        }
        RawTerm lhs = term();
        return finish_cmp(lhs);
    }

    Fptr finish_cmp(const RawTerm& lhs) {
        Rel rel;
        switch (cur.kind) {
            case Tok::Eq: rel = Rel::Eq; break;
            case Tok::Ne: rel = Rel::Ne; break;
            case Tok::Lt: rel = Rel::Lt; break;
            case Tok::Le: rel = Rel::Le; break;
            case Tok::Gt: rel = Rel::Gt; break;
            case Tok::Ge: rel = Rel::Ge; break;
            default: fail("expected a relation symbol"); return nullptr;
        }
        bump();
        RawTerm rhs = term();
        return normalize_cmp(lhs.hom, lhs.constant, rel, rhs.hom, rhs.constant);
    }

    // addend := INT | var | INT "*" var ; sign applies to the addend just read
    void addend(RawTerm& acc, bool negative) {
        Int sign = negative ? -1 : 1;
        if (cur.kind == Tok::Number) {
            Int k(cur.text);
            bump();
            if (cur.kind == Tok::Star) {
                bump();
                acc.hom.add(vars.intern(expect_var()), sign * k);
            } else {
                acc.constant += sign * k;
            }
            return;
        }
        acc.hom.add(vars.intern(expect_var()), sign);
    }

    RawTerm term() {
        bool neg = false;
        if (cur.kind == Tok::Minus) {
            neg = true;
            bump();
        }
        RawTerm acc;
        acc.constant = 0;
        addend(acc, neg);
        return term_rest(acc);
    }

    // continue a term whose first addend was the already-consumed number
    RawTerm term_after_first(const Int& first, bool negative) {
        RawTerm acc;
        acc.constant = negative ? Int(-first) : first;
        if (cur.kind == Tok::Star) {
            bump();
            acc.constant = 0;
            acc.hom.add(vars.intern(expect_var()), negative ? Int(-first) : first);
        }
        return term_rest(acc);
    }

    RawTerm term_rest(RawTerm acc) {
        while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
            bool neg = cur.kind == Tok::Minus;
            bump();
            addend(acc, neg);
        }
        return acc;
    }
};

}  // namespace

Parsed parse(const std::string& text) {
    Parser p(text);
    Fptr phi = p.formula();
    if (p.cur.kind != Tok::End)
        throw ParseError(p.cur.line, p.cur.column, "unexpected trailing input");
    return {phi, std::move(p.vars)};
}

}  // namespace pdwa
