#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsolve/poly.hpp"

namespace wsolve {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

struct ParsedSystem {
    PolySystem system;
    std::vector<std::string> var_names;
};

namespace detail {

enum class TokKind { Ident, Number, Imag, Plus, Minus, Star, Caret, LParen, RParen, Semi, Colon, Comma, End };

struct Token {
    TokKind kind;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space_and_comments();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = TokKind::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            if (pos_ < src_.size() && src_[pos_] == '.') {
                bump();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                std::size_t save = pos_;
                bump();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
                } else {
                    pos_ = save; // the 'e' belongs to an identifier, not this number
                }
            }
            tok_.text = src_.substr(start, pos_ - start);
            tok_.value = std::strtod(tok_.text.c_str(), nullptr);
            // numeric literal directly followed by a lone 'i' is imaginary
            if (pos_ < src_.size() && src_[pos_] == 'i' &&
                (pos_ + 1 >= src_.size() ||
                 (!std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) && src_[pos_ + 1] != '_'))) {
                bump();
                tok_.kind = TokKind::Imag;
            } else {
                tok_.kind = TokKind::Number;
            }
            return;
        }
        switch (c) {
            case '+': tok_.kind = TokKind::Plus; break;
            case '-': tok_.kind = TokKind::Minus; break;
            case '*': tok_.kind = TokKind::Star; break;
            case '^': tok_.kind = TokKind::Caret; break;
            case '(': tok_.kind = TokKind::LParen; break;
            case ')': tok_.kind = TokKind::RParen; break;
            case ';': tok_.kind = TokKind::Semi; break;
            case ':': tok_.kind = TokKind::Colon; break;
            case ',': tok_.kind = TokKind::Comma; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        tok_.text = std::string(1, c);
        bump();
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class SystemParser {
public:
    explicit SystemParser(const std::string& src) : lex_(src) {}

    ParsedSystem run() {
        parse_header();
        ParsedSystem out;
        out.var_names = names_;
        out.system = PolySystem(static_cast<int>(names_.size()));
        while (lex_.peek().kind != TokKind::End) {
            Polynomial p = parse_expr();
            expect(TokKind::Semi, "';'");
            out.system.push(std::move(p));
        }
        return out;
    }

private:
    void parse_header() {
        Token t = lex_.take();
        if (t.kind != TokKind::Ident || t.text != "vars")
            throw ParseError("expected 'vars' header", t.line, t.col);
        expect(TokKind::Colon, "':'");
        for (;;) {
            Token name = lex_.take();
            if (name.kind != TokKind::Ident)
                throw ParseError("expected variable name", name.line, name.col);
            if (index_.count(name.text))
                throw ParseError("duplicate variable '" + name.text + "'", name.line, name.col);
            index_[name.text] = static_cast<int>(names_.size());
            names_.push_back(name.text);
            Token sep = lex_.take();
            if (sep.kind == TokKind::Semi) break;
            if (sep.kind != TokKind::Comma)
                throw ParseError("expected ',' or ';' in variable list", sep.line, sep.col);
        }
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        for (;;) {
            TokKind k = lex_.peek().kind;
            if (k == TokKind::Plus) {
                lex_.take();
                acc = acc + parse_term();
            } else if (k == TokKind::Minus) {
                lex_.take();
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (lex_.peek().kind == TokKind::Star) {
            lex_.take();
            acc = acc * parse_factor();
        }
        return acc;
    }

    Polynomial parse_factor() {
        if (lex_.peek().kind == TokKind::Minus) {
            Token t = lex_.take();
            (void)t;
            return -parse_factor();
        }
        Polynomial base = parse_primary();
        while (lex_.peek().kind == TokKind::Caret) {
            lex_.take();
            Token e = lex_.take();
            if (e.kind == TokKind::Minus)
                throw ParseError("negative exponent", e.line, e.col);
            if (e.kind != TokKind::Number || e.text.find('.') != std::string::npos ||
                e.text.find('e') != std::string::npos || e.text.find('E') != std::string::npos)
                throw ParseError("exponent must be a nonnegative integer literal", e.line, e.col);
            base = base.pow(static_cast<int>(e.value));
        }
        return base;
    }

    Polynomial parse_primary() {
        Token t = lex_.take();
        const int nv = static_cast<int>(names_.size());
        switch (t.kind) {
            case TokKind::Number:
                return Polynomial::constant(nv, cplx(t.value, 0.0));
            case TokKind::Imag:
                return Polynomial::constant(nv, cplx(0.0, t.value));
            case TokKind::Ident: {
                auto it = index_.find(t.text);
                if (it == index_.end())
                    throw ParseError("undeclared variable '" + t.text + "'", t.line, t.col);
                return Polynomial::variable(nv, it->second);
            }
            case TokKind::LParen: {
                Polynomial p = parse_expr();
                expect(TokKind::RParen, "')'");
                return p;
            }
            default:
                throw ParseError("expected number, variable or '('", t.line, t.col);
        }
    }

    void expect(TokKind k, const char* what) {
        Token t = lex_.take();
        if (t.kind != k)
            throw ParseError(std::string("expected ") + what, t.line, t.col);
    }

    Lexer lex_;
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

} // namespace detail

// Input grammar: '# ...' comments, a 'vars: a,b,c;' header, then one
// ';'-terminated polynomial expression per statement. Operators + - * ^
// with explicit '*' (no implicit multiplication); '^' takes a nonnegative
// integer literal; a number directly followed by 'i' is imaginary.
inline ParsedSystem parse_system_full(const std::string& text) {
    detail::SystemParser p(text);
    return p.run();
}

inline PolySystem parse_system(const std::string& text) {
    return parse_system_full(text).system;
}

inline std::string to_string(const PolySystem& sys, const std::vector<std::string>& var_names) {
    std::string out = "vars: ";
    for (std::size_t i = 0; i < var_names.size(); ++i) {
        if (i) out += ",";
        out += var_names[i];
    }
    out += ";\n";
    for (const auto& p : sys.polys) out += p.to_string(var_names) + ";\n";
    return out;
}

} // namespace wsolve
