#pragma once

/**
 * @file parse.hpp
 * @brief Lexer and recursive-descent parser for tuplix and quantity terms.
 *
 * Grammar (ASCII concrete syntax):
 *
 *   tuplix  := prim ('&' prim)*
 *   prim    := 'eps' | 'bot'
 *            | ACTION '(' qty ')'
 *            | 'test' '(' qty ')'
 *            | 'delay' ('^' NAT)? '(' tuplix ')'
 *            | 'abs' '{' actlist '}' '(' tuplix ')'
 *            | 'enc' '{' actlist '}' '@' qatom '(' tuplix ')'
 *            | '(' tuplix ')'
 *   qty     := arithmetic over literals, variables, 'sign(q)', 'inv(q)',
 *              'max(q,q)', 'min(q,q)', 'icap' '@' qatom '(' tuplix ')'
 *   qatom   := '-'? literal | identifier | '(' qty ')'
 *   actlist := ACTION (',' ACTION)*
 *
 * Quantity precedence, loosest to tightest: + -  then * /  then ^  then
 * unary minus (so -x^2 parses as (-x)^2). '#' starts a line comment.
 *
 * Rational literals are adjacent digit runs: "1/2" is one literal while
 * "1 / 2" is a division (same value, different tree). Decimals like 0.25
 * convert exactly. Unary minus applied to a literal folds into it, so
 * negative constants round-trip.
 *
 * Identifiers ([a-zA-Z_][a-zA-Z0-9_']*) name quantity variables when bare
 * and actions in application position or inside {...} sets; one name may
 * not serve both roles in a single input. 'iota' is the reserved
 * pre-abstraction target: usable as an action, never as a variable, and
 * not allowed inside an abs{...} set.
 */

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ttc/ast.hpp"

namespace ttc {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

namespace detail {

enum class Tok {
    End, Ident, Nat, RatLit,
    LParen, RParen, LBrace, RBrace,
    Amp, Plus, Minus, Star, Slash, Caret, At, Comma,
};

inline const char* tok_name(Tok k) {
    switch (k) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::Nat: return "number";
        case Tok::RatLit: return "rational literal";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Amp: return "'&'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::At: return "'@'";
        case Tok::Comma: return "','";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
inline bool digit(char c) { return c >= '0' && c <= '9'; }

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') { ++line; col = 1; } else { ++col; }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') bump(1);
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { bump(1); continue; }
        int tl = line, tc = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), tl, tc});
            bump(j - i);
            continue;
        }
        if (digit(c)) {
            std::size_t j = i;
            while (j < src.size() && digit(src[j])) ++j;
            // adjacent /[1-9][0-9]* makes a fraction literal, adjacent .digits a decimal
            if (j < src.size() && src[j] == '/' && j + 1 < src.size() && src[j + 1] >= '1' &&
                src[j + 1] <= '9') {
                std::size_t k = j + 1;
                while (k < src.size() && digit(src[k])) ++k;
                out.push_back({Tok::RatLit, std::string(src.substr(i, k - i)), tl, tc});
                bump(k - i);
                continue;
            }
            if (j < src.size() && src[j] == '.' && j + 1 < src.size() && digit(src[j + 1])) {
                std::size_t k = j + 1;
                while (k < src.size() && digit(src[k])) ++k;
                out.push_back({Tok::RatLit, std::string(src.substr(i, k - i)), tl, tc});
                bump(k - i);
                continue;
            }
            out.push_back({Tok::Nat, std::string(src.substr(i, j - i)), tl, tc});
            bump(j - i);
            continue;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case '&': kind = Tok::Amp; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '@': kind = Tok::At; break;
            case ',': kind = Tok::Comma; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(src.substr(i, 1)), tl, tc});
        bump(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

inline const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words = {
        "eps", "bot", "test", "delay", "abs", "enc", "icap", "sign", "max", "min", "inv",
    };
    return words;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    QPtr quantity() {
        QPtr q = parse_add();
        expect(Tok::End);
        return q;
    }

    TPtr tuplix() {
        TPtr t = parse_tuplix();
        expect(Tok::End);
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, std::pair<int, int>> action_uses_;
    std::map<std::string, std::pair<int, int>> var_uses_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (at(k)) { ++pos_; return true; }
        return false;
    }
    [[noreturn]] void fail_expect(const std::string& expected) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::Ident ? "'" + t.text + "'" : tok_name(t.kind);
        throw ParseError(t.line, t.col, "expected " + expected + ", found " + got);
    }
    Token expect(Tok k) {
        if (!at(k)) fail_expect(tok_name(k));
        return advance();
    }

    void mark_action(const std::string& name, int line, int col) {
        if (reserved_words().count(name))
            throw ParseError(line, col, "'" + name + "' is a reserved word, not an action name");
        if (auto it = var_uses_.find(name); it != var_uses_.end())
            throw ParseError(line, col,
                             "'" + name + "' already used as a quantity variable at " +
                                 std::to_string(it->second.first) + ":" +
                                 std::to_string(it->second.second));
        action_uses_.emplace(name, std::make_pair(line, col));
    }

    void mark_var(const std::string& name, int line, int col) {
        if (name == kIota)
            throw ParseError(line, col, "'iota' is the reserved action, not a variable");
        if (reserved_words().count(name))
            throw ParseError(line, col, "'" + name + "' is a reserved word, not a variable");
        if (auto it = action_uses_.find(name); it != action_uses_.end())
            throw ParseError(line, col,
                             "'" + name + "' already used as an action at " +
                                 std::to_string(it->second.first) + ":" +
                                 std::to_string(it->second.second));
        var_uses_.emplace(name, std::make_pair(line, col));
    }

    std::vector<std::string> parse_actlist(bool allow_iota) {
        std::vector<std::string> names;
        while (true) {
            Token t = expect(Tok::Ident);
            if (t.text == kIota && !allow_iota)
                throw ParseError(t.line, t.col, "'iota' may not appear in an abstraction set");
            if (t.text != kIota) mark_action(t.text, t.line, t.col);
            names.push_back(t.text);
            if (!accept(Tok::Comma)) break;
        }
        return names;
    }

    unsigned long parse_nat(const Token& t) {
        unsigned long n;
        try {
            n = std::stoul(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.line, t.col, "number out of range: " + t.text);
        }
        if (n > 1000000)
            throw ParseError(t.line, t.col, "exponent or delay count too large: " + t.text);
        return n;
    }

    TPtr parse_tuplix() {
        TPtr t = parse_prim();
        while (accept(Tok::Amp)) t = t_conj(t, parse_prim());
        return t;
    }

    TPtr parse_prim() {
        if (accept(Tok::LParen)) {
            TPtr t = parse_tuplix();
            expect(Tok::RParen);
            return t;
        }
        if (!at(Tok::Ident))
            fail_expect("'eps', 'bot', 'test', 'delay', 'abs', 'enc', an action, or '('");
        Token head = advance();
        const std::string& w = head.text;
        if (w == "eps") return t_empty();
        if (w == "bot") return t_block();
        if (w == "test") {
            expect(Tok::LParen);
            QPtr q = parse_add();
            expect(Tok::RParen);
            return t_test(q);
        }
        if (w == "delay") {
            unsigned long n = 1;
            if (accept(Tok::Caret)) n = parse_nat(expect(Tok::Nat));
            expect(Tok::LParen);
            TPtr t = parse_tuplix();
            expect(Tok::RParen);
            return t_delay(t, n);
        }
        if (w == "abs") {
            expect(Tok::LBrace);
            auto names = parse_actlist(/*allow_iota=*/false);
            expect(Tok::RBrace);
            expect(Tok::LParen);
            TPtr t = parse_tuplix();
            expect(Tok::RParen);
            return t_pabstr(std::move(names), t);
        }
        if (w == "enc") {
            expect(Tok::LBrace);
            auto names = parse_actlist(/*allow_iota=*/true);
            expect(Tok::RBrace);
            expect(Tok::At);
            QPtr rate = parse_qatom();
            expect(Tok::LParen);
            TPtr t = parse_tuplix();
            expect(Tok::RParen);
            return t_iencap(std::move(names), rate, t);
        }
        if (reserved_words().count(w))
            throw ParseError(head.line, head.col, "'" + w + "' cannot start a tuplix term");
        if (w != kIota) mark_action(w, head.line, head.col);
        expect(Tok::LParen);
        QPtr q = parse_add();
        expect(Tok::RParen);
        return t_transfer(w, q);
    }

    QPtr parse_qatom() {
        if (accept(Tok::LParen)) {
            QPtr q = parse_add();
            expect(Tok::RParen);
            return q;
        }
        if (accept(Tok::Minus)) {
            if (!at(Tok::Nat) && !at(Tok::RatLit)) fail_expect("a literal after '-'");
            Token t = advance();
            return q_const(-Rational::from_literal(t.text));
        }
        if (at(Tok::Nat) || at(Tok::RatLit)) {
            Token t = advance();
            return q_const(Rational::from_literal(t.text));
        }
        if (at(Tok::Ident)) {
            Token t = advance();
            mark_var(t.text, t.line, t.col);
            return q_var(t.text);
        }
        fail_expect("a rate: literal, variable, or '('");
    }

    QPtr parse_add() {
        QPtr q = parse_mul();
        while (true) {
            if (accept(Tok::Plus)) q = q_add(q, parse_mul());
            else if (accept(Tok::Minus)) q = q_sub(q, parse_mul());
            else return q;
        }
    }

    QPtr parse_mul() {
        QPtr q = parse_pow();
        while (true) {
            if (accept(Tok::Star)) q = q_mul(q, parse_pow());
            else if (accept(Tok::Slash)) q = q_div(q, parse_pow());
            else return q;
        }
    }

    QPtr parse_pow() {
        QPtr q = parse_unary();
        while (accept(Tok::Caret)) q = q_pow(q, parse_nat(expect(Tok::Nat)));
        return q;
    }

    QPtr parse_unary() {
        if (accept(Tok::Minus)) return q_neg(parse_unary());
        return parse_qfactor();
    }

    QPtr parse_qfactor() {
        if (accept(Tok::LParen)) {
            QPtr q = parse_add();
            expect(Tok::RParen);
            return q;
        }
        if (at(Tok::Nat) || at(Tok::RatLit)) {
            Token t = advance();
            return q_const(Rational::from_literal(t.text));
        }
        if (!at(Tok::Ident)) fail_expect("a quantity: literal, variable, function, or '('");
        Token head = advance();
        const std::string& w = head.text;
        if (w == "sign" || w == "inv") {
            expect(Tok::LParen);
            QPtr a = parse_add();
            expect(Tok::RParen);
            return w == "sign" ? q_sign(a) : q_inv(a);
        }
        if (w == "max" || w == "min") {
            expect(Tok::LParen);
            QPtr a = parse_add();
            expect(Tok::Comma);
            QPtr b = parse_add();
            expect(Tok::RParen);
            return w == "max" ? q_max(a, b) : q_min(a, b);
        }
        if (w == "icap") {
            expect(Tok::At);
            QPtr rate = parse_qatom();
            expect(Tok::LParen);
            TPtr body = parse_tuplix();
            expect(Tok::RParen);
            return q_icap(rate, body);
        }
        mark_var(w, head.line, head.col);
        return q_var(w);
    }
};

}  // namespace detail

inline QPtr parse_quantity(std::string_view text) { return detail::Parser(text).quantity(); }
inline TPtr parse_tuplix(std::string_view text) { return detail::Parser(text).tuplix(); }

}  // namespace ttc
