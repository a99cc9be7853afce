/* Copyright 2026 The dlprover Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "dlprover/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace dlp {

ParseError::ParseError(const std::string& message, int line, int column, std::set<std::string> expected)
    : std::runtime_error(message), line_(line), column_(column), expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    Rational value;
    std::size_t offset = 0;
    int line = 1;
    int column = 1;
    bool space_before = false;
};

// Longest symbols first.
const char* const kSymbols[] = {"<->", "==>", "->", "<=", ">=", "!=", ":=", "++", "\\forall", "\\exists",
                                "=",   "<",   ">",  "!",  "&",  "|",  "(",  ")",  "[",        "]",
                                "{",   "}",   ";",  ",",  "?",  "*",  "+",  "-",  "/",        "^",
                                "'",   "@",   "."};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;
    bool space = false;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto is_digit = [&](std::size_t k) { return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])); };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            space = true;
            continue;
        }
        Token tok{Tok::Sym, {}, {}, i, line, col, space};
        space = false;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            tok.kind = Tok::Ident;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        if (is_digit(i)) {
            std::size_t j = i;
            while (is_digit(j)) ++j;
            if (j + 1 < src.size() && src[j] == '.' && is_digit(j + 1)) {
                ++j;
                while (is_digit(j)) ++j;
            } else if (j < src.size() && src[j] == '/' && is_digit(j + 1) &&
                       !(!out.empty() && out.back().kind == Tok::Sym && out.back().text == "^")) {
                std::size_t k = j + 1;
                while (is_digit(k)) ++k;
                bool before_power = k < src.size() && src[k] == '^';
                auto r = parse_rational(src.substr(i, k - i));
                if (!before_power && r) j = k;
            }
            tok.kind = Tok::Number;
            tok.text = std::string(src.substr(i, j - i));
            tok.value = *parse_rational(tok.text);
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        bool matched = false;
        for (const char* sym : kSymbols) {
            std::string_view s(sym);
            if (src.substr(i, s.size()) == s) {
                tok.text = std::string(s);
                advance(s.size());
                out.push_back(std::move(tok));
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col, {});
    }
    out.push_back(Token{Tok::End, "<end of input>", {}, i, line, col, space});
    return out;
}

struct Backtrack {};

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    template <typename F>
    auto run(F&& body) {
        try {
            auto result = body();
            expect_end();
            return result;
        } catch (const Backtrack&) {
            const Token& t = toks_[furthest_];
            std::string msg = "syntax error at line " + std::to_string(t.line) + ", column " +
                              std::to_string(t.column) + ": unexpected " +
                              (t.kind == Tok::End ? t.text : "'" + t.text + "'");
            if (!message_.empty()) msg += " (" + message_ + ")";
            if (!expected_.empty()) {
                msg += ", expected one of:";
                for (const auto& e : expected_) msg += " " + e;
            }
            throw ParseError(msg, t.line, t.column, expected_);
        }
    }

    // formula := equiv
    Formula formula() { return equiv(); }

    Formula equiv() {
        Formula f = imply();
        while (accept("<->")) f = Formula::equiv(f, imply());
        return f;
    }

    Formula imply() {
        Formula f = disj();
        if (accept("->")) return Formula::implies(f, imply());
        return f;
    }

    Formula disj() {
        Formula f = conj();
        while (accept("|")) f = Formula::disj(f, conj());
        return f;
    }

    Formula conj() {
        Formula f = unary();
        while (accept("&")) f = Formula::conj(f, unary());
        return f;
    }

    Formula unary() {
        if (accept("!")) return Formula::negation(unary());
        if (accept("[")) {
            Program p = program();
            expect("]");
            return Formula::box(p, unary());
        }
        if (peek("\\forall") || peek("\\exists")) {
            FormulaKind k = peek("\\forall") ? FormulaKind::Forall : FormulaKind::Exists;
            ++pos_;
            std::string v = ident("variable");
            return Formula::quantifier(k, v, unary());
        }
        if (peek_ident("true")) {
            ++pos_;
            return Formula::truth();
        }
        if (peek_ident("false")) {
            ++pos_;
            return Formula::falsity();
        }
        std::size_t start = pos_;
        try {
            Term l = term();
            FormulaKind k = relation();
            Term r = term();
            return Formula::compare(k, l, r);
        } catch (const Backtrack&) {
            pos_ = start;
        }
        if (accept("(")) {
            Formula f = formula();
            expect(")");
            return f;
        }
        if (cur().kind == Tok::Ident && toks_[pos_ + 1].text == "(") {
            std::string name = cur().text;
            pos_ += 2;
            if (peek("|") && toks_[pos_ + 1].text == "|") {
                pos_ += 2;
                expect(")");
                return Formula::predicational(name);
            }
            auto args = arguments();
            return Formula::pred(name, std::move(args));
        }
        note("formula");
        throw Backtrack{};
    }

    FormulaKind relation() {
        static const std::pair<const char*, FormulaKind> rels[] = {
            {"=", FormulaKind::Equal},      {"!=", FormulaKind::NotEqual}, {"<", FormulaKind::Less},
            {"<=", FormulaKind::LessEqual}, {">", FormulaKind::Greater},   {">=", FormulaKind::GreaterEqual}};
        for (const auto& [s, k] : rels)
            if (accept(s)) return k;
        for (const auto& [s, k] : rels) note(s);
        throw Backtrack{};
    }

    // program := seq ("++" seq)*, right-nested.
    Program program() {
        Program p = sequence();
        if (accept("++")) return Program::choice(p, program());
        return p;
    }

    Program sequence() {
        std::vector<Program> stmts;
        stmts.push_back(statement());
        while (starts_statement()) stmts.push_back(statement());
        Program p = stmts.back();
        for (std::size_t i = stmts.size() - 1; i-- > 0;) p = Program::compose(stmts[i], p);
        return p;
    }

    Program statement() {
        if (accept("?")) {
            Formula f = formula();
            terminator();
            return Program::test(f);
        }
        if (accept("{")) {
            Program p = (cur().kind == Tok::Ident && toks_[pos_ + 1].text == "'") ? odes() : program();
            expect("}");
            if (accept("*")) {
                std::optional<Formula> inv;
                if (accept("@")) {
                    if (!peek_ident("invariant")) {
                        note("invariant");
                        throw Backtrack{};
                    }
                    ++pos_;
                    expect("(");
                    inv = formula();
                    expect(")");
                }
                p = Program::loop(p, std::move(inv));
            }
            accept(";");
            return p;
        }
        if (cur().kind == Tok::Ident && toks_[pos_ + 1].text == "'") {
            Program p = odes();
            terminator();
            return p;
        }
        std::string name = ident("statement");
        if (accept(":=")) {
            Term t = term();
            terminator();
            return Program::assign(name, t);
        }
        terminator();
        return Program::constant(name);
    }

    Program odes() {
        std::vector<Program::Equation> eqs;
        do {
            std::string v = ident("variable");
            expect("'");
            expect("=");
            eqs.push_back({v, term()});
        } while (accept(","));
        std::optional<Formula> dom;
        if (accept("&")) dom = formula();
        for (std::size_t i = 0; i < eqs.size(); ++i)
            for (std::size_t j = i + 1; j < eqs.size(); ++j)
                if (eqs[i].var == eqs[j].var) {
                    message_ = "duplicate equation for " + eqs[i].var + "'";
                    furthest_ = pos_;
                    throw Backtrack{};
                }
        return Program::ode(std::move(eqs), std::move(dom));
    }

    // term := product (("+"|"-") product)*
    Term term() {
        Term t = product();
        for (;;) {
            if (accept("+")) t = Term::binary(TermKind::Plus, t, product());
            else if (accept("-")) t = Term::binary(TermKind::Minus, t, product());
            else return t;
        }
    }

    Term product() {
        Term t = negation();
        for (;;) {
            if (accept("*")) t = Term::binary(TermKind::Times, t, negation());
            else if (accept("/")) t = Term::binary(TermKind::Divide, t, negation());
            else return t;
        }
    }

    Term negation() {
        if (accept("-")) {
            if (cur().kind == Tok::Number && toks_[pos_ + 1].text != "^") {
                Rational v = -cur().value;
                ++pos_;
                return Term::number(v);
            }
            return Term::neg(negation());
        }
        return power();
    }

    Term power() {
        Term t = primary();
        while (accept("^")) {
            if (cur().kind != Tok::Number || !is_integer(cur().value) || cur().text.find('.') != std::string::npos) {
                note("natural exponent");
                throw Backtrack{};
            }
            t = Term::power(t, static_cast<unsigned>(cur().value.get_num().get_ui()));
            ++pos_;
        }
        return t;
    }

    Term primary() {
        if (cur().kind == Tok::Number) {
            Rational v = cur().value;
            ++pos_;
            return Term::number(v);
        }
        if (accept(".")) return Term::dot();
        if (accept("(")) {
            Term t = term();
            expect(")");
            return t;
        }
        if (cur().kind == Tok::Ident && !peek_ident("true") && !peek_ident("false")) {
            std::string name = cur().text;
            ++pos_;
            if (peek("'")) {
                message_ = "differential symbol " + name + "' outside an ODE";
                furthest_ = pos_;
                throw Backtrack{};
            }
            if (accept("(")) return Term::func(name, arguments());
            return Term::variable(name);
        }
        note("term");
        throw Backtrack{};
    }

    // After "(": comma-separated terms and ")".
    std::vector<Term> arguments() {
        std::vector<Term> args;
        if (accept(")")) return args;
        do {
            args.push_back(term());
        } while (accept(","));
        expect(")");
        return args;
    }

    Sequent sequent() {
        Sequent s;
        if (!peek("==>")) {
            do {
                s.ante.push_back(formula());
            } while (accept(","));
        }
        expect("==>");
        if (cur().kind != Tok::End) {
            do {
                s.succ.push_back(formula());
            } while (accept(","));
        }
        return s;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t furthest_ = 0;
    std::set<std::string> expected_;
    std::string message_;

    const Token& cur() const { return toks_[pos_]; }

    bool peek(const char* sym) const { return cur().kind == Tok::Sym && cur().text == sym; }
    bool peek_ident(const char* word) const { return cur().kind == Tok::Ident && cur().text == word; }

    void note(const std::string& what) {
        if (pos_ > furthest_) {
            furthest_ = pos_;
            expected_.clear();
            message_.clear();
        }
        if (pos_ == furthest_) expected_.insert(what);
    }

    bool accept(const char* sym) {
        if (peek(sym)) {
            ++pos_;
            return true;
        }
        note(std::string("'") + sym + "'");
        return false;
    }

    void expect(const char* sym) {
        if (!accept(sym)) throw Backtrack{};
    }

    std::string ident(const char* what) {
        if (cur().kind != Tok::Ident) {
            note(what);
            throw Backtrack{};
        }
        return toks_[pos_++].text;
    }

    bool starts_statement() const {
        return peek("?") || peek("{") || cur().kind == Tok::Ident;
    }

    // ";" ends an atomic statement; it may be left out before a closing
    // bracket, a choice, or the end of input.
    void terminator() {
        if (accept(";")) return;
        if (peek("}") || peek("]") || peek("++") || cur().kind == Tok::End) return;
        throw Backtrack{};
    }

    void expect_end() {
        if (cur().kind != Tok::End) {
            note("end of input");
            throw Backtrack{};
        }
    }
};

}  // namespace

Formula parse_formula(std::string_view text) {
    Parser p(text);
    return p.run([&] { return p.formula(); });
}

Program parse_program(std::string_view text) {
    Parser p(text);
    return p.run([&] { return p.program(); });
}

Term parse_term(std::string_view text) {
    Parser p(text);
    return p.run([&] { return p.term(); });
}

Sequent parse_sequent(std::string_view text) {
    Parser p(text);
    return p.run([&] { return p.sequent(); });
}

}  // namespace dlp
