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

#ifndef DLPROVER_SYNTAX_HPP
#define DLPROVER_SYNTAX_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlprover/rational.hpp"

namespace dlp {

// The dL object language: terms, hybrid programs, formulas and sequents.
//
// All three expression sorts are immutable handles onto shared nodes, so
// copies are cheap and values can be shared freely between threads. Children
// of every node are addressed uniformly by index (see children()), which is
// what positions and the contextual rules in the kernel walk over.

enum class TermKind {
    Variable,
    DiffSymbol,  // x', only on the left of ODE equations
    Number,
    FuncApp,     // f(), g(x): function symbols, schema-level in axioms
    Dot,         // argument placeholder in substitution replacements
    Plus,
    Minus,
    Times,
    Divide,
    Neg,
    Power,       // natural exponent
};

enum class ProgramKind {
    Constant,  // program symbol a, b (schema-level)
    Assign,
    Test,
    Ode,
    Choice,
    Compose,
    Loop,
};

enum class FormulaKind {
    Equal,
    NotEqual,
    Less,
    LessEqual,
    Greater,
    GreaterEqual,
    True,
    False,
    Not,
    And,
    Or,
    Imply,
    Equiv,
    Forall,
    Exists,
    Box,
    PredApp,  // p(x), q(), or the all-variable predicational p(||)
};

struct TermNode;
struct ProgramNode;
struct FormulaNode;

class Term {
public:
    static Term variable(std::string name);
    static Term diff_symbol(std::string base);
    static Term number(Rational value);
    static Term number(long value) { return number(Rational(value)); }
    static Term func(std::string name, std::vector<Term> args = {});
    static Term dot();
    static Term binary(TermKind kind, Term left, Term right);
    static Term neg(Term child);
    static Term power(Term base, unsigned exponent);

    TermKind kind() const;
    const std::string& name() const;
    const Rational& value() const;
    // FuncApp arguments; operands of compound terms ([left, right] or [child]).
    const std::vector<Term>& args() const;
    unsigned exponent() const;
    const Term& left() const { return args().at(0); }
    const Term& right() const { return args().at(1); }
    const Term& child() const { return args().at(0); }

    bool same_node(const Term& other) const { return node_ == other.node_; }

private:
    explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const TermNode> node_;
};

class Program;

class Formula {
public:
    static Formula compare(FormulaKind kind, Term left, Term right);
    static Formula truth();
    static Formula falsity();
    static Formula negation(Formula child);
    static Formula binary(FormulaKind kind, Formula left, Formula right);
    static Formula quantifier(FormulaKind kind, std::string var, Formula body);
    static Formula box(Program program, Formula body);
    static Formula pred(std::string name, std::vector<Term> args = {});
    static Formula predicational(std::string name);  // p(||)

    // Shorthands used throughout tactics and tests.
    static Formula conj(Formula l, Formula r) { return binary(FormulaKind::And, std::move(l), std::move(r)); }
    static Formula disj(Formula l, Formula r) { return binary(FormulaKind::Or, std::move(l), std::move(r)); }
    static Formula implies(Formula l, Formula r) { return binary(FormulaKind::Imply, std::move(l), std::move(r)); }
    static Formula equiv(Formula l, Formula r) { return binary(FormulaKind::Equiv, std::move(l), std::move(r)); }
    static Formula forall(std::string v, Formula b) { return quantifier(FormulaKind::Forall, std::move(v), std::move(b)); }
    static Formula exists(std::string v, Formula b) { return quantifier(FormulaKind::Exists, std::move(v), std::move(b)); }

    FormulaKind kind() const;
    const std::string& name() const;  // quantified variable or predicate name
    const std::vector<Term>& terms() const;  // comparison operands or predicate args
    const std::vector<Formula>& subs() const;
    const Program& program() const;  // Box
    bool all_args() const;           // p(||)

    const Term& lhs() const { return terms().at(0); }
    const Term& rhs() const { return terms().at(1); }
    const Formula& left() const { return subs().at(0); }
    const Formula& right() const { return subs().at(1); }
    const Formula& child() const { return subs().at(0); }
    // Body of a quantifier or postcondition of a box.
    const Formula& body() const;

    bool same_node(const Formula& other) const { return node_ == other.node_; }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const FormulaNode> node_;
};

class Program {
public:
    struct Equation {
        std::string var;  // x in x'=e
        Term rhs;
    };

    static Program constant(std::string name);
    static Program assign(std::string var, Term rhs);
    static Program test(Formula condition);
    static Program ode(std::vector<Equation> equations, std::optional<Formula> domain = std::nullopt);
    static Program choice(Program left, Program right);
    static Program compose(Program left, Program right);
    static Program loop(Program body, std::optional<Formula> invariant = std::nullopt);

    ProgramKind kind() const;
    // Constant name or assignment target.
    const std::string& name() const;
    const Term& rhs() const;
    const Formula& condition() const;  // Test
    const std::vector<Equation>& equations() const;
    const std::optional<Formula>& domain() const;
    const std::optional<Formula>& invariant() const;
    const std::vector<Program>& subs() const;  // [left, right] or [body]
    const Program& left() const { return subs().at(0); }
    const Program& right() const { return subs().at(1); }
    const Program& body() const { return subs().at(0); }

    bool same_node(const Program& other) const { return node_ == other.node_; }

private:
    explicit Program(std::shared_ptr<const ProgramNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ProgramNode> node_;
};

struct TermNode {
    TermKind kind;
    std::string name;
    Rational value;
    std::vector<Term> args;
    unsigned exponent = 0;
};

struct ProgramNode {
    ProgramKind kind;
    std::string name;
    std::optional<Term> rhs;
    std::optional<Formula> formula;  // test condition, ODE domain or loop invariant
    std::vector<Program::Equation> equations;
    std::vector<Program> subs;
};

struct FormulaNode {
    FormulaKind kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Formula> subs;
    std::optional<Program> program;
    bool all_args = false;
};

bool operator==(const Term& a, const Term& b);
bool operator==(const Program& a, const Program& b);
bool operator==(const Formula& a, const Formula& b);
bool operator==(const Program::Equation& a, const Program::Equation& b);

bool is_comparison(FormulaKind kind);
bool is_binary_connective(FormulaKind kind);
bool is_binary_term(TermKind kind);

// Any expression of the object language.
using Expr = std::variant<Term, Program, Formula>;


// Path of child indices from the root of a formula; empty = the whole formula.
using PosInExpr = std::vector<int>;

enum class Side { Ante, Succ };

// A formula in a sequent (1-based index) plus a path into it. Printed as a
// signed integer, negative for the antecedent, with dotted 0-based inner
// indices: "-1", "1.1", "2.0.1".
struct Position {
    Side side = Side::Succ;
    int index = 1;
    PosInExpr inner;

    bool top_level() const { return inner.empty(); }
    std::string to_string() const;
    static Position parse(std::string_view text);  // throws std::invalid_argument
    friend bool operator==(const Position&, const Position&) = default;
};

inline Position ante(int index, PosInExpr inner = {}) { return {Side::Ante, index, std::move(inner)}; }
inline Position succ(int index, PosInExpr inner = {}) { return {Side::Succ, index, std::move(inner)}; }

struct Sequent {
    std::vector<Formula> ante;
    std::vector<Formula> succ;

    const std::vector<Formula>& side(Side s) const { return s == Side::Ante ? ante : succ; }
    std::vector<Formula>& side(Side s) { return s == Side::Ante ? ante : succ; }
    // Throws PositionError if index is out of range.
    const Formula& at(Side s, int index) const;
    friend bool operator==(const Sequent&, const Sequent&) = default;
};

class PositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Uniform child access: Term args, Program parts, Formula parts.
// Box: [program, body]; quantifiers: [body]; Assign: [rhs]; Test: [condition];
// Ode: [rhs..., domain?]; Loop: [body]; comparisons and predicates: terms.
std::vector<Expr> children(const Expr& e);
// Rebuilds e with new children of matching sorts; throws PositionError otherwise.
Expr with_children(const Expr& e, const std::vector<Expr>& kids);

Expr subexpr_at(const Expr& e, const PosInExpr& path);
Expr subexpr_at(const Sequent& s, const Position& pos);
Expr replace_at(const Expr& e, const PosInExpr& path, const Expr& replacement);
Formula replace_at(const Formula& f, const PosInExpr& path, const Expr& replacement);

// Every valid path inside e in pre-order (outside-in), including the empty path.
std::vector<PosInExpr> all_paths(const Expr& e);

inline const Formula& as_formula(const Expr& e) { return std::get<Formula>(e); }

}  // namespace dlp

#endif
