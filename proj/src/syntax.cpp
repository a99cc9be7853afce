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

#include "dlprover/syntax.hpp"

#include <charconv>
#include <string>

namespace dlp {

// --- construction -----------------------------------------------------------

Term Term::variable(std::string name) {
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::Variable, std::move(name), {}, {}, 0}));
}

Term Term::diff_symbol(std::string base) {
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::DiffSymbol, std::move(base), {}, {}, 0}));
}

Term Term::number(Rational value) {
    value.canonicalize();
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::Number, {}, std::move(value), {}, 0}));
}

Term Term::func(std::string name, std::vector<Term> args) {
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::FuncApp, std::move(name), {}, std::move(args), 0}));
}

Term Term::dot() {
    static const Term instance(std::make_shared<const TermNode>(TermNode{TermKind::Dot, ".", {}, {}, 0}));
    return instance;
}

Term Term::binary(TermKind kind, Term left, Term right) {
    if (!is_binary_term(kind)) throw std::invalid_argument("Term::binary: not a binary operator");
    return Term(std::make_shared<const TermNode>(
        TermNode{kind, {}, {}, std::vector<Term>{std::move(left), std::move(right)}, 0}));
}

Term Term::neg(Term child) {
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::Neg, {}, {}, std::vector<Term>{std::move(child)}, 0}));
}

Term Term::power(Term base, unsigned exponent) {
    return Term(std::make_shared<const TermNode>(
        TermNode{TermKind::Power, {}, {}, std::vector<Term>{std::move(base)}, exponent}));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Rational& Term::value() const { return node_->value; }
const std::vector<Term>& Term::args() const { return node_->args; }
unsigned Term::exponent() const { return node_->exponent; }

Program Program::constant(std::string name) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Constant;
    n->name = std::move(name);
    return Program(std::move(n));
}

Program Program::assign(std::string var, Term rhs) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Assign;
    n->name = std::move(var);
    n->rhs = std::move(rhs);
    return Program(std::move(n));
}

Program Program::test(Formula condition) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Test;
    n->formula = std::move(condition);
    return Program(std::move(n));
}

Program Program::ode(std::vector<Equation> equations, std::optional<Formula> domain) {
    if (equations.empty()) throw std::invalid_argument("ODE system without equations");
    for (std::size_t i = 0; i < equations.size(); ++i)
        for (std::size_t j = i + 1; j < equations.size(); ++j)
            if (equations[i].var == equations[j].var)
                throw std::invalid_argument("ODE system defines " + equations[i].var + "' twice");
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Ode;
    n->equations = std::move(equations);
    n->formula = std::move(domain);
    return Program(std::move(n));
}

Program Program::choice(Program left, Program right) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Choice;
    n->subs = {std::move(left), std::move(right)};
    return Program(std::move(n));
}

Program Program::compose(Program left, Program right) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Compose;
    n->subs = {std::move(left), std::move(right)};
    return Program(std::move(n));
}

Program Program::loop(Program body, std::optional<Formula> invariant) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramKind::Loop;
    n->subs = {std::move(body)};
    n->formula = std::move(invariant);
    return Program(std::move(n));
}

ProgramKind Program::kind() const { return node_->kind; }
const std::string& Program::name() const { return node_->name; }
const Term& Program::rhs() const { return *node_->rhs; }
const Formula& Program::condition() const { return *node_->formula; }
const std::vector<Program::Equation>& Program::equations() const { return node_->equations; }

const std::optional<Formula>& Program::domain() const {
    static const std::optional<Formula> none;
    return node_->kind == ProgramKind::Ode ? node_->formula : none;
}

const std::optional<Formula>& Program::invariant() const {
    static const std::optional<Formula> none;
    return node_->kind == ProgramKind::Loop ? node_->formula : none;
}

const std::vector<Program>& Program::subs() const { return node_->subs; }

Formula Formula::compare(FormulaKind kind, Term left, Term right) {
    if (!is_comparison(kind)) throw std::invalid_argument("Formula::compare: not a comparison");
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->terms = {std::move(left), std::move(right)};
    return Formula(std::move(n));
}

Formula Formula::truth() {
    static const Formula instance(std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::True, {}, {}, {}, {}, false}));
    return instance;
}

Formula Formula::falsity() {
    static const Formula instance(std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::False, {}, {}, {}, {}, false}));
    return instance;
}

Formula Formula::negation(Formula child) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Not;
    n->subs = {std::move(child)};
    return Formula(std::move(n));
}

Formula Formula::binary(FormulaKind kind, Formula left, Formula right) {
    if (!is_binary_connective(kind)) throw std::invalid_argument("Formula::binary: not a connective");
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->subs = {std::move(left), std::move(right)};
    return Formula(std::move(n));
}

Formula Formula::quantifier(FormulaKind kind, std::string var, Formula body) {
    if (kind != FormulaKind::Forall && kind != FormulaKind::Exists)
        throw std::invalid_argument("Formula::quantifier: not a quantifier");
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->name = std::move(var);
    n->subs = {std::move(body)};
    return Formula(std::move(n));
}

Formula Formula::box(Program program, Formula body) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Box;
    n->program = std::move(program);
    n->subs = {std::move(body)};
    return Formula(std::move(n));
}

Formula Formula::pred(std::string name, std::vector<Term> args) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::PredApp;
    n->name = std::move(name);
    n->terms = std::move(args);
    return Formula(std::move(n));
}

Formula Formula::predicational(std::string name) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::PredApp;
    n->name = std::move(name);
    n->all_args = true;
    return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::vector<Formula>& Formula::subs() const { return node_->subs; }
const Program& Formula::program() const { return *node_->program; }
bool Formula::all_args() const { return node_->all_args; }
const Formula& Formula::body() const { return node_->subs.at(0); }

// --- classification ---------------------------------------------------------

bool is_comparison(FormulaKind k) {
    switch (k) {
        case FormulaKind::Equal:
        case FormulaKind::NotEqual:
        case FormulaKind::Less:
        case FormulaKind::LessEqual:
        case FormulaKind::Greater:
        case FormulaKind::GreaterEqual:
            return true;
        default:
            return false;
    }
}

bool is_binary_connective(FormulaKind k) {
    return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Imply || k == FormulaKind::Equiv;
}

bool is_binary_term(TermKind k) {
    return k == TermKind::Plus || k == TermKind::Minus || k == TermKind::Times || k == TermKind::Divide;
}

// --- structural equality ----------------------------------------------------

bool operator==(const Term& a, const Term& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Variable:
        case TermKind::DiffSymbol:
            return a.name() == b.name();
        case TermKind::Number:
            return a.value() == b.value();
        case TermKind::FuncApp:
            return a.name() == b.name() && a.args() == b.args();
        case TermKind::Dot:
            return true;
        case TermKind::Power:
            return a.exponent() == b.exponent() && a.child() == b.child();
        default:
            return a.args() == b.args();
    }
}

bool operator==(const Program::Equation& a, const Program::Equation& b) {
    return a.var == b.var && a.rhs == b.rhs;
}

bool operator==(const Program& a, const Program& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ProgramKind::Constant:
            return a.name() == b.name();
        case ProgramKind::Assign:
            return a.name() == b.name() && a.rhs() == b.rhs();
        case ProgramKind::Test:
            return a.condition() == b.condition();
        case ProgramKind::Ode:
            return a.equations() == b.equations() && a.domain() == b.domain();
        case ProgramKind::Loop:
            return a.body() == b.body() && a.invariant() == b.invariant();
        default:
            return a.subs() == b.subs();
    }
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
            return true;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            return a.name() == b.name() && a.body() == b.body();
        case FormulaKind::Box:
            return a.program() == b.program() && a.body() == b.body();
        case FormulaKind::PredApp:
            return a.name() == b.name() && a.all_args() == b.all_args() && a.terms() == b.terms();
        default:
            if (is_comparison(a.kind())) return a.terms() == b.terms();
            return a.subs() == b.subs();
    }
}

// --- positions ----------------------------------------------------------------

std::string Position::to_string() const {
    std::string out = (side == Side::Ante ? "-" : "") + std::to_string(index);
    for (int i : inner) out += "." + std::to_string(i);
    return out;
}

Position Position::parse(std::string_view text) {
    Position pos;
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && rest.front() == '-') {
        negative = true;
        rest.remove_prefix(1);
    }
    auto read_int = [&](int& out) {
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), out);
        if (ec != std::errc() || ptr == rest.data())
            throw std::invalid_argument("malformed position '" + std::string(text) + "'");
        rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
    };
    read_int(pos.index);
    if (pos.index < 1) throw std::invalid_argument("position index must be >= 1 in '" + std::string(text) + "'");
    pos.side = negative ? Side::Ante : Side::Succ;
    while (!rest.empty()) {
        if (rest.front() != '.') throw std::invalid_argument("malformed position '" + std::string(text) + "'");
        rest.remove_prefix(1);
        int child = 0;
        read_int(child);
        if (child < 0) throw std::invalid_argument("negative inner index in '" + std::string(text) + "'");
        pos.inner.push_back(child);
    }
    return pos;
}

const Formula& Sequent::at(Side s, int index) const {
    const auto& fs = side(s);
    if (index < 1 || static_cast<std::size_t>(index) > fs.size())
        throw PositionError("no formula at " + std::string(s == Side::Ante ? "antecedent " : "succedent ") +
                            std::to_string(index));
    return fs[static_cast<std::size_t>(index - 1)];
}

// --- generic children -----------------------------------------------------------

std::vector<Expr> children(const Expr& e) {
    std::vector<Expr> out;
    if (const auto* t = std::get_if<Term>(&e)) {
        for (const auto& a : t->args()) out.emplace_back(a);
    } else if (const auto* p = std::get_if<Program>(&e)) {
        switch (p->kind()) {
            case ProgramKind::Constant:
                break;
            case ProgramKind::Assign:
                out.emplace_back(p->rhs());
                break;
            case ProgramKind::Test:
                out.emplace_back(p->condition());
                break;
            case ProgramKind::Ode:
                for (const auto& eq : p->equations()) out.emplace_back(eq.rhs);
                if (p->domain()) out.emplace_back(*p->domain());
                break;
            default:
                for (const auto& s : p->subs()) out.emplace_back(s);
        }
    } else {
        const auto& f = std::get<Formula>(e);
        if (f.kind() == FormulaKind::Box) out.emplace_back(f.program());
        for (const auto& t : f.terms()) out.emplace_back(t);
        for (const auto& s : f.subs()) out.emplace_back(s);
    }
    return out;
}

namespace {

template <typename T>
const T& kid(const std::vector<Expr>& kids, std::size_t i) {
    if (i >= kids.size()) throw PositionError("missing child");
    const T* v = std::get_if<T>(&kids[i]);
    if (!v) throw PositionError("replacement has the wrong sort for this position");
    return *v;
}

template <typename T>
std::vector<T> kids_as(const std::vector<Expr>& kids, std::size_t from, std::size_t count) {
    std::vector<T> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(kid<T>(kids, from + i));
    return out;
}

}  // namespace

Expr with_children(const Expr& e, const std::vector<Expr>& kids) {
    if (children(e).size() != kids.size()) throw PositionError("child count mismatch");
    if (const auto* t = std::get_if<Term>(&e)) {
        switch (t->kind()) {
            case TermKind::FuncApp:
                return Term::func(t->name(), kids_as<Term>(kids, 0, kids.size()));
            case TermKind::Neg:
                return Term::neg(kid<Term>(kids, 0));
            case TermKind::Power:
                return Term::power(kid<Term>(kids, 0), t->exponent());
            default:
                if (is_binary_term(t->kind())) return Term::binary(t->kind(), kid<Term>(kids, 0), kid<Term>(kids, 1));
                return *t;
        }
    }
    if (const auto* p = std::get_if<Program>(&e)) {
        switch (p->kind()) {
            case ProgramKind::Constant:
                return *p;
            case ProgramKind::Assign:
                return Program::assign(p->name(), kid<Term>(kids, 0));
            case ProgramKind::Test:
                return Program::test(kid<Formula>(kids, 0));
            case ProgramKind::Ode: {
                std::vector<Program::Equation> eqs;
                for (std::size_t i = 0; i < p->equations().size(); ++i)
                    eqs.push_back({p->equations()[i].var, kid<Term>(kids, i)});
                std::optional<Formula> dom;
                if (p->domain()) dom = kid<Formula>(kids, eqs.size());
                return Program::ode(std::move(eqs), std::move(dom));
            }
            case ProgramKind::Choice:
                return Program::choice(kid<Program>(kids, 0), kid<Program>(kids, 1));
            case ProgramKind::Compose:
                return Program::compose(kid<Program>(kids, 0), kid<Program>(kids, 1));
            case ProgramKind::Loop:
                return Program::loop(kid<Program>(kids, 0), p->invariant());
        }
    }
    const auto& f = std::get<Formula>(e);
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
            return f;
        case FormulaKind::Not:
            return Formula::negation(kid<Formula>(kids, 0));
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            return Formula::quantifier(f.kind(), f.name(), kid<Formula>(kids, 0));
        case FormulaKind::Box:
            return Formula::box(kid<Program>(kids, 0), kid<Formula>(kids, 1));
        case FormulaKind::PredApp:
            if (f.all_args()) return f;
            return Formula::pred(f.name(), kids_as<Term>(kids, 0, kids.size()));
        default:
            if (is_comparison(f.kind())) return Formula::compare(f.kind(), kid<Term>(kids, 0), kid<Term>(kids, 1));
            return Formula::binary(f.kind(), kid<Formula>(kids, 0), kid<Formula>(kids, 1));
    }
}

Expr subexpr_at(const Expr& e, const PosInExpr& path) {
    Expr cur = e;
    for (int i : path) {
        auto kids = children(cur);
        if (i < 0 || static_cast<std::size_t>(i) >= kids.size())
            throw PositionError("inner index " + std::to_string(i) + " out of range");
        cur = kids[static_cast<std::size_t>(i)];
    }
    return cur;
}

Expr subexpr_at(const Sequent& s, const Position& pos) {
    return subexpr_at(Expr(s.at(pos.side, pos.index)), pos.inner);
}

namespace {

Expr replace_rec(const Expr& e, const PosInExpr& path, std::size_t depth, const Expr& replacement) {
    if (depth == path.size()) {
        if (e.index() != replacement.index()) throw PositionError("replacement has the wrong sort for this position");
        return replacement;
    }
    auto kids = children(e);
    int i = path[depth];
    if (i < 0 || static_cast<std::size_t>(i) >= kids.size())
        throw PositionError("inner index " + std::to_string(i) + " out of range");
    kids[static_cast<std::size_t>(i)] = replace_rec(kids[static_cast<std::size_t>(i)], path, depth + 1, replacement);
    return with_children(e, kids);
}

void paths_rec(const Expr& e, PosInExpr& cur, std::vector<PosInExpr>& out) {
    out.push_back(cur);
    auto kids = children(e);
    for (std::size_t i = 0; i < kids.size(); ++i) {
        cur.push_back(static_cast<int>(i));
        paths_rec(kids[i], cur, out);
        cur.pop_back();
    }
}

}  // namespace

Expr replace_at(const Expr& e, const PosInExpr& path, const Expr& replacement) {
    return replace_rec(e, path, 0, replacement);
}

Formula replace_at(const Formula& f, const PosInExpr& path, const Expr& replacement) {
    return std::get<Formula>(replace_rec(Expr(f), path, 0, replacement));
}

std::vector<PosInExpr> all_paths(const Expr& e) {
    std::vector<PosInExpr> out;
    PosInExpr cur;
    paths_rec(e, cur, out);
    return out;
}

}  // namespace dlp
