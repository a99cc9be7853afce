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

#include "dlprover/kernel.hpp"

#include <algorithm>

#include "dlprover/arith.hpp"
#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "dlprover/semantics.hpp"

namespace dlp {

// --- Provable -----------------------------------------------------------------

Provable Provable::with_goal_replaced(std::size_t goal, std::vector<Sequent> premises) const {
    std::vector<Sequent> subs;
    subs.reserve(subgoals_.size() + premises.size());
    for (std::size_t i = 0; i < subgoals_.size(); ++i) {
        if (i == goal) {
            for (auto& p : premises) subs.push_back(std::move(p));
        } else {
            subs.push_back(subgoals_[i]);
        }
    }
    return Provable(conclusion_, std::move(subs));
}

namespace {

const Sequent& goal_at(const Provable& p, std::size_t goal) {
    if (goal >= p.subgoals().size())
        throw KernelError("no subgoal " + std::to_string(goal) + " (" + std::to_string(p.subgoals().size()) + " open)");
    return p.subgoals()[goal];
}

std::size_t slot(const Sequent& s, const Position& pos) {
    s.at(pos.side, pos.index);
    return static_cast<std::size_t>(pos.index - 1);
}

const Formula& top_formula(const Sequent& s, const Position& pos, Side expected, const std::string& rule) {
    if (pos.side != expected)
        throw KernelError(rule + " applies in the " + (expected == Side::Ante ? "antecedent" : "succedent"));
    if (!pos.top_level()) throw KernelError(rule + " applies only to top-level formulas");
    try {
        return s.at(pos.side, pos.index);
    } catch (const PositionError& e) {
        throw KernelError(e.what());
    }
}

[[noreturn]] void shape_error(const std::string& rule, const Formula& f) {
    throw KernelError(rule + " is not applicable to " + to_string(f));
}

}  // namespace

Provable start_proof(const Formula& goal) { return start_proof(Sequent{{}, {goal}}); }

Provable start_proof(const Sequent& goal) {
    for (const auto* side : {&goal.ante, &goal.succ})
        for (const auto& f : *side)
            if (has_schema_symbols(f))
                throw KernelError("conjecture contains function, predicate or program symbols: " + to_string(f));
    return Provable(goal, {goal});
}

Provable merge(const Provable& p, std::size_t goal, const Provable& sub) {
    const Sequent& g = goal_at(p, goal);
    if (!(sub.conclusion() == g)) throw KernelError("merged proof does not conclude the subgoal");
    return p.with_goal_replaced(goal, sub.subgoals());
}

// --- propositional rules ------------------------------------------------------

const std::vector<std::string>& prop_rule_names() {
    static const std::vector<std::string> names{"implyR", "implyL", "andL",  "andR",      "orL",        "orR",
                                                "notL",   "notR",   "equivL", "equivR",   "close",      "closeTrue",
                                                "closeFalse", "cut", "hideL", "hideR"};
    return names;
}

Provable apply_prop_rule(const Provable& p, std::size_t goal, const std::string& rule, const Position& pos,
                         const std::optional<Formula>& input) {
    const Sequent& s = goal_at(p, goal);
    auto need = [&](Side side, FormulaKind kind) -> const Formula& {
        const Formula& f = top_formula(s, pos, side, rule);
        if (f.kind() != kind) shape_error(rule, f);
        return f;
    };
    auto with = [&](Side side, const Formula& f) {
        Sequent out = s;
        out.side(side)[slot(s, pos)] = f;
        return out;
    };
    auto without = [&]() {
        Sequent out = s;
        auto& fs = out.side(pos.side);
        fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(slot(s, pos)));
        return out;
    };
    auto append = [](Sequent out, Side side, const Formula& f) {
        out.side(side).push_back(f);
        return out;
    };

    if (rule == "implyR") {
        const Formula& f = need(Side::Succ, FormulaKind::Imply);
        return p.with_goal_replaced(goal, {append(with(Side::Succ, f.right()), Side::Ante, f.left())});
    }
    if (rule == "implyL") {
        const Formula& f = need(Side::Ante, FormulaKind::Imply);
        return p.with_goal_replaced(goal, {append(without(), Side::Succ, f.left()), with(Side::Ante, f.right())});
    }
    if (rule == "andL") {
        const Formula& f = need(Side::Ante, FormulaKind::And);
        return p.with_goal_replaced(goal, {append(with(Side::Ante, f.left()), Side::Ante, f.right())});
    }
    if (rule == "andR") {
        const Formula& f = need(Side::Succ, FormulaKind::And);
        return p.with_goal_replaced(goal, {with(Side::Succ, f.left()), with(Side::Succ, f.right())});
    }
    if (rule == "orL") {
        const Formula& f = need(Side::Ante, FormulaKind::Or);
        return p.with_goal_replaced(goal, {with(Side::Ante, f.left()), with(Side::Ante, f.right())});
    }
    if (rule == "orR") {
        const Formula& f = need(Side::Succ, FormulaKind::Or);
        return p.with_goal_replaced(goal, {append(with(Side::Succ, f.left()), Side::Succ, f.right())});
    }
    if (rule == "notL") {
        const Formula& f = need(Side::Ante, FormulaKind::Not);
        return p.with_goal_replaced(goal, {append(without(), Side::Succ, f.child())});
    }
    if (rule == "notR") {
        const Formula& f = need(Side::Succ, FormulaKind::Not);
        return p.with_goal_replaced(goal, {append(without(), Side::Ante, f.child())});
    }
    if (rule == "equivL") {
        const Formula& f = need(Side::Ante, FormulaKind::Equiv);
        Formula both = Formula::conj(f.left(), f.right());
        Formula neither = Formula::conj(Formula::negation(f.left()), Formula::negation(f.right()));
        return p.with_goal_replaced(goal, {with(Side::Ante, both), with(Side::Ante, neither)});
    }
    if (rule == "equivR") {
        const Formula& f = need(Side::Succ, FormulaKind::Equiv);
        return p.with_goal_replaced(goal, {append(with(Side::Succ, f.right()), Side::Ante, f.left()),
                                           append(with(Side::Succ, f.left()), Side::Ante, f.right())});
    }
    if (rule == "close") {
        if (!pos.top_level()) throw KernelError("close applies only to top-level formulas");
        const Formula& f = s.at(pos.side, pos.index);
        const auto& other = s.side(pos.side == Side::Ante ? Side::Succ : Side::Ante);
        if (std::find(other.begin(), other.end(), f) == other.end())
            throw KernelError("close: " + to_string(f) + " does not occur on the other side");
        return p.with_goal_replaced(goal, {});
    }
    if (rule == "closeTrue") {
        need(Side::Succ, FormulaKind::True);
        return p.with_goal_replaced(goal, {});
    }
    if (rule == "closeFalse") {
        need(Side::Ante, FormulaKind::False);
        return p.with_goal_replaced(goal, {});
    }
    if (rule == "cut") {
        if (!input) throw KernelError("cut requires a formula");
        if (has_schema_symbols(*input)) throw KernelError("cut formula contains schema symbols");
        return p.with_goal_replaced(goal, {append(s, Side::Ante, *input), append(s, Side::Succ, *input)});
    }
    if (rule == "hideL" || rule == "hideR") {
        top_formula(s, pos, rule == "hideL" ? Side::Ante : Side::Succ, rule);
        return p.with_goal_replaced(goal, {without()});
    }
    throw KernelError("unknown rule " + rule);
}

// --- renaming and annotations -------------------------------------------------

Expr rename_vars(const Expr& e, const std::map<std::string, std::string>& renaming) {
    auto rn = [&](const std::string& n) {
        auto it = renaming.find(n);
        return it == renaming.end() ? n : it->second;
    };
    auto kids = children(e);
    for (auto& k : kids) k = rename_vars(k, renaming);
    if (const auto* t = std::get_if<Term>(&e)) {
        if (t->kind() == TermKind::Variable) return Term::variable(rn(t->name()));
        if (t->kind() == TermKind::DiffSymbol) return Term::diff_symbol(rn(t->name()));
        return with_children(e, kids);
    }
    if (const auto* p = std::get_if<Program>(&e)) {
        switch (p->kind()) {
            case ProgramKind::Assign:
                return Program::assign(rn(p->name()), std::get<Term>(kids[0]));
            case ProgramKind::Ode: {
                std::vector<Program::Equation> eqs;
                for (std::size_t i = 0; i < p->equations().size(); ++i)
                    eqs.push_back({rn(p->equations()[i].var), std::get<Term>(kids[i])});
                std::optional<Formula> dom;
                if (p->domain()) dom = std::get<Formula>(kids.back());
                return Program::ode(std::move(eqs), dom);
            }
            case ProgramKind::Loop: {
                std::optional<Formula> inv;
                if (p->invariant()) inv = std::get<Formula>(rename_vars(*p->invariant(), renaming));
                return Program::loop(std::get<Program>(kids[0]), inv);
            }
            default:
                return with_children(e, kids);
        }
    }
    const auto& f = std::get<Formula>(e);
    if (f.kind() == FormulaKind::Forall || f.kind() == FormulaKind::Exists)
        return Formula::quantifier(f.kind(), rn(f.name()), std::get<Formula>(kids[0]));
    return with_children(e, kids);
}

Expr strip_annotations(const Expr& e) {
    auto kids = children(e);
    for (auto& k : kids) k = strip_annotations(k);
    if (const auto* p = std::get_if<Program>(&e))
        if (p->kind() == ProgramKind::Loop) return Program::loop(std::get<Program>(kids[0]));
    return with_children(e, kids);
}

// --- axioms ---------------------------------------------------------------------

const std::vector<Axiom>& axioms() {
    static const std::vector<Axiom> list = [] {
        auto ax = [](const char* name, const char* display, const char* text, PosInExpr key, PosInExpr repl,
                     std::optional<PosInExpr> guard = std::nullopt) {
            return Axiom{name, display, parse_formula(text), std::move(key), std::move(repl), std::move(guard)};
        };
        return std::vector<Axiom>{
            ax("assignb", "[:=]", "[x:=f();]p(x) <-> p(f())", {0}, {1}),
            ax("testb", "[?]", "[?q(||);]p(||) <-> (q(||) -> p(||))", {0}, {1}),
            ax("choiceb", "[++]", "[a;++b;]p(||) <-> [a;]p(||) & [b;]p(||)", {0}, {1}),
            ax("composeb", "[;]", "[a;b;]p(||) <-> [a;][b;]p(||)", {0}, {1}),
            ax("iterateb", "[*]", "[{a;}*]p(||) <-> p(||) & [a;][{a;}*]p(||)", {0}, {1}),
            ax("choicebCond", "[++]c", "[b;]p(||) -> ([a;++b;]p(||) <-> [a;]p(||))", {1, 0}, {1, 1}, PosInExpr{0}),
        };
    }();
    return list;
}

const Axiom* find_axiom(const std::string& name) {
    for (const auto& a : axioms())
        if (a.name == name) return &a;
    return nullptr;
}

// --- uniform substitution -------------------------------------------------------

std::string Substitution::to_string() const {
    std::vector<std::string> parts;
    for (const auto& [f, t] : functions) {
        bool unary = !free_vars(t).empty() || dlp::to_string(t).find('.') != std::string::npos;
        parts.push_back(f + (unary ? "(.)" : "()") + "~>" + dlp::to_string(t));
    }
    for (const auto& [p, f] : predicates) parts.push_back(p + "(.)~>" + dlp::to_string(f));
    for (const auto& [a, prog] : programs) parts.push_back(a + "~>" + dlp::to_string(prog));
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
    return out + "}";
}

namespace {

class Applier {
public:
    Applier(const Substitution& s, bool check) : s_(s), check_(check) {}

    Term term(const Term& t, const VarSet& taboo) {
        if (t.kind() == TermKind::Dot && dot_) {
            require(free_vars(*dot_), taboo, ".", dlp::to_string(*dot_));
            return *dot_;
        }
        if (t.kind() == TermKind::FuncApp) {
            auto it = s_.functions.find(t.name());
            if (it != s_.functions.end()) {
                require(free_vars(it->second), taboo, dlp::to_string(t), dlp::to_string(it->second));
                if (t.args().empty()) return it->second;
                if (t.args().size() != 1) throw KernelError("cannot substitute symbol " + t.name() + " of arity > 1");
                Applier inner(empty_, check_);
                inner.dot_ = term(t.args()[0], taboo);
                return inner.term(it->second, VarSet{});
            }
        }
        auto kids = children(t);
        if (kids.empty()) return t;
        for (auto& k : kids) k = term(std::get<Term>(k), taboo);
        return std::get<Term>(with_children(t, kids));
    }

    Formula formula(const Formula& f, const VarSet& taboo) {
        switch (f.kind()) {
            case FormulaKind::PredApp: {
                auto it = s_.predicates.find(f.name());
                if (it == s_.predicates.end()) break;
                if (f.all_args()) return it->second;
                require(free_vars(it->second), taboo, dlp::to_string(f), dlp::to_string(it->second));
                if (f.terms().empty()) return it->second;
                if (f.terms().size() != 1) throw KernelError("cannot substitute symbol " + f.name() + " of arity > 1");
                Applier inner(empty_, check_);
                inner.dot_ = term(f.terms()[0], taboo);
                return inner.formula(it->second, VarSet{});
            }
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                return Formula::quantifier(f.kind(), f.name(), formula(f.body(), taboo.unite(VarSet{f.name()})));
            case FormulaKind::Box: {
                auto [prog, after] = program(f.program(), taboo);
                return Formula::box(prog, formula(f.body(), after));
            }
            default:
                break;
        }
        auto kids = children(f);
        for (auto& k : kids) {
            if (const auto* t = std::get_if<Term>(&k)) k = term(*t, taboo);
            else k = formula(std::get<Formula>(k), taboo);
        }
        return std::get<Formula>(with_children(f, kids));
    }

    std::pair<Program, VarSet> program(const Program& p, const VarSet& taboo) {
        switch (p.kind()) {
            case ProgramKind::Constant: {
                auto it = s_.programs.find(p.name());
                if (it == s_.programs.end()) return {p, VarSet::all()};
                return {it->second, taboo.unite(bound_vars(it->second))};
            }
            case ProgramKind::Assign:
                return {Program::assign(p.name(), term(p.rhs(), taboo)), taboo.unite(VarSet{p.name()})};
            case ProgramKind::Test:
                return {Program::test(formula(p.condition(), taboo)), taboo};
            case ProgramKind::Ode: {
                VarSet inside = taboo.unite(bound_vars(p));
                std::vector<Program::Equation> eqs;
                for (const auto& eq : p.equations()) eqs.push_back({eq.var, term(eq.rhs, inside)});
                std::optional<Formula> dom;
                if (p.domain()) dom = formula(*p.domain(), inside);
                return {Program::ode(std::move(eqs), dom), inside};
            }
            case ProgramKind::Choice: {
                auto [l, lu] = program(p.left(), taboo);
                auto [r, ru] = program(p.right(), taboo);
                return {Program::choice(l, r), lu.unite(ru)};
            }
            case ProgramKind::Compose: {
                auto [l, lu] = program(p.left(), taboo);
                auto [r, ru] = program(p.right(), lu);
                return {Program::compose(l, r), ru};
            }
            case ProgramKind::Loop: {
                auto first = program(p.body(), taboo);
                VarSet inside = taboo.unite(bound_vars(first.first));
                auto second = program(p.body(), inside);
                return {Program::loop(second.first, p.invariant()), inside};
            }
        }
        return {p, taboo};
    }

private:
    const Substitution& s_;
    bool check_;
    std::optional<Term> dot_;
    static inline const Substitution empty_{};

    void require(const VarSet& fv, const VarSet& taboo, const std::string& site, const std::string& repl) const {
        if (!check_ || !fv.intersects(taboo)) return;
        VarSet bad = fv.intersect(taboo);
        std::string var = bad.is_all() ? "*" : *bad.names().begin();
        throw ClashError("substitution clash: replacing " + site + " by " + repl + " would capture free variable " +
                             var + " bound at this occurrence",
                         var, site);
    }
};

class Matcher {
public:
    Match m;

    bool var(const std::string& s, const std::string& c) {
        auto it = m.renaming.find(s);
        if (it != m.renaming.end()) return it->second == c;
        if (!targets_.insert(c).second) return false;
        m.renaming[s] = c;
        return true;
    }

    std::string renamed(const std::string& s) {
        auto it = m.renaming.find(s);
        if (it != m.renaming.end()) return it->second;
        var(s, s);
        return m.renaming.at(s);
    }

    template <typename T>
    static bool bind(std::map<std::string, T>& map, const std::string& name, const T& value) {
        auto [it, inserted] = map.emplace(name, value);
        return inserted || it->second == value;
    }

    bool term(const Term& s, const Term& c) {
        switch (s.kind()) {
            case TermKind::Variable:
            case TermKind::DiffSymbol:
                return c.kind() == s.kind() && var(s.name(), c.name());
            case TermKind::FuncApp:
                if (s.args().empty()) return bind(m.substitution.functions, s.name(), c);
                if (s.args().size() == 1 && s.args()[0].kind() == TermKind::Variable) {
                    std::string x = renamed(s.args()[0].name());
                    return bind(m.substitution.functions, s.name(),
                                substitute_free(c, {{x, Term::dot()}}));
                }
                return false;
            case TermKind::Number:
                return c.kind() == TermKind::Number && c.value() == s.value();
            case TermKind::Dot:
                return c.kind() == TermKind::Dot;
            default:
                if (c.kind() != s.kind()) return false;
                if (s.kind() == TermKind::Power && s.exponent() != c.exponent()) return false;
                for (std::size_t i = 0; i < s.args().size(); ++i)
                    if (!term(s.args()[i], c.args()[i])) return false;
                return true;
        }
    }

    bool formula(const Formula& s, const Formula& c) {
        if (s.kind() == FormulaKind::PredApp) {
            if (s.all_args() || s.terms().empty()) return bind(m.substitution.predicates, s.name(), c);
            if (s.terms().size() == 1 && s.terms()[0].kind() == TermKind::Variable) {
                std::string x = renamed(s.terms()[0].name());
                try {
                    return bind(m.substitution.predicates, s.name(), substitute_free(c, {{x, Term::dot()}}));
                } catch (const CaptureError&) {
                    return false;
                }
            }
            return false;
        }
        if (c.kind() != s.kind()) return false;
        switch (s.kind()) {
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                return var(s.name(), c.name()) && formula(s.body(), c.body());
            case FormulaKind::Box:
                return program(s.program(), c.program()) && formula(s.body(), c.body());
            default:
                for (std::size_t i = 0; i < s.terms().size(); ++i)
                    if (!term(s.terms()[i], c.terms()[i])) return false;
                for (std::size_t i = 0; i < s.subs().size(); ++i)
                    if (!formula(s.subs()[i], c.subs()[i])) return false;
                return true;
        }
    }

    bool program(const Program& s, const Program& c) {
        if (s.kind() == ProgramKind::Constant) return bind(m.substitution.programs, s.name(), c);
        if (c.kind() != s.kind()) return false;
        switch (s.kind()) {
            case ProgramKind::Assign:
                return var(s.name(), c.name()) && term(s.rhs(), c.rhs());
            case ProgramKind::Test:
                return formula(s.condition(), c.condition());
            case ProgramKind::Ode: {
                if (s.equations().size() != c.equations().size()) return false;
                if (s.domain().has_value() != c.domain().has_value()) return false;
                for (std::size_t i = 0; i < s.equations().size(); ++i)
                    if (!var(s.equations()[i].var, c.equations()[i].var) ||
                        !term(s.equations()[i].rhs, c.equations()[i].rhs))
                        return false;
                return !s.domain() || formula(*s.domain(), *c.domain());
            }
            case ProgramKind::Loop:
                return program(s.body(), c.body());
            default:
                return program(s.left(), c.left()) && program(s.right(), c.right());
        }
    }

    bool any(const Expr& s, const Expr& c) {
        if (s.index() != c.index()) return false;
        if (const auto* t = std::get_if<Term>(&s)) return term(*t, std::get<Term>(c));
        if (const auto* p = std::get_if<Program>(&s)) return program(*p, std::get<Program>(c));
        return formula(std::get<Formula>(s), std::get<Formula>(c));
    }

private:
    std::set<std::string> targets_;
};

Expr apply_unchecked(const Expr& e, const Substitution& s) {
    Applier a(s, false);
    if (const auto* t = std::get_if<Term>(&e)) return a.term(*t, VarSet{});
    if (const auto* p = std::get_if<Program>(&e)) return a.program(*p, VarSet{}).first;
    return a.formula(std::get<Formula>(e), VarSet{});
}

}  // namespace

std::optional<Match> match_schema(const Expr& schema, const Expr& concrete) {
    Matcher mt;
    try {
        if (!mt.any(schema, concrete)) return std::nullopt;
    } catch (const CaptureError&) {
        return std::nullopt;
    }
    Match m = mt.m;
    Expr renamed = rename_vars(schema, m.renaming);
    try {
        if (!(apply_unchecked(renamed, m.substitution) == concrete)) return std::nullopt;
    } catch (const KernelError&) {
        return std::nullopt;
    }
    for (auto it = m.renaming.begin(); it != m.renaming.end();)
        it = it->first == it->second ? m.renaming.erase(it) : std::next(it);
    auto& fs = m.substitution.functions;
    for (auto it = fs.begin(); it != fs.end();) {
        bool id = it->second == Term::func(it->first) || it->second == Term::func(it->first, {Term::dot()});
        it = id ? fs.erase(it) : std::next(it);
    }
    auto& ps = m.substitution.predicates;
    for (auto it = ps.begin(); it != ps.end();) {
        bool id = it->second == Formula::pred(it->first) || it->second == Formula::predicational(it->first) ||
                  it->second == Formula::pred(it->first, {Term::dot()});
        it = id ? ps.erase(it) : std::next(it);
    }
    auto& as = m.substitution.programs;
    for (auto it = as.begin(); it != as.end();)
        it = it->second == Program::constant(it->first) ? as.erase(it) : std::next(it);
    return m;
}

Formula uniform_substitute(const Formula& f, const Substitution& s) { return Applier(s, true).formula(f, VarSet{}); }

Program uniform_substitute(const Program& p, const Substitution& s) {
    return Applier(s, true).program(p, VarSet{}).first;
}

Term uniform_substitute(const Term& t, const Substitution& s) { return Applier(s, true).term(t, VarSet{}); }

// --- polarity and contexts --------------------------------------------------------

int polarity(const Formula& f, const PosInExpr& path) {
    int sign = 1;
    Formula cur = f;
    for (int i : path) {
        switch (cur.kind()) {
            case FormulaKind::Not:
                sign = -sign;
                break;
            case FormulaKind::Imply:
                if (i == 0) sign = -sign;
                break;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                break;
            case FormulaKind::Box:
                if (i == 0) return 0;
                break;
            default:
                return 0;
        }
        cur = std::get<Formula>(subexpr_at(Expr(cur), PosInExpr{i}));
    }
    return sign;
}

namespace {

Expr subexpr_or_throw(const Expr& e, const PosInExpr& path, const std::string& what) {
    try {
        return subexpr_at(e, path);
    } catch (const PositionError& err) {
        throw KernelError(what + err.what());
    }
}

void check_hole(const Context& c, std::size_t sort) {
    Expr at = subexpr_or_throw(Expr(c.formula), c.hole, "malformed context: ");
    if (at.index() != sort) throw KernelError("malformed context: hole has the wrong sort");
}

}  // namespace

Provable contextual_equiv(const Context& c, const Formula& p, const Formula& q) {
    check_hole(c, 2);
    Sequent concl{{}, {Formula::equiv(c.fill(p), c.fill(q))}};
    return Provable(concl, {Sequent{{}, {Formula::equiv(p, q)}}});
}

Provable contextual_eq(const Context& c, const Term& f, const Term& g) {
    check_hole(c, 0);
    Sequent concl{{}, {Formula::equiv(c.fill(f), c.fill(g))}};
    return Provable(concl, {Sequent{{}, {Formula::compare(FormulaKind::Equal, f, g)}}});
}

Provable contextual_mon(const Context& c, const Formula& p, const Formula& q) {
    check_hole(c, 2);
    if (polarity(c.formula, c.hole) != 1) throw KernelError("monotonicity needs a positive-polarity context");
    Sequent concl{{}, {Formula::implies(c.fill(p), c.fill(q))}};
    return Provable(concl, {Sequent{{}, {Formula::implies(p, q)}}});
}

// --- axiom application ----------------------------------------------------------

Provable use_axiom_at(const Provable& p, std::size_t goal, const Position& pos, const std::string& name) {
    const Sequent& s = goal_at(p, goal);
    const Axiom* ax = find_axiom(name);
    if (!ax) throw KernelError("unknown axiom " + name);
    Formula top = [&] {
        try {
            return s.at(pos.side, pos.index);
        } catch (const PositionError& e) {
            throw KernelError(e.what());
        }
    }();
    Expr sub = subexpr_or_throw(Expr(top), pos.inner, "");
    if (!std::holds_alternative<Formula>(sub)) throw KernelError(name + " applies to formulas only");
    Formula concrete = std::get<Formula>(strip_annotations(sub));
    Formula key = std::get<Formula>(subexpr_at(Expr(ax->schema), ax->key));
    auto m = match_schema(key, concrete);
    if (!m) throw KernelError("axiom " + ax->display + " does not match " + to_string(concrete));
    Formula schema = std::get<Formula>(rename_vars(ax->schema, m->renaming));
    Formula inst = uniform_substitute(schema, m->substitution);
    if (!(std::get<Formula>(subexpr_at(Expr(inst), ax->key)) == concrete))
        throw KernelError("axiom instance does not reproduce " + to_string(concrete));
    Formula repl = std::get<Formula>(subexpr_at(Expr(inst), ax->repl));
    Sequent main = s;
    main.side(pos.side)[static_cast<std::size_t>(pos.index - 1)] = replace_at(top, pos.inner, repl);
    if (!ax->guard) return p.with_goal_replaced(goal, {main});

    Formula guard = std::get<Formula>(subexpr_at(Expr(inst), *ax->guard));
    int sign = polarity(top, pos.inner) * (pos.side == Side::Succ ? 1 : -1);
    if (sign != 1) throw KernelError("conditional axiom " + ax->display + " needs a positive-polarity position");
    if (free_vars(guard).intersects(binders_along(top, pos.inner)))
        throw KernelError("condition " + to_string(guard) + " mentions variables bound around the position");
    Sequent side = s;
    side.succ.insert(side.succ.begin(), guard);
    return p.with_goal_replaced(goal, {main, side});
}

// --- loop induction ---------------------------------------------------------------

std::vector<Formula> constant_context(const std::vector<Formula>& ante, const Program& body) {
    VarSet bv = bound_vars(body);
    std::vector<Formula> out;
    for (const auto& f : ante)
        if (!free_vars(f).intersects(bv)) out.push_back(f);
    return out;
}

Provable apply_loop_rule(const Provable& p, std::size_t goal, const Position& pos, const Formula& invariant) {
    const Sequent& s = goal_at(p, goal);
    const Formula& f = top_formula(s, pos, Side::Succ, "loop");
    if (f.kind() != FormulaKind::Box || f.program().kind() != ProgramKind::Loop) shape_error("loop", f);
    if (has_schema_symbols(invariant)) throw KernelError("invariant contains schema symbols");
    const Program& body = f.program().body();
    Sequent base = s;
    base.succ[slot(s, pos)] = invariant;
    Sequent use{{invariant}, {f.body()}};
    Sequent step{{invariant}, {Formula::box(body, invariant)}};
    for (const auto& g : constant_context(s.ante, body)) step.ante.push_back(g);
    return p.with_goal_replaced(goal, {base, use, step});
}

// --- arithmetic -------------------------------------------------------------------

Provable close_by_qe(const Provable& p, std::size_t goal, double timeout_seconds) {
    const Sequent& s = goal_at(p, goal);
    Sequent fo;
    for (const auto& f : s.ante)
        if (arith::is_first_order(f)) fo.ante.push_back(f);
    for (const auto& f : s.succ)
        if (arith::is_first_order(f)) fo.succ.push_back(f);
    arith::Options opts;
    opts.timeout_seconds = timeout_seconds;
    arith::Verdict v = arith::qe_decide(fo, opts);
    if (!std::holds_alternative<arith::Valid>(v)) throw KernelError("QE: " + arith::to_string(v));
    return p.with_goal_replaced(goal, {});
}

}  // namespace dlp
