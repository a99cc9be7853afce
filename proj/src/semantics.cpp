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

#include "dlprover/semantics.hpp"

#include <algorithm>

namespace dlp {

// --- VarSet -------------------------------------------------------------------

VarSet& VarSet::operator|=(const VarSet& other) {
    top_ = top_ || other.top_;
    names_.insert(other.names_.begin(), other.names_.end());
    return *this;
}

VarSet VarSet::unite(const VarSet& other) const {
    VarSet out = *this;
    out |= other;
    return out;
}

VarSet VarSet::intersect(const VarSet& other) const {
    if (top_ && other.top_) return all();
    if (top_) return other;
    if (other.top_) return *this;
    VarSet out;
    for (const auto& n : names_)
        if (other.names_.count(n)) out.names_.insert(n);
    return out;
}

VarSet VarSet::minus(const VarSet& other) const {
    if (other.top_) return {};
    VarSet out = *this;
    for (const auto& n : other.names_) out.names_.erase(n);
    return out;
}

bool VarSet::intersects(const VarSet& other) const {
    if (top_ && other.top_) return true;
    if (top_) return !other.empty();
    if (other.top_) return !empty();
    for (const auto& n : names_)
        if (other.names_.count(n)) return true;
    return false;
}

std::string VarSet::to_string() const {
    if (top_) return "{*}";
    std::string out = "{";
    bool first = true;
    for (const auto& n : names_) {
        if (!first) out += ",";
        out += n;
        first = false;
    }
    return out + "}";
}

// --- free and bound variables -------------------------------------------------

namespace {

VarSet ode_vars(const Program& p) {
    VarSet v;
    for (const auto& eq : p.equations()) {
        v.insert(eq.var);
        v.insert(eq.var + "'");
    }
    return v;
}

}  // namespace

VarSet free_vars(const Term& t) {
    switch (t.kind()) {
        case TermKind::Variable:
            return VarSet{t.name()};
        case TermKind::DiffSymbol:
            return VarSet{t.name() + "'"};
        case TermKind::Number:
        case TermKind::Dot:
            return {};
        default: {
            VarSet v;
            for (const auto& a : t.args()) v |= free_vars(a);
            return v;
        }
    }
}

VarSet must_bound_vars(const Program& p) {
    switch (p.kind()) {
        case ProgramKind::Assign:
            return VarSet{p.name()};
        case ProgramKind::Ode:
            return ode_vars(p);
        case ProgramKind::Choice:
            return must_bound_vars(p.left()).intersect(must_bound_vars(p.right()));
        case ProgramKind::Compose:
            return must_bound_vars(p.left()).unite(must_bound_vars(p.right()));
        default:
            return {};
    }
}

VarSet bound_vars(const Program& p) {
    switch (p.kind()) {
        case ProgramKind::Constant:
            return VarSet::all();
        case ProgramKind::Assign:
            return VarSet{p.name()};
        case ProgramKind::Test:
            return {};
        case ProgramKind::Ode:
            return ode_vars(p);
        case ProgramKind::Loop:
            return bound_vars(p.body());
        default:
            return bound_vars(p.left()).unite(bound_vars(p.right()));
    }
}

VarSet free_vars(const Program& p) {
    switch (p.kind()) {
        case ProgramKind::Constant:
            return VarSet::all();
        case ProgramKind::Assign:
            return free_vars(p.rhs());
        case ProgramKind::Test:
            return free_vars(p.condition());
        case ProgramKind::Ode: {
            VarSet v;
            for (const auto& eq : p.equations()) {
                v.insert(eq.var);
                v |= free_vars(eq.rhs);
            }
            if (p.domain()) v |= free_vars(*p.domain());
            return v;
        }
        case ProgramKind::Choice:
            return free_vars(p.left()).unite(free_vars(p.right()));
        case ProgramKind::Compose:
            return free_vars(p.left()).unite(free_vars(p.right()).minus(must_bound_vars(p.left())));
        case ProgramKind::Loop:
            return free_vars(p.body());
    }
    return {};
}

VarSet free_vars(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
            return {};
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            return free_vars(f.body()).minus(VarSet{f.name()});
        case FormulaKind::Box:
            return free_vars(f.program()).unite(free_vars(f.body()).minus(must_bound_vars(f.program())));
        case FormulaKind::PredApp: {
            if (f.all_args()) return VarSet::all();
            VarSet v;
            for (const auto& t : f.terms()) v |= free_vars(t);
            return v;
        }
        default: {
            VarSet v;
            for (const auto& t : f.terms()) v |= free_vars(t);
            for (const auto& s : f.subs()) v |= free_vars(s);
            return v;
        }
    }
}

VarSet free_vars(const Expr& e) {
    return std::visit([](const auto& x) { return free_vars(x); }, e);
}

VarSet free_vars(const Sequent& s) {
    VarSet v;
    for (const auto& f : s.ante) v |= free_vars(f);
    for (const auto& f : s.succ) v |= free_vars(f);
    return v;
}

VarSet bound_vars(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            return bound_vars(f.body()).unite(VarSet{f.name()});
        case FormulaKind::Box:
            return bound_vars(f.program()).unite(bound_vars(f.body()));
        default: {
            VarSet v;
            for (const auto& s : f.subs()) v |= bound_vars(s);
            return v;
        }
    }
}

VarSet bound_vars(const Expr& e) {
    if (std::holds_alternative<Term>(e)) return {};
    if (const auto* p = std::get_if<Program>(&e)) return bound_vars(*p);
    return bound_vars(std::get<Formula>(e));
}

// --- names and symbols --------------------------------------------------------

namespace {

void collect_names(const Expr& e, std::set<std::string>& out) {
    if (const auto* t = std::get_if<Term>(&e)) {
        if (t->kind() == TermKind::Variable || t->kind() == TermKind::DiffSymbol || t->kind() == TermKind::FuncApp)
            out.insert(t->name());
    } else if (const auto* p = std::get_if<Program>(&e)) {
        if (p->kind() == ProgramKind::Assign || p->kind() == ProgramKind::Constant) out.insert(p->name());
        if (p->kind() == ProgramKind::Ode)
            for (const auto& eq : p->equations()) out.insert(eq.var);
        if (p->invariant()) collect_names(*p->invariant(), out);
    } else {
        const auto& f = std::get<Formula>(e);
        if (!f.name().empty()) out.insert(f.name());
    }
    for (const auto& k : children(e)) collect_names(k, out);
}

bool schema_rec(const Expr& e) {
    if (const auto* t = std::get_if<Term>(&e)) {
        if (t->kind() == TermKind::FuncApp || t->kind() == TermKind::Dot) return true;
    } else if (const auto* p = std::get_if<Program>(&e)) {
        if (p->kind() == ProgramKind::Constant) return true;
        if (p->invariant() && schema_rec(*p->invariant())) return true;
    } else if (std::get<Formula>(e).kind() == FormulaKind::PredApp) {
        return true;
    }
    for (const auto& k : children(e))
        if (schema_rec(k)) return true;
    return false;
}

}  // namespace

std::set<std::string> all_names(const Expr& e) {
    std::set<std::string> out;
    collect_names(e, out);
    return out;
}

std::set<std::string> all_names(const Sequent& s) {
    std::set<std::string> out;
    for (const auto& f : s.ante) collect_names(f, out);
    for (const auto& f : s.succ) collect_names(f, out);
    return out;
}

bool has_schema_symbols(const Expr& e) { return schema_rec(e); }

VarSet binders_along(const Formula& f, const PosInExpr& path) {
    VarSet bound;
    Expr cur = f;
    for (int i : path) {
        if (const auto* g = std::get_if<Formula>(&cur)) {
            if (g->kind() == FormulaKind::Forall || g->kind() == FormulaKind::Exists) bound.insert(g->name());
            if (g->kind() == FormulaKind::Box && i == 1) bound |= bound_vars(g->program());
        } else if (const auto* p = std::get_if<Program>(&cur)) {
            if (p->kind() == ProgramKind::Compose && i == 1) bound |= bound_vars(p->left());
            if (p->kind() == ProgramKind::Loop) bound |= bound_vars(p->body());
            if (p->kind() == ProgramKind::Ode) bound |= ode_vars(*p);
        }
        cur = subexpr_at(cur, PosInExpr{i});
    }
    return bound;
}

// --- capture-avoiding replacement of free variables ---------------------------

namespace {

struct FreeSubst {
    const std::map<std::string, Term>& repl;
    std::set<std::string> active;  // replaced variables still free here
    std::set<std::string> poison;  // replaced variables that are only partially bound here
    VarSet taboo;                  // variables bound above this point

    void check_taboo(const std::string& var, const Term& by) const {
        if (free_vars(by).intersects(taboo))
            throw CaptureError("replacing " + var + " would capture a variable of " + free_vars(by).to_string() +
                               " bound at this point");
    }

    void poison_bound(const VarSet& bv, const VarSet& mbv) {
        for (auto it = active.begin(); it != active.end();) {
            if (bv.contains(*it)) {
                if (!mbv.contains(*it)) poison.insert(*it);
                it = active.erase(it);
            } else {
                ++it;
            }
        }
    }

    Term term(const Term& t) const {
        if (t.kind() == TermKind::Variable) {
            if (poison.count(t.name()))
                throw CaptureError("variable " + t.name() + " is only bound on some runs here and cannot be replaced");
            if (active.count(t.name())) {
                const auto& by = repl.at(t.name());
                check_taboo(t.name(), by);
                return by;
            }
            return t;
        }
        auto kids = children(t);
        if (kids.empty()) return t;
        for (auto& k : kids) k = term(std::get<Term>(k));
        return std::get<Term>(with_children(t, kids));
    }

    Formula formula(const Formula& f) {
        switch (f.kind()) {
            case FormulaKind::True:
            case FormulaKind::False:
                return f;
            case FormulaKind::PredApp:
                if (f.all_args() && !(active.empty() && poison.empty()))
                    throw CaptureError("predicational " + f.name() + "(||) depends on all variables");
                break;
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                FreeSubst inner = *this;
                inner.active.erase(f.name());
                inner.poison.erase(f.name());
                inner.taboo.insert(f.name());
                return Formula::quantifier(f.kind(), f.name(), inner.formula(f.body()));
            }
            case FormulaKind::Box: {
                FreeSubst inner = *this;
                Program p = inner.program(f.program());
                return Formula::box(p, inner.formula(f.body()));
            }
            default:
                break;
        }
        auto kids = children(f);
        for (auto& k : kids) {
            if (auto* t = std::get_if<Term>(&k)) k = term(*t);
            else k = FreeSubst(*this).formula(std::get<Formula>(k));
        }
        return std::get<Formula>(with_children(f, kids));
    }

    // Rewrites p and advances this state past it.
    Program program(const Program& p) {
        switch (p.kind()) {
            case ProgramKind::Constant:
                if (!active.empty() || !poison.empty())
                    throw CaptureError("program symbol " + p.name() + " reads all variables");
                taboo = VarSet::all();
                return p;
            case ProgramKind::Assign: {
                Term rhs = term(p.rhs());
                active.erase(p.name());
                poison.erase(p.name());
                taboo.insert(p.name());
                return Program::assign(p.name(), rhs);
            }
            case ProgramKind::Test:
                return Program::test(FreeSubst(*this).formula(p.condition()));
            case ProgramKind::Ode: {
                for (const auto& eq : p.equations())
                    if (active.count(eq.var) || poison.count(eq.var))
                        throw CaptureError("cannot replace ODE state variable " + eq.var);
                taboo |= bound_vars(p);
                std::vector<Program::Equation> eqs;
                for (const auto& eq : p.equations()) eqs.push_back({eq.var, term(eq.rhs)});
                std::optional<Formula> dom;
                if (p.domain()) dom = FreeSubst(*this).formula(*p.domain());
                return Program::ode(std::move(eqs), std::move(dom));
            }
            case ProgramKind::Choice: {
                FreeSubst l = *this;
                FreeSubst r = *this;
                Program left = l.program(p.left());
                Program right = r.program(p.right());
                taboo = l.taboo.unite(r.taboo);
                poison_bound(bound_vars(p), must_bound_vars(p));
                return Program::choice(left, right);
            }
            case ProgramKind::Compose: {
                Program left = program(p.left());
                Program right = program(p.right());
                return Program::compose(left, right);
            }
            case ProgramKind::Loop: {
                VarSet bv = bound_vars(p.body());
                poison_bound(bv, VarSet{});
                taboo |= bv;
                FreeSubst inner = *this;
                Program body = inner.program(p.body());
                std::optional<Formula> inv;
                if (p.invariant()) inv = FreeSubst(*this).formula(*p.invariant());
                return Program::loop(body, std::move(inv));
            }
        }
        return p;
    }
};

std::set<std::string> keys_of(const std::map<std::string, Term>& m) {
    std::set<std::string> out;
    for (const auto& [k, v] : m) out.insert(k);
    return out;
}

}  // namespace

Formula substitute_free(const Formula& f, const std::map<std::string, Term>& replacements) {
    FreeSubst s{replacements, keys_of(replacements), {}, {}};
    return s.formula(f);
}

Term substitute_free(const Term& t, const std::map<std::string, Term>& replacements) {
    FreeSubst s{replacements, keys_of(replacements), {}, {}};
    return s.term(t);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

}  // namespace dlp
