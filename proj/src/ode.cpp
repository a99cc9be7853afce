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

#include "dlprover/ode.hpp"

#include <algorithm>

#include "dlprover/printer.hpp"
#include "dlprover/semantics.hpp"

namespace dlp::ode {

namespace {

Polynomial monomial(const Polynomial::Monomial& m, const Rational& c) {
    Polynomial out(c);
    for (const auto& [v, e] : m) out = out * Polynomial::var(v).pow(e);
    return out;
}

// Antiderivative in t vanishing at t = 0.
Polynomial integrate(const Polynomial& p, const std::string& t) {
    Polynomial out;
    for (const auto& [m, c] : p.terms()) {
        Polynomial::Monomial raised = m;
        unsigned k = ++raised[t];
        out += monomial(raised, c / Rational(k));
    }
    return out;
}

}  // namespace

Term OdeSolution::at(const std::string& var, const Term& when) const {
    const Polynomial& p = solution.at(var);
    if (when.kind() == TermKind::Variable) return to_term(p.substitute(time, Polynomial::var(when.name())), when.name());
    return to_term(p.substitute(time, to_polynomial(when)));
}

SolveResult solve(const Program& ode, const std::set<std::string>& taken_in) {
    if (ode.kind() != ProgramKind::Ode) return Unsolvable{"not a differential equation"};
    std::set<std::string> taken = taken_in;
    for (const auto& n : all_names(Expr(ode))) taken.insert(n);

    std::map<std::string, Polynomial> rhs;
    for (const auto& eq : ode.equations()) {
        try {
            rhs[eq.var] = to_polynomial(eq.rhs);
        } catch (const NonPolynomial& e) {
            return Unsolvable{std::string("right-hand side of ") + eq.var + "' is not polynomial: " + e.what()};
        }
        for (const auto& v : rhs[eq.var].variables())
            if (v.back() == '\'') return Unsolvable{"right-hand side mentions a differential symbol"};
    }

    OdeSolution sol;
    sol.time = fresh_name("t", taken);
    taken.insert(sol.time);
    for (const auto& eq : ode.equations()) {
        sol.initial[eq.var] = fresh_name(eq.var + "0", taken);
        taken.insert(sol.initial[eq.var]);
    }

    // Solve in dependency order; a round without progress means a cycle.
    std::set<std::string> pending;
    for (const auto& [v, p] : rhs) pending.insert(v);
    while (!pending.empty()) {
        bool progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            const Polynomial& f = rhs.at(*it);
            bool ready = true;
            for (const auto& dep : f.variables())
                if (pending.count(dep)) ready = false;
            if (!ready) {
                ++it;
                continue;
            }
            Polynomial along = f;
            for (const auto& [dep, dsol] : sol.solution)
                if (along.degree(dep) > 0) along = along.substitute(dep, dsol);
            sol.solution[*it] = Polynomial::var(sol.initial.at(*it)) + integrate(along, sol.time);
            it = pending.erase(it);
            progress = true;
        }
        if (!progress) {
            std::string names;
            for (const auto& v : pending) names += (names.empty() ? "" : ", ") + v;
            return Unsolvable{"cyclic dependencies between " + names + " have no polynomial solution"};
        }
    }
    return sol;
}

bool derivative_check(const Program& ode, const OdeSolution& sol) {
    for (const auto& eq : ode.equations()) {
        Polynomial along = to_polynomial(eq.rhs);
        for (const auto& [v, p] : sol.solution)
            if (along.degree(v) > 0) along = along.substitute(v, p);
        if (!(sol.solution.at(eq.var).derivative(sol.time) == along)) return false;
    }
    return true;
}

bool initial_check(const OdeSolution& sol) {
    for (const auto& [v, p] : sol.solution) {
        Polynomial at0 = p.partial_evaluate({{sol.time, Rational(0)}});
        if (!(at0 == Polynomial::var(sol.initial.at(v)))) return false;
    }
    return true;
}

}  // namespace dlp::ode

namespace dlp {

Provable ode::apply_ode_rule(const Provable& p, std::size_t goal, const Position& pos) {
    if (goal >= p.subgoals().size()) throw KernelError("no subgoal " + std::to_string(goal));
    const Sequent& s = p.subgoals()[goal];
    if (pos.side != Side::Succ || !pos.top_level()) throw KernelError("ODE applies to top-level succedent formulas");
    const Formula& f = [&]() -> const Formula& {
        try {
            return s.at(pos.side, pos.index);
        } catch (const PositionError& e) {
            throw KernelError(e.what());
        }
    }();
    if (f.kind() != FormulaKind::Box || f.program().kind() != ProgramKind::Ode)
        throw KernelError("ODE is not applicable to " + to_string(f));
    const Program& system = f.program();

    std::set<std::string> taken = all_names(s);
    SolveResult res = solve(system, taken);
    if (const auto* u = std::get_if<Unsolvable>(&res)) throw KernelError("ODE: " + u->reason);
    const OdeSolution& sol = std::get<OdeSolution>(res);
    taken.insert(sol.time);
    for (const auto& [x, x0] : sol.initial) taken.insert(x0);
    std::string sv = fresh_name("s", taken);

    VarSet post_fv = free_vars(f.body());
    if (system.domain()) post_fv |= free_vars(*system.domain());
    for (const auto& [x, x0] : sol.initial)
        if (post_fv.contains(x + "'")) throw KernelError("ODE: postcondition mentions " + x + "'");

    std::map<std::string, Term> at_t, at_s, to_init;
    for (const auto& [x, x0] : sol.initial) {
        at_t.emplace(x, sol.at(x, Term::variable(sol.time)));
        at_s.emplace(x, sol.at(x, Term::variable(sv)));
        to_init.emplace(x, Term::variable(x0));
    }
    Term t = Term::variable(sol.time);
    Formula body = [&] {
        try {
            return substitute_free(f.body(), at_t);
        } catch (const CaptureError& e) {
            throw KernelError(std::string("ODE: ") + e.what());
        }
    }();
    if (system.domain()) {
        Formula q = [&] {
            try {
                return substitute_free(*system.domain(), at_s);
            } catch (const CaptureError& e) {
                throw KernelError(std::string("ODE: ") + e.what());
            }
        }();
        Term sterm = Term::variable(sv);
        Formula range = Formula::conj(Formula::compare(FormulaKind::LessEqual, Term::number(0), sterm),
                                      Formula::compare(FormulaKind::LessEqual, sterm, t));
        body = Formula::implies(Formula::forall(sv, Formula::implies(range, q)), body);
    }
    Formula solved =
        Formula::forall(sol.time, Formula::implies(Formula::compare(FormulaKind::GreaterEqual, t, Term::number(0)), body));

    // Free occurrences elsewhere now denote initial values; formulas that
    // cannot be renamed are weakened away.
    Sequent out;
    for (const auto& g : s.ante) {
        try {
            out.ante.push_back(substitute_free(g, to_init));
        } catch (const CaptureError&) {
        }
    }
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
        if (static_cast<int>(i) == pos.index - 1) {
            out.succ.push_back(solved);
            continue;
        }
        try {
            out.succ.push_back(substitute_free(s.succ[i], to_init));
        } catch (const CaptureError&) {
        }
    }
    return p.with_goal_replaced(goal, {out});
}

}  // namespace dlp
