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

#ifndef DLPROVER_TESTS_ORACLES_HPP
#define DLPROVER_TESTS_ORACLES_HPP

// Independent reference implementations used as test oracles: random
// expression generation and exact evaluation. Nothing here calls into the
// prover beyond the AST constructors.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dlprover/syntax.hpp"

namespace oracle {

using dlp::Formula;
using dlp::FormulaKind;
using dlp::Program;
using dlp::ProgramKind;
using dlp::Rational;
using dlp::Term;
using dlp::TermKind;

using State = std::map<std::string, Rational>;

inline std::optional<Rational> eval(const Term& t, const State& s) {
    switch (t.kind()) {
        case TermKind::Number:
            return t.value();
        case TermKind::Variable: {
            auto it = s.find(t.name());
            if (it == s.end()) return Rational(0);
            return it->second;
        }
        case TermKind::FuncApp:
            if (t.args().empty()) {
                auto it = s.find(t.name());
                return it == s.end() ? Rational(0) : it->second;
            }
            return std::nullopt;
        case TermKind::Neg: {
            auto c = eval(t.child(), s);
            if (!c) return std::nullopt;
            return Rational(-*c);
        }
        case TermKind::Power: {
            auto c = eval(t.child(), s);
            if (!c) return std::nullopt;
            Rational r = 1;
            for (unsigned i = 0; i < t.exponent(); ++i) r *= *c;
            return r;
        }
        case TermKind::Plus:
        case TermKind::Minus:
        case TermKind::Times:
        case TermKind::Divide: {
            auto l = eval(t.left(), s);
            auto r = eval(t.right(), s);
            if (!l || !r) return std::nullopt;
            switch (t.kind()) {
                case TermKind::Plus:
                    return Rational(*l + *r);
                case TermKind::Minus:
                    return Rational(*l - *r);
                case TermKind::Times:
                    return Rational(*l * *r);
                default:
                    if (*r == 0) return std::nullopt;
                    return Rational(*l / *r);
            }
        }
        default:
            return std::nullopt;
    }
}

std::optional<bool> eval(const Formula& f, const State& s);

// All final states of an ODE-free program; nullopt when unknown.
inline std::optional<std::vector<State>> run(const Program& p, const State& s) {
    switch (p.kind()) {
        case ProgramKind::Assign: {
            auto v = eval(p.rhs(), s);
            if (!v) return std::nullopt;
            State out = s;
            out[p.name()] = *v;
            return std::vector<State>{out};
        }
        case ProgramKind::Test: {
            auto b = eval(p.condition(), s);
            if (!b) return std::nullopt;
            if (*b) return std::vector<State>{s};
            return std::vector<State>{};
        }
        case ProgramKind::Choice: {
            auto l = run(p.left(), s);
            auto r = run(p.right(), s);
            if (!l || !r) return std::nullopt;
            l->insert(l->end(), r->begin(), r->end());
            return l;
        }
        case ProgramKind::Compose: {
            auto mids = run(p.left(), s);
            if (!mids) return std::nullopt;
            std::vector<State> out;
            for (const auto& m : *mids) {
                auto fin = run(p.right(), m);
                if (!fin) return std::nullopt;
                out.insert(out.end(), fin->begin(), fin->end());
            }
            return out;
        }
        case ProgramKind::Loop: {
            // Saturate the reachable set; give up on large ones.
            std::set<State> seen{s};
            std::vector<State> frontier{s};
            while (!frontier.empty()) {
                std::vector<State> next;
                for (const auto& st : frontier) {
                    auto fin = run(p.body(), st);
                    if (!fin) return std::nullopt;
                    for (auto& f : *fin)
                        if (seen.insert(f).second) next.push_back(std::move(f));
                }
                if (seen.size() > 64) return std::nullopt;
                frontier = std::move(next);
            }
            return std::vector<State>(seen.begin(), seen.end());
        }
        default:
            return std::nullopt;
    }
}

inline std::optional<bool> eval(const Formula& f, const State& s) {
    auto cmp = [&](auto op) -> std::optional<bool> {
        auto l = eval(f.lhs(), s);
        auto r = eval(f.rhs(), s);
        if (!l || !r) return std::nullopt;
        return op(*l, *r);
    };
    auto both = [&](auto op) -> std::optional<bool> {
        auto l = eval(f.left(), s);
        auto r = eval(f.right(), s);
        if (!l || !r) return std::nullopt;
        return op(*l, *r);
    };
    switch (f.kind()) {
        case FormulaKind::Equal:
            return cmp([](const Rational& a, const Rational& b) { return a == b; });
        case FormulaKind::NotEqual:
            return cmp([](const Rational& a, const Rational& b) { return a != b; });
        case FormulaKind::Less:
            return cmp([](const Rational& a, const Rational& b) { return a < b; });
        case FormulaKind::LessEqual:
            return cmp([](const Rational& a, const Rational& b) { return a <= b; });
        case FormulaKind::Greater:
            return cmp([](const Rational& a, const Rational& b) { return a > b; });
        case FormulaKind::GreaterEqual:
            return cmp([](const Rational& a, const Rational& b) { return a >= b; });
        case FormulaKind::True:
            return true;
        case FormulaKind::False:
            return false;
        case FormulaKind::Not: {
            auto c = eval(f.child(), s);
            if (!c) return std::nullopt;
            return !*c;
        }
        case FormulaKind::And:
            return both([](bool a, bool b) { return a && b; });
        case FormulaKind::Or:
            return both([](bool a, bool b) { return a || b; });
        case FormulaKind::Imply:
            return both([](bool a, bool b) { return !a || b; });
        case FormulaKind::Equiv:
            return both([](bool a, bool b) { return a == b; });
        case FormulaKind::Box: {
            auto fins = run(f.program(), s);
            if (!fins) return std::nullopt;
            for (const auto& fin : *fins) {
                auto b = eval(f.body(), fin);
                if (!b) return std::nullopt;
                if (!*b) return false;
            }
            return true;
        }
        default:
            return std::nullopt;
    }
}

// Truth of a sequent: all antecedents imply some succedent.
inline std::optional<bool> eval(const dlp::Sequent& sq, const State& s) {
    bool all_ante = true;
    for (const auto& a : sq.ante) {
        auto v = eval(a, s);
        if (!v) return std::nullopt;
        all_ante = all_ante && *v;
    }
    bool some_succ = false;
    for (const auto& c : sq.succ) {
        auto v = eval(c, s);
        if (!v) return std::nullopt;
        some_succ = some_succ || *v;
    }
    return !all_ante || some_succ;
}

inline Rational random_rational(std::mt19937& rng, int range = 10, int max_den = 4) {
    std::uniform_int_distribution<int> num(-range * max_den, range * max_den);
    std::uniform_int_distribution<int> den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline State random_state(std::mt19937& rng, const std::set<std::string>& vars, int range = 10) {
    State s;
    for (const auto& v : vars) s[v] = random_rational(rng, range);
    return s;
}

// Random well-formed ASTs covering every constructor except differential
// symbols (which only occur as ODE left-hand sides).
class Generator {
public:
    explicit Generator(unsigned seed) : rng_(seed) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    std::mt19937& rng() { return rng_; }

    std::string var() {
        static const char* names[] = {"x", "y", "z", "v", "t1", "x0"};
        return names[pick(6)];
    }

    Term term(int depth) {
        if (depth <= 0) {
            switch (pick(4)) {
                case 0:
                    return Term::number(random_rational(rng_, 20, 3));
                case 1:
                    return Term::func(pick(2) ? "f" : "g");
                case 2:
                    return pick(5) ? Term::variable(var()) : Term::dot();
                default:
                    return Term::variable(var());
            }
        }
        switch (pick(9)) {
            case 0:
                return Term::binary(TermKind::Plus, term(depth - 1), term(depth - 1));
            case 1:
                return Term::binary(TermKind::Minus, term(depth - 1), term(depth - 1));
            case 2:
                return Term::binary(TermKind::Times, term(depth - 1), term(depth - 1));
            case 3:
                return Term::binary(TermKind::Divide, term(depth - 1), term(depth - 1));
            case 4:
                return Term::neg(term(depth - 1));
            case 5:
                return Term::power(term(depth - 1), static_cast<unsigned>(pick(4)));
            case 6:
                return Term::func("h", {term(depth - 1), term(depth - 1)});
            default:
                return term(0);
        }
    }

    Formula formula(int depth) {
        static const FormulaKind cmps[] = {FormulaKind::Equal,     FormulaKind::NotEqual, FormulaKind::Less,
                                           FormulaKind::LessEqual, FormulaKind::Greater,  FormulaKind::GreaterEqual};
        static const FormulaKind bins[] = {FormulaKind::And, FormulaKind::Or, FormulaKind::Imply, FormulaKind::Equiv};
        if (depth <= 0) {
            switch (pick(6)) {
                case 0:
                    return pick(2) ? Formula::truth() : Formula::falsity();
                case 1:
                    return pick(2) ? Formula::pred("p", {term(0)}) : Formula::predicational("q");
                default:
                    return Formula::compare(cmps[pick(6)], term(pick(2)), term(pick(2)));
            }
        }
        switch (pick(8)) {
            case 0:
                return Formula::negation(formula(depth - 1));
            case 1:
            case 2:
                return Formula::binary(bins[pick(4)], formula(depth - 1), formula(depth - 1));
            case 3:
                return Formula::quantifier(pick(2) ? FormulaKind::Forall : FormulaKind::Exists, var(),
                                           formula(depth - 1));
            case 4:
                return Formula::box(program(depth - 1), formula(depth - 1));
            case 5:
                return Formula::compare(cmps[pick(6)], term(depth - 1), term(depth - 1));
            case 6:
                return Formula::pred("r", {term(depth - 1), term(depth - 2)});
            default:
                return formula(0);
        }
    }

    Program program(int depth) {
        if (depth <= 0) {
            switch (pick(4)) {
                case 0:
                    return Program::assign(var(), term(0));
                case 1:
                    return Program::test(formula(0));
                case 2:
                    return ode(0);
                default:
                    return Program::constant(pick(2) ? "a" : "b");
            }
        }
        switch (pick(7)) {
            case 0:
                return Program::choice(program(depth - 1), program(depth - 1));
            case 1:
            case 2:
                return Program::compose(program(depth - 1), program(depth - 1));
            case 3: {
                std::optional<Formula> inv;
                if (pick(2)) inv = formula(depth - 1);
                return Program::loop(program(depth - 1), inv);
            }
            case 4:
                return Program::assign(var(), term(depth - 1));
            case 5:
                return Program::test(formula(depth - 1));
            default:
                return ode(depth - 1);
        }
    }

    Program ode(int depth) {
        std::vector<Program::Equation> eqs;
        std::set<std::string> used;
        int n = 1 + pick(2);
        for (int i = 0; i < n; ++i) {
            std::string v = var();
            if (!used.insert(v).second) continue;
            eqs.push_back({v, term(depth)});
        }
        std::optional<Formula> dom;
        if (pick(2)) dom = formula(depth);
        return Program::ode(std::move(eqs), dom);
    }

private:
    std::mt19937 rng_;
};

// Random linear arithmetic sequents over at most three variables.
class LinearGenerator {
public:
    explicit LinearGenerator(unsigned seed) : rng_(seed) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    std::mt19937& rng() { return rng_; }

    Term linear() {
        static const char* vars[] = {"x", "y", "z"};
        std::optional<Term> sum;
        for (const char* v : vars) {
            if (pick(3) == 0) continue;
            Rational c = random_rational(rng_, 3, 2);
            if (c == 0) continue;
            Term mono = c == 1 ? Term::variable(v) : Term::binary(TermKind::Times, Term::number(c), Term::variable(v));
            sum = sum ? Term::binary(TermKind::Plus, *sum, mono) : mono;
        }
        Term k = Term::number(random_rational(rng_, 5, 2));
        return sum ? Term::binary(TermKind::Plus, *sum, k) : k;
    }

    Formula atom() {
        static const FormulaKind cmps[] = {FormulaKind::Equal,     FormulaKind::NotEqual, FormulaKind::Less,
                                           FormulaKind::LessEqual, FormulaKind::Greater,  FormulaKind::GreaterEqual};
        return Formula::compare(cmps[pick(6)], linear(), pick(3) ? Term::number(0) : linear());
    }

    Formula formula(int depth) {
        if (depth <= 0 || pick(3) == 0) return atom();
        switch (pick(5)) {
            case 0:
                return Formula::negation(formula(depth - 1));
            case 1:
                return Formula::conj(formula(depth - 1), formula(depth - 1));
            case 2:
                return Formula::disj(formula(depth - 1), formula(depth - 1));
            case 3:
                return Formula::implies(formula(depth - 1), formula(depth - 1));
            default:
                return atom();
        }
    }

    dlp::Sequent sequent() {
        dlp::Sequent s;
        int na = pick(4);
        for (int i = 0; i < na; ++i) s.ante.push_back(formula(1));
        int ns = 1 + pick(2);
        for (int i = 0; i < ns; ++i) s.succ.push_back(formula(1));
        if (!s.ante.empty() && pick(4) == 0) s.succ.push_back(s.ante[pick(static_cast<int>(s.ante.size()))]);
        return s;
    }

private:
    std::mt19937 rng_;
};

}  // namespace oracle

#endif
