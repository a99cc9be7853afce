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

#include "dlprover/arith.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <stdexcept>

#include "dlprover/printer.hpp"
#include "dlprover/semantics.hpp"

namespace dlp::arith {

bool Constraint::holds(const std::map<std::string, Rational>& values) const {
    auto v = poly.evaluate(values);
    if (!v) return false;
    switch (rel) {
        case Rel::Less:
            return *v < 0;
        case Rel::LessEqual:
            return *v <= 0;
        default:
            return *v == 0;
    }
}

std::string Constraint::to_string() const {
    const char* op = rel == Rel::Less ? "<" : rel == Rel::LessEqual ? "<=" : "=";
    return poly.to_string() + op + "0";
}

bool is_first_order(const Formula& f) {
    if (f.kind() == FormulaKind::Box || f.kind() == FormulaKind::PredApp) return false;
    for (const auto& s : f.subs())
        if (!is_first_order(s)) return false;
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;
using Conj = std::vector<Constraint>;
using Dnf = std::vector<Conj>;

struct Timeout {};
struct Unsup {
    std::string reason;
};

constexpr std::size_t kMaxDisjuncts = 200000;

// Scales to a canonical representative; returns false if the constraint is
// a false constant, drops it (nullopt) if it is a true constant.
std::optional<Constraint> normalize(Constraint c, bool& contradiction) {
    if (c.poly.is_constant()) {
        Rational v = c.poly.constant();
        bool ok = c.rel == Rel::Less ? v < 0 : c.rel == Rel::LessEqual ? v <= 0 : v == 0;
        if (!ok) contradiction = true;
        return std::nullopt;
    }
    Rational lead = c.poly.terms().rbegin()->second;
    Rational scale = c.rel == Rel::Equal ? Rational(Rational(1) / lead) : Rational(Rational(1) / abs(lead));
    c.poly = c.poly.scaled(scale);
    return c;
}

// Simplified, deduplicated conjunction; nullopt if trivially false.
std::optional<Conj> simplify(const Conj& in) {
    std::set<Constraint> seen;
    Conj out;
    bool contradiction = false;
    for (const auto& c : in) {
        auto n = normalize(c, contradiction);
        if (contradiction) return std::nullopt;
        if (n && seen.insert(*n).second) out.push_back(*n);
    }
    return out;
}

Constraint make(Polynomial p, Rel r) { return Constraint{std::move(p), r}; }

int sign_of(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

struct SignTable {
    std::vector<std::pair<Polynomial, int>> known;

    std::optional<int> lookup(const Polynomial& a) const {
        if (a.is_constant()) return sign_of(a.constant());
        for (const auto& [p, s] : known) {
            if (p == a) return s;
            if (p == -a) return -s;
        }
        return std::nullopt;
    }
};

void eliminate_rec(const Conj& conj, const std::string& v, SignTable signs, Dnf& out) {
    // Split on the first coefficient of unknown sign.
    for (const auto& c : conj) {
        if (c.poly.degree(v) > 1) throw std::invalid_argument("variable " + v + " occurs non-linearly");
        Polynomial a = c.poly.coefficient(v, 1);
        if (a.is_zero() || signs.lookup(a)) continue;
        for (int s : {-1, 0, 1}) {
            SignTable next = signs;
            next.known.emplace_back(a, s);
            eliminate_rec(conj, v, next, out);
        }
        return;
    }

    struct Bound {
        Polynomial a, b;
        Rel rel;
    };
    Conj result;
    std::vector<Bound> lowers, uppers;
    std::optional<Bound> eq;
    for (const auto& c : conj) {
        Polynomial a = c.poly.coefficient(v, 1);
        Polynomial b = c.poly.coefficient(v, 0);
        int s = a.is_zero() ? 0 : *signs.lookup(a);
        if (s == 0) {
            result.push_back(make(b, c.rel));
            continue;
        }
        Bound bd{a, b, c.rel};
        if (c.rel == Rel::Equal) {
            if (!eq || (!eq->a.is_constant() && a.is_constant())) eq = bd;
        }
        if (s < 0) lowers.push_back(bd);
        else uppers.push_back(bd);
    }
    for (const auto& [p, s] : signs.known) {
        if (s < 0) result.push_back(make(p, Rel::Less));
        else if (s > 0) result.push_back(make(-p, Rel::Less));
        else result.push_back(make(p, Rel::Equal));
    }
    if (eq) {
        int s = *signs.lookup(eq->a);
        for (const auto* group : {&lowers, &uppers})
            for (const auto& bd : *group) {
                if (bd.a == eq->a && bd.b == eq->b && bd.rel == eq->rel) continue;
                Polynomial p = (eq->a * bd.b - bd.a * eq->b).scaled(s);
                result.push_back(make(p, bd.rel));
            }
    } else {
        for (const auto& l : lowers)
            for (const auto& u : uppers) {
                Rel r = (l.rel == Rel::Less || u.rel == Rel::Less) ? Rel::Less : Rel::LessEqual;
                result.push_back(make(u.a * l.b - l.a * u.b, r));
            }
    }
    out.push_back(std::move(result));
}

class Engine {
public:
    explicit Engine(const Options& opts) {
        if (opts.timeout_seconds > 0)
            deadline_ = Clock::now() + std::chrono::microseconds(static_cast<long long>(opts.timeout_seconds * 1e6));
    }

    void tick() const {
        if (deadline_ && Clock::now() > *deadline_) throw Timeout{};
    }

    // Negation normal form; implications and equivalences expanded.
    Formula nnf(const Formula& f, bool neg) {
        switch (f.kind()) {
            case FormulaKind::True:
                return neg ? Formula::falsity() : f;
            case FormulaKind::False:
                return neg ? Formula::truth() : f;
            case FormulaKind::Not:
                return nnf(f.child(), !neg);
            case FormulaKind::And:
            case FormulaKind::Or: {
                bool is_and = (f.kind() == FormulaKind::And) != neg;
                return Formula::binary(is_and ? FormulaKind::And : FormulaKind::Or, nnf(f.left(), neg),
                                       nnf(f.right(), neg));
            }
            case FormulaKind::Imply:
                if (neg) return Formula::conj(nnf(f.left(), false), nnf(f.right(), true));
                return Formula::disj(nnf(f.left(), true), nnf(f.right(), false));
            case FormulaKind::Equiv:
                if (neg)
                    return Formula::disj(Formula::conj(nnf(f.left(), false), nnf(f.right(), true)),
                                         Formula::conj(nnf(f.left(), true), nnf(f.right(), false)));
                return Formula::disj(Formula::conj(nnf(f.left(), false), nnf(f.right(), false)),
                                     Formula::conj(nnf(f.left(), true), nnf(f.right(), true)));
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                bool is_all = (f.kind() == FormulaKind::Forall) != neg;
                return Formula::quantifier(is_all ? FormulaKind::Forall : FormulaKind::Exists, f.name(),
                                           nnf(f.body(), neg));
            }
            case FormulaKind::Box:
            case FormulaKind::PredApp:
                throw Unsup{"not first-order arithmetic: " + to_string(f)};
            default: {
                if (!neg) return f;
                static const std::map<FormulaKind, FormulaKind> flip{
                    {FormulaKind::Equal, FormulaKind::NotEqual}, {FormulaKind::NotEqual, FormulaKind::Equal},
                    {FormulaKind::Less, FormulaKind::GreaterEqual}, {FormulaKind::GreaterEqual, FormulaKind::Less},
                    {FormulaKind::Greater, FormulaKind::LessEqual}, {FormulaKind::LessEqual, FormulaKind::Greater}};
                return Formula::compare(flip.at(f.kind()), f.lhs(), f.rhs());
            }
        }
    }

    // Eliminates quantifiers from an NNF formula.
    Formula qe(const Formula& f) {
        tick();
        switch (f.kind()) {
            case FormulaKind::And:
            case FormulaKind::Or:
                return Formula::binary(f.kind(), qe(f.left()), qe(f.right()));
            case FormulaKind::Exists:
                return project(qe(f.body()), f.name());
            case FormulaKind::Forall: {
                Formula inner = nnf(qe(f.body()), true);
                return nnf(project(inner, f.name()), true);
            }
            default:
                return f;
        }
    }

    Dnf dnf(const Formula& f) {
        tick();
        switch (f.kind()) {
            case FormulaKind::True:
                return Dnf{Conj{}};
            case FormulaKind::False:
                return Dnf{};
            case FormulaKind::Or: {
                Dnf l = dnf(f.left());
                Dnf r = dnf(f.right());
                l.insert(l.end(), r.begin(), r.end());
                if (l.size() > kMaxDisjuncts) throw Unsup{"case split too large"};
                return l;
            }
            case FormulaKind::And: {
                Dnf l = dnf(f.left());
                Dnf r = dnf(f.right());
                if (l.size() * r.size() > kMaxDisjuncts) throw Unsup{"case split too large"};
                Dnf out;
                for (const auto& a : l)
                    for (const auto& b : r) {
                        Conj c = a;
                        c.insert(c.end(), b.begin(), b.end());
                        out.push_back(std::move(c));
                    }
                return out;
            }
            default: {
                if (!is_comparison(f.kind())) throw Unsup{"unexpected formula " + to_string(f)};
                Polynomial p;
                try {
                    p = to_polynomial(f.lhs()) - to_polynomial(f.rhs());
                } catch (const NonPolynomial& e) {
                    throw Unsup{std::string("nonlinear: ") + e.what()};
                }
                switch (f.kind()) {
                    case FormulaKind::Less:
                        return Dnf{{make(p, Rel::Less)}};
                    case FormulaKind::LessEqual:
                        return Dnf{{make(p, Rel::LessEqual)}};
                    case FormulaKind::Greater:
                        return Dnf{{make(-p, Rel::Less)}};
                    case FormulaKind::GreaterEqual:
                        return Dnf{{make(-p, Rel::LessEqual)}};
                    case FormulaKind::Equal:
                        return Dnf{{make(p, Rel::Equal)}};
                    default:
                        return Dnf{{make(p, Rel::Less)}, {make(-p, Rel::Less)}};
                }
            }
        }
    }

    Formula project(const Formula& qf, const std::string& v) {
        Dnf in = dnf(qf);
        std::vector<Formula> disjuncts;
        for (const auto& conj : in) {
            auto simple = simplify(conj);
            if (!simple) continue;
            Dnf parts;
            try {
                eliminate_rec(*simple, v, {}, parts);
            } catch (const std::invalid_argument& e) {
                throw Unsup{std::string("nonlinear: ") + e.what()};
            }
            for (const auto& part : parts) {
                tick();
                auto s = simplify(part);
                if (!s) continue;
                std::optional<Formula> c;
                for (const auto& k : *s) {
                    Formula atom = to_formula(k);
                    c = c ? Formula::conj(*c, atom) : atom;
                }
                disjuncts.push_back(c ? *c : Formula::truth());
            }
        }
        if (disjuncts.empty()) return Formula::falsity();
        Formula out = disjuncts[0];
        for (std::size_t i = 1; i < disjuncts.size(); ++i) out = Formula::disj(out, disjuncts[i]);
        return out;
    }

    static Formula to_formula(const Constraint& c) {
        FormulaKind k = c.rel == Rel::Less ? FormulaKind::Less
                        : c.rel == Rel::LessEqual ? FormulaKind::LessEqual
                                                  : FormulaKind::Equal;
        return Formula::compare(k, to_term(c.poly), Term::number(0));
    }

    // Satisfying assignment of a conjunction, or nullopt if unsatisfiable.
    std::optional<Witness> sat(const Conj& in) {
        tick();
        auto conj = simplify(in);
        if (!conj) return std::nullopt;
        std::set<std::string> vars;
        for (const auto& c : *conj) {
            auto vs = c.poly.variables();
            vars.insert(vs.begin(), vs.end());
        }
        if (vars.empty()) return Witness{};
        std::optional<std::string> pick;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            bool linear = std::all_of(conj->begin(), conj->end(),
                                      [&](const Constraint& c) { return c.poly.degree(*it) <= 1; });
            if (linear) {
                pick = *it;
                break;
            }
        }
        if (!pick) throw Unsup{"nonlinear: no variable occurs linearly in " + describe(*conj)};
        const std::string v = *pick;
        Dnf branches;
        eliminate_rec(*conj, v, {}, branches);
        for (const auto& b : branches) {
            auto w = sat(b);
            if (!w) continue;
            for (const auto& x : vars)
                if (x != v && !w->count(x)) (*w)[x] = 0;
            (*w)[v] = choose(*conj, v, *w);
            for (const auto& c : *conj)
                if (!c.holds(*w)) throw Unsup{"internal: witness check failed for " + c.to_string()};
            return w;
        }
        return std::nullopt;
    }

private:
    std::optional<Clock::time_point> deadline_;

    static std::string describe(const Conj& c) {
        std::string out;
        for (const auto& k : c) out += (out.empty() ? "" : " & ") + k.to_string();
        return out;
    }

    // Value for v given values for all other variables.
    static Rational choose(const Conj& conj, const std::string& v, const Witness& w) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& c : conj) {
            Rational a = *c.poly.coefficient(v, 1).evaluate(w);
            Rational b = *c.poly.coefficient(v, 0).evaluate(w);
            if (a == 0) continue;
            Rational bound = -b / a;
            if (c.rel == Rel::Equal) return bound;
            bool strict = c.rel == Rel::Less;
            if (a > 0) {
                if (!hi || bound < *hi || (bound == *hi && strict)) {
                    hi = bound;
                    hi_strict = strict;
                }
            } else {
                if (!lo || bound > *lo || (bound == *lo && strict)) {
                    lo = bound;
                    lo_strict = strict;
                }
            }
        }
        if (lo && hi) return (*lo + *hi) / 2;
        if (lo) return lo_strict ? Rational(*lo + 1) : *lo;
        if (hi) return hi_strict ? Rational(*hi - 1) : *hi;
        return 0;
    }
};

// Moves existential quantifiers reachable through conjunctions and
// disjunctions to fresh free variables.
Formula open_existentials(const Formula& f, std::set<std::string>& taken) {
    switch (f.kind()) {
        case FormulaKind::And:
        case FormulaKind::Or:
            return Formula::binary(f.kind(), open_existentials(f.left(), taken), open_existentials(f.right(), taken));
        case FormulaKind::Exists: {
            std::string fresh = fresh_name(f.name() + "_", taken);
            taken.insert(fresh);
            Formula body = substitute_free(f.body(), {{f.name(), Term::variable(fresh)}});
            return open_existentials(body, taken);
        }
        default:
            return f;
    }
}

Verdict decide(const Formula& goal, const std::set<std::string>& report, const Options& opts) {
    Engine e(opts);
    try {
        std::set<std::string> taken = all_names(Expr(goal));
        Formula negated = open_existentials(e.nnf(goal, true), taken);
        Formula qf = e.qe(negated);
        Dnf d = e.dnf(qf);
        for (const auto& conj : d) {
            auto w = e.sat(conj);
            if (!w) continue;
            Witness out;
            for (const auto& v : report) out[v] = w->count(v) ? (*w)[v] : Rational(0);
            return Invalid{out};
        }
        return Valid{};
    } catch (const Timeout&) {
        return Unsupported{"timeout"};
    } catch (const Unsup& u) {
        return Unsupported{u.reason};
    } catch (const CaptureError& c) {
        return Unsupported{c.what()};
    }
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
    if (const auto* t = std::get_if<Term>(&e))
        if (t->kind() == TermKind::FuncApp && t->args().empty()) out.insert(t->name() + "()");
    for (const auto& k : children(e)) collect_symbols(k, out);
}

std::set<std::string> report_names(const Formula& f) {
    std::set<std::string> out = free_vars(f).names();
    collect_symbols(f, out);
    return out;
}

Formula sequent_formula(const Sequent& s) {
    std::optional<Formula> a, c;
    for (const auto& f : s.ante) a = a ? Formula::conj(*a, f) : f;
    for (const auto& f : s.succ) c = c ? Formula::disj(*c, f) : f;
    return Formula::implies(a ? *a : Formula::truth(), c ? *c : Formula::falsity());
}

}  // namespace

Verdict qe_formula(const Formula& f, const Options& opts) {
    if (!is_first_order(f)) return Unsupported{"not first-order arithmetic: " + to_string(f)};
    return decide(f, report_names(f), opts);
}

Verdict qe_decide(const Sequent& s, const Options& opts) { return qe_formula(sequent_formula(s), opts); }

CounterexampleResult counterexample(const Sequent& s, const Options& opts) {
    for (const auto* side : {&s.ante, &s.succ})
        for (const auto& f : *side)
            if (!is_first_order(f)) return Unsupported{"goal contains modalities or predicate symbols"};
    Verdict v = qe_decide(s, opts);
    if (std::holds_alternative<Valid>(v)) return NoCounterexample{};
    if (auto* i = std::get_if<Invalid>(&v)) return i->witness;
    return std::get<Unsupported>(v);
}

std::variant<Witness, NoCounterexample, Unsupported> satisfiable(const std::vector<Constraint>& conj,
                                                                 const Options& opts) {
    Engine e(opts);
    try {
        auto w = e.sat(conj);
        if (!w) return NoCounterexample{};
        return *w;
    } catch (const Timeout&) {
        return Unsupported{"timeout"};
    } catch (const Unsup& u) {
        return Unsupported{u.reason};
    } catch (const std::invalid_argument& ex) {
        return Unsupported{ex.what()};
    }
}

std::vector<std::vector<Constraint>> eliminate(const std::vector<Constraint>& conj, const std::string& var) {
    Dnf out;
    auto s = simplify(conj);
    if (!s) return out;
    eliminate_rec(*s, var, {}, out);
    return out;
}

std::string to_string(const Witness& w) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : w) {
        if (!first) out += ", ";
        out += k + "=" + dlp::to_string(v);
        first = false;
    }
    return out + "}";
}

std::string to_string(const Verdict& v) {
    if (std::holds_alternative<Valid>(v)) return "valid";
    if (const auto* i = std::get_if<Invalid>(&v)) return "invalid " + to_string(i->witness);
    return "unsupported (" + std::get<Unsupported>(v).reason + ")";
}

}  // namespace dlp::arith
