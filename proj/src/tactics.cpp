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

#include "dlprover/tactics.hpp"

#include <algorithm>
#include <cctype>

#include "dlprover/arith.hpp"
#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "dlprover/semantics.hpp"

namespace dlp::tactics {

// --- AST ------------------------------------------------------------------------

Tactic Tactic::atom(std::string name, std::vector<std::string> inputs, Locator loc) {
    Tactic t;
    t.kind = TacticKind::Atom;
    t.name = std::move(name);
    t.inputs = std::move(inputs);
    t.locator = std::move(loc);
    return t;
}

namespace {

Tactic group(TacticKind kind, std::vector<Tactic> ts) {
    if (ts.empty()) return Tactic::nil();
    if (ts.size() == 1) return std::move(ts[0]);
    Tactic t;
    t.kind = kind;
    t.children = std::move(ts);
    return t;
}

}  // namespace

Tactic Tactic::seq(std::vector<Tactic> ts) { return group(TacticKind::Seq, std::move(ts)); }
Tactic Tactic::alt(std::vector<Tactic> ts) { return group(TacticKind::Alt, std::move(ts)); }

Tactic Tactic::repeat(Tactic child) {
    Tactic t;
    t.kind = TacticKind::Repeat;
    t.children.push_back(std::move(child));
    return t;
}

Tactic Tactic::branch(std::vector<Tactic> ts) {
    Tactic t;
    t.kind = TacticKind::Branch;
    t.children = std::move(ts);
    return t;
}

// --- parser ---------------------------------------------------------------------

namespace {

class TacticParser {
public:
    explicit TacticParser(std::string_view s) : s_(s) {}

    Tactic parse() {
        Tactic t = alt();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return t;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw TacticParseError(msg, i_); }

    void skip() {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                ++i_;
            } else if (s_.compare(i_, 2, "//") == 0) {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            } else {
                break;
            }
        }
    }

    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    Tactic alt() {
        std::vector<Tactic> ts{seq()};
        while (eat('|')) ts.push_back(seq());
        if (ts.size() == 1) return std::move(ts[0]);
        Tactic t;
        t.kind = TacticKind::Alt;
        t.children = std::move(ts);
        return t;
    }

    Tactic seq() {
        std::vector<Tactic> ts{postfix()};
        while (eat(';') || eat('&')) ts.push_back(postfix());
        if (ts.size() == 1) return std::move(ts[0]);
        Tactic t;
        t.kind = TacticKind::Seq;
        t.children = std::move(ts);
        return t;
    }

    Tactic postfix() {
        Tactic t = primary();
        while (eat('*')) t = Tactic::repeat(std::move(t));
        return t;
    }

    Tactic primary() {
        skip();
        if (eat('(')) {
            Tactic t = alt();
            expect(')');
            return t;
        }
        if (eat('<')) {
            expect('(');
            std::vector<Tactic> ts;
            if (!eat(')')) {
                ts.push_back(alt());
                while (eat(',')) ts.push_back(alt());
                expect(')');
            }
            return Tactic::branch(std::move(ts));
        }
        std::string name = ident();
        if (name.empty()) fail("expected a tactic");
        if (name == "nil") {
            if (eat('(')) expect(')');
            return Tactic::nil();
        }
        Tactic t = Tactic::atom(name);
        if (eat('(')) {
            if (eat(')')) return t;
            do arg(t);
            while (eat(','));
            expect(')');
        }
        return t;
    }

    std::string ident() {
        skip();
        std::size_t b = i_;
        if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        }
        return std::string(s_.substr(b, i_ - b));
    }

    void arg(Tactic& t) {
        skip();
        if (i_ >= s_.size()) fail("expected an argument");
        char c = s_[i_];
        if (c == '"') {
            ++i_;
            std::string out;
            while (i_ < s_.size() && s_[i_] != '"') {
                if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
                out += s_[i_++];
            }
            if (i_ >= s_.size()) fail("unterminated string");
            ++i_;
            t.inputs.push_back(out);
            return;
        }
        if (t.locator.kind != LocatorKind::None) fail("more than one position");
        if (c == '\'') {
            ++i_;
            std::string l = ident();
            if (l == "L") t.locator.kind = LocatorKind::FirstAnte;
            else if (l == "R") t.locator.kind = LocatorKind::FirstSucc;
            else if (l == "Rlast") t.locator.kind = LocatorKind::LastSucc;
            else fail("unknown locator '" + l);
            return;
        }
        std::size_t b = i_;
        if (c == '-') ++i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
        if (i_ == b || (c == '-' && i_ == b + 1)) fail("expected a quoted input, a position or a locator");
        try {
            t.locator = Locator::fixed(Position::parse(s_.substr(b, i_ - b)));
        } catch (const std::invalid_argument& e) {
            i_ = b;
            fail(std::string("bad position: ") + e.what());
        }
    }
};

int precedence(const Tactic& t) {
    switch (t.kind) {
        case TacticKind::Alt:
            return 0;
        case TacticKind::Seq:
            return 1;
        case TacticKind::Repeat:
            return 2;
        default:
            return 3;
    }
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string print_at(const Tactic& t, int min_prec) {
    std::string out;
    switch (t.kind) {
        case TacticKind::Nil:
            out = "nil";
            break;
        case TacticKind::Atom: {
            out = t.name;
            std::vector<std::string> args;
            for (const auto& in : t.inputs) args.push_back(quote(in));
            switch (t.locator.kind) {
                case LocatorKind::Fixed:
                    args.push_back(t.locator.pos.to_string());
                    break;
                case LocatorKind::FirstAnte:
                    args.push_back("'L");
                    break;
                case LocatorKind::FirstSucc:
                    args.push_back("'R");
                    break;
                case LocatorKind::LastSucc:
                    args.push_back("'Rlast");
                    break;
                case LocatorKind::None:
                    break;
            }
            if (!args.empty()) {
                out += "(";
                for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i];
                out += ")";
            }
            break;
        }
        case TacticKind::Seq:
            for (std::size_t i = 0; i < t.children.size(); ++i) out += (i ? "; " : "") + print_at(t.children[i], 2);
            break;
        case TacticKind::Alt:
            for (std::size_t i = 0; i < t.children.size(); ++i) out += (i ? " | " : "") + print_at(t.children[i], 1);
            break;
        case TacticKind::Repeat:
            out = print_at(t.children.at(0), 2) + "*";
            break;
        case TacticKind::Branch:
            out = "<(";
            for (std::size_t i = 0; i < t.children.size(); ++i) out += (i ? ", " : "") + print_at(t.children[i], 0);
            out += ")";
            break;
    }
    return precedence(t) < min_prec ? "(" + out + ")" : out;
}

}  // namespace

Tactic parse_tactic(std::string_view text) { return TacticParser(text).parse(); }

std::string print_tactic(const Tactic& t) { return print_at(t, 0); }

// --- atoms ------------------------------------------------------------------------

namespace {

// Budget, timeout and cancellation: not recoverable by alternatives.
class AbortError : public TacticError {
public:
    using TacticError::TacticError;
};

const std::vector<std::string> kBuiltins{"QE", "prop", "unfold", "auto"};

bool is_axiom(const std::string& n) { return find_axiom(n) != nullptr; }

bool is_prop_rule(const std::string& n) {
    const auto& rs = prop_rule_names();
    return std::find(rs.begin(), rs.end(), n) != rs.end();
}

Formula parse_input(const std::string& text, const std::string& what) {
    try {
        return parse_formula(text);
    } catch (const ParseError& e) {
        throw TacticError("cannot parse " + what + " \"" + text + "\": " + e.what());
    }
}

std::vector<Position> candidate_positions(const Sequent& s, LocatorKind kind, bool inner) {
    std::vector<Position> out;
    for (Side side : {Side::Ante, Side::Succ}) {
        if (kind == LocatorKind::FirstAnte && side != Side::Ante) continue;
        if ((kind == LocatorKind::FirstSucc || kind == LocatorKind::LastSucc) && side != Side::Succ) continue;
        const auto& fs = s.side(side);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (kind == LocatorKind::LastSucc && i + 1 != fs.size()) continue;
            if (!inner) {
                out.push_back({side, static_cast<int>(i + 1), {}});
                continue;
            }
            for (auto& path : all_paths(Expr(fs[i]))) out.push_back({side, static_cast<int>(i + 1), std::move(path)});
        }
    }
    return out;
}

std::optional<Formula> annotation_at(const Sequent& s, const Position& pos) {
    try {
        Expr e = subexpr_at(s, pos);
        const auto* f = std::get_if<Formula>(&e);
        if (f && f->kind() == FormulaKind::Box && f->program().kind() == ProgramKind::Loop)
            return f->program().invariant();
    } catch (const PositionError&) {
    }
    return std::nullopt;
}

Provable discharge_condition(const Provable& p, std::size_t g, double qe_timeout);

// One kernel step of a positional atom.
Provable positional_step(const Provable& p, std::size_t goal, const Tactic& atom, const Position& pos,
                         double qe_timeout) {
    const std::string& n = atom.name;
    if (is_prop_rule(n)) {
        std::optional<Formula> in;
        if (!atom.inputs.empty()) in = parse_input(atom.inputs[0], "input");
        return apply_prop_rule(p, goal, n, pos, in);
    }
    if (is_axiom(n)) {
        Provable q = use_axiom_at(p, goal, pos, n);
        if (find_axiom(n)->guard) return discharge_condition(q, goal + 1, qe_timeout);
        return q;
    }
    if (n == "loop") {
        std::optional<Formula> j;
        if (!atom.inputs.empty()) j = parse_input(atom.inputs[0], "invariant");
        return loop_tactic(p, goal, pos, j);
    }
    if (n == "ODE") return ode::apply_ode_rule(p, goal, pos);
    throw TacticError("unknown tactic " + n, goal);
}

}  // namespace

const std::vector<std::string>& atom_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out = prop_rule_names();
        for (const auto& a : axioms()) out.push_back(a.name);
        out.push_back("loop");
        out.push_back("ODE");
        for (const auto& b : kBuiltins) out.push_back(b);
        return out;
    }();
    return names;
}

bool is_positional(const std::string& name) {
    if (name == "cut") return false;
    return is_prop_rule(name) || is_axiom(name) || name == "loop" || name == "ODE";
}

Provable loop_tactic(const Provable& p, std::size_t goal, const Position& pos,
                     const std::optional<Formula>& invariant) {
    std::optional<Formula> j = invariant;
    if (!j && goal < p.subgoals().size()) j = annotation_at(p.subgoals()[goal], pos);
    if (!j) throw TacticError("loop requires an invariant input j(x)", goal, pos);
    return apply_loop_rule(p, goal, pos, *j);
}

// --- built-in proof search ----------------------------------------------------------

namespace {

using Step = std::function<std::optional<Provable>(const Provable&, std::size_t)>;

// Applies `step` to goal g and then to every premise, until no step applies.
// Sets n to the number of goals that replaced g.
Provable saturate(Provable p, std::size_t g, std::size_t& n, const Step& step) {
    std::size_t before = p.subgoals().size();
    auto q = step(p, g);
    if (!q) {
        n = 1;
        return p;
    }
    std::size_t k = q->subgoals().size() + 1 - before;
    p = std::move(*q);
    std::size_t cur = g;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t m = 0;
        p = saturate(std::move(p), cur, m, step);
        cur += m;
    }
    n = cur - g;
    return p;
}

template <typename F>
std::optional<Provable> attempt(F&& f) {
    try {
        return f();
    } catch (const KernelError&) {
        return std::nullopt;
    } catch (const TacticError&) {
        return std::nullopt;
    }
}

std::optional<Provable> prop_step(const Provable& p, std::size_t g) {
    const Sequent& s = p.subgoals()[g];
    auto at = [&](Side side, std::size_t i) { return Position{side, static_cast<int>(i + 1), {}}; };
    for (std::size_t i = 0; i < s.succ.size(); ++i)
        if (s.succ[i].kind() == FormulaKind::True)
            return apply_prop_rule(p, g, "closeTrue", at(Side::Succ, i), std::nullopt);
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
        if (s.ante[i].kind() == FormulaKind::False)
            return apply_prop_rule(p, g, "closeFalse", at(Side::Ante, i), std::nullopt);
        if (std::find(s.succ.begin(), s.succ.end(), s.ante[i]) != s.succ.end())
            return apply_prop_rule(p, g, "close", at(Side::Ante, i), std::nullopt);
    }
    static const std::pair<FormulaKind, const char*> linear_ante[] = {{FormulaKind::And, "andL"},
                                                                      {FormulaKind::Not, "notL"}};
    static const std::pair<FormulaKind, const char*> linear_succ[] = {
        {FormulaKind::Or, "orR"}, {FormulaKind::Imply, "implyR"}, {FormulaKind::Not, "notR"}};
    static const std::pair<FormulaKind, const char*> split_ante[] = {
        {FormulaKind::Or, "orL"}, {FormulaKind::Imply, "implyL"}, {FormulaKind::Equiv, "equivL"}};
    static const std::pair<FormulaKind, const char*> split_succ[] = {{FormulaKind::And, "andR"},
                                                                     {FormulaKind::Equiv, "equivR"}};
    auto scan = [&](Side side, const auto& table) -> std::optional<Provable> {
        const auto& fs = s.side(side);
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (const auto& [kind, rule] : table)
                if (fs[i].kind() == kind) return apply_prop_rule(p, g, rule, at(side, i), std::nullopt);
        return std::nullopt;
    };
    if (auto q = scan(Side::Ante, linear_ante)) return q;
    if (auto q = scan(Side::Succ, linear_succ)) return q;
    if (auto q = scan(Side::Ante, split_ante)) return q;
    if (auto q = scan(Side::Succ, split_succ)) return q;
    return std::nullopt;
}

std::optional<Provable> unfold_step(const Provable& p, std::size_t g) {
    const Sequent& s = p.subgoals()[g];
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
        const Formula& f = s.succ[i];
        Position pos{Side::Succ, static_cast<int>(i + 1), {}};
        const char* rule = nullptr;
        bool axiom = false;
        switch (f.kind()) {
            case FormulaKind::Imply:
                rule = "implyR";
                break;
            case FormulaKind::And:
                rule = "andR";
                break;
            case FormulaKind::Box:
                axiom = true;
                switch (f.program().kind()) {
                    case ProgramKind::Compose:
                        rule = "composeb";
                        break;
                    case ProgramKind::Test:
                        rule = "testb";
                        break;
                    case ProgramKind::Assign:
                        rule = "assignb";
                        break;
                    case ProgramKind::Choice:
                        rule = "choiceb";
                        break;
                    default:
                        break;
                }
                break;
            default:
                break;
        }
        if (!rule) continue;
        auto q = attempt([&] {
            return axiom ? use_axiom_at(p, g, pos, rule) : apply_prop_rule(p, g, rule, pos, std::nullopt);
        });
        if (q) return q;
    }
    return std::nullopt;
}

// Closes the condition goal of a conditional axiom on its own when that is
// possible by unfolding and QE; otherwise leaves it open.
Provable discharge_condition(const Provable& p, std::size_t g, double qe_timeout) {
    auto closed = attempt([&]() -> Provable {
        Provable q = p;
        while (q.subgoals()[g].succ.size() > 1) q = apply_prop_rule(q, g, "hideR", succ(2), std::nullopt);
        for (std::size_t i = q.subgoals()[g].ante.size(); i-- > 0;)
            if (!arith::is_first_order(q.subgoals()[g].ante[i]))
                q = apply_prop_rule(q, g, "hideL", ante(static_cast<int>(i + 1)), std::nullopt);
        std::size_t before = q.subgoals().size();
        std::size_t m = 0;
        Step step = [&](const Provable& r, std::size_t k) -> std::optional<Provable> {
            if (auto t = prop_step(r, k)) return t;
            if (auto t = unfold_step(r, k)) return t;
            return attempt([&] { return close_by_qe(r, k, qe_timeout); });
        };
        q = saturate(std::move(q), g, m, step);
        if (q.subgoals().size() + 1 != before) throw TacticError("condition stays open", g);
        return q;
    });
    return closed ? *closed : p;
}

std::optional<Provable> loop_step(const Provable& p, std::size_t g) {
    const Sequent& s = p.subgoals()[g];
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
        const Formula& f = s.succ[i];
        if (f.kind() != FormulaKind::Box || f.program().kind() != ProgramKind::Loop || !f.program().invariant())
            continue;
        Position pos{Side::Succ, static_cast<int>(i + 1), {}};
        if (auto q = attempt([&] { return apply_loop_rule(p, g, pos, *f.program().invariant()); })) return q;
    }
    return std::nullopt;
}

std::optional<Provable> ode_step(const Provable& p, std::size_t g) {
    const Sequent& s = p.subgoals()[g];
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
        const Formula& f = s.succ[i];
        if (f.kind() != FormulaKind::Box || f.program().kind() != ProgramKind::Ode) continue;
        Position pos{Side::Succ, static_cast<int>(i + 1), {}};
        if (auto q = attempt([&] { return ode::apply_ode_rule(p, g, pos); })) return q;
    }
    return std::nullopt;
}

}  // namespace

// --- interpreter ------------------------------------------------------------------

void Interpreter::start() {
    if (opts_.timeout_seconds > 0)
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(opts_.timeout_seconds));
    else
        deadline_.reset();
}

void Interpreter::tick() {
    if (++steps_ > opts_.step_budget)
        throw AbortError("step budget of " + std::to_string(opts_.step_budget) + " exceeded");
    if (opts_.cancel && opts_.cancel->load()) throw AbortError("canceled");
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) throw AbortError("timeout");
}

Provable apply_atom(Interpreter& in, const Provable& p, std::size_t goal, const Tactic& atom, Tactic* resolved) {
    if (atom.kind != TacticKind::Atom) throw TacticError("not an atomic tactic: " + print_tactic(atom), goal);
    if (goal >= p.subgoals().size()) throw TacticError("no subgoal " + std::to_string(goal), goal);
    in.tick();
    const std::string& n = atom.name;
    const Sequent& s = p.subgoals()[goal];
    double qe_timeout = in.opts_.qe_timeout_seconds;
    auto counted = [&](const Step& step) -> Step {
        return [&in, step](const Provable& q, std::size_t g) {
            auto r = step(q, g);
            if (r) in.tick();
            return r;
        };
    };
    try {
        if (resolved) *resolved = atom;
        if (n == "QE") return close_by_qe(p, goal, qe_timeout);
        if (n == "cut") {
            if (atom.inputs.size() != 1) throw TacticError("cut requires one formula input", goal);
            return apply_prop_rule(p, goal, "cut", Position{}, parse_input(atom.inputs[0], "cut formula"));
        }
        std::size_t m = 0;
        if (n == "prop") {
            Provable q = saturate(p, goal, m, counted(prop_step));
            if (q.subgoals() == p.subgoals()) throw TacticError("prop made no progress", goal);
            return q;
        }
        if (n == "unfold") {
            Provable q = saturate(p, goal, m, counted(unfold_step));
            if (q.subgoals() == p.subgoals()) throw TacticError("unfold made no progress", goal);
            return q;
        }
        if (n == "auto") {
            Step step = [&](const Provable& q, std::size_t g) -> std::optional<Provable> {
                if (auto r = prop_step(q, g)) return r;
                if (auto r = unfold_step(q, g)) return r;
                if (auto r = loop_step(q, g)) return r;
                if (auto r = ode_step(q, g)) return r;
                return attempt([&] { return close_by_qe(q, g, qe_timeout); });
            };
            Provable q = saturate(p, goal, m, counted(step));
            if (q.subgoals() == p.subgoals()) throw TacticError("auto made no progress", goal);
            return q;
        }
        if (!is_positional(n)) throw TacticError("unknown tactic " + n, goal);

        if (atom.locator.kind == LocatorKind::Fixed) return positional_step(p, goal, atom, atom.locator.pos, qe_timeout);
        bool inner = is_axiom(n);
        std::optional<std::string> first_error;
        for (const auto& pos : candidate_positions(s, atom.locator.kind, inner)) {
            try {
                Provable q = positional_step(p, goal, atom, pos, qe_timeout);
                if (resolved) *resolved = Tactic::atom(n, atom.inputs, Locator::fixed(pos));
                return q;
            } catch (const ClashError& e) {
                in.diagnostics_.push_back(e.what());
                if (!first_error) first_error = e.what();
            } catch (const KernelError& e) {
                if (!first_error) first_error = e.what();
            } catch (const AbortError&) {
                throw;
            } catch (const TacticError& e) {
                if (!first_error) first_error = e.what();
            }
        }
        throw TacticError(n + " is not applicable to any formula" + (first_error ? " (" + *first_error + ")" : ""),
                          goal);
    } catch (const ClashError& e) {
        in.diagnostics_.push_back(e.what());
        throw TacticError(e.what(), goal,
                          atom.locator.kind == LocatorKind::Fixed ? std::optional(atom.locator.pos) : std::nullopt);
    } catch (const KernelError& e) {
        throw TacticError(e.what(), goal,
                          atom.locator.kind == LocatorKind::Fixed ? std::optional(atom.locator.pos) : std::nullopt);
    }
}

namespace {

struct EventLog {
    std::vector<StepEvent> events;
};

thread_local EventLog* current_log = nullptr;

}  // namespace

Provable Interpreter::atom_on_range(const Tactic& t, const Provable& p, Range& r) {
    if (r.count == 0) return p;
    Provable cur = p;
    std::size_t g = r.begin;
    std::size_t end = r.begin + r.count;
    bool any = false;
    std::optional<TacticError> last;
    while (g < end) {
        std::size_t before = cur.subgoals().size();
        Tactic resolved;
        try {
            Provable q = apply_atom(*this, cur, g, t, &resolved);
            std::size_t k = q.subgoals().size() + 1 - before;
            if (current_log)
                current_log->events.push_back(
                    {g, resolved, k, std::vector<Sequent>(q.subgoals().begin() + static_cast<std::ptrdiff_t>(g),
                                                          q.subgoals().begin() + static_cast<std::ptrdiff_t>(g + k))});
            cur = std::move(q);
            end = end + k - 1;
            g += k;
            any = true;
        } catch (const AbortError&) {
            throw;
        } catch (const TacticError& e) {
            last = e;
            ++g;
        }
    }
    if (!any) throw *last;
    r.count = end - r.begin;
    return cur;
}

Provable Interpreter::eval(const Tactic& t, const Provable& p, Range& r) {
    switch (t.kind) {
        case TacticKind::Nil:
            return p;
        case TacticKind::Atom:
            return atom_on_range(t, p, r);
        case TacticKind::Seq: {
            Provable cur = p;
            for (const auto& c : t.children) cur = eval(c, cur, r);
            return cur;
        }
        case TacticKind::Alt: {
            std::optional<TacticError> last;
            for (const auto& c : t.children) {
                Range rr = r;
                std::size_t mark = current_log ? current_log->events.size() : 0;
                try {
                    Provable q = eval(c, p, rr);
                    r = rr;
                    return q;
                } catch (const AbortError&) {
                    throw;
                } catch (const TacticError& e) {
                    if (current_log) current_log->events.resize(mark);
                    last = e;
                }
            }
            if (last) throw *last;
            return p;
        }
        case TacticKind::Repeat: {
            Provable cur = p;
            while (true) {
                Range rr = r;
                std::size_t mark = current_log ? current_log->events.size() : 0;
                try {
                    Provable q = eval(t.children.at(0), cur, rr);
                    if (q.subgoals() == cur.subgoals()) {
                        if (current_log) current_log->events.resize(mark);
                        break;
                    }
                    cur = std::move(q);
                    r = rr;
                } catch (const AbortError&) {
                    throw;
                } catch (const TacticError&) {
                    if (current_log) current_log->events.resize(mark);
                    break;
                }
            }
            return cur;
        }
        case TacticKind::Branch: {
            if (t.children.size() != r.count)
                throw TacticError("branch lists " + std::to_string(t.children.size()) + " tactics for " +
                                      std::to_string(r.count) + " subgoals",
                                  r.begin);
            Provable cur = p;
            std::size_t g = r.begin;
            for (const auto& c : t.children) {
                Range one{g, 1};
                cur = eval(c, cur, one);
                g += one.count;
            }
            r.count = g - r.begin;
            return cur;
        }
    }
    return p;
}

Provable Interpreter::run_on(const Tactic& t, const Provable& p, std::size_t goal) {
    if (goal >= p.subgoals().size()) throw TacticError("no subgoal " + std::to_string(goal), goal);
    start();
    EventLog log;
    EventLog* saved = current_log;
    current_log = &log;
    Range r{goal, 1};
    try {
        Provable q = eval(t, p, r);
        current_log = saved;
        if (listener_)
            for (const auto& e : log.events) listener_(e);
        return q;
    } catch (...) {
        current_log = saved;
        throw;
    }
}

Provable Interpreter::run(const Tactic& t, const Provable& p) {
    start();
    EventLog log;
    EventLog* saved = current_log;
    current_log = &log;
    Range r{0, p.subgoals().size()};
    try {
        Provable q = eval(t, p, r);
        current_log = saved;
        if (listener_)
            for (const auto& e : log.events) listener_(e);
        return q;
    } catch (...) {
        current_log = saved;
        throw;
    }
}

Provable interpret(const Tactic& t, const Provable& p, const Options& opts) { return Interpreter(opts).run(t, p); }

Provable prop(const Provable& p, std::size_t goal) {
    Interpreter in;
    return in.run_on(Tactic::atom("prop"), p, goal);
}

Provable unfold(const Provable& p, std::size_t goal) {
    Interpreter in;
    return in.run_on(Tactic::atom("unfold"), p, goal);
}

Provable auto_tactic(const Provable& p, const Options& opts) {
    Interpreter in(opts);
    return in.run(Tactic::alt({Tactic::atom("auto"), Tactic::nil()}), p);
}

// --- suggestions ------------------------------------------------------------------

namespace {

struct RuleDisplay {
    const char* name;
    const char* display;
    const char* conclusion;
    std::vector<std::string> premises;
};

const std::vector<RuleDisplay>& rule_displays() {
    static const std::vector<RuleDisplay> table{
        {"implyR", "->R", "G ==> P->Q, D", {"G, P ==> Q, D"}},
        {"implyL", "->L", "G, P->Q ==> D", {"G ==> D, P", "G, Q ==> D"}},
        {"andL", "&L", "G, P&Q ==> D", {"G, P, Q ==> D"}},
        {"andR", "&R", "G ==> P&Q, D", {"G ==> P, D", "G ==> Q, D"}},
        {"orL", "|L", "G, P|Q ==> D", {"G, P ==> D", "G, Q ==> D"}},
        {"orR", "|R", "G ==> P|Q, D", {"G ==> P, Q, D"}},
        {"notL", "!L", "G, !P ==> D", {"G ==> D, P"}},
        {"notR", "!R", "G ==> !P, D", {"G, P ==> D"}},
        {"equivL", "<->L", "G, P<->Q ==> D", {"G, P&Q ==> D", "G, !P&!Q ==> D"}},
        {"equivR", "<->R", "G ==> P<->Q, D", {"G, P ==> Q, D", "G, Q ==> P, D"}},
        {"close", "id", "G, P ==> P, D", {}},
        {"closeTrue", "trueR", "G ==> true, D", {}},
        {"closeFalse", "falseL", "G, false ==> D", {}},
        {"ODE", "ODE", "G ==> [{x'=f(x)&Q}]P, D",
         {"G ==> \\forall t (t>=0 -> \\forall s (0<=s&s<=t -> Q(x(s))) -> P(x(t))), D"}},
    };
    return table;
}

}  // namespace

std::vector<Suggestion> suggest(const Sequent& goal, const Position& pos) {
    std::vector<Suggestion> out;
    Provable p0 = [&] {
        try {
            return start_proof(goal);
        } catch (const KernelError& e) {
            throw TacticError(e.what());
        }
    }();
    for (const auto& ax : axioms()) {
        try {
            use_axiom_at(p0, 0, pos, ax.name);
        } catch (const KernelError&) {
            continue;
        }
        Suggestion s;
        s.tactic = ax.name;
        s.display = ax.display;
        s.display_kind = DisplayKind::Axiom;
        s.conclusion = to_string(subexpr_at(Expr(ax.schema), ax.key));
        s.premises.push_back(to_string(subexpr_at(Expr(ax.schema), ax.repl)));
        if (ax.guard) s.premises.push_back(to_string(subexpr_at(Expr(ax.schema), *ax.guard)));
        out.push_back(std::move(s));
    }
    if (pos.top_level()) {
        for (const auto& r : rule_displays()) {
            bool ok = true;
            try {
                if (std::string(r.name) == "ODE") ode::apply_ode_rule(p0, 0, pos);
                else apply_prop_rule(p0, 0, r.name, pos, std::nullopt);
            } catch (const KernelError&) {
                ok = false;
            }
            if (!ok) continue;
            out.push_back({r.name, r.display, DisplayKind::Rule, r.conclusion, r.premises, {}});
        }
        const Formula* f = nullptr;
        try {
            f = &goal.at(pos.side, pos.index);
        } catch (const PositionError&) {
        }
        if (f && pos.side == Side::Succ && f->kind() == FormulaKind::Box &&
            f->program().kind() == ProgramKind::Loop) {
            Formula def = f->program().invariant().value_or(f->body());
            bool ok = true;
            try {
                apply_loop_rule(p0, 0, pos, def);
            } catch (const KernelError&) {
                ok = false;
            }
            if (ok)
                out.push_back({"loop",
                               "loop",
                               DisplayKind::RuleWithInput,
                               "G ==> [{a}*]P, D",
                               {"G ==> J, D", "J ==> P", "J ==> [a]J"},
                               {{"j(x)", "formula", to_string(def)}}});
        }
    }
    return out;
}

std::optional<Position> find_position(const std::string& tactic, const Sequent& goal,
                                      const std::vector<std::string>& inputs) {
    if (!is_positional(tactic)) return std::nullopt;
    Provable p0 = start_proof(goal);
    Interpreter in;
    Tactic resolved;
    try {
        apply_atom(in, p0, 0, Tactic::atom(tactic, inputs), &resolved);
    } catch (const TacticError&) {
        return std::nullopt;
    }
    return resolved.locator.pos;
}

}  // namespace dlp::tactics
