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

#ifndef DLPROVER_KERNEL_HPP
#define DLPROVER_KERNEL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlprover/syntax.hpp"

namespace dlp {

// The trusted core. Every Provable is built by the functions declared here
// (plus the ODE rule), each of which implements one sound proof rule.

class KernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Uniform substitution would capture a variable.
class ClashError : public KernelError {
public:
    ClashError(const std::string& message, std::string variable, std::string site)
        : KernelError(message), variable_(std::move(variable)), site_(std::move(site)) {}
    const std::string& variable() const { return variable_; }
    const std::string& site() const { return site_; }

private:
    std::string variable_;
    std::string site_;
};

class Provable;
Provable start_proof(const Formula& goal);
Provable start_proof(const Sequent& goal);
Provable merge(const Provable& p, std::size_t goal, const Provable& sub);
Provable apply_prop_rule(const Provable& p, std::size_t goal, const std::string& rule, const Position& pos,
                         const std::optional<Formula>& input);
// Rewrites the subformula at pos with the named axiom. Conditional axioms add
// a second subgoal with their condition in front of the succedent.
Provable use_axiom_at(const Provable& p, std::size_t goal, const Position& pos, const std::string& axiom);
Provable apply_loop_rule(const Provable& p, std::size_t goal, const Position& pos, const Formula& invariant);
Provable close_by_qe(const Provable& p, std::size_t goal, double timeout_seconds);
struct Context;
Provable contextual_equiv(const Context& c, const Formula& p, const Formula& q);
Provable contextual_eq(const Context& c, const Term& f, const Term& g);
Provable contextual_mon(const Context& c, const Formula& p, const Formula& q);
namespace ode {
Provable apply_ode_rule(const Provable& p, std::size_t goal, const Position& pos);
}

// A conclusion together with the subgoals still needed to prove it.
class Provable {
public:
    const Sequent& conclusion() const { return conclusion_; }
    const std::vector<Sequent>& subgoals() const { return subgoals_; }
    bool proved() const { return subgoals_.empty(); }

private:
    Provable(Sequent conclusion, std::vector<Sequent> subgoals)
        : conclusion_(std::move(conclusion)), subgoals_(std::move(subgoals)) {}
    Provable with_goal_replaced(std::size_t goal, std::vector<Sequent> premises) const;

    Sequent conclusion_;
    std::vector<Sequent> subgoals_;

    friend Provable start_proof(const Formula&);
    friend Provable start_proof(const Sequent&);
    friend Provable merge(const Provable&, std::size_t, const Provable&);
    friend Provable apply_prop_rule(const Provable&, std::size_t, const std::string&, const Position&,
                                    const std::optional<Formula>&);
    friend Provable use_axiom_at(const Provable&, std::size_t, const Position&, const std::string&);
    friend Provable apply_loop_rule(const Provable&, std::size_t, const Position&, const Formula&);
    friend Provable close_by_qe(const Provable&, std::size_t, double);
    friend Provable contextual_equiv(const Context&, const Formula&, const Formula&);
    friend Provable contextual_eq(const Context&, const Term&, const Term&);
    friend Provable contextual_mon(const Context&, const Formula&, const Formula&);
    friend Provable ode::apply_ode_rule(const Provable&, std::size_t, const Position&);
};

enum class DisplayKind { Axiom, Rule, RuleWithInput };

struct Axiom {
    std::string name;     // tactic name, e.g. "choiceb"
    std::string display;  // conventional label, e.g. "[++]"
    Formula schema;
    PosInExpr key;        // side matched against the goal
    PosInExpr repl;       // side it is replaced with
    std::optional<PosInExpr> guard;  // condition G of G -> (key <-> repl)
};

const std::vector<Axiom>& axioms();
const Axiom* find_axiom(const std::string& name);

// Replacements for function symbols f()/f(.), predicate symbols p()/p(.),
// predicationals p(||) and program symbols a. Argument positions in
// replacements are marked by the dot term.
struct Substitution {
    std::map<std::string, Term> functions;
    std::map<std::string, Formula> predicates;
    std::map<std::string, Program> programs;

    bool empty() const { return functions.empty() && predicates.empty() && programs.empty(); }
    std::string to_string() const;
    friend bool operator==(const Substitution&, const Substitution&) = default;
};

// Result of matching a schema: variable renaming applied to the schema first,
// then the symbol substitution.
struct Match {
    std::map<std::string, std::string> renaming;
    Substitution substitution;
};

// One-sided matching of a schema against a schema-free expression.
std::optional<Match> match_schema(const Expr& schema, const Expr& concrete);

// Clash-checked uniform substitution. Throws ClashError.
Formula uniform_substitute(const Formula& f, const Substitution& s);
Program uniform_substitute(const Program& p, const Substitution& s);
Term uniform_substitute(const Term& t, const Substitution& s);

// Consistent renaming of variables (free and bound) throughout.
Expr rename_vars(const Expr& e, const std::map<std::string, std::string>& renaming);

// Drops loop invariant annotations, which carry no meaning.
Expr strip_annotations(const Expr& e);

// A formula with a designated hole position.
struct Context {
    Formula formula;
    PosInExpr hole;
    Formula fill(const Expr& e) const { return replace_at(formula, hole, e); }
};

// Polarity of the hole: +1 positive, -1 negative, 0 neither (under an
// equivalence or inside a program or term).
int polarity(const Formula& f, const PosInExpr& path);

// Names of propositional rules accepted by apply_prop_rule.
const std::vector<std::string>& prop_rule_names();

// Antecedent formulas kept in the induction step of the loop rule.
std::vector<Formula> constant_context(const std::vector<Formula>& ante, const Program& body);

}  // namespace dlp

#endif
