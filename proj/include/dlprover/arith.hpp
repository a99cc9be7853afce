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

#ifndef DLPROVER_ARITH_HPP
#define DLPROVER_ARITH_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dlprover/polynomial.hpp"
#include "dlprover/syntax.hpp"

namespace dlp::arith {

// Real arithmetic by Fourier-Motzkin elimination over exact rationals.
//
// Constraints are p REL 0 with REL in {<, <=, =}. A variable can be
// eliminated when it occurs with degree at most one in every constraint of
// a conjunction; non-constant coefficients are handled by splitting on
// their sign. Anything else is reported as Unsupported.

enum class Rel { Less, LessEqual, Equal };

struct Constraint {
    Polynomial poly;
    Rel rel = Rel::LessEqual;

    bool holds(const std::map<std::string, Rational>& values) const;
    std::string to_string() const;
    friend bool operator==(const Constraint&, const Constraint&) = default;
    friend bool operator<(const Constraint& a, const Constraint& b) {
        if (a.rel != b.rel) return a.rel < b.rel;
        return a.poly < b.poly;
    }
};

using Witness = std::map<std::string, Rational>;

struct Valid {};
struct Invalid {
    Witness witness;
};
struct Unsupported {
    std::string reason;
};
using Verdict = std::variant<Valid, Invalid, Unsupported>;

struct Options {
    double timeout_seconds = 0;  // 0: no limit
};

// Validity of the conjunction of the antecedent implying the disjunction of
// the succedent, with free variables universally quantified.
Verdict qe_decide(const Sequent& s, const Options& opts = {});
Verdict qe_formula(const Formula& f, const Options& opts = {});

struct NoCounterexample {};
using CounterexampleResult = std::variant<Witness, NoCounterexample, Unsupported>;

// A state making every antecedent formula true and every succedent formula
// false. Goals with modalities are Unsupported.
CounterexampleResult counterexample(const Sequent& s, const Options& opts = {});

// Satisfiability of a conjunction of constraints.
std::variant<Witness, NoCounterexample, Unsupported> satisfiable(const std::vector<Constraint>& conj,
                                                                 const Options& opts = {});

// Projects one variable out of a conjunction; the result is a disjunction
// of conjunctions. Throws std::invalid_argument if the variable occurs
// non-linearly.
std::vector<std::vector<Constraint>> eliminate(const std::vector<Constraint>& conj, const std::string& var);

// First-order formula without modalities.
bool is_first_order(const Formula& f);

std::string to_string(const Verdict& v);
std::string to_string(const Witness& w);

}  // namespace dlp::arith

#endif
