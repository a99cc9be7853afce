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

#ifndef DLPROVER_SEMANTICS_HPP
#define DLPROVER_SEMANTICS_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "dlprover/syntax.hpp"

namespace dlp {

// A set of variable names, possibly "all variables" (program symbols and
// predicationals p(||) may read and write anything). Differential symbols are
// named with a trailing quote, e.g. "x'".
class VarSet {
public:
    VarSet() = default;
    VarSet(std::initializer_list<std::string> names) : names_(names) {}
    static VarSet all() {
        VarSet v;
        v.top_ = true;
        return v;
    }

    bool is_all() const { return top_; }
    bool contains(const std::string& name) const { return top_ || names_.count(name) > 0; }
    bool empty() const { return !top_ && names_.empty(); }
    const std::set<std::string>& names() const { return names_; }

    void insert(const std::string& name) { names_.insert(name); }
    void erase(const std::string& name) { names_.erase(name); }
    VarSet& operator|=(const VarSet& other);
    VarSet unite(const VarSet& other) const;
    VarSet intersect(const VarSet& other) const;
    VarSet minus(const VarSet& other) const;
    bool intersects(const VarSet& other) const;

    std::string to_string() const;
    friend bool operator==(const VarSet&, const VarSet&) = default;

private:
    std::set<std::string> names_;
    bool top_ = false;
};

VarSet free_vars(const Term& t);
VarSet free_vars(const Program& p);
VarSet free_vars(const Formula& f);
VarSet free_vars(const Expr& e);
VarSet free_vars(const Sequent& s);

// Variables possibly written by a program or bound by a formula (quantified
// variables and bound variables of programs in boxes).
VarSet bound_vars(const Program& p);
VarSet bound_vars(const Formula& f);
VarSet bound_vars(const Expr& e);

// Variables written on every run of the program.
VarSet must_bound_vars(const Program& p);

// All identifiers occurring anywhere (variables, symbols, bound names).
std::set<std::string> all_names(const Expr& e);
std::set<std::string> all_names(const Sequent& s);

// True if the expression mentions function, predicate or program symbols or
// the argument placeholder.
bool has_schema_symbols(const Expr& e);

// Variables bound by binders enclosing the given path (quantifiers and the
// programs of boxes whose postcondition contains the path; positions inside
// programs count the bound variables of the enclosing program parts).
VarSet binders_along(const Formula& f, const PosInExpr& path);

// A free-variable substitution would capture a variable.
class CaptureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Replaces free occurrences of variables by terms. Throws CaptureError if a
// replacement term would be captured by a binder, or if a replaced variable
// is written by a program in which it also occurs free in a way that cannot
// be replaced (ODE state variables).
Formula substitute_free(const Formula& f, const std::map<std::string, Term>& replacements);
Term substitute_free(const Term& t, const std::map<std::string, Term>& replacements);

// Picks base, base_1, base_2, ... not contained in taken.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace dlp

#endif
