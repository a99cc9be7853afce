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

#ifndef DLPROVER_ODE_HPP
#define DLPROVER_ODE_HPP

#include <map>
#include <set>
#include <string>
#include <variant>

#include "dlprover/kernel.hpp"
#include "dlprover/polynomial.hpp"
#include "dlprover/syntax.hpp"

namespace dlp::ode {

// Polynomial solution of an ODE system in the time variable, with initial
// values named by fresh symbols.
struct OdeSolution {
    std::string time;
    std::map<std::string, std::string> initial;  // x -> x0
    std::map<std::string, Polynomial> solution;  // x -> x(time)

    // Solution of x with the time variable replaced by `at`.
    Term at(const std::string& var, const Term& at) const;
};

struct Unsolvable {
    std::string reason;
};

using SolveResult = std::variant<OdeSolution, Unsolvable>;

// Solves triangular polynomial systems. Fresh names avoid `taken`.
SolveResult solve(const Program& ode, const std::set<std::string>& taken = {});

// The derivative check d/dt x(t) = f(x(t)) and the initial check x(0) = x0.
bool derivative_check(const Program& ode, const OdeSolution& sol);
bool initial_check(const OdeSolution& sol);

// apply_ode_rule (declared in kernel.hpp) replaces a succedent box over an
// ODE by its solution and throws KernelError when the ODE is unsolvable.

}  // namespace dlp::ode

#endif
