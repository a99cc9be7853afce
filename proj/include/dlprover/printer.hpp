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

#ifndef DLPROVER_PRINTER_HPP
#define DLPROVER_PRINTER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "dlprover/syntax.hpp"

namespace dlp {

// Compact ASCII rendering with minimal parentheses; the parser reads it back
// to the identical tree.
std::string to_string(const Term& t);
std::string to_string(const Program& p);
std::string to_string(const Formula& f);
std::string to_string(const Expr& e);
std::string to_string(const Sequent& s);  // "a, b ==> c"

// Character range [begin, end) of one subexpression in a rendering.
struct Span {
    PosInExpr path;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct Rendering {
    std::string text;
    std::vector<Span> spans;  // one per subexpression, pre-order
};

Rendering render(const Formula& f);

}  // namespace dlp

#endif
